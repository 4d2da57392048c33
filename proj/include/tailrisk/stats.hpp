#pragma once

namespace tailrisk::stats {

/// Upper tail probability P(X > x) of a chi-square variable.
[[nodiscard]] double chi2_sf(double x, double df);
/// Quantile of the chi-square distribution.
[[nodiscard]] double chi2_quantile(double p, double df);
[[nodiscard]] double normal_quantile(double p);
/// CDF of Student's t.
[[nodiscard]] double student_t_cdf(double x, double df);

}  // namespace tailrisk::stats
