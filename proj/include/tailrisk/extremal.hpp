#pragma once

#include "tailrisk/bootstrap.hpp"
#include "tailrisk/tailest.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tailrisk::extremal {

using tailest::ConfidenceInterval;

struct ExtremalIndexFit {
    double theta = 1.0;      ///< clamped to (0, 1]
    double theta_raw = 1.0;  ///< reciprocal of the pseudo-observation mean, before clamping
    std::size_t block_size = 0;
    std::size_t n = 0;
    std::size_t pseudo_obs_count = 0;  ///< n - b
    double pseudo_obs_mean = 0.0;
    std::optional<ConfidenceInterval> ci;
};

/// Sliding maxima over windows of b + 1 consecutive points:
/// entry i = max(x_i, ..., x_{i+b}), i = 0..n-b-1.
[[nodiscard]] std::vector<double> block_maxima_sliding(std::span<const double> x, std::size_t b);

/// Pseudo-observations Y_i = -b log F_n(M_{i,i+b}) with the empirical CDF
/// F_n(v) = #{x_j <= v} / n.
[[nodiscard]] std::vector<double> sliding_pseudo_observations(std::span<const double> x, std::size_t b);

/// Bias-corrected sliding blocks estimator, theta = 1 / mean(Y).
[[nodiscard]] ExtremalIndexFit extremal_index_sliding(std::span<const double> x, std::size_t b);

enum class CiMethod { exp_likelihood, block_bootstrap };

/**
 * Confidence interval for theta.
 *
 * exp_likelihood: the pseudo-observations are treated as exponential with
 * mean 1/theta. The log-likelihood is rescaled to an effective sample size of
 * (n - b) / b, since sliding windows overlap, and the interval is the set of
 * theta with likelihood-ratio statistic below the chi-square(1) quantile.
 *
 * block_bootstrap: percentile interval of the estimator under the stationary
 * bootstrap described by `boot`.
 *
 * Endpoints are clamped into (0, 1].
 */
[[nodiscard]] ConfidenceInterval theta_ci(const ExtremalIndexFit& fit, std::span<const double> x, double level,
                                          CiMethod method, const bootstrap::BootstrapSpec& boot = {},
                                          unsigned threads = 1);

}  // namespace tailrisk::extremal
