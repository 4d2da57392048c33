#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace tailrisk::tailest {

/**
 * Ascending order statistics X_(1) <= ... <= X_(n).
 *
 * A sample built with upper_tail() keeps only the largest `m` values (sorted)
 * while still reporting the full sample size; accessing an order statistic
 * below the stored tail throws std::out_of_range.
 */
class OrderedSample {
public:
    explicit OrderedSample(std::span<const double> x);

    /// Partial sort: keep the top m order statistics of x.
    [[nodiscard]] static OrderedSample upper_tail(std::span<const double> x, std::size_t m);

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t stored() const noexcept { return sorted_.size(); }
    /// X_(i), 1-based.
    [[nodiscard]] double at(std::size_t i) const;
    /// The i-th largest value, X_(n-i+1); top(1) is the maximum.
    [[nodiscard]] double top(std::size_t i) const;
    /// Stored values, ascending. For a full sample this is every observation.
    [[nodiscard]] std::span<const double> sorted() const noexcept { return sorted_; }

private:
    OrderedSample() = default;
    std::vector<double> sorted_;
    std::size_t n_ = 0;
};

enum class Method { standard_hill, corrected_hill, qq_regression };

[[nodiscard]] std::string_view to_string(Method m);
[[nodiscard]] Method method_from_string(std::string_view s);

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.0;
};

struct TailFit {
    double gamma = 0.0;  ///< extreme value index
    double alpha = 0.0;  ///< tail index, 1 / gamma
    std::size_t k_alpha = 0;
    Method method = Method::standard_hill;
    double rho = -1.0;
    std::optional<ConfidenceInterval> ci;
};

struct QuantileEstimate {
    double p = 0.0;
    double value = 0.0;
    std::size_t k = 0;
    TailFit tail_fit;
};

struct QQPoint {
    double u;  ///< -log(i / (k + 1))
    double v;  ///< log X_(n-i+1)
};

/// Pareto quantile plot coordinates for the top k order statistics.
[[nodiscard]] std::vector<QQPoint> pareto_qq_points(std::span<const double> x, std::size_t k);

/// OLS of v on u with intercept; alpha is the inverse slope.
[[nodiscard]] TailFit qq_slope_alpha(std::span<const QQPoint> points);

/// Log-excess moments over the (k+1)-th largest value:
/// M_j = (1/k) sum_{i=1..k} (log X_(n-i+1) - log X_(n-k))^j for j = 1, 2.
struct LogExcessMoments {
    double m1 = 0.0;
    double m2 = 0.0;
};

[[nodiscard]] LogExcessMoments log_excess_moments(const OrderedSample& s, std::size_t k);

[[nodiscard]] TailFit hill(const OrderedSample& s, std::size_t k_alpha);
[[nodiscard]] TailFit hill(std::span<const double> x, std::size_t k_alpha);

/**
 * Second-order bias-corrected Hill estimator with fixed rho:
 * gamma = (M1 - (1 - rho) * M2 / (2 M1)) / rho.
 *
 * Throws NonPositiveEstimate (carrying the uncorrected value) when the
 * corrected gamma is not positive.
 */
[[nodiscard]] TailFit hill_corrected(const OrderedSample& s, std::size_t k_alpha, double rho = -1.0);
[[nodiscard]] TailFit hill_corrected(std::span<const double> x, std::size_t k_alpha, double rho = -1.0);

/// Dispatch on method; qq_regression uses the Pareto QQ slope over the top k_alpha points.
[[nodiscard]] TailFit fit_tail(const OrderedSample& s, Method method, std::size_t k_alpha, double rho = -1.0);

/// Weissman extrapolation X_(n-k) * (k / (n (1 - p)))^(1 / alpha).
[[nodiscard]] QuantileEstimate weissman_quantile(const OrderedSample& s, double p, std::size_t k, const TailFit& fit);
[[nodiscard]] QuantileEstimate weissman_quantile(std::span<const double> x, double p, std::size_t k,
                                                 const TailFit& fit);

/// Type-1 empirical quantile, X_(ceil(n p)).
[[nodiscard]] double empirical_quantile(const OrderedSample& s, double p);
[[nodiscard]] double empirical_quantile(std::span<const double> x, double p);

}  // namespace tailrisk::tailest
