#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tailrisk::argarch {

/**
 * @brief AR(1)-GARCH(1,1) parameters.
 *
 *   x_t       = mu + phi x_{t-1} + a_t,   a_t = sigma_t eps_t
 *   sigma_t^2 = omega + a a_{t-1}^2 + b_coef sigma_{t-1}^2
 */
struct ArGarchParams {
    double mu = 0.0;
    double phi = 0.0;
    double omega = 1.0;
    double a = 0.0;       ///< ARCH coefficient
    double b_coef = 0.0;  ///< GARCH coefficient

    /// omega > 0, a >= 0, b_coef >= 0, a + b_coef < 1.
    [[nodiscard]] bool feasible() const noexcept;
    void validate() const;

    [[nodiscard]] std::array<double, 5> to_array() const noexcept { return {mu, phi, omega, a, b_coef}; }
    [[nodiscard]] static ArGarchParams from_array(const std::array<double, 5>& v) noexcept {
        return {v[0], v[1], v[2], v[3], v[4]};
    }
};

struct FilteredSeries {
    /// Conditional volatilities for t = 2..n (length n - 1).
    std::vector<double> sigma;
    /// Standardized residuals (x_t - mu - phi x_{t-1}) / sigma_t, t = 2..n.
    std::vector<double> resid;
    ArGarchParams params;
    double loglik = 0.0;
    /// Innovation and variance at the last observation; forecasting input.
    double last_innovation = 0.0;
    double last_sigma2 = 0.0;

    /// Sandwich (QMLE) standard errors in the order mu, phi, omega, a, b_coef.
    std::optional<std::array<double, 5>> std_errors;
    bool near_igarch = false;
    std::size_t evaluations = 0;
};

struct Forecast {
    double mu_next = 0.0;
    double sigma_next = 0.0;
    std::optional<double> quantile;
};

struct FitOptions {
    std::size_t max_evaluations = 40000;
    double tolerance = 1e-8;  ///< on the log-likelihood
    bool std_errors = true;
};

/// Minimum sample size accepted by fit_qmle.
inline constexpr std::size_t kMinFitLength = 200;

/// Gaussian quasi-log-likelihood of x under params, summed over t = 2..n.
/// The recursion starts from sigma_1^2 = sample variance and
/// a_1 = x_1 - sample mean.
[[nodiscard]] double quasi_loglik(std::span<const double> x, const ArGarchParams& params);

/// Per-observation quasi-log-likelihood contributions (length n - 1).
[[nodiscard]] std::vector<double> quasi_loglik_terms(std::span<const double> x, const ArGarchParams& params);

[[nodiscard]] FilteredSeries filter(std::span<const double> x, const ArGarchParams& params);

/**
 * @brief Gaussian QMLE of the AR(1)-GARCH(1,1) model.
 *
 * Nelder-Mead search over a reparameterization that keeps omega > 0,
 * a, b_coef >= 0 and a + b_coef < 1. Without `init`, three fixed starting
 * points are tried and the best optimum kept; with `init` (warm start) only
 * that point is used, falling back to the fixed starts if it fails.
 *
 * Throws std::invalid_argument for short or constant input and
 * ConvergenceError if no start converges within the evaluation budget.
 */
[[nodiscard]] FilteredSeries fit_qmle(std::span<const double> x, const std::optional<ArGarchParams>& init = {},
                                      const FitOptions& options = {});

/// Sandwich covariance H^-1 J H^-1 from numerical derivatives.
[[nodiscard]] std::array<double, 5> sandwich_std_errors(std::span<const double> x, const ArGarchParams& params);

[[nodiscard]] Forecast forecast_next(const FilteredSeries& f, double x_last, double resid_quantile);
[[nodiscard]] Forecast forecast_next(const FilteredSeries& f, double x_last);

}  // namespace tailrisk::argarch
