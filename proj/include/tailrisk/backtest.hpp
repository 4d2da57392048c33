#pragma once

#include "tailrisk/argarch.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace tailrisk::backtest {

struct ExceedanceSeries {
    std::vector<std::uint8_t> indicators;  ///< 1 = realized loss above the forecast
    double p = 0.01;                       ///< intended exceedance probability

    [[nodiscard]] std::size_t size() const noexcept { return indicators.size(); }
    [[nodiscard]] std::size_t count() const noexcept;
};

/// Consecutive-day transitions between exceedance states.
struct TransitionCounts {
    std::size_t n00 = 0, n01 = 0, n10 = 0, n11 = 0;
};

struct LrResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

struct BacktestReport {
    double lr_uc = 0.0, lr_ind = 0.0, lr_cc = 0.0;
    double p_uc = 1.0, p_ind = 1.0, p_cc = 1.0;
    std::size_t n = 0, n1 = 0;
};

/// indicator_t = 1 iff realized_t > forecast_t (strict).
[[nodiscard]] ExceedanceSeries exceedances(std::span<const double> realized, std::span<const double> forecasts,
                                           double p);

[[nodiscard]] TransitionCounts transition_counts(std::span<const std::uint8_t> indicators);

/// Unconditional coverage LR test, chi-square(1) reference.
[[nodiscard]] LrResult uc_test(const ExceedanceSeries& e);
[[nodiscard]] LrResult uc_test(std::size_t n, std::size_t n1, double p);

/// First-order Markov independence LR test, chi-square(1) reference.
/// Zero cells use 0 log 0 = 0; with no exceedances at all the statistic is 0.
[[nodiscard]] LrResult ind_test(const ExceedanceSeries& e);
[[nodiscard]] LrResult ind_test(const TransitionCounts& c);

/// Conditional coverage: LR_cc = LR_uc + LR_ind, chi-square(2) reference.
[[nodiscard]] BacktestReport cc_test(const ExceedanceSeries& e);

// ---------------------------------------------------------------------------
// Rolling-window harnesses

enum class QuantileMethod { hill, corrected, empirical };

[[nodiscard]] std::string_view to_string(QuantileMethod m);
[[nodiscard]] QuantileMethod quantile_method_from_string(std::string_view s);
[[nodiscard]] std::vector<QuantileMethod> all_quantile_methods();

/// Estimation settings shared by the unconditional and conditional harnesses.
struct QuantileConfig {
    double p = 0.99;
    std::size_t k = 50;                  ///< Weissman threshold count
    std::size_t k_alpha_hill = 50;       ///< standard Hill
    std::size_t k_alpha_corrected = 200; ///< bias-corrected Hill
    double rho = -1.0;
};

/// p-quantile estimate of a sample by the given method (Weissman
/// extrapolation with the Hill or corrected-Hill tail index, or the
/// empirical order statistic).
[[nodiscard]] double estimate_quantile(std::span<const double> x, QuantileMethod method, const QuantileConfig& cfg);

struct WindowForecast {
    std::size_t start = 0;  ///< first index of the estimation window
    QuantileMethod method = QuantileMethod::hill;
    double forecast = 0.0;
    /// Exceedance count over the following test span, one entry per
    /// requested test length; empty when the span runs past the data.
    std::vector<std::optional<std::size_t>> counts;
};

struct MethodSummary {
    QuantileMethod method = QuantileMethod::hill;
    std::size_t test_len = 0;
    std::size_t windows = 0;
    double mean_count = 0.0;
    std::size_t max_count = 0;
};

struct UnconditionalResult {
    std::vector<std::size_t> test_lens;
    std::vector<WindowForecast> windows;  ///< ordered by (start, method)
    std::vector<MethodSummary> summary;   ///< ordered by (test_len, method)
};

/**
 * Unconditional quantile forecasts on windows [s, s + window) for
 * s = 0, step, 2 step, ... while a forecast can be evaluated on at least the
 * shortest test span. Exceedances are counted strictly over
 * [s + window, s + window + len).
 */
[[nodiscard]] UnconditionalResult roll_unconditional(std::span<const double> x, std::size_t window, std::size_t step,
                                                     std::span<const std::size_t> test_lens,
                                                     std::span<const QuantileMethod> methods,
                                                     const QuantileConfig& cfg, unsigned threads = 1);

/// Day-ahead forecast series for one method: forecasts[j] predicts x[first + j].
struct DailyForecasts {
    QuantileMethod method = QuantileMethod::hill;
    std::size_t first = 0;
    std::vector<double> forecasts;
    ExceedanceSeries exceed;
};

/// Unconditional forecasts re-estimated every day on the trailing window.
[[nodiscard]] std::vector<DailyForecasts> daily_unconditional(std::span<const double> x, std::size_t window,
                                                              std::span<const QuantileMethod> methods,
                                                              const QuantileConfig& cfg, unsigned threads = 1);

struct ConditionalResult {
    std::size_t first = 0;
    std::vector<DailyForecasts> methods;
    std::vector<double> mu_next;
    std::vector<double> sigma_next;
    /// Days whose QMLE failed; the previous day's parameters were reused.
    std::vector<std::size_t> failed_days;
    std::vector<argarch::ArGarchParams> params;
};

struct ConditionalOptions {
    /// Days are processed in fixed-size chunks; each chunk cold-starts its
    /// first fit and warm-starts the rest. Chunking is independent of the
    /// thread count, so results are too.
    std::size_t chunk = 250;
    argarch::FitOptions fit{};
    /// Called with the number of completed days (from worker threads).
    std::function<void(std::size_t)> progress;
};

/**
 * Two-step conditional forecasts: for each day t >= window, fit
 * AR(1)-GARCH(1,1) on x[t - window, t), estimate the residual p-quantile by
 * each method and forecast mu_{t} + sigma_{t} q.
 */
[[nodiscard]] ConditionalResult roll_conditional(std::span<const double> x, std::size_t window,
                                                 std::span<const QuantileMethod> methods, const QuantileConfig& cfg,
                                                 unsigned threads = 1, const ConditionalOptions& options = {});

/// Daily-shifted test windows of fixed length over an exceedance series.
struct TestWindowSummary {
    std::size_t test_len = 0;
    std::size_t windows = 0;
    double mean_count = 0.0;
    std::size_t max_count = 0;
    double uc_rejection = 0.0;  ///< fraction of windows with p_uc < level
    double cc_rejection = 0.0;  ///< fraction of windows with p_cc < level
    std::vector<std::size_t> counts;
};

[[nodiscard]] TestWindowSummary aggregate_test_windows(const ExceedanceSeries& e, std::size_t test_len,
                                                       double level = 0.05);

}  // namespace tailrisk::backtest
