#pragma once

#include "tailrisk/bootstrap.hpp"
#include "tailrisk/tailest.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tailrisk::taildep {

struct TailDepFit {
    double chi = 0.0;
    std::size_t k = 0;
    std::size_t n = 0;
    std::optional<tailest::ConfidenceInterval> ci;
};

/// Mid-ranks (1-based; tied values share the average of their ranks).
[[nodiscard]] std::vector<double> mid_ranks(std::span<const double> x);

/// chi = (1/k) #{i : R^x_i > n - k and R^y_i > n - k}.
[[nodiscard]] TailDepFit chi_hat(std::span<const double> x, std::span<const double> y, std::size_t k);

/// chi_hat over a grid of k. With `boot` set, each point gets a percentile
/// interval from a stationary bootstrap that resamples the pairs jointly.
[[nodiscard]] std::vector<TailDepFit> chi_trace(std::span<const double> x, std::span<const double> y,
                                                std::span<const std::size_t> k_grid,
                                                const std::optional<bootstrap::BootstrapSpec>& boot = {},
                                                unsigned threads = 1);

}  // namespace tailrisk::taildep
