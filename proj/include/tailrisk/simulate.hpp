#pragma once

#include "tailrisk/argarch.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace tailrisk::simulate {

/// Innovation law for the AR-GARCH simulator. Student-t draws are rescaled
/// to unit variance, so df must exceed 2.
struct Innovation {
    enum class Kind { gaussian, student_t } kind = Kind::gaussian;
    double df = 0.0;

    [[nodiscard]] static Innovation gaussian() { return {}; }
    [[nodiscard]] static Innovation student_t(double df) { return {Kind::student_t, df}; }
};

inline constexpr std::size_t kBurnIn = 1000;

struct ArGarchPath {
    std::vector<double> x;
    std::vector<double> sigma;  ///< conditional volatility of each x_t
    /// Volatility the model assigns to the observation following the last one.
    double sigma_next = 0.0;
    double innovation_last = 0.0;  ///< a_n = sigma_n eps_n
};

/// Simulate n observations after a 1000-step burn-in started at the
/// unconditional variance omega / (1 - a - b_coef).
[[nodiscard]] ArGarchPath sim_argarch_path(const argarch::ArGarchParams& params, std::size_t n, Innovation innovation,
                                           std::uint64_t seed);
[[nodiscard]] std::vector<double> sim_argarch(const argarch::ArGarchParams& params, std::size_t n,
                                              Innovation innovation, std::uint64_t seed);

/// Standard Pareto: P(X > x) = x^-alpha for x >= 1.
[[nodiscard]] std::vector<double> sim_pareto(double alpha, std::size_t n, std::uint64_t seed);
/// Standard Frechet: P(X <= x) = exp(-x^-alpha), x > 0.
[[nodiscard]] std::vector<double> sim_frechet(double alpha, std::size_t n, std::uint64_t seed);

/// A base sampler produces `count` i.i.d. draws for a given seed.
using Sampler = std::function<std::vector<double>(std::size_t count, std::uint64_t seed)>;

/// Each base draw repeated m times in a row, truncated to length n.
[[nodiscard]] std::vector<double> sim_duplicated(const Sampler& base, std::size_t m, std::size_t n,
                                                 std::uint64_t seed);

}  // namespace tailrisk::simulate
