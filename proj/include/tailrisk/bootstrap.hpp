#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace tailrisk::bootstrap {

/**
 * @brief Settings of the stationary (geometric block length) bootstrap.
 *
 * Replicate r draws from a random stream determined only by (seed, r), so a
 * replicate's content does not depend on which other replicates were run or
 * on how they were scheduled across threads.
 */
struct BootstrapSpec {
    std::size_t replicates = 999;
    double mean_block = 200.0;
    std::uint64_t seed = 20240101;
    double level = 0.90;

    void validate() const;
};

/// Resampled index sequence of length n: circular blocks with uniform start
/// and geometric length (support 1, 2, ...; mean spec.mean_block).
[[nodiscard]] std::vector<std::size_t> resample_indices(std::size_t n, const BootstrapSpec& spec,
                                                        std::size_t replicate_index);

[[nodiscard]] std::vector<double> resample(std::span<const double> x, const BootstrapSpec& spec,
                                           std::size_t replicate_index);

struct PercentileInterval {
    double lower = 0.0;
    double upper = 0.0;
    double point = 0.0;
    std::size_t failed = 0;  ///< replicates dropped because the statistic threw
    std::vector<double> replicate_stats;  ///< successful replicates, in replicate order
};

using Statistic = std::function<double(std::span<const double>)>;
/// Statistic evaluated on a resampled index set (for paired or otherwise
/// structured data that must be resampled jointly).
using IndexStatistic = std::function<double(std::span<const std::size_t>)>;

/**
 * @brief Percentile interval of a statistic under the stationary bootstrap.
 *
 * Replicates whose statistic throws are dropped; if more than 20% fail the
 * call throws DomainError. The statistic must be safe to call concurrently
 * when threads > 1.
 */
[[nodiscard]] PercentileInterval percentile_ci(std::span<const double> x, const Statistic& statistic,
                                               const BootstrapSpec& spec, unsigned threads = 1);

[[nodiscard]] PercentileInterval percentile_ci_indexed(std::size_t n, const IndexStatistic& statistic,
                                                       const BootstrapSpec& spec, unsigned threads = 1);

/// Lower/upper percentile ranks used for a sorted vector of size m at the
/// given two-sided level: ranks floor((m+1) a/2) and ceil((m+1)(1-a/2)),
/// clamped into [1, m].
[[nodiscard]] std::pair<double, double> percentile_bounds(std::vector<double> sorted_or_not, double level);

}  // namespace tailrisk::bootstrap
