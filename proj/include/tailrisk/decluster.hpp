#pragma once

#include "tailrisk/ingest.hpp"

#include <chrono>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace tailrisk::decluster {

using ingest::ReturnSeries;

/// Observations dated on the given weekday, in order. Throws DomainError if
/// none match.
[[nodiscard]] ReturnSeries weekday_subsample(const ReturnSeries& r, std::chrono::weekday day);

[[nodiscard]] std::chrono::weekday weekday_from_string(std::string_view s);

/// Every `step`-th observation starting at `offset` (the dateless analogue
/// of weekday subsampling used for simulated series).
[[nodiscard]] std::vector<double> thin(std::span<const double> x, std::size_t step, std::size_t offset = 0);

/**
 * Keep mask of rank-ordered gap declustering.
 *
 * Positive values are visited from largest to smallest (earlier index first
 * on ties); a value is removed if its index lies within gap_days of an index
 * already kept in this pass. Negative values go through the same procedure,
 * most negative first, against their own kept set. Zeros are always kept.
 * An observation survives if neither pass removed it.
 */
[[nodiscard]] std::vector<bool> rank_gap_keep_mask(std::span<const double> x, std::size_t gap_days);

/// As above, with distances measured on explicit trading-day positions
/// (strictly increasing). Re-running on an already declustered subsequence
/// with its original positions removes nothing.
[[nodiscard]] std::vector<bool> rank_gap_keep_mask(std::span<const double> x, std::span<const std::size_t> positions,
                                                   std::size_t gap_days);

[[nodiscard]] std::vector<double> rank_gap_decluster(std::span<const double> x, std::size_t gap_days);
[[nodiscard]] ReturnSeries rank_gap_decluster(const ReturnSeries& r, std::size_t gap_days);

}  // namespace tailrisk::decluster
