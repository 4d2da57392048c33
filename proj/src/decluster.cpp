#include "tailrisk/decluster.hpp"

#include "tailrisk/errors.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>
#include <string>

namespace tailrisk::decluster {

ReturnSeries weekday_subsample(const ReturnSeries& r, std::chrono::weekday day) {
    ReturnSeries out;
    out.symbol = r.symbol;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (std::chrono::weekday{r.dates[i]} == day) {
            out.dates.push_back(r.dates[i]);
            out.values.push_back(r.values[i]);
        }
    }
    if (out.values.empty()) throw DomainError("weekday_subsample: no observations on the requested weekday");
    return out;
}

std::chrono::weekday weekday_from_string(std::string_view s) {
    static constexpr std::string_view names[] = {"sun", "mon", "tue", "wed", "thu", "fri", "sat"};
    std::string lower;
    for (char c : s.substr(0, 3)) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    for (unsigned i = 0; i < 7; ++i) {
        if (lower == names[i]) return std::chrono::weekday{i};
    }
    throw std::invalid_argument("unknown weekday '" + std::string(s) + "'");
}

std::vector<double> thin(std::span<const double> x, std::size_t step, std::size_t offset) {
    if (step == 0) throw std::invalid_argument("thin: step must be positive");
    std::vector<double> out;
    for (std::size_t i = offset; i < x.size(); i += step) out.push_back(x[i]);
    return out;
}

namespace {

// One greedy pass over the candidate indices (already in visiting order).
void gap_pass(const std::vector<std::size_t>& order, std::span<const std::size_t> pos, std::size_t gap,
              std::vector<bool>& keep) {
    std::set<std::size_t> kept;
    for (const std::size_t i : order) {
        const std::size_t p = pos[i];
        const auto it = kept.lower_bound(p >= gap ? p - gap : 0);
        if (it != kept.end() && *it <= p + gap) {
            keep[i] = false;
        } else {
            kept.insert(p);
        }
    }
}

}  // namespace

std::vector<bool> rank_gap_keep_mask(std::span<const double> x, std::size_t gap_days) {
    std::vector<std::size_t> positions(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) positions[i] = i;
    return rank_gap_keep_mask(x, positions, gap_days);
}

std::vector<bool> rank_gap_keep_mask(std::span<const double> x, std::span<const std::size_t> positions,
                                     std::size_t gap_days) {
    if (gap_days < 1) throw std::invalid_argument("rank_gap_decluster: gap_days must be >= 1");
    if (positions.size() != x.size()) throw std::invalid_argument("rank_gap_decluster: positions length mismatch");
    std::vector<bool> keep(x.size(), true);
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0) pos.push_back(i);
        if (x[i] < 0.0) neg.push_back(i);
    }
    std::stable_sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
    std::stable_sort(neg.begin(), neg.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    gap_pass(pos, positions, gap_days, keep);
    gap_pass(neg, positions, gap_days, keep);
    return keep;
}

std::vector<double> rank_gap_decluster(std::span<const double> x, std::size_t gap_days) {
    const auto keep = rank_gap_keep_mask(x, gap_days);
    std::vector<double> out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (keep[i]) out.push_back(x[i]);
    }
    return out;
}

ReturnSeries rank_gap_decluster(const ReturnSeries& r, std::size_t gap_days) {
    const auto keep = rank_gap_keep_mask(r.values, gap_days);
    ReturnSeries out;
    out.symbol = r.symbol;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (keep[i]) {
            out.dates.push_back(r.dates[i]);
            out.values.push_back(r.values[i]);
        }
    }
    return out;
}

}  // namespace tailrisk::decluster
