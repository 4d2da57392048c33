#include "tailrisk/taildep.hpp"

#include "tailrisk/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tailrisk::taildep {

std::vector<double> mid_ranks(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        const double mid = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = mid;
        i = j + 1;
    }
    return ranks;
}

namespace {

void check(std::size_t nx, std::size_t ny, std::size_t k) {
    if (nx != ny) throw std::invalid_argument("chi_hat: length mismatch");
    if (k < 1 || k >= nx) throw std::invalid_argument("chi_hat: k must satisfy 1 <= k < n");
}

double chi_from_ranks(std::span<const double> rx, std::span<const double> ry, std::size_t k) {
    const double cut = static_cast<double>(rx.size() - k);
    std::size_t joint = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) joint += (rx[i] > cut && ry[i] > cut) ? 1 : 0;
    return static_cast<double>(joint) / static_cast<double>(k);
}

}  // namespace

TailDepFit chi_hat(std::span<const double> x, std::span<const double> y, std::size_t k) {
    check(x.size(), y.size(), k);
    const auto rx = mid_ranks(x);
    const auto ry = mid_ranks(y);
    TailDepFit fit;
    fit.k = k;
    fit.n = x.size();
    // Mid-ranks can put more than k points above n - k; keep chi in [0, 1].
    fit.chi = std::min(1.0, chi_from_ranks(rx, ry, k));
    return fit;
}

std::vector<TailDepFit> chi_trace(std::span<const double> x, std::span<const double> y,
                                  std::span<const std::size_t> k_grid,
                                  const std::optional<bootstrap::BootstrapSpec>& boot, unsigned threads) {
    for (const auto k : k_grid) check(x.size(), y.size(), k);
    const auto rx = mid_ranks(x);
    const auto ry = mid_ranks(y);
    std::vector<TailDepFit> out;
    out.reserve(k_grid.size());
    for (const auto k : k_grid) {
        TailDepFit f;
        f.k = k;
        f.n = x.size();
        f.chi = std::min(1.0, chi_from_ranks(rx, ry, k));
        out.push_back(f);
    }
    if (!boot) return out;

    boot->validate();
    // One set of joint resamples shared by every k on the grid.
    std::vector<std::vector<double>> reps(k_grid.size(), std::vector<double>(boot->replicates));
    parallel_for(boot->replicates, threads, [&](std::size_t r) {
        const auto idx = bootstrap::resample_indices(x.size(), *boot, r);
        std::vector<double> bx(idx.size()), by(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            bx[i] = x[idx[i]];
            by[i] = y[idx[i]];
        }
        const auto brx = mid_ranks(bx);
        const auto bry = mid_ranks(by);
        for (std::size_t g = 0; g < k_grid.size(); ++g) reps[g][r] = std::min(1.0, chi_from_ranks(brx, bry, k_grid[g]));
    });
    for (std::size_t g = 0; g < k_grid.size(); ++g) {
        const auto [lo, hi] = bootstrap::percentile_bounds(reps[g], boot->level);
        out[g].ci = tailest::ConfidenceInterval{lo, hi, boot->level};
    }
    return out;
}

}  // namespace tailrisk::taildep
