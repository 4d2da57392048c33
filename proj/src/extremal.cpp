#include "tailrisk/extremal.hpp"

#include "tailrisk/errors.hpp"
#include "tailrisk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace tailrisk::extremal {

namespace {

void check_block(std::size_t n, std::size_t b) {
    if (b <= 1 || b >= n) throw std::invalid_argument("block size must satisfy 1 < b < n");
}

// Solve r - 1 - log r = c for r on one side of 1 by bisection.
double lr_ratio_root(double c, bool below) {
    auto f = [c](double r) { return r - 1.0 - std::log(r) - c; };
    double lo = below ? 1e-300 : 1.0;
    double hi = below ? 1.0 : 2.0;
    if (!below) {
        while (f(hi) < 0.0) hi *= 2.0;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = below ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        const bool inside = f(mid) < 0.0;
        if (below ? inside : !inside) {
            hi = mid;
        } else {
            lo = mid;
        }
        if (hi - lo <= 1e-14 * hi) break;
    }
    return 0.5 * (lo + hi);
}

double clamp_theta(double t) { return std::clamp(t, std::numeric_limits<double>::min(), 1.0); }

}  // namespace

std::vector<double> block_maxima_sliding(std::span<const double> x, std::size_t b) {
    const std::size_t n = x.size();
    check_block(n, b);
    const std::size_t width = b + 1;
    std::vector<double> out;
    out.reserve(n - b);
    std::deque<std::size_t> dq;  // indices with decreasing values
    for (std::size_t i = 0; i < n; ++i) {
        while (!dq.empty() && x[dq.back()] <= x[i]) dq.pop_back();
        dq.push_back(i);
        if (dq.front() + width <= i) dq.pop_front();
        if (i + 1 >= width) out.push_back(x[dq.front()]);
    }
    return out;
}

std::vector<double> sliding_pseudo_observations(std::span<const double> x, std::size_t b) {
    const auto maxima = block_maxima_sliding(x, b);
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(x.size());
    const double bd = static_cast<double>(b);
    std::vector<double> y(maxima.size());
    for (std::size_t i = 0; i < maxima.size(); ++i) {
        const auto count = std::upper_bound(sorted.begin(), sorted.end(), maxima[i]) - sorted.begin();
        y[i] = -bd * std::log(static_cast<double>(count) / n);
    }
    return y;
}

ExtremalIndexFit extremal_index_sliding(std::span<const double> x, std::size_t b) {
    check_block(x.size(), b);
    const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    if (*mn == *mx) throw DomainError("extremal_index_sliding: constant series");
    const auto y = sliding_pseudo_observations(x, b);
    double sum = 0.0;
    for (double v : y) sum += v;
    const double mean = sum / static_cast<double>(y.size());
    if (!(mean > 0.0)) throw DomainError("extremal_index_sliding: every block maximum equals the sample maximum");

    ExtremalIndexFit fit;
    fit.block_size = b;
    fit.n = x.size();
    fit.pseudo_obs_count = y.size();
    fit.pseudo_obs_mean = mean;
    fit.theta_raw = 1.0 / mean;
    fit.theta = clamp_theta(fit.theta_raw);
    return fit;
}

ConfidenceInterval theta_ci(const ExtremalIndexFit& fit, std::span<const double> x, double level, CiMethod method,
                            const bootstrap::BootstrapSpec& boot, unsigned threads) {
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("theta_ci: level must lie in (0, 1)");
    if (fit.n != x.size()) throw std::invalid_argument("theta_ci: fit was computed on a different series");

    ConfidenceInterval ci;
    ci.level = level;
    if (method == CiMethod::exp_likelihood) {
        const double n_eff =
            static_cast<double>(fit.n - fit.block_size) / static_cast<double>(fit.block_size);
        // 2 n_eff (r - 1 - log r) <= chi2_1(level), r = theta / theta_hat.
        const double c = stats::chi2_quantile(level, 1.0) / (2.0 * n_eff);
        ci.lower = clamp_theta(fit.theta_raw * lr_ratio_root(c, true));
        ci.upper = clamp_theta(fit.theta_raw * lr_ratio_root(c, false));
        return ci;
    }

    auto spec = boot;
    spec.level = level;
    const std::size_t b = fit.block_size;
    const auto interval = bootstrap::percentile_ci(
        x, [b](std::span<const double> s) { return extremal_index_sliding(s, b).theta_raw; }, spec, threads);
    ci.lower = clamp_theta(interval.lower);
    ci.upper = clamp_theta(interval.upper);
    return ci;
}

}  // namespace tailrisk::extremal
