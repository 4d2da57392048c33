#include "tailrisk/bootstrap.hpp"

#include "tailrisk/errors.hpp"
#include "tailrisk/parallel.hpp"
#include "tailrisk/random.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>

namespace tailrisk::bootstrap {

void BootstrapSpec::validate() const {
    if (replicates < 1) throw std::invalid_argument("bootstrap: replicates must be >= 1");
    if (!(mean_block >= 1.0) || !std::isfinite(mean_block)) {
        throw std::invalid_argument("bootstrap: mean block length must be >= 1");
    }
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("bootstrap: level must lie in (0, 1)");
}

std::vector<std::size_t> resample_indices(std::size_t n, const BootstrapSpec& spec, std::size_t replicate_index) {
    if (n < 2) throw std::invalid_argument("resample: need at least two observations");
    spec.validate();
    auto eng = make_engine(spec.seed, replicate_index);
    const double p = 1.0 / spec.mean_block;
    const double log_q = std::log1p(-p);  // -inf when p == 1

    std::vector<std::size_t> idx;
    idx.reserve(n);
    while (idx.size() < n) {
        const auto start = std::min(n - 1, static_cast<std::size_t>(uniform_open(eng) * static_cast<double>(n)));
        std::size_t len = 1;
        if (p < 1.0) {
            // Inverse-CDF geometric draw on {1, 2, ...}.
            const double g = std::floor(std::log(uniform_open(eng)) / log_q);
            len += static_cast<std::size_t>(std::min(g, static_cast<double>(n)));
        }
        for (std::size_t j = 0; j < len && idx.size() < n; ++j) idx.push_back((start + j) % n);
    }
    return idx;
}

std::vector<double> resample(std::span<const double> x, const BootstrapSpec& spec, std::size_t replicate_index) {
    const auto idx = resample_indices(x.size(), spec, replicate_index);
    std::vector<double> out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) out[i] = x[idx[i]];
    return out;
}

std::pair<double, double> percentile_bounds(std::vector<double> v, double level) {
    if (v.empty()) throw std::invalid_argument("percentile_bounds: no replicates");
    std::sort(v.begin(), v.end());
    const double m = static_cast<double>(v.size());
    const double a = 1.0 - level;
    auto lo_rank = static_cast<std::ptrdiff_t>(std::floor((m + 1.0) * a / 2.0 + 1e-9));
    auto hi_rank = static_cast<std::ptrdiff_t>(std::ceil((m + 1.0) * (1.0 - a / 2.0) - 1e-9));
    const auto last = static_cast<std::ptrdiff_t>(v.size());
    lo_rank = std::clamp<std::ptrdiff_t>(lo_rank, 1, last);
    hi_rank = std::clamp<std::ptrdiff_t>(hi_rank, 1, last);
    return {v[static_cast<std::size_t>(lo_rank - 1)], v[static_cast<std::size_t>(hi_rank - 1)]};
}

namespace {

PercentileInterval summarize(std::vector<std::optional<double>>& results, double point, const BootstrapSpec& spec) {
    PercentileInterval out;
    out.point = point;
    for (const auto& r : results) {
        if (r) {
            out.replicate_stats.push_back(*r);
        } else {
            ++out.failed;
        }
    }
    if (static_cast<double>(out.failed) > 0.2 * static_cast<double>(spec.replicates)) {
        throw DomainError("bootstrap: statistic failed on " + std::to_string(out.failed) + " of " +
                          std::to_string(spec.replicates) + " replicates");
    }
    std::tie(out.lower, out.upper) = percentile_bounds(out.replicate_stats, spec.level);
    return out;
}

}  // namespace

PercentileInterval percentile_ci_indexed(std::size_t n, const IndexStatistic& statistic, const BootstrapSpec& spec,
                                         unsigned threads) {
    spec.validate();
    std::vector<std::size_t> identity(n);
    for (std::size_t i = 0; i < n; ++i) identity[i] = i;
    const double point = statistic(identity);

    std::vector<std::optional<double>> results(spec.replicates);
    parallel_for(spec.replicates, threads, [&](std::size_t r) {
        const auto idx = resample_indices(n, spec, r);
        try {
            const double v = statistic(idx);
            if (std::isfinite(v)) results[r] = v;
        } catch (const std::exception&) {
            // counted as failed
        }
    });
    return summarize(results, point, spec);
}

PercentileInterval percentile_ci(std::span<const double> x, const Statistic& statistic, const BootstrapSpec& spec,
                                 unsigned threads) {
    spec.validate();
    const double point = statistic(x);
    std::vector<std::optional<double>> results(spec.replicates);
    parallel_for(spec.replicates, threads, [&](std::size_t r) {
        const auto sample = resample(x, spec, r);
        try {
            const double v = statistic(sample);
            if (std::isfinite(v)) results[r] = v;
        } catch (const std::exception&) {
        }
    });
    return summarize(results, point, spec);
}

}  // namespace tailrisk::bootstrap
