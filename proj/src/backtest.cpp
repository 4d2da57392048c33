#include "tailrisk/backtest.hpp"

#include "tailrisk/errors.hpp"
#include "tailrisk/parallel.hpp"
#include "tailrisk/stats.hpp"
#include "tailrisk/tailest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tailrisk::backtest {

namespace {

// n log(q) with the 0 log 0 = 0 convention.
double xlogy(double n, double q) { return n == 0.0 ? 0.0 : n * std::log(q); }

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::size_t ExceedanceSeries::count() const noexcept {
    std::size_t c = 0;
    for (auto v : indicators) c += v;
    return c;
}

ExceedanceSeries exceedances(std::span<const double> realized, std::span<const double> forecasts, double p) {
    if (realized.size() != forecasts.size()) throw std::invalid_argument("exceedances: length mismatch");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("exceedances: p must lie in (0, 1)");
    ExceedanceSeries e;
    e.p = p;
    e.indicators.resize(realized.size());
    for (std::size_t i = 0; i < realized.size(); ++i) e.indicators[i] = realized[i] > forecasts[i] ? 1 : 0;
    return e;
}

TransitionCounts transition_counts(std::span<const std::uint8_t> ind) {
    TransitionCounts c;
    for (std::size_t t = 1; t < ind.size(); ++t) {
        const int from = ind[t - 1], to = ind[t];
        if (from == 0) {
            (to == 0 ? c.n00 : c.n01)++;
        } else {
            (to == 0 ? c.n10 : c.n11)++;
        }
    }
    return c;
}

LrResult uc_test(std::size_t n, std::size_t n1, double p) {
    if (n < 1) throw std::invalid_argument("uc_test: empty series");
    if (n1 > n) throw std::invalid_argument("uc_test: more exceedances than observations");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("uc_test: p must lie in (0, 1)");
    const double n1d = static_cast<double>(n1);
    const double n0d = static_cast<double>(n - n1);
    const double pi = n1d / static_cast<double>(n);
    const double lr = -2.0 * (xlogy(n0d, 1.0 - p) + xlogy(n1d, p) - xlogy(n0d, 1.0 - pi) - xlogy(n1d, pi));
    LrResult r;
    r.statistic = std::max(0.0, lr);
    r.p_value = stats::chi2_sf(r.statistic, 1.0);
    return r;
}

LrResult uc_test(const ExceedanceSeries& e) { return uc_test(e.size(), e.count(), e.p); }

LrResult ind_test(const TransitionCounts& c) {
    const std::size_t total = c.n00 + c.n01 + c.n10 + c.n11;
    LrResult r;
    if (total == 0 || c.n01 + c.n11 == 0) return r;
    const double pi = ratio(c.n01 + c.n11, total);
    const double pi01 = ratio(c.n01, c.n00 + c.n01);
    const double pi11 = ratio(c.n11, c.n10 + c.n11);
    const auto d = [](std::size_t v) { return static_cast<double>(v); };
    const double restricted = xlogy(d(c.n00 + c.n10), 1.0 - pi) + xlogy(d(c.n01 + c.n11), pi);
    const double unrestricted = xlogy(d(c.n00), 1.0 - pi01) + xlogy(d(c.n01), pi01) + xlogy(d(c.n10), 1.0 - pi11) +
                                xlogy(d(c.n11), pi11);
    r.statistic = std::max(0.0, -2.0 * (restricted - unrestricted));
    r.p_value = stats::chi2_sf(r.statistic, 1.0);
    return r;
}

LrResult ind_test(const ExceedanceSeries& e) {
    if (e.size() < 2) throw std::invalid_argument("ind_test: need at least two indicators");
    return ind_test(transition_counts(e.indicators));
}

BacktestReport cc_test(const ExceedanceSeries& e) {
    const auto uc = uc_test(e);
    const auto ind = ind_test(e);
    BacktestReport rep;
    rep.n = e.size();
    rep.n1 = e.count();
    rep.lr_uc = uc.statistic;
    rep.p_uc = uc.p_value;
    rep.lr_ind = ind.statistic;
    rep.p_ind = ind.p_value;
    rep.lr_cc = uc.statistic + ind.statistic;
    rep.p_cc = stats::chi2_sf(rep.lr_cc, 2.0);
    return rep;
}

std::string_view to_string(QuantileMethod m) {
    switch (m) {
        case QuantileMethod::hill: return "hill";
        case QuantileMethod::corrected: return "corrected";
        case QuantileMethod::empirical: return "empirical";
    }
    return "unknown";
}

QuantileMethod quantile_method_from_string(std::string_view s) {
    if (s == "hill" || s == "standard") return QuantileMethod::hill;
    if (s == "corrected") return QuantileMethod::corrected;
    if (s == "empirical") return QuantileMethod::empirical;
    throw std::invalid_argument("unknown quantile method '" + std::string(s) + "'");
}

std::vector<QuantileMethod> all_quantile_methods() {
    return {QuantileMethod::hill, QuantileMethod::corrected, QuantileMethod::empirical};
}

double estimate_quantile(std::span<const double> x, QuantileMethod method, const QuantileConfig& cfg) {
    if (method == QuantileMethod::empirical) return tailest::empirical_quantile(x, cfg.p);
    const std::size_t k_alpha = method == QuantileMethod::hill ? cfg.k_alpha_hill : cfg.k_alpha_corrected;
    const auto s = tailest::OrderedSample::upper_tail(x, std::max(k_alpha, cfg.k) + 1);
    const auto fit = method == QuantileMethod::hill ? tailest::hill(s, k_alpha)
                                                    : tailest::hill_corrected(s, k_alpha, cfg.rho);
    return tailest::weissman_quantile(s, cfg.p, cfg.k, fit).value;
}

UnconditionalResult roll_unconditional(std::span<const double> x, std::size_t window, std::size_t step,
                                       std::span<const std::size_t> test_lens,
                                       std::span<const QuantileMethod> methods, const QuantileConfig& cfg,
                                       unsigned threads) {
    if (window < 2 || step < 1) throw std::invalid_argument("roll_unconditional: bad window or step");
    if (test_lens.empty() || methods.empty()) throw std::invalid_argument("roll_unconditional: nothing to do");
    const std::size_t min_len = *std::min_element(test_lens.begin(), test_lens.end());
    if (x.size() < window + min_len) throw DomainError("roll_unconditional: insufficient data for one window");

    std::vector<std::size_t> starts;
    for (std::size_t s = 0; s + window + min_len <= x.size(); s += step) starts.push_back(s);

    UnconditionalResult res;
    res.test_lens.assign(test_lens.begin(), test_lens.end());
    res.windows.resize(starts.size() * methods.size());
    parallel_for(starts.size(), threads, [&](std::size_t w) {
        const std::size_t s = starts[w];
        const auto est = x.subspan(s, window);
        for (std::size_t m = 0; m < methods.size(); ++m) {
            WindowForecast wf;
            wf.start = s;
            wf.method = methods[m];
            wf.forecast = estimate_quantile(est, methods[m], cfg);
            for (const std::size_t len : test_lens) {
                if (s + window + len > x.size()) {
                    wf.counts.emplace_back();
                    continue;
                }
                std::size_t c = 0;
                for (std::size_t t = s + window; t < s + window + len; ++t) c += x[t] > wf.forecast ? 1 : 0;
                wf.counts.emplace_back(c);
            }
            res.windows[w * methods.size() + m] = std::move(wf);
        }
    });

    for (std::size_t li = 0; li < test_lens.size(); ++li) {
        for (const auto method : methods) {
            MethodSummary ms;
            ms.method = method;
            ms.test_len = test_lens[li];
            double total = 0.0;
            for (const auto& wf : res.windows) {
                if (wf.method != method || !wf.counts[li]) continue;
                ++ms.windows;
                total += static_cast<double>(*wf.counts[li]);
                ms.max_count = std::max(ms.max_count, *wf.counts[li]);
            }
            ms.mean_count = ms.windows ? total / static_cast<double>(ms.windows) : 0.0;
            res.summary.push_back(ms);
        }
    }
    return res;
}

std::vector<DailyForecasts> daily_unconditional(std::span<const double> x, std::size_t window,
                                                std::span<const QuantileMethod> methods, const QuantileConfig& cfg,
                                                unsigned threads) {
    if (x.size() <= window) throw DomainError("daily_unconditional: insufficient data");
    const std::size_t days = x.size() - window;
    std::vector<DailyForecasts> out(methods.size());
    for (std::size_t m = 0; m < methods.size(); ++m) {
        out[m].method = methods[m];
        out[m].first = window;
        out[m].forecasts.resize(days);
    }
    parallel_for(days, threads, [&](std::size_t d) {
        const auto est = x.subspan(d, window);
        for (std::size_t m = 0; m < methods.size(); ++m) out[m].forecasts[d] = estimate_quantile(est, methods[m], cfg);
    });
    for (auto& f : out) f.exceed = exceedances(x.subspan(window), f.forecasts, 1.0 - cfg.p);
    return out;
}

ConditionalResult roll_conditional(std::span<const double> x, std::size_t window,
                                   std::span<const QuantileMethod> methods, const QuantileConfig& cfg,
                                   unsigned threads, const ConditionalOptions& options) {
    if (window < argarch::kMinFitLength) throw std::invalid_argument("roll_conditional: window too short for QMLE");
    if (x.size() <= window) throw DomainError("roll_conditional: insufficient data");
    if (options.chunk < 1) throw std::invalid_argument("roll_conditional: chunk must be positive");
    const std::size_t days = x.size() - window;

    ConditionalResult res;
    res.first = window;
    res.mu_next.resize(days);
    res.sigma_next.resize(days);
    res.params.resize(days);
    std::vector<std::uint8_t> failed(days, 0);
    res.methods.resize(methods.size());
    for (std::size_t m = 0; m < methods.size(); ++m) {
        res.methods[m].method = methods[m];
        res.methods[m].first = window;
        res.methods[m].forecasts.resize(days);
    }

    auto fit_opts = options.fit;
    fit_opts.std_errors = false;
    const std::size_t chunks = (days + options.chunk - 1) / options.chunk;
    std::atomic<std::size_t> done{0};

    parallel_for(chunks, threads, [&](std::size_t c) {
        const std::size_t begin = c * options.chunk;
        const std::size_t end = std::min(days, begin + options.chunk);
        std::optional<argarch::ArGarchParams> warm;
        for (std::size_t d = begin; d < end; ++d) {
            const auto est = x.subspan(d, window);
            argarch::FilteredSeries f;
            try {
                f = argarch::fit_qmle(est, warm, fit_opts);
            } catch (const std::exception&) {
                // Reuse the previous day's parameters; a chunk's first day has
                // none, so fall back to a cold multistart in that case.
                failed[d] = 1;
                if (warm) {
                    f = argarch::filter(est, *warm);
                } else {
                    f = argarch::fit_qmle(est, std::nullopt, fit_opts);
                }
            }
            warm = f.params;
            res.params[d] = f.params;
            const auto fc = argarch::forecast_next(f, est.back());
            res.mu_next[d] = fc.mu_next;
            res.sigma_next[d] = fc.sigma_next;
            for (std::size_t m = 0; m < methods.size(); ++m) {
                const double q = estimate_quantile(f.resid, methods[m], cfg);
                res.methods[m].forecasts[d] = fc.mu_next + fc.sigma_next * q;
            }
            const std::size_t completed = done.fetch_add(1) + 1;
            if (options.progress) options.progress(completed);
        }
    });

    for (std::size_t d = 0; d < days; ++d) {
        if (failed[d]) res.failed_days.push_back(window + d);
    }
    for (auto& m : res.methods) m.exceed = exceedances(x.subspan(window), m.forecasts, 1.0 - cfg.p);
    return res;
}

TestWindowSummary aggregate_test_windows(const ExceedanceSeries& e, std::size_t test_len, double level) {
    if (test_len < 2) throw std::invalid_argument("aggregate_test_windows: test_len must be >= 2");
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("aggregate_test_windows: level must lie in (0, 1)");
    TestWindowSummary s;
    s.test_len = test_len;
    const auto& ind = e.indicators;
    if (ind.size() < test_len) return s;

    const std::size_t n = ind.size();
    // Prefix sums of exceedances and of each transition type ending at t.
    std::vector<std::size_t> cum(n + 1, 0), c01(n + 1, 0), c10(n + 1, 0), c11(n + 1, 0);
    for (std::size_t t = 0; t < n; ++t) {
        cum[t + 1] = cum[t] + ind[t];
        const bool has_prev = t > 0;
        c01[t + 1] = c01[t] + (has_prev && ind[t - 1] == 0 && ind[t] == 1);
        c10[t + 1] = c10[t] + (has_prev && ind[t - 1] == 1 && ind[t] == 0);
        c11[t + 1] = c11[t] + (has_prev && ind[t - 1] == 1 && ind[t] == 1);
    }

    s.windows = n - test_len + 1;
    s.counts.resize(s.windows);
    std::size_t uc_rej = 0, cc_rej = 0;
    double total = 0.0;
    for (std::size_t j = 0; j < s.windows; ++j) {
        const std::size_t hi = j + test_len;
        const std::size_t n1 = cum[hi] - cum[j];
        s.counts[j] = n1;
        total += static_cast<double>(n1);
        s.max_count = std::max(s.max_count, n1);

        // Transitions (t-1, t) with t in [j + 1, hi).
        TransitionCounts tc;
        tc.n01 = c01[hi] - c01[j + 1];
        tc.n10 = c10[hi] - c10[j + 1];
        tc.n11 = c11[hi] - c11[j + 1];
        tc.n00 = (test_len - 1) - tc.n01 - tc.n10 - tc.n11;
        const auto uc = uc_test(test_len, n1, e.p);
        const auto ind_r = ind_test(tc);
        if (uc.p_value < level) ++uc_rej;
        if (stats::chi2_sf(uc.statistic + ind_r.statistic, 2.0) < level) ++cc_rej;
    }
    s.mean_count = total / static_cast<double>(s.windows);
    s.uc_rejection = static_cast<double>(uc_rej) / static_cast<double>(s.windows);
    s.cc_rejection = static_cast<double>(cc_rej) / static_cast<double>(s.windows);
    return s;
}

}  // namespace tailrisk::backtest
