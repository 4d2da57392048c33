#include <doctest.h>

#include "tailrisk/backtest.hpp"
#include "tailrisk/errors.hpp"
#include "tailrisk/random.hpp"
#include "tailrisk/simulate.hpp"
#include "tailrisk/tailest.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

using namespace tailrisk;
using namespace tailrisk::backtest;

namespace {

ExceedanceSeries clustered() {
    ExceedanceSeries e;
    e.indicators.assign(250, 0);
    e.indicators[120] = e.indicators[121] = e.indicators[122] = 1;
    return e;
}

}  // namespace

TEST_CASE("exceedances are strict") {
    const std::vector<double> r{1.0, 2.0, 3.0};
    const std::vector<double> f{1.0, 1.5, 3.5};
    const auto e = exceedances(r, f, 0.05);
    CHECK(e.indicators == std::vector<std::uint8_t>{0, 1, 0});
    CHECK(e.count() == 1);
    CHECK(e.p == 0.05);
    CHECK_THROWS_AS((void)exceedances(r, std::vector<double>{1.0}, 0.05), std::invalid_argument);
}

TEST_CASE("unconditional coverage") {
    const auto five = uc_test(250, 5, 0.01);
    CHECK(five.statistic == doctest::Approx(1.956809788230622).epsilon(1e-12));
    CHECK(five.p_value == doctest::Approx(0.16185).epsilon(1e-3));
    CHECK(uc_test(250, 0, 0.01).statistic == doctest::Approx(5.025167926750726).epsilon(1e-12));
    CHECK(uc_test(1000, 10, 0.01).statistic == doctest::Approx(0.0).scale(1.0));
    CHECK(uc_test(10, 10, 0.01).statistic > 0.0);
    CHECK_THROWS_AS((void)uc_test(10, 11, 0.01), std::invalid_argument);
}

TEST_CASE("independence and conditional coverage on a clustered series") {
    const auto e = clustered();
    const auto c = transition_counts(e.indicators);
    CHECK(c.n00 == 245);
    CHECK(c.n01 == 1);
    CHECK(c.n10 == 1);
    CHECK(c.n11 == 2);
    const auto rep = cc_test(e);
    CHECK(rep.lr_ind == doctest::Approx(15.651075507118115).epsilon(1e-10));
    CHECK(rep.lr_uc == doctest::Approx(0.09494012266443264).epsilon(1e-10));
    CHECK(rep.lr_cc == doctest::Approx(15.746015629782548).epsilon(1e-10));
    CHECK(rep.p_ind == doctest::Approx(7.6e-5).epsilon(0.02));
    CHECK(rep.p_cc == doctest::Approx(0.000381).epsilon(0.01));
    CHECK(rep.p_cc < 0.01);
    CHECK(rep.p_uc > 0.5);
    CHECK(rep.n == 250);
    CHECK(rep.n1 == 3);
}

TEST_CASE("no exceedances") {
    ExceedanceSeries e;
    e.indicators.assign(300, 0);
    const auto rep = cc_test(e);
    CHECK(rep.lr_ind == 0.0);
    CHECK(rep.lr_cc == doctest::Approx(rep.lr_uc));
}

TEST_CASE("LR tests hold their size under i.i.d. Bernoulli hits") {
    auto eng = make_engine(2718);
    std::bernoulli_distribution hit(0.01);
    std::size_t rej_uc = 0, rej_cc = 0;
    const std::size_t reps = 4000;
    for (std::size_t r = 0; r < reps; ++r) {
        ExceedanceSeries e;
        e.indicators.resize(1000);
        for (auto& v : e.indicators) v = hit(eng) ? 1 : 0;
        const auto rep = cc_test(e);
        rej_uc += rep.p_uc < 0.05;
        rej_cc += rep.p_cc < 0.05;
    }
    const double uc = static_cast<double>(rej_uc) / reps;
    const double cc = static_cast<double>(rej_cc) / reps;
    CHECK_MESSAGE(std::abs(uc - 0.05) <= 0.02, "uc size " << uc);
    // The chi-square(2) reference is conservative here: n11 is almost always 0.
    // An independent simulation of the same statistic gives 0.026.
    CHECK_MESSAGE(std::abs(cc - 0.026) <= 0.01, "cc size " << cc);
}

TEST_CASE("aggregate_test_windows agrees with direct evaluation") {
    auto eng = make_engine(5);
    std::bernoulli_distribution hit(0.02);
    ExceedanceSeries e;
    e.indicators.resize(900);
    for (auto& v : e.indicators) v = hit(eng) ? 1 : 0;
    e.indicators[400] = e.indicators[401] = 1;
    const auto s = aggregate_test_windows(e, 250);
    REQUIRE(s.windows == 651);
    REQUIRE(s.counts.size() == 651);
    std::size_t uc = 0, cc = 0, maxc = 0;
    double total = 0.0;
    for (std::size_t w = 0; w < 651; ++w) {
        ExceedanceSeries sub;
        sub.p = e.p;
        sub.indicators.assign(e.indicators.begin() + static_cast<std::ptrdiff_t>(w),
                              e.indicators.begin() + static_cast<std::ptrdiff_t>(w + 250));
        CHECK(s.counts[w] == sub.count());
        const auto rep = cc_test(sub);
        uc += rep.p_uc < 0.05;
        cc += rep.p_cc < 0.05;
        maxc = std::max(maxc, sub.count());
        total += static_cast<double>(sub.count());
    }
    CHECK(s.max_count == maxc);
    CHECK(s.mean_count == doctest::Approx(total / 651.0));
    CHECK(s.uc_rejection == doctest::Approx(static_cast<double>(uc) / 651.0));
    CHECK(s.cc_rejection == doctest::Approx(static_cast<double>(cc) / 651.0));
}

TEST_CASE("estimate_quantile") {
    const auto x = simulate::sim_pareto(3.0, 2000, 4);
    QuantileConfig cfg;
    const tailest::OrderedSample s(x);
    const auto hill_fit = tailest::hill(s, cfg.k_alpha_hill);
    CHECK(estimate_quantile(x, QuantileMethod::hill, cfg) ==
          doctest::Approx(tailest::weissman_quantile(s, cfg.p, cfg.k, hill_fit).value));
    const auto cor_fit = tailest::hill_corrected(s, cfg.k_alpha_corrected);
    CHECK(estimate_quantile(x, QuantileMethod::corrected, cfg) ==
          doctest::Approx(tailest::weissman_quantile(s, cfg.p, cfg.k, cor_fit).value));
    CHECK(estimate_quantile(x, QuantileMethod::empirical, cfg) == s.at(1980));
    CHECK(quantile_method_from_string("corrected") == QuantileMethod::corrected);
    CHECK(to_string(QuantileMethod::empirical) == "empirical");
    CHECK(all_quantile_methods().size() == 3);
}

TEST_CASE("roll_unconditional") {
    const auto x = simulate::sim_argarch({0.0, 0.0, 0.05, 0.1, 0.85}, 3000, simulate::Innovation::student_t(4.0), 9);
    const std::vector<std::size_t> lens{250, 500};
    const auto methods = all_quantile_methods();
    const QuantileConfig cfg;
    const auto r1 = roll_unconditional(x, 1000, 100, lens, methods, cfg, 1);
    const auto r4 = roll_unconditional(x, 1000, 100, lens, methods, cfg, 4);
    REQUIRE(r1.windows.size() == r4.windows.size());
    // Starts 0, 100, ..., 1700 fit a 250-day test span.
    CHECK(r1.windows.size() == 18 * 3);
    for (std::size_t i = 0; i < r1.windows.size(); ++i) {
        CHECK(r1.windows[i].forecast == r4.windows[i].forecast);
        CHECK(r1.windows[i].counts == r4.windows[i].counts);
    }
    const auto& w = r1.windows[3];  // second window, first method
    CHECK(w.start == 100);
    CHECK(w.forecast == doctest::Approx(estimate_quantile(std::span(x).subspan(100, 1000), w.method, cfg)));
    std::size_t count = 0;
    for (std::size_t t = 1100; t < 1350; ++t) count += x[t] > w.forecast;
    REQUIRE(w.counts[0].has_value());
    CHECK(*w.counts[0] == count);
    CHECK(r1.summary.size() == 6);
}

TEST_CASE("daily_unconditional") {
    const auto x = simulate::sim_pareto(3.0, 700, 12);
    const std::vector<QuantileMethod> methods{QuantileMethod::empirical, QuantileMethod::hill};
    const QuantileConfig cfg;
    const auto d = daily_unconditional(x, 500, methods, cfg, 3);
    REQUIRE(d.size() == 2);
    for (const auto& m : d) {
        CHECK(m.first == 500);
        REQUIRE(m.forecasts.size() == 200);
        CHECK(m.exceed.size() == 200);
        for (std::size_t j : {0u, 77u, 199u}) {
            CHECK(m.forecasts[j] == doctest::Approx(estimate_quantile(std::span(x).subspan(j, 500), m.method, cfg)));
            CHECK(m.exceed.indicators[j] == (x[500 + j] > m.forecasts[j] ? 1 : 0));
        }
    }
}

TEST_CASE("roll_conditional") {
    const argarch::ArGarchParams truth{0.02, 0.05, 0.03, 0.08, 0.9};
    const auto x = simulate::sim_argarch(truth, 560, simulate::Innovation::student_t(5.0), 21);
    const auto methods = all_quantile_methods();
    ConditionalOptions opt;
    opt.chunk = 25;
    const QuantileConfig cfg;
    const auto a = roll_conditional(x, 500, methods, cfg, 1, opt);
    const auto b = roll_conditional(x, 500, methods, cfg, 4, opt);
    REQUIRE(a.mu_next.size() == 60);
    CHECK(a.mu_next == b.mu_next);
    CHECK(a.sigma_next == b.sigma_next);
    for (std::size_t m = 0; m < methods.size(); ++m) {
        CHECK(a.methods[m].forecasts == b.methods[m].forecasts);
        CHECK(a.methods[m].exceed.indicators == b.methods[m].exceed.indicators);
    }
    // Day 0 forecast: fit on x[0, 500), forecast x[500].
    const auto f = argarch::fit_qmle(std::span(x).subspan(0, 500), std::nullopt, {.std_errors = false});
    const auto fc = argarch::forecast_next(f, x[499]);
    CHECK(a.mu_next[0] == doctest::Approx(fc.mu_next).epsilon(1e-6));
    CHECK(a.sigma_next[0] == doctest::Approx(fc.sigma_next).epsilon(1e-6));
    const double q = estimate_quantile(f.resid, QuantileMethod::hill, cfg);
    CHECK(a.methods[0].forecasts[0] == doctest::Approx(fc.mu_next + fc.sigma_next * q).epsilon(1e-6));
    CHECK_THROWS_AS((void)roll_conditional(x, 100, methods, cfg), std::invalid_argument);
}

TEST_CASE("unconditional harness under an i.i.d. Pareto null") {
    // 200 windows of 2000 with yearly steps; each method should average about 2.5 hits per 250 days.
    const auto x = simulate::sim_pareto(3.0, 2000 + 250 * 200, 606);
    const std::vector<std::size_t> lens{250};
    const auto methods = all_quantile_methods();
    const auto res = roll_unconditional(x, 2000, 250, lens, methods, QuantileConfig{}, 4);
    REQUIRE(res.summary.size() == 3);
    for (const auto& s : res.summary) {
        CHECK(s.windows == 200);
        CHECK_MESSAGE(std::abs(s.mean_count - 2.5) < 0.5, to_string(s.method) << ": " << s.mean_count);
    }
}
