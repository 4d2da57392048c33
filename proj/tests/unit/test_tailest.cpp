#include <doctest.h>

#include "tailrisk/errors.hpp"
#include "tailrisk/simulate.hpp"
#include "tailrisk/tailest.hpp"

#include <cmath>
#include <numeric>

using namespace tailrisk;
using namespace tailrisk::tailest;

namespace {

// Exact Pareto(alpha) quantiles at plotting positions j / (n + 1).
std::vector<double> pareto_quantiles(double alpha, std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t j = 1; j <= n; ++j) {
        x[j - 1] = std::pow(1.0 - static_cast<double>(j) / static_cast<double>(n + 1), -1.0 / alpha);
    }
    return x;
}

}  // namespace

TEST_CASE("OrderedSample") {
    const std::vector<double> x{3, 1, 2, 5, 4};
    const OrderedSample s(x);
    CHECK(s.n() == 5);
    CHECK(s.at(1) == 1);
    CHECK(s.top(1) == 5);
    CHECK(s.top(2) == 4);
    const auto t = OrderedSample::upper_tail(x, 2);
    CHECK(t.n() == 5);
    CHECK(t.stored() == 2);
    CHECK(t.top(2) == 4);
    CHECK(t.at(5) == 5);
    CHECK_THROWS_AS((void)t.at(3), std::out_of_range);
    CHECK_THROWS_AS((void)OrderedSample(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("pareto_qq_points") {
    SUBCASE("exact Pareto quantiles lie on a line through the origin with slope 1/alpha") {
        const double alpha = 2.5;
        const std::size_t k = 40;
        std::vector<double> x;
        for (std::size_t i = 1; i <= k; ++i) {
            x.push_back(std::pow(static_cast<double>(i) / static_cast<double>(k + 1), -1.0 / alpha));
        }
        x.push_back(0.5);  // below the top k
        const auto pts = pareto_qq_points(x, k);
        REQUIRE(pts.size() == k);
        for (const auto& p : pts) CHECK(p.v == doctest::Approx(p.u / alpha).epsilon(1e-12));
        const auto fit = qq_slope_alpha(pts);
        CHECK(fit.alpha == doctest::Approx(alpha).epsilon(1e-10));
        CHECK(fit.method == Method::qq_regression);
    }
    SUBCASE("non-positive value among the top k") {
        const std::vector<double> x{3.0, 2.0, 0.0, -1.0};
        CHECK_THROWS_AS((void)pareto_qq_points(x, 3), DomainError);
    }
}

TEST_CASE("qq_slope_alpha") {
    std::vector<QQPoint> pts;
    for (double u = 0.0; u < 5.0; u += 0.5) pts.push_back({u, 0.5 * u + 3.0});
    CHECK(qq_slope_alpha(pts).alpha == doctest::Approx(2.0));
    CHECK_THROWS_AS((void)qq_slope_alpha(std::vector<QQPoint>{{1.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS((void)qq_slope_alpha(std::vector<QQPoint>{{1.0, 1.0}, {1.0, 2.0}}), DomainError);
    CHECK_THROWS_AS((void)qq_slope_alpha(std::vector<QQPoint>{{1.0, 2.0}, {2.0, 1.0}}), DomainError);
}

TEST_CASE("hill") {
    SUBCASE("hand computation") {
        const std::vector<double> x{1, 2, 4, 8};
        const auto fit = hill(x, 2);
        CHECK(fit.gamma == doctest::Approx(1.0397207708399179).epsilon(1e-12));
        CHECK(fit.alpha == doctest::Approx(0.9617966939259757).epsilon(1e-12));
        CHECK(fit.k_alpha == 2);
    }
    SUBCASE("top values coincide") {
        const std::vector<double> x{1, 5, 5, 5};
        CHECK_THROWS_AS((void)hill(x, 2), DomainError);
    }
    SUBCASE("non-positive threshold") {
        const std::vector<double> x{-1, 0, 4, 8};
        CHECK_THROWS_AS((void)hill(x, 2), DomainError);
    }
    SUBCASE("k out of range") {
        const std::vector<double> x{1, 2, 4, 8};
        CHECK_THROWS_AS((void)hill(x, 0), std::invalid_argument);
        CHECK_THROWS_AS((void)hill(x, 4), std::invalid_argument);
    }
}

TEST_CASE("hill_corrected") {
    SUBCASE("no second-order bias: corrected and standard agree on exact Pareto quantiles") {
        const auto x = pareto_quantiles(2.0, 10000);
        const auto std_fit = hill(x, 500);
        const auto cor_fit = hill_corrected(x, 500);
        CHECK(std::abs(std_fit.gamma - 0.5) < 1e-2);
        CHECK(std::abs(cor_fit.gamma - 0.5) < 3e-2);
        CHECK(std::abs(cor_fit.gamma - std_fit.gamma) < 3e-2);
        CHECK(cor_fit.rho == -1.0);
    }
    SUBCASE("two algebraic forms at rho = -1") {
        const auto x = simulate::sim_frechet(3.0, 5000, 17);
        const OrderedSample s(x);
        for (std::size_t k : {20u, 100u, 400u}) {
            const auto m = log_excess_moments(s, k);
            const double t = m.m2 / (2.0 * m.m1);
            const double form_a = m.m2 / m.m1 - m.m1;
            const double form_b = (m.m1 - 2.0 * t) / -1.0;
            CHECK(form_a == doctest::Approx(form_b).epsilon(1e-14));
            CHECK(hill_corrected(s, k).gamma == doctest::Approx(form_a).epsilon(1e-14));
        }
    }
    SUBCASE("non-positive corrected gamma carries the uncorrected estimate") {
        // Log-excesses (1, 1, 1, 1, 1.1): M2 / M1 - M1 < 0 is impossible for a
        // non-degenerate sample (it equals the variance over the mean) ...
        // so use rho close to zero to force the corrected value negative.
        const std::vector<double> x{1.0, std::exp(1.0), std::exp(1.1), std::exp(1.2), std::exp(2.0)};
        try {
            (void)hill_corrected(x, 3, -0.01);
            FAIL("expected NonPositiveEstimate");
        } catch (const NonPositiveEstimate& e) {
            CHECK(e.corrected_gamma() <= 0.0);
            CHECK(e.uncorrected_gamma() == doctest::Approx(hill(x, 3).gamma));
        }
    }
    CHECK_THROWS_AS((void)hill_corrected(std::vector<double>{1, 2, 4, 8}, 2, 0.5), std::invalid_argument);
}

TEST_CASE("weissman_quantile") {
    SUBCASE("p = 1 - k/n returns X_(n-k)") {
        const auto x = simulate::sim_pareto(2.0, 1000, 3);
        const OrderedSample s(x);
        const TailFit fit{0.37, 1.0 / 0.37};
        const auto q = weissman_quantile(s, 1.0 - 100.0 / 1000.0, 100, fit);
        CHECK(q.value == doctest::Approx(s.at(900)).epsilon(1e-12));
    }
    SUBCASE("direct evaluation") {
        // n = 1000, k = 100, X_(900) = 2, alpha = 2, p = 0.999 -> 2 * 100^(1/2)
        std::vector<double> x(1000);
        for (std::size_t i = 0; i < 1000; ++i) x[i] = i < 900 ? 1.0 + static_cast<double>(i) / 1000.0 : 3.0;
        x[899] = 2.0;
        TailFit fit;
        fit.alpha = 2.0;
        fit.gamma = 0.5;
        const auto q = weissman_quantile(x, 0.999, 100, fit);
        CHECK(q.value == doctest::Approx(20.0).epsilon(1e-12));
    }
    SUBCASE("non-positive threshold") {
        std::vector<double> x(100, -1.0);
        x[99] = 5.0;
        TailFit fit{0.5, 2.0};
        CHECK_THROWS_AS((void)weissman_quantile(x, 0.99, 10, fit), DomainError);
    }
    SUBCASE("strictly increasing in p") {
        const auto x = simulate::sim_pareto(3.0, 2000, 9);
        const OrderedSample s(x);
        const auto fit = hill(s, 100);
        double prev = -1.0;
        for (double p = 0.90; p < 0.9999; p += 0.0013) {
            const double v = weissman_quantile(s, p, 100, fit).value;
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("scale equivariance") {
    const auto x = simulate::sim_frechet(2.5, 3000, 21);
    std::vector<double> y(x.size());
    const double c = 7.25;
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = c * x[i];
    CHECK(hill(y, 150).gamma == doctest::Approx(hill(x, 150).gamma).epsilon(1e-12));
    CHECK(hill_corrected(y, 300).gamma == doctest::Approx(hill_corrected(x, 300).gamma).epsilon(1e-11));
    const auto fit = hill(x, 150);
    CHECK(weissman_quantile(y, 0.999, 150, fit).value ==
          doctest::Approx(c * weissman_quantile(x, 0.999, 150, fit).value).epsilon(1e-12));
}

TEST_CASE("empirical_quantile") {
    std::vector<double> x(100);
    std::iota(x.begin(), x.end(), 1.0);
    CHECK(empirical_quantile(x, 0.99) == 99.0);
    CHECK(empirical_quantile(x, 0.5) == 50.0);
    CHECK(empirical_quantile(x, 0.001) == 1.0);
    CHECK(empirical_quantile(std::vector<double>{5.0}, 0.3) == 5.0);
    CHECK(empirical_quantile(std::vector<double>{5.0}, 0.99) == 5.0);
    CHECK_THROWS_AS((void)empirical_quantile(x, 1.0), std::invalid_argument);
}

TEST_CASE("Hill consistency on Pareto samples") {
    // Mean Hill alpha over 200 seeds, n = 10 000, k = 200, within 5% of alpha.
    for (double alpha : {1.0, 2.0, 3.0}) {
        double total = 0.0;
        for (std::uint64_t seed = 0; seed < 200; ++seed) total += hill(simulate::sim_pareto(alpha, 10000, seed), 200).alpha;
        const double mean = total / 200.0;
        CHECK_MESSAGE(std::abs(mean / alpha - 1.0) < 0.05, "alpha = " << alpha << ", mean = " << mean);
    }
}

TEST_CASE("Hill on Frechet(3), k = n / 50") {
    const auto x = simulate::sim_frechet(3.0, 50000, 2024);
    CHECK(std::abs(hill(x, 1000).alpha - 3.0) < 0.2);
}

TEST_CASE("method names") {
    CHECK(method_from_string("hill") == Method::standard_hill);
    CHECK(method_from_string("corrected") == Method::corrected_hill);
    CHECK(method_from_string("qq") == Method::qq_regression);
    CHECK(to_string(Method::corrected_hill) == "corrected");
    CHECK_THROWS_AS((void)method_from_string("moment"), std::invalid_argument);
}
