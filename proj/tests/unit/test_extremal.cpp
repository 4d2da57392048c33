#include <doctest.h>

#include "tailrisk/errors.hpp"
#include "tailrisk/extremal.hpp"
#include "tailrisk/simulate.hpp"

#include <cmath>
#include <vector>

using namespace tailrisk;
using namespace tailrisk::extremal;

TEST_CASE("block_maxima_sliding") {
    const std::vector<double> x{1, 2, 3, 4};
    CHECK(block_maxima_sliding(x, 2) == std::vector<double>{3, 4});
    const std::vector<double> y{5, 1, 1, 1, 2, 0};
    CHECK(block_maxima_sliding(y, 2) == std::vector<double>{5, 1, 2, 2});
    CHECK_THROWS_AS((void)block_maxima_sliding(x, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)block_maxima_sliding(x, 4), std::invalid_argument);
}

TEST_CASE("pseudo-observations") {
    const auto x = simulate::sim_frechet(2.0, 1000, 5);
    const auto y = sliding_pseudo_observations(x, 50);
    CHECK(y.size() == 950);
    for (double v : y) CHECK(v >= 0.0);
    const auto fit = extremal_index_sliding(x, 50);
    CHECK(fit.pseudo_obs_count == 950);
    CHECK(fit.n == 1000);
    CHECK(fit.block_size == 50);
    CHECK(fit.theta_raw == doctest::Approx(1.0 / fit.pseudo_obs_mean));
    CHECK(fit.theta > 0.0);
    CHECK(fit.theta <= 1.0);
}

TEST_CASE("constant series") {
    const std::vector<double> x(500, 1.5);
    CHECK_THROWS_AS((void)extremal_index_sliding(x, 20), DomainError);
}

TEST_CASE("invariance under increasing transforms") {
    const auto x = simulate::sim_frechet(3.0, 2000, 8);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::log(x[i]) * 4.0 + 1.0;
    CHECK(extremal_index_sliding(y, 80).theta_raw == doctest::Approx(extremal_index_sliding(x, 80).theta_raw));
}

TEST_CASE("i.i.d. data: theta near one and the interval covers one") {
    std::size_t covered = 0;
    double total = 0.0;
    const std::size_t seeds = 200;
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
        const auto x = simulate::sim_frechet(3.0, 5000, 1000 + seed);
        auto fit = extremal_index_sliding(x, 100);
        total += fit.theta;
        const auto ci = theta_ci(fit, x, 0.95, CiMethod::exp_likelihood);
        CHECK(ci.lower <= fit.theta);
        CHECK(ci.upper >= fit.theta);
        if (ci.lower <= 1.0 && ci.upper >= 1.0) ++covered;
    }
    CHECK(total / static_cast<double>(seeds) > 0.9);
    CHECK_MESSAGE(static_cast<double>(covered) / static_cast<double>(seeds) >= 0.90, "covered " << covered);
}

TEST_CASE("duplicated i.i.d. data: theta near 1/m") {
    const simulate::Sampler base = [](std::size_t count, std::uint64_t seed) {
        return simulate::sim_frechet(3.0, count, seed);
    };
    for (std::size_t m : {2u, 3u}) {
        double total = 0.0;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            total += extremal_index_sliding(simulate::sim_duplicated(base, m, 12000, 50 + seed), 200).theta;
        }
        const double mean = total / 20.0;
        CHECK_MESSAGE(std::abs(mean - 1.0 / static_cast<double>(m)) < 0.05, "m = " << m << ", mean = " << mean);
    }
}

TEST_CASE("theta_ci") {
    const auto x = simulate::sim_frechet(3.0, 3000, 77);
    const auto fit = extremal_index_sliding(x, 60);
    SUBCASE("likelihood interval endpoints") {
        const auto ci = theta_ci(fit, x, 0.90, CiMethod::exp_likelihood);
        CHECK(ci.level == 0.90);
        CHECK(ci.lower > 0.0);
        CHECK(ci.upper <= 1.0);
        const auto wide = theta_ci(fit, x, 0.99, CiMethod::exp_likelihood);
        CHECK(wide.lower <= ci.lower);
        CHECK(wide.upper >= ci.upper);
    }
    SUBCASE("bootstrap interval is reproducible") {
        bootstrap::BootstrapSpec spec;
        spec.replicates = 99;
        spec.mean_block = 60;
        spec.seed = 3;
        const auto a = theta_ci(fit, x, 0.90, CiMethod::block_bootstrap, spec, 1);
        const auto b = theta_ci(fit, x, 0.90, CiMethod::block_bootstrap, spec, 4);
        CHECK(a.lower == b.lower);
        CHECK(a.upper == b.upper);
        CHECK(a.lower <= a.upper);
        CHECK(a.upper <= 1.0);
    }
}
