#include <doctest.h>

#include "tailrisk/errors.hpp"
#include "tailrisk/ingest.hpp"
#include "tailrisk/simulate.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

using namespace tailrisk;
using namespace tailrisk::ingest;

namespace {

PriceSeries prices(std::initializer_list<double> p, const std::string& first = "2020-01-02") {
    PriceSeries s;
    s.symbol = "T";
    Date d = parse_date(first);
    for (double v : p) {
        s.dates.push_back(d);
        s.prices.push_back(v);
        d += std::chrono::days{1};
    }
    return s;
}

ReturnSeries returns_on(const std::vector<std::string>& dates, const std::vector<double>& values) {
    ReturnSeries r;
    for (const auto& d : dates) r.dates.push_back(parse_date(d));
    r.values = values;
    return r;
}

}  // namespace

TEST_CASE("load_prices parses a minimal CSV") {
    const auto p = parse_prices("Date,Adj Close\n2020-01-02,100.0\n2020-01-03,101.0\n");
    REQUIRE(p.size() == 2);
    CHECK(p.prices[1] == doctest::Approx(101.0));
    CHECK(format_date(p.dates[0]) == "2020-01-02");
}

TEST_CASE("load_prices sorts rows and honours the column mapping") {
    CsvFormat fmt;
    fmt.date_col = "day";
    fmt.price_col = "close";
    const auto p = parse_prices("open,close,day\n1,12,2020-01-03\n1,11,2020-01-02\n", fmt);
    REQUIRE(p.size() == 2);
    CHECK(p.prices[0] == 11.0);
    CHECK(p.prices[1] == 12.0);
}

TEST_CASE("load_prices skips vendor null rows") {
    const auto p = parse_prices("Date,Adj Close\n2020-01-02,100\n2020-01-03,null\n2020-01-06,99\n");
    CHECK(p.size() == 2);
}

TEST_CASE("load_prices error paths") {
    CHECK_THROWS_AS((void)parse_prices("Date,Adj Close\n2020-01-02,-1\n"), DomainError);
    CHECK_THROWS_AS((void)parse_prices("Date,Adj Close\n2020-01-02,0\n"), DomainError);
    CHECK_THROWS_AS((void)parse_prices("Date,Adj Close\n2020-01-02,1\n2020-01-02,2\n"), DomainError);
    CHECK_THROWS_AS((void)parse_prices("Date,Adj Close\n2020-01-02,abc\n"), ParseError);
    CHECK_THROWS_AS((void)parse_prices("Date,Adj Close\n2020-13-02,1\n"), ParseError);
    CHECK_THROWS_AS((void)parse_prices("Date,Close\n2020-01-02,1\n"), ParseError);
    CHECK_THROWS_AS((void)parse_prices(""), ParseError);
    CHECK_THROWS_AS((void)load_prices("/nonexistent/file.csv"), ParseError);
}

TEST_CASE("to_returns") {
    SUBCASE("flat price") { CHECK(to_returns(prices({100, 100})).values[0] == 0.0); }
    SUBCASE("one percent drop, percent units") {
        // -100 log(0.99)
        CHECK(to_returns(prices({100, 99})).values[0] == doctest::Approx(1.005033585350145).epsilon(1e-12));
    }
    SUBCASE("log identity") {
        const double p = 37.5;
        CHECK(to_returns(prices({std::exp(1.0) * p, p}), 1.0).values[0] == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("dates follow the later price") {
        const auto r = to_returns(prices({1, 2, 3}));
        CHECK(r.size() == 2);
        CHECK(format_date(r.dates[0]) == "2020-01-03");
    }
    CHECK_THROWS_AS((void)to_returns(prices({1})), std::invalid_argument);
}

TEST_CASE("to_returns inverts by cumulative exponentiation") {
    std::mt19937_64 eng(3);
    std::lognormal_distribution<double> step(0.0, 0.02);
    PriceSeries p;
    double level = 1000.0;
    Date d = parse_date("2000-01-03");
    for (int i = 0; i < 5000; ++i) {
        p.dates.push_back(d);
        p.prices.push_back(level);
        level *= step(eng);
        d += std::chrono::days{1};
    }
    const auto r = to_returns(p);
    double rebuilt = p.prices[0];
    for (std::size_t i = 0; i < r.size(); ++i) {
        rebuilt *= std::exp(-r.values[i] / 100.0);
        CHECK(std::abs(rebuilt / p.prices[i + 1] - 1.0) < 1e-12);
    }
}

TEST_CASE("align_pairs") {
    const auto a = returns_on({"2020-01-02", "2020-01-03", "2020-01-06", "2020-01-07"}, {1, 2, 3, 4});
    SUBCASE("identical series") {
        const auto p = align_pairs(a, a);
        CHECK(p.size() == a.size());
        CHECK(p.a == p.b);
    }
    SUBCASE("partial overlap keeps common dates in order") {
        const auto b = returns_on({"2020-01-03", "2020-01-04", "2020-01-07"}, {20, 99, 40});
        const auto p = align_pairs(a, b);
        REQUIRE(p.size() == 2);
        CHECK(p.a == std::vector<double>{2, 4});
        CHECK(p.b == std::vector<double>{20, 40});
        CHECK(p.size() <= std::min(a.size(), b.size()));
    }
    SUBCASE("disjoint dates") {
        const auto b = returns_on({"2021-01-04"}, {1});
        CHECK_THROWS_AS((void)align_pairs(a, b), DomainError);
    }
}

TEST_CASE("acf") {
    SUBCASE("alternating series, lag 1") {
        std::vector<double> x(10);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = i % 2 == 0 ? 1.0 : -1.0;
        // -(n-1)/n with the biased denominator
        CHECK(acf(x, 1)[0] == doctest::Approx(-0.9));
    }
    SUBCASE("constant series is degenerate") {
        std::vector<double> x(50, 3.0);
        CHECK_THROWS_AS((void)acf(x, 5), DomainError);
    }
    SUBCASE("too short") {
        std::vector<double> x{1, 2, 3};
        CHECK_THROWS_AS((void)acf(x, 3), std::invalid_argument);
    }
    SUBCASE("white noise stays inside 3 / sqrt(n)") {
        std::mt19937_64 eng(11);
        std::normal_distribution<double> z;
        std::vector<double> x(10000);
        for (auto& v : x) v = z(eng);
        CHECK(std::abs(acf(x, 1)[0]) < 0.03);
    }
    SUBCASE("affine invariance and range") {
        const auto x = simulate::sim_argarch({0.0, 0.3, 0.1, 0.1, 0.8}, 2000, simulate::Innovation::gaussian(), 5);
        std::vector<double> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = 3.5 * x[i] - 7.0;
        const auto ax = acf(x, 20), ay = acf(y, 20);
        for (std::size_t h = 0; h < 20; ++h) {
            CHECK(ax[h] == doctest::Approx(ay[h]).epsilon(1e-12));
            CHECK(std::abs(ax[h]) <= 1.0);
        }
    }
}

TEST_CASE("returns CSV round trip") {
    const auto path = std::filesystem::temp_directory_path() / "tailrisk_returns_test.csv";
    const auto r = to_returns(prices({100, 99, 101.5, 100.25}));
    write_returns_csv(r, path);
    const auto back = read_returns_csv(path);
    CHECK(back.dates == r.dates);
    CHECK(back.values == r.values);
    std::filesystem::remove(path);
}
