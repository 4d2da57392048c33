#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace tailrisk::ingest {

using Date = std::chrono::sys_days;

/// Parse an ISO-8601 calendar date (YYYY-MM-DD). Throws ParseError.
[[nodiscard]] Date parse_date(const std::string& text);
[[nodiscard]] std::string format_date(Date d);

/// Daily adjusted closing prices for one symbol.
struct PriceSeries {
    std::vector<Date> dates;
    std::vector<double> prices;
    std::string symbol;

    [[nodiscard]] std::size_t size() const noexcept { return prices.size(); }
};

/**
 * @brief Negative log-returns, X_i = -scale * log(P_i / P_{i-1}).
 *
 * The date of return i is the date of the later price. Values are in percent
 * when scale = 100, which is the convention used throughout the library.
 */
struct ReturnSeries {
    std::vector<Date> dates;
    std::vector<double> values;
    std::string symbol;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

/// CSV column mapping. Columns are looked up by header name.
struct CsvFormat {
    std::string date_col = "Date";
    std::string price_col = "Adj Close";
    char delimiter = ',';
};

/**
 * @brief Load a price CSV with a header row.
 *
 * Rows are sorted by date after loading. Rows whose price field is empty or
 * "null" (as in some vendor exports for holidays) are skipped; any other
 * unparsable field is a ParseError. Non-positive prices and duplicate dates
 * raise DomainError.
 */
[[nodiscard]] PriceSeries load_prices(const std::filesystem::path& path, const CsvFormat& format = {},
                                      std::string symbol = {});

/// Same as load_prices but reading from an in-memory CSV document.
[[nodiscard]] PriceSeries parse_prices(const std::string& csv_text, const CsvFormat& format = {},
                                       std::string symbol = {});

[[nodiscard]] ReturnSeries to_returns(const PriceSeries& p, double scale = 100.0);

/// Keep only observations with from <= date <= to.
[[nodiscard]] ReturnSeries slice(const ReturnSeries& r, Date from, Date to);

struct PairedSeries {
    std::vector<Date> dates;
    std::vector<double> a;
    std::vector<double> b;

    [[nodiscard]] std::size_t size() const noexcept { return dates.size(); }
};

/// Strict date intersection of two return series. Throws DomainError when
/// no date is shared.
[[nodiscard]] PairedSeries align_pairs(const ReturnSeries& a, const ReturnSeries& b);

/// Sample autocorrelations for lags 1..max_lag (biased, 1/n denominator).
[[nodiscard]] std::vector<double> acf(std::span<const double> x, std::size_t max_lag);

void write_returns_csv(const ReturnSeries& r, const std::filesystem::path& path);
[[nodiscard]] ReturnSeries read_returns_csv(const std::filesystem::path& path, std::string symbol = {});

}  // namespace tailrisk::ingest
