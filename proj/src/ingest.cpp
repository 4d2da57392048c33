#include "tailrisk/ingest.hpp"

#include "tailrisk/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace tailrisk::ingest {

namespace {

std::vector<std::string> split_row(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (c == '"') {
            if (quoted && i + 1 < line.size() && line[i + 1] == '"') {
                field.push_back('"');
                ++i;
            } else {
                quoted = !quoted;
            }
        } else if (c == delim && !quoted) {
            out.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    out.push_back(std::move(field));
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (trim(header[i]) == name) return i;
    }
    throw ParseError("column '" + name + "' not found in header");
}

bool parse_double(const std::string& s, double& out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

PriceSeries parse_stream(std::istream& in, const CsvFormat& format, std::string symbol) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty CSV: header row required");
    const auto header = split_row(line, format.delimiter);
    const std::size_t date_idx = column_index(header, format.date_col);
    const std::size_t price_idx = column_index(header, format.price_col);

    std::vector<std::pair<Date, double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_row(line, format.delimiter);
        if (fields.size() <= std::max(date_idx, price_idx)) {
            throw ParseError("line " + std::to_string(line_no) + ": too few fields");
        }
        const std::string price_text = trim(fields[price_idx]);
        if (price_text.empty() || price_text == "null" || price_text == "NA") continue;
        double price = 0.0;
        if (!parse_double(price_text, price)) {
            throw ParseError("line " + std::to_string(line_no) + ": bad price '" + price_text + "'");
        }
        if (!(price > 0.0) || !std::isfinite(price)) {
            throw DomainError("line " + std::to_string(line_no) + ": non-positive price");
        }
        Date d;
        try {
            d = parse_date(trim(fields[date_idx]));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        rows.emplace_back(d, price);
    }

    std::stable_sort(rows.begin(), rows.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].first == rows[i - 1].first) {
            throw DomainError("duplicate date " + format_date(rows[i].first));
        }
    }

    PriceSeries out;
    out.symbol = std::move(symbol);
    out.dates.reserve(rows.size());
    out.prices.reserve(rows.size());
    for (const auto& [d, p] : rows) {
        out.dates.push_back(d);
        out.prices.push_back(p);
    }
    return out;
}

}  // namespace

Date parse_date(const std::string& text) {
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = 0;
    if (text.size() != 10 || std::sscanf(text.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) != 3) {
        throw ParseError("bad date '" + text + "' (expected YYYY-MM-DD)");
    }
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!ymd.ok()) throw ParseError("invalid calendar date '" + text + "'");
    return Date{ymd};
}

std::string format_date(Date d) {
    const std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

PriceSeries load_prices(const std::filesystem::path& path, const CsvFormat& format, std::string symbol) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    if (symbol.empty()) symbol = path.stem().string();
    return parse_stream(in, format, std::move(symbol));
}

PriceSeries parse_prices(const std::string& csv_text, const CsvFormat& format, std::string symbol) {
    std::istringstream in(csv_text);
    return parse_stream(in, format, std::move(symbol));
}

ReturnSeries to_returns(const PriceSeries& p, double scale) {
    if (p.size() < 2) throw std::invalid_argument("to_returns: need at least two prices");
    ReturnSeries r;
    r.symbol = p.symbol;
    r.values.reserve(p.size() - 1);
    r.dates.reserve(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) {
        r.values.push_back(-scale * std::log(p.prices[i] / p.prices[i - 1]));
        r.dates.push_back(p.dates[i]);
    }
    return r;
}

ReturnSeries slice(const ReturnSeries& r, Date from, Date to) {
    ReturnSeries out;
    out.symbol = r.symbol;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r.dates[i] >= from && r.dates[i] <= to) {
            out.dates.push_back(r.dates[i]);
            out.values.push_back(r.values[i]);
        }
    }
    return out;
}

PairedSeries align_pairs(const ReturnSeries& a, const ReturnSeries& b) {
    PairedSeries out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a.dates[i] < b.dates[j]) {
            ++i;
        } else if (b.dates[j] < a.dates[i]) {
            ++j;
        } else {
            out.dates.push_back(a.dates[i]);
            out.a.push_back(a.values[i]);
            out.b.push_back(b.values[j]);
            ++i;
            ++j;
        }
    }
    if (out.dates.empty()) throw DomainError("align_pairs: no common dates");
    return out;
}

std::vector<double> acf(std::span<const double> x, std::size_t max_lag) {
    const std::size_t n = x.size();
    if (max_lag == 0) throw std::invalid_argument("acf: max_lag must be positive");
    if (n <= max_lag) throw std::invalid_argument("acf: series shorter than max_lag + 1");
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double denom = 0.0;
    for (double v : x) denom += (v - mean) * (v - mean);
    if (!(denom > 0.0)) throw DomainError("acf: zero-variance series");
    std::vector<double> out(max_lag);
    for (std::size_t h = 1; h <= max_lag; ++h) {
        double s = 0.0;
        for (std::size_t t = 0; t + h < n; ++t) s += (x[t] - mean) * (x[t + h] - mean);
        out[h - 1] = s / denom;
    }
    return out;
}

void write_returns_csv(const ReturnSeries& r, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "date,value\n";
    char buf[64];
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", r.values[i]);
        out << format_date(r.dates[i]) << ',' << buf << '\n';
    }
}

ReturnSeries read_returns_csv(const std::filesystem::path& path, std::string symbol) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty CSV: header row required");
    const auto header = split_row(line, ',');
    const std::size_t date_idx = column_index(header, "date");
    const std::size_t value_idx = column_index(header, "value");
    ReturnSeries r;
    r.symbol = symbol.empty() ? path.stem().string() : std::move(symbol);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto f = split_row(line, ',');
        if (f.size() <= std::max(date_idx, value_idx)) {
            throw ParseError("line " + std::to_string(line_no) + ": too few fields");
        }
        double v = 0.0;
        if (!parse_double(f[value_idx], v)) throw ParseError("line " + std::to_string(line_no) + ": bad value");
        const Date d = parse_date(trim(f[date_idx]));
        if (!r.dates.empty() && !(r.dates.back() < d)) {
            throw DomainError("line " + std::to_string(line_no) + ": dates must be strictly increasing");
        }
        r.dates.push_back(d);
        r.values.push_back(v);
    }
    return r;
}

}  // namespace tailrisk::ingest
