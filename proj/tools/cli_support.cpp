#include "cli_support.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tailrisk::cli {

bootstrap::BootstrapSpec BootOptions::spec(std::uint64_t global_seed) const {
    bootstrap::BootstrapSpec s;
    s.replicates = reps;
    s.mean_block = mean_block;
    s.seed = seed.value_or(global_seed);
    s.level = level;
    s.validate();
    return s;
}

void add_global_options(CLI::App& app, GlobalOptions& g) {
    app.add_option("--input", g.input, "input CSV (prices by default)");
    app.add_option("--out-dir", g.out_dir, "directory for reports, plot data and manifests")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads; results do not depend on it")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--seed", g.seed, "base random seed")->capture_default_str();
    app.add_flag("--returns", g.returns_csv, "input holds date,value returns rather than prices");
    app.add_option("--date-col", g.date_col, "date column of a price CSV")->capture_default_str();
    app.add_option("--price-col", g.price_col, "price column of a price CSV")->capture_default_str();
    app.add_option("--from", g.from, "first date kept (YYYY-MM-DD)");
    app.add_option("--to", g.to, "last date kept (YYYY-MM-DD)");
}

void add_boot_options(CLI::App& sub, BootOptions& b) {
    sub.add_option("--boot-reps", b.reps, "bootstrap replicates")->check(CLI::PositiveNumber)->capture_default_str();
    sub.add_option("--boot-mean-block", b.mean_block, "mean geometric block length")
        ->check(CLI::Range(1.0, 1e9))
        ->capture_default_str();
    sub.add_option("--boot-seed", b.seed, "bootstrap seed (default: --seed)");
    sub.add_option("--ci-level", b.level, "two-sided confidence level")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
}

ingest::ReturnSeries load_series(const GlobalOptions& g, const std::string& path) {
    if (path.empty()) throw UsageError("--input is required");
    ingest::ReturnSeries r;
    const auto symbol = fs::path(path).stem().string();
    if (g.returns_csv) {
        r = ingest::read_returns_csv(path, symbol);
    } else {
        ingest::CsvFormat fmt;
        fmt.date_col = g.date_col;
        fmt.price_col = g.price_col;
        r = ingest::to_returns(ingest::load_prices(path, fmt, symbol));
    }
    if (!g.from.empty() || !g.to.empty()) {
        const auto lo = g.from.empty() ? r.dates.front() : ingest::parse_date(g.from);
        const auto hi = g.to.empty() ? r.dates.back() : ingest::parse_date(g.to);
        r = ingest::slice(r, lo, hi);
    }
    return r;
}

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned len = 0;
    EVP_DigestFinal_ex(ctx, md.data(), &len);
    EVP_MD_CTX_free(ctx);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
    }
    return out;
}

std::string num(double v) {
    if (std::isnan(v)) return "NaN";
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), res.ptr};
}

std::vector<std::size_t> parse_grid(const std::string& text) {
    std::vector<std::size_t> out;
    auto to_size = [&](const std::string& s) {
        std::size_t v = 0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw UsageError("bad grid value '" + s + "'");
        return v;
    };
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw UsageError("grid must be lo:hi:step");
        const auto lo = to_size(parts[0]), hi = to_size(parts[1]), step = to_size(parts[2]);
        if (step == 0 || lo > hi) throw UsageError("grid needs lo <= hi and step > 0");
        for (auto v = lo; v <= hi; v += step) out.push_back(v);
    } else {
        std::stringstream ss(text);
        for (std::string p; std::getline(ss, p, ',');) out.push_back(to_size(p));
    }
    if (out.empty()) throw UsageError("empty grid");
    return out;
}

namespace {

Json option_value(const CLI::Option* opt) {
    if (opt->get_type_size() == 0) return opt->count() > 0;  // flag
    if (opt->count() == 0) {
        const auto d = opt->get_default_str();
        return d.empty() ? Json(nullptr) : Json(d);
    }
    const auto& res = opt->results();
    if (opt->get_expected_max() <= 1 && res.size() == 1) return res.front();
    return res;
}

void collect(const CLI::App& app, Json& into) {
    for (const auto* opt : app.get_options()) {
        const auto name = opt->get_name();
        if (name == "--help" || name == "-h,--help" || name.empty()) continue;
        into[opt->get_lnames().empty() ? name : "--" + opt->get_lnames().front()] = option_value(opt);
    }
}

}  // namespace

Run::Run(const CLI::App& app, const CLI::App& sub, const GlobalOptions& g)
    : out_dir_(g.out_dir), command_(sub.get_name()) {
    collect(app, flags_);
    collect(sub, flags_);
    seeds_["seed"] = g.seed;
    fs::create_directories(out_dir_);
}

void Run::add_input(const fs::path& path) {
    inputs_.push_back({{"path", path.string()}, {"sha256", sha256_file(path)}});
}

void Run::note_seed(const std::string& name, std::uint64_t value) { seeds_[name] = value; }

void Run::write(const std::string& name, const std::string& contents) {
    const auto path = out_dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << contents;
    out.close();
    outputs_.push_back({{"path", name}, {"sha256", sha256_file(path)}});
}

void Run::write_json(const std::string& name, Json report) {
    Json doc = {{"schema_version", kSchemaVersion}, {"command", command_}};
    doc.update(report);
    write(name, doc.dump(2) + "\n");
}

void Run::finish() {
    Json m = {{"schema_version", kSchemaVersion},
              {"command", command_},
              {"flags", flags_},
              {"seeds", seeds_},
              {"inputs", inputs_},
              {"outputs", outputs_}};
    const auto path = out_dir_ / (command_ + ".manifest.json");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << m.dump(2) << "\n";
}

}  // namespace tailrisk::cli
