#pragma once

#include "tailrisk/bootstrap.hpp"
#include "tailrisk/ingest.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace tailrisk::cli {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

inline constexpr int kSchemaVersion = 1;

/// Raised for invalid flag combinations detected after parsing (exit 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Options shared by every subcommand.
struct GlobalOptions {
    std::string input;
    std::string out_dir = ".";
    unsigned threads = 1;
    std::uint64_t seed = 20240101;
    // Input interpretation.
    bool returns_csv = false;  ///< input is a date,value returns file instead of prices
    std::string date_col = "Date";
    std::string price_col = "Adj Close";
    std::string from, to;
};

struct BootOptions {
    std::size_t reps = 999;
    double mean_block = 200.0;
    std::optional<std::uint64_t> seed;  ///< defaults to the global seed
    double level = 0.90;

    [[nodiscard]] bootstrap::BootstrapSpec spec(std::uint64_t global_seed) const;
};

void add_global_options(CLI::App& app, GlobalOptions& g);
void add_boot_options(CLI::App& sub, BootOptions& b);

/// Loads --input (or `path`) as a return series according to the global options.
[[nodiscard]] ingest::ReturnSeries load_series(const GlobalOptions& g, const std::string& path);

[[nodiscard]] std::string sha256_file(const fs::path& path);

/// Shortest round-trip decimal form; deterministic across runs.
[[nodiscard]] std::string num(double v);

/// Parses "lo:hi:step" (inclusive) or a comma list into sizes.
[[nodiscard]] std::vector<std::size_t> parse_grid(const std::string& text);

/// Collects outputs of one run and writes them plus a manifest.
class Run {
public:
    Run(const CLI::App& app, const CLI::App& sub, const GlobalOptions& g);

    void add_input(const fs::path& path);
    void note_seed(const std::string& name, std::uint64_t value);

    /// Writes text to out_dir/name and records it.
    void write(const std::string& name, const std::string& contents);
    void write_json(const std::string& name, Json report);

    /// Writes `<command>.manifest.json` listing flags, seeds, input and output checksums.
    void finish();

private:
    fs::path out_dir_;
    std::string command_;
    Json flags_ = Json::object();
    Json seeds_ = Json::object();
    Json inputs_ = Json::array();
    Json outputs_ = Json::array();
};

}  // namespace tailrisk::cli
