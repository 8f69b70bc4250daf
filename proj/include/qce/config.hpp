#pragma once

#include "qce/benchmarks.hpp"
#include "qce/classify_rank.hpp"
#include "qce/data_ingest.hpp"
#include "qce/geo_export.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qce {

/// Environment variable naming the default config file.
inline constexpr const char* ConfigEnvironmentVariable = "QCE_CONFIG";

struct OutputPaths
{
    std::optional<std::filesystem::path> panel;
    std::optional<std::filesystem::path> exclusions;
    std::optional<std::filesystem::path> scores;
    std::optional<std::filesystem::path> rank;
    std::optional<std::filesystem::path> geojson;
    std::optional<std::filesystem::path> unmatched;
};

/// Everything a batch run needs. Loaded from a JSON config (comments allowed);
/// every field can be overridden on the command line.
struct RunConfig
{
    std::optional<std::filesystem::path> dataset;
    std::optional<std::filesystem::path> panel;
    ColumnMapping mapping = ColumnMapping::fraser_default();
    std::map<std::string, std::string> name_overrides;
    PeriodWindow window;
    bool include_builtin_benchmarks = true;
    std::vector<Benchmark> custom_benchmarks;
    NormalizationMode mode = NormalizationMode::FixedRange;
    AveragingOrder order   = AveragingOrder::AverageThenScore;
    std::vector<double> weights{1.0, 1.0, 1.0};
    OutputPaths outputs;
    int decimals = 2;
    std::optional<std::filesystem::path> geometry;
    GeoJoinSpec geo;

    /// Throws ConfigError (or the relevant domain error) on any invariant violation.
    void validate() const;

    BenchmarkSet benchmark_set() const;
    WeightVector weight_vector() const;
    NameOverrides overrides() const;
};

/// Parses config text. Relative paths resolve against `baseDirectory`.
RunConfig parse_config(std::string_view text, const std::filesystem::path& baseDirectory = {});
RunConfig load_config(const std::filesystem::path& path);

/// Benchmark definition document: { "<key>": { "name": ..., "coordinates": [...], "weights": [...] } }.
/// "name" defaults to the key; "weights" is optional.
std::vector<Benchmark> parse_benchmark_definitions(std::string_view text);
std::vector<Benchmark> load_benchmark_file(const std::filesystem::path& path);

/// Serializes benchmarks in the definition format (stable key order, full precision).
std::string benchmark_definitions_json(const std::vector<Benchmark>& benchmarks);

/// "1,2,3" -> {1, 2, 3}. Throws ConfigError on an unreadable item.
std::vector<double> parse_number_list(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);

}
