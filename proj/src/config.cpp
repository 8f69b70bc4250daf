#include "qce/config.hpp"
#include "qce/csv.hpp"
#include "qce/error.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace qce {

using nlohmann::json;

namespace {

json parse_json(std::string_view text, std::string_view what)
{
    try {
        return json::parse(text.begin(), text.end(), nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError("{}: {}", what, e.what());
    }
}

void check_keys(const json& object, std::string_view where, std::initializer_list<std::string_view> allowed)
{
    if (!object.is_object()) {
        throw ConfigError("'{}' must be an object", where);
    }
    for (const auto& [key, value] : object.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError("Unknown key '{}' in '{}'", key, where);
        }
    }
}

template <typename T>
T get(const json& value, std::string_view where)
{
    try {
        return value.get<T>();
    } catch (const json::exception&) {
        throw ConfigError("'{}' has the wrong type ({})", where, value.type_name());
    }
}

std::filesystem::path resolve(const std::filesystem::path& base, const json& value, std::string_view where)
{
    std::filesystem::path path = get<std::string>(value, where);
    if (path.is_relative() && !base.empty()) {
        path = base / path;
    }
    return path.lexically_normal();
}

FoundationColumn parse_foundation(const json& value, std::string_view where)
{
    if (value.is_string()) {
        return {value.get<std::string>(), false};
    }
    check_keys(value, where, {"column", "invert"});
    FoundationColumn column;
    if (!value.contains("column")) {
        throw ConfigError("'{}' needs a 'column'", where);
    }
    column.column = get<std::string>(value.at("column"), where);
    if (value.contains("invert")) {
        column.invert = get<bool>(value.at("invert"), where);
    }
    return column;
}

ColumnMapping parse_mapping(const json& value)
{
    check_keys(value, "mapping", {"country", "country_code", "year", "mo", "po", "sg"});
    auto mapping = ColumnMapping::fraser_default();
    if (value.contains("country")) {
        mapping.country_column = get<std::string>(value.at("country"), "mapping.country");
    }
    if (value.contains("country_code")) {
        const auto& code = value.at("country_code");
        mapping.country_code_column = code.is_null() ? std::nullopt : std::optional(get<std::string>(code, "mapping.country_code"));
    }
    if (value.contains("year")) {
        mapping.year_column = get<std::string>(value.at("year"), "mapping.year");
    }
    const char* roles[] = {"mo", "po", "sg"};
    for (std::size_t i = 0; i < 3; ++i) {
        if (value.contains(roles[i])) {
            mapping.foundations[i] = parse_foundation(value.at(roles[i]), fmt::format("mapping.{}", roles[i]));
        }
    }
    return mapping;
}

std::vector<Benchmark> parse_definitions(const json& value, std::string_view where)
{
    if (!value.is_object()) {
        throw ConfigError("'{}' must be an object of benchmark definitions", where);
    }

    std::vector<Benchmark> benchmarks;
    for (const auto& [key, definition] : value.items()) {
        const auto path = fmt::format("{}.{}", where, key);
        check_keys(definition, path, {"name", "coordinates", "weights"});
        if (!definition.contains("coordinates")) {
            throw ConfigError("'{}' needs 'coordinates'", path);
        }

        Benchmark benchmark;
        benchmark.name     = definition.contains("name") ? get<std::string>(definition.at("name"), path + ".name") : key;
        benchmark.position = FoundationVector(get<std::vector<double>>(definition.at("coordinates"), path + ".coordinates"));
        if (definition.contains("weights")) {
            benchmark.weights = WeightVector(get<std::vector<double>>(definition.at("weights"), path + ".weights"));
        }

        // Validated here so the error names the file entry.
        validate_on(benchmark.position, FoundationScale::standard(), fmt::format("benchmark '{}'", benchmark.name));
        benchmarks.push_back(std::move(benchmark));
    }
    return benchmarks;
}

std::optional<std::vector<double>> parse_breaks(const json& value)
{
    if (value.is_string()) {
        auto text = value.get<std::string>();
        if (text == "quintiles") {
            return std::nullopt;
        }
        if (text == "none") {
            return std::vector<double>{};
        }
        throw ConfigError("geo.breaks must be \"quintiles\", \"none\" or a list of numbers");
    }
    return get<std::vector<double>>(value, "geo.breaks");
}

}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("Cannot open '{}'", path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<double> parse_number_list(std::string_view text)
{
    std::vector<double> values;
    if (csv::trim(text).empty()) {
        return values;
    }

    std::size_t start = 0;
    while (start <= text.size()) {
        auto end  = text.find(',', start);
        auto item = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        auto value = csv::is_missing_sentinel(item) ? std::nullopt : csv::parse_decimal(item);
        if (!value) {
            throw ConfigError("Cannot read number '{}' in list '{}'", csv::trim(item), text);
        }
        values.push_back(*value);
        if (end == std::string_view::npos) {
            break;
        }
        start = end + 1;
    }
    return values;
}

void RunConfig::validate() const
{
    mapping.validate();
    window.validate();
    if (decimals < 0 || decimals > 17) {
        throw ConfigError("decimals must be in [0, 17], got {}", decimals);
    }
    weight_vector();
    overrides();
    auto set = benchmark_set();
    if (set.size() == 0) {
        throw ConfigError("No benchmarks configured");
    }
    geo.validate();
}

BenchmarkSet RunConfig::benchmark_set() const
{
    std::vector<Benchmark> all;
    if (include_builtin_benchmarks) {
        auto builtin = builtin_benchmarks();
        all.assign(builtin.benchmarks().begin(), builtin.benchmarks().end());
    }
    all.insert(all.end(), custom_benchmarks.begin(), custom_benchmarks.end());
    return BenchmarkSet(std::move(all));
}

WeightVector RunConfig::weight_vector() const
{
    WeightVector result(weights);
    if (result.dimensions() != 3) {
        throw InvalidWeights("Expected 3 weights, got {}", result.dimensions());
    }
    return result;
}

NameOverrides RunConfig::overrides() const
{
    return NameOverrides(name_overrides);
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& baseDirectory)
{
    auto root = parse_json(text, "config");
    check_keys(root, "config", {"dataset", "panel", "mapping", "name_overrides", "window", "benchmarks", "mode", "averaging_order", "weights", "decimals", "outputs", "geo"});

    RunConfig config;
    if (root.contains("dataset")) {
        config.dataset = resolve(baseDirectory, root.at("dataset"), "dataset");
    }
    if (root.contains("panel")) {
        config.panel = resolve(baseDirectory, root.at("panel"), "panel");
    }
    if (root.contains("mapping")) {
        config.mapping = parse_mapping(root.at("mapping"));
    }
    if (root.contains("name_overrides")) {
        config.name_overrides = get<std::map<std::string, std::string>>(root.at("name_overrides"), "name_overrides");
    }
    if (root.contains("window")) {
        const auto& window = root.at("window");
        check_keys(window, "window", {"start", "end", "min_years"});
        if (window.contains("start")) {
            config.window.start_year = get<int>(window.at("start"), "window.start");
        }
        if (window.contains("end")) {
            config.window.end_year = get<int>(window.at("end"), "window.end");
        }
        if (window.contains("min_years")) {
            config.window.min_years = get<int>(window.at("min_years"), "window.min_years");
        }
    }
    if (root.contains("benchmarks")) {
        const auto& benchmarks = root.at("benchmarks");
        check_keys(benchmarks, "benchmarks", {"include_builtin", "definitions", "file"});
        if (benchmarks.contains("include_builtin")) {
            config.include_builtin_benchmarks = get<bool>(benchmarks.at("include_builtin"), "benchmarks.include_builtin");
        }
        if (benchmarks.contains("file")) {
            auto extra = load_benchmark_file(resolve(baseDirectory, benchmarks.at("file"), "benchmarks.file"));
            config.custom_benchmarks.insert(config.custom_benchmarks.end(), extra.begin(), extra.end());
        }
        if (benchmarks.contains("definitions")) {
            auto extra = parse_definitions(benchmarks.at("definitions"), "benchmarks.definitions");
            config.custom_benchmarks.insert(config.custom_benchmarks.end(), extra.begin(), extra.end());
        }
    }
    if (root.contains("mode")) {
        auto text = get<std::string>(root.at("mode"), "mode");
        auto mode = parse_normalization_mode(text);
        if (!mode) {
            throw ConfigError("Unknown mode '{}' (fixed-range or benchmark-relative)", text);
        }
        config.mode = *mode;
    }
    if (root.contains("averaging_order")) {
        auto text  = get<std::string>(root.at("averaging_order"), "averaging_order");
        auto order = parse_averaging_order(text);
        if (!order) {
            throw ConfigError("Unknown averaging order '{}' (average-then-score or score-then-average)", text);
        }
        config.order = *order;
    }
    if (root.contains("weights")) {
        config.weights = get<std::vector<double>>(root.at("weights"), "weights");
    }
    if (root.contains("decimals")) {
        config.decimals = get<int>(root.at("decimals"), "decimals");
    }
    if (root.contains("outputs")) {
        const auto& outputs = root.at("outputs");
        check_keys(outputs, "outputs", {"panel", "exclusions", "scores", "rank", "geojson", "unmatched"});
        auto assign = [&](const char* key, std::optional<std::filesystem::path>& target) {
            if (outputs.contains(key)) {
                target = resolve(baseDirectory, outputs.at(key), fmt::format("outputs.{}", key));
            }
        };
        assign("panel", config.outputs.panel);
        assign("exclusions", config.outputs.exclusions);
        assign("scores", config.outputs.scores);
        assign("rank", config.outputs.rank);
        assign("geojson", config.outputs.geojson);
        assign("unmatched", config.outputs.unmatched);
    }
    if (root.contains("geo")) {
        const auto& geo = root.at("geo");
        check_keys(geo, "geo", {"geometry", "key_property", "prefix", "breaks"});
        if (geo.contains("geometry")) {
            config.geometry = resolve(baseDirectory, geo.at("geometry"), "geo.geometry");
        }
        if (geo.contains("key_property")) {
            config.geo.key_property = get<std::string>(geo.at("key_property"), "geo.key_property");
        }
        if (geo.contains("prefix")) {
            config.geo.properties_prefix = get<std::string>(geo.at("prefix"), "geo.prefix");
        }
        if (geo.contains("breaks")) {
            config.geo.class_breaks = parse_breaks(geo.at("breaks"));
        }
    }

    return config;
}

RunConfig load_config(const std::filesystem::path& path)
{
    return parse_config(read_text_file(path), path.parent_path());
}

std::vector<Benchmark> parse_benchmark_definitions(std::string_view text)
{
    return parse_definitions(parse_json(text, "benchmark file"), "benchmarks");
}

std::vector<Benchmark> load_benchmark_file(const std::filesystem::path& path)
{
    return parse_benchmark_definitions(read_text_file(path));
}

std::string benchmark_definitions_json(const std::vector<Benchmark>& benchmarks)
{
    // Keys sorted by nlohmann's default object type; numbers printed at full precision.
    json root = json::object();
    for (const auto& benchmark : benchmarks) {
        json definition;
        definition["name"]        = benchmark.name;
        definition["coordinates"] = std::vector<double>(benchmark.position.scores().begin(), benchmark.position.scores().end());
        if (benchmark.weights) {
            definition["weights"] = std::vector<double>(benchmark.weights->weights().begin(), benchmark.weights->weights().end());
        }
        root[benchmark.name] = std::move(definition);
    }
    return root.dump(2) + "\n";
}

}
