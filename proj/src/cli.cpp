#include "qce/cli.hpp"
#include "qce/benchmarks.hpp"
#include "qce/csv.hpp"
#include "qce/error.hpp"
#include "qce/geo_export.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

namespace qce::cli {

namespace {

struct Flags
{
    std::optional<std::string> config;
    std::optional<std::string> dataset;
    std::optional<std::string> panel;
    std::optional<std::string> report;

    std::optional<std::string> countryColumn;
    std::optional<std::string> countryCodeColumn;
    std::optional<std::string> yearColumn;
    std::optional<std::string> moColumn;
    std::optional<std::string> poColumn;
    std::optional<std::string> sgColumn;
    std::optional<std::string> invert;
    std::optional<std::string> nameOverrides;

    std::optional<int> start;
    std::optional<int> end;
    std::optional<int> minYears;

    std::optional<std::string> benchmarksFile;
    bool noBuiltin = false;
    std::optional<std::string> mode;
    std::optional<std::string> avgOrder;
    std::optional<std::string> weights;
    std::optional<int> decimals;

    std::optional<std::string> out;
    std::optional<std::string> exclusions;
    std::optional<std::string> geometry;
    std::optional<std::string> keyProperty;
    std::optional<std::string> prefix;
    std::optional<std::string> breaks;
    std::optional<std::string> unmatched;

    std::string benchmark;
    int count = 20;
    std::string format = "table";
    std::string deriveName;
    std::string countries;
};

void add_input_options(CLI::App& cmd, Flags& flags)
{
    cmd.add_option("--config", flags.config, "JSON config file (default: $QCE_CONFIG)");
    cmd.add_option("--dataset", flags.dataset, "Source dataset CSV");
    cmd.add_option("--panel", flags.panel, "Canonical panel CSV written by 'ingest'");
    cmd.add_option("--country-column", flags.countryColumn, "Country name column");
    cmd.add_option("--country-code-column", flags.countryCodeColumn, "ISO alpha-3 column");
    cmd.add_option("--year-column", flags.yearColumn, "Year column");
    cmd.add_option("--mo-column", flags.moColumn, "Market organization column");
    cmd.add_option("--po-column", flags.poColumn, "Private ownership column");
    cmd.add_option("--sg-column", flags.sgColumn, "Small government column");
    cmd.add_option("--invert", flags.invert, "Foundations to invert, e.g. 'po,sg'");
    cmd.add_option("--name-overrides", flags.nameOverrides, "JSON file mapping raw country names to alpha-3 codes");
}

void add_scoring_options(CLI::App& cmd, Flags& flags)
{
    cmd.add_option("--start", flags.start, "First year of the averaging window");
    cmd.add_option("--end", flags.end, "Last year of the averaging window");
    cmd.add_option("--min-years", flags.minYears, "Minimum complete years per country");
    cmd.add_option("--benchmarks", flags.benchmarksFile, "Benchmark definition file");
    cmd.add_flag("--no-builtin", flags.noBuiltin, "Drop the built-in benchmarks");
    cmd.add_option("--mode", flags.mode, "fixed-range (default) or benchmark-relative");
    cmd.add_option("--avg-order", flags.avgOrder, "average-then-score (default) or score-then-average");
    cmd.add_option("--weights", flags.weights, "Comma-separated foundation weights");
    cmd.add_option("--dp", flags.decimals, "Decimals in written scores");
}

RunConfig resolve_config(const Flags& flags)
{
    RunConfig config;
    std::optional<std::string> path = flags.config;
    if (!path) {
        if (const char* env = std::getenv(ConfigEnvironmentVariable); env != nullptr && *env != '\0') {
            path = env;
        }
    }
    if (path) {
        config = load_config(*path);
    }

    if (flags.dataset) {
        config.dataset = *flags.dataset;
        config.panel.reset();
    }
    if (flags.panel) {
        config.panel = *flags.panel;
    }
    if (flags.countryColumn) {
        config.mapping.country_column = *flags.countryColumn;
    }
    if (flags.countryCodeColumn) {
        config.mapping.country_code_column = *flags.countryCodeColumn;
    }
    if (flags.yearColumn) {
        config.mapping.year_column = *flags.yearColumn;
    }
    if (flags.moColumn) {
        config.mapping.foundations[MarketOrganization].column = *flags.moColumn;
    }
    if (flags.poColumn) {
        config.mapping.foundations[PrivateOwnership].column = *flags.poColumn;
    }
    if (flags.sgColumn) {
        config.mapping.foundations[SmallGovernment].column = *flags.sgColumn;
    }
    if (flags.invert) {
        for (auto& foundation : config.mapping.foundations) {
            foundation.invert = false;
        }
        std::stringstream list(*flags.invert);
        std::string role;
        while (std::getline(list, role, ',')) {
            role = std::string(csv::trim(role));
            if (role == "mo") {
                config.mapping.foundations[MarketOrganization].invert = true;
            } else if (role == "po") {
                config.mapping.foundations[PrivateOwnership].invert = true;
            } else if (role == "sg") {
                config.mapping.foundations[SmallGovernment].invert = true;
            } else if (!role.empty()) {
                throw ConfigError("Unknown foundation '{}' in --invert (use mo, po, sg)", role);
            }
        }
    }
    if (flags.nameOverrides) {
        auto text = read_text_file(*flags.nameOverrides);
        auto more = parse_config(fmt::format("{{\"name_overrides\": {}}}", text)).name_overrides;
        for (auto& [raw, code] : more) {
            config.name_overrides[raw] = code;
        }
    }

    if (flags.start) {
        config.window.start_year = *flags.start;
    }
    if (flags.end) {
        config.window.end_year = *flags.end;
    }
    if (flags.minYears) {
        config.window.min_years = *flags.minYears;
    }
    if (flags.benchmarksFile) {
        auto extra = load_benchmark_file(*flags.benchmarksFile);
        config.custom_benchmarks.insert(config.custom_benchmarks.end(), extra.begin(), extra.end());
    }
    if (flags.noBuiltin) {
        config.include_builtin_benchmarks = false;
    }
    if (flags.mode) {
        auto mode = parse_normalization_mode(*flags.mode);
        if (!mode) {
            throw ConfigError("Unknown --mode '{}' (fixed-range or benchmark-relative)", *flags.mode);
        }
        config.mode = *mode;
    }
    if (flags.avgOrder) {
        auto order = parse_averaging_order(*flags.avgOrder);
        if (!order) {
            throw ConfigError("Unknown --avg-order '{}' (average-then-score or score-then-average)", *flags.avgOrder);
        }
        config.order = *order;
    }
    if (flags.weights) {
        config.weights = parse_number_list(*flags.weights);
    }
    if (flags.decimals) {
        config.decimals = *flags.decimals;
    }
    if (flags.exclusions) {
        config.outputs.exclusions = *flags.exclusions;
    }
    if (flags.geometry) {
        config.geometry = *flags.geometry;
    }
    if (flags.keyProperty) {
        config.geo.key_property = *flags.keyProperty;
    }
    if (flags.prefix) {
        config.geo.properties_prefix = *flags.prefix;
    }
    if (flags.breaks) {
        if (*flags.breaks == "quintiles") {
            config.geo.class_breaks.reset();
        } else if (*flags.breaks == "none") {
            config.geo.class_breaks = std::vector<double>{};
        } else {
            config.geo.class_breaks = parse_number_list(*flags.breaks);
        }
    }
    if (flags.unmatched) {
        config.outputs.unmatched = *flags.unmatched;
    }

    config.validate();
    return config;
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("Cannot write '{}'", path.string());
    }
    out << content;
    out.flush();
    if (!out) {
        throw IoError("Failed writing '{}'", path.string());
    }
}

void emit(const std::optional<std::filesystem::path>& path, const std::string& content, std::ostream& out)
{
    if (path) {
        write_file(*path, content);
    } else {
        out << content;
    }
}

std::string one_line(std::string text)
{
    std::replace(text.begin(), text.end(), '\n', ' ');
    std::replace(text.begin(), text.end(), '\r', ' ');
    return text;
}

int report_error(std::ostream& err, std::string_view kind, int code, const std::string& message)
{
    err << "qce: error[" << kind << "]: " << one_line(message) << '\n';
    return code;
}

ClassificationReport obtain_report(const RunConfig& config, const Flags& flags, std::ostream& diag)
{
    if (flags.report) {
        std::ifstream in(*flags.report, std::ios::binary);
        if (!in) {
            throw IoError("Cannot open report '{}'", *flags.report);
        }
        return read_scores_csv(in, *flags.report);
    }

    std::vector<Exclusion> excluded;
    auto report = build_report(config, &excluded);
    for (const auto& exclusion : excluded) {
        diag << "qce: note: excluded " << exclusion.country_id << ": " << exclusion.reason << '\n';
    }
    return report;
}

int cmd_ingest(const Flags& flags, std::ostream& out)
{
    auto config = resolve_config(flags);
    if (!config.dataset) {
        throw ConfigError("ingest needs --dataset (or 'dataset' in the config)");
    }
    if (flags.out) {
        config.outputs.panel = *flags.out;
    }

    auto parsed = parse_dataset_file(*config.dataset, config.mapping, config.overrides());

    std::ostringstream panelText;
    write_panel_csv(panelText, parsed.panel);
    std::ostringstream exclusionText;
    write_exclusion_report(exclusionText, parsed.exclusions);

    if (!config.outputs.panel) {
        out << panelText.str();
        return Success;
    }

    write_file(*config.outputs.panel, panelText.str());
    if (config.outputs.exclusions) {
        write_file(*config.outputs.exclusions, exclusionText.str());
    }

    out << fmt::format("{} records ({} complete) written to {}\n", parsed.panel.size(), parsed.panel.complete_count(), config.outputs.panel->string());
    out << fmt::format("{} exclusions\n", parsed.exclusions.size());
    if (!config.outputs.exclusions) {
        out << exclusionText.str();
    }
    return Success;
}

int cmd_score(const Flags& flags, std::ostream& out, std::ostream& err)
{
    auto config = resolve_config(flags);
    if (flags.out) {
        config.outputs.scores = *flags.out;
    }

    std::vector<Exclusion> excluded;
    auto report = build_report(config, &excluded);
    if (config.outputs.exclusions) {
        std::ostringstream text;
        write_exclusion_report(text, excluded);
        write_file(*config.outputs.exclusions, text.str());
    } else {
        for (const auto& exclusion : excluded) {
            err << "qce: note: excluded " << exclusion.country_id << ": " << exclusion.reason << '\n';
        }
    }

    std::ostringstream text;
    export_scores_csv(report, text, config.decimals);
    emit(config.outputs.scores, text.str(), out);
    if (config.outputs.scores) {
        out << fmt::format("{} countries scored against {} benchmarks, written to {}\n", report.size(), report.benchmark_names().size(), config.outputs.scores->string());
    }
    return Success;
}

int cmd_rank(const Flags& flags, std::ostream& out, std::ostream& err)
{
    auto config = resolve_config(flags);
    if (flags.out) {
        config.outputs.rank = *flags.out;
    }
    if (flags.format != "table" && flags.format != "csv") {
        throw ConfigError("Unknown --format '{}' (table or csv)", flags.format);
    }

    if (!flags.report) {
        // Fail on the benchmark name before touching any data.
        config.benchmark_set().at(flags.benchmark);
    }

    auto report = obtain_report(config, flags, err);
    auto table  = top_n(report, flags.benchmark, flags.count);

    std::ostringstream text;
    if (flags.format == "csv") {
        write_rank_csv(text, table, config.decimals);
    } else {
        write_rank_text(text, table, config.decimals);
    }
    emit(config.outputs.rank, text.str(), out);
    return Success;
}

int cmd_export_geojson(const Flags& flags, std::ostream& out, std::ostream& err)
{
    auto config = resolve_config(flags);
    if (flags.out) {
        config.outputs.geojson = *flags.out;
    }
    if (!config.geometry) {
        throw ConfigError("export-geojson needs --geometry (or geo.geometry in the config)");
    }
    if (!config.outputs.geojson) {
        throw ConfigError("export-geojson needs --out (or outputs.geojson in the config)");
    }

    auto report   = obtain_report(config, flags, err);
    auto geometry = read_text_file(*config.geometry);
    auto merged   = merge_geojson(report, geometry, config.geo);

    write_file(*config.outputs.geojson, merged.geojson);

    std::ostringstream unmatched;
    for (const auto& feature : merged.unmatched_features) {
        unmatched << "feature: " << feature << '\n';
    }
    for (const auto& country : merged.unmatched_countries) {
        unmatched << "country: " << country << '\n';
    }
    if (config.outputs.unmatched) {
        write_file(*config.outputs.unmatched, unmatched.str());
    }

    out << fmt::format("{} of {} features matched, written to {}\n", merged.matched_features, merged.feature_count, config.outputs.geojson->string());
    out << fmt::format("{} unmatched\n", merged.unmatched_features.size() + merged.unmatched_countries.size());
    out << unmatched.str();
    return Success;
}

int cmd_benchmarks_list(const Flags& flags, std::ostream& out)
{
    auto config = resolve_config(flags);
    auto set    = config.benchmark_set();
    for (const auto& benchmark : set.benchmarks()) {
        std::vector<std::string> coordinates;
        for (double v : benchmark.position.scores()) {
            coordinates.push_back(format_exact(v));
        }
        out << fmt::format("{} ({})", benchmark.name, fmt::join(coordinates, ", "));
        if (benchmark.weights) {
            out << fmt::format(" weights ({})", fmt::join(benchmark.weights->weights(), ", "));
        }
        out << '\n';
    }
    return Success;
}

int cmd_benchmarks_derive(const Flags& flags, std::ostream& out)
{
    auto config = resolve_config(flags);
    if (flags.out) {
        config.outputs.scores.reset();
    }

    auto parsed   = load_panel(config);
    auto averaged = average_period(parsed.panel, config.window);

    std::vector<FoundationVector> members;
    std::stringstream list(flags.countries);
    std::string item;
    while (std::getline(list, item, ',')) {
        auto name = std::string(csv::trim(item));
        if (name.empty()) {
            continue;
        }
        auto resolution = normalize_country_name(name, config.overrides());
        const auto* code = std::get_if<std::string>(&resolution);
        auto iter        = code ? averaged.vectors.find(*code) : averaged.vectors.end();
        if (iter == averaged.vectors.end()) {
            throw UnknownCountry("Country '{}' has no averaged scores in {}-{}", name, config.window.start_year, config.window.end_year);
        }
        members.push_back(iter->second);
    }

    auto benchmark = derive_benchmark(flags.deriveName, members);
    BenchmarkSet(std::vector<Benchmark>{benchmark});
    emit(flags.out ? std::optional<std::filesystem::path>(*flags.out) : std::nullopt, benchmark_definitions_json({benchmark}), out);
    return Success;
}

int cmd_validate(const Flags& flags, std::ostream& out)
{
    auto config = resolve_config(flags);
    auto checkExists = [](const std::optional<std::filesystem::path>& path, std::string_view what) {
        if (path && !std::filesystem::exists(*path)) {
            throw IoError("{} '{}' does not exist", what, path->string());
        }
    };
    checkExists(config.dataset, "dataset");
    checkExists(config.panel, "panel");
    checkExists(config.geometry, "geometry");

    out << fmt::format("config OK: {} benchmarks ({}), window {}-{}, mode {}, order {}\n",
                       config.benchmark_set().size(),
                       config.benchmark_set().identity(),
                       config.window.start_year,
                       config.window.end_year,
                       to_string(config.mode),
                       to_string(config.order));
    return Success;
}

}

ParseResult load_panel(const RunConfig& config)
{
    if (config.panel) {
        std::ifstream in(*config.panel, std::ios::binary);
        if (!in) {
            throw IoError("Cannot open panel '{}'", config.panel->string());
        }
        ParseResult result;
        result.panel = read_panel_csv(in, config.panel->string());
        return result;
    }
    if (config.dataset) {
        return parse_dataset_file(*config.dataset, config.mapping, config.overrides());
    }
    throw ConfigError("No input: give --panel or --dataset (or set them in the config)");
}

ClassificationReport build_report(const RunConfig& config, std::vector<Exclusion>* excluded)
{
    auto parsed = load_panel(config);
    if (excluded) {
        excluded->insert(excluded->end(), parsed.exclusions.begin(), parsed.exclusions.end());
    }

    auto set     = config.benchmark_set();
    auto weights = config.weight_vector();

    ClassificationReport report;
    if (config.order == AveragingOrder::ScoreThenAverage) {
        report = score_then_average(parsed.panel, config.window, set, config.mode, weights, excluded);
    } else {
        auto averaged = average_period(parsed.panel, config.window);
        if (excluded) {
            excluded->insert(excluded->end(), averaged.excluded.begin(), averaged.excluded.end());
        }
        report = score_all(averaged.vectors, set, config.mode, weights, averaged.names);
        report.set_window(config.window);
    }

    if (report.empty()) {
        throw EmptyPanelError("No country has enough complete records in {}-{}", config.window.start_year, config.window.end_year);
    }
    return report;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Similarity indices of economic systems: ingest, score, rank, export"};
    app.name("qce");
    app.require_subcommand(1);

    Flags flags;

    auto* ingest = app.add_subcommand("ingest", "Parse a dataset CSV into the canonical panel");
    add_input_options(*ingest, flags);
    ingest->add_option("--out", flags.out, "Canonical panel output (default: stdout)");
    ingest->add_option("--exclusions", flags.exclusions, "Exclusion report output");

    auto* score = app.add_subcommand("score", "Score every country against every benchmark");
    add_input_options(*score, flags);
    add_scoring_options(*score, flags);
    score->add_option("--out", flags.out, "Scores CSV output (default: stdout)");
    score->add_option("--exclusions", flags.exclusions, "Exclusion report output");

    auto* rank = app.add_subcommand("rank", "Top-N table for one benchmark");
    add_input_options(*rank, flags);
    add_scoring_options(*rank, flags);
    rank->add_option("--report", flags.report, "Read scores from a scores CSV instead of recomputing");
    rank->add_option("--benchmark", flags.benchmark, "Benchmark to rank by")->required();
    rank->add_option("-n,--top", flags.count, "Number of rows")->capture_default_str();
    rank->add_option("--format", flags.format, "table or csv")->capture_default_str();
    rank->add_option("--out", flags.out, "Output file (default: stdout)");

    auto* geo = app.add_subcommand("export-geojson", "Merge scores into GeoJSON feature properties");
    add_input_options(*geo, flags);
    add_scoring_options(*geo, flags);
    geo->add_option("--report", flags.report, "Read scores from a scores CSV instead of recomputing");
    geo->add_option("--geometry", flags.geometry, "GeoJSON FeatureCollection");
    geo->add_option("--out", flags.out, "Merged GeoJSON output");
    geo->add_option("--key-property", flags.keyProperty, "Feature property holding the alpha-3 code");
    geo->add_option("--prefix", flags.prefix, "Prefix for injected properties");
    geo->add_option("--breaks", flags.breaks, "Class breaks: 'quintiles', 'none' or e.g. '0.25,0.5,0.75'");
    geo->add_option("--unmatched", flags.unmatched, "Unmatched list output");

    auto* benchmarks = app.add_subcommand("benchmarks", "List or derive benchmarks");
    benchmarks->require_subcommand(1);
    auto* list = benchmarks->add_subcommand("list", "List configured benchmarks");
    list->add_option("--config", flags.config, "JSON config file (default: $QCE_CONFIG)");
    list->add_option("--benchmarks", flags.benchmarksFile, "Benchmark definition file");
    list->add_flag("--no-builtin", flags.noBuiltin, "Drop the built-in benchmarks");
    auto* derive = benchmarks->add_subcommand("derive", "Average the window means of a country group into a benchmark");
    add_input_options(*derive, flags);
    add_scoring_options(*derive, flags);
    derive->add_option("--name", flags.deriveName, "Benchmark name")->required();
    derive->add_option("--countries", flags.countries, "Comma-separated country names or codes")->required();
    derive->add_option("--out", flags.out, "Definition file output (default: stdout)");

    auto* validate = app.add_subcommand("validate", "Lint a config");
    add_input_options(*validate, flags);
    add_scoring_options(*validate, flags);
    validate->add_option("--geometry", flags.geometry, "GeoJSON FeatureCollection");
    validate->add_option("--breaks", flags.breaks, "Class breaks");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& arg : args) {
        argv.push_back(arg.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Success;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Success;
    } catch (const CLI::ParseError& e) {
        return report_error(err, "usage", UsageError, e.what());
    }

    try {
        if (ingest->parsed()) {
            return cmd_ingest(flags, out);
        }
        if (score->parsed()) {
            return cmd_score(flags, out, err);
        }
        if (rank->parsed()) {
            return cmd_rank(flags, out, err);
        }
        if (geo->parsed()) {
            return cmd_export_geojson(flags, out, err);
        }
        if (list->parsed()) {
            return cmd_benchmarks_list(flags, out);
        }
        if (derive->parsed()) {
            return cmd_benchmarks_derive(flags, out);
        }
        if (validate->parsed()) {
            return cmd_validate(flags, out);
        }
    } catch (const Error& e) {
        switch (e.kind()) {
        case ErrorKind::Usage:
            return report_error(err, "usage", UsageError, e.what());
        case ErrorKind::Data:
            return report_error(err, "data", DataError, e.what());
        case ErrorKind::Io:
            return report_error(err, "io", IoFailure, e.what());
        }
    } catch (const std::filesystem::filesystem_error& e) {
        return report_error(err, "io", IoFailure, e.what());
    } catch (const std::exception& e) {
        return report_error(err, "data", DataError, e.what());
    }

    return report_error(err, "usage", UsageError, "no command given");
}

}
