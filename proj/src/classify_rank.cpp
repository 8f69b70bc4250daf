#include "qce/classify_rank.hpp"
#include "qce/country_names.hpp"
#include "qce/csv.hpp"
#include "qce/error.hpp"

#include <algorithm>
#include <numeric>

namespace qce {

std::string_view to_string(AveragingOrder order)
{
    switch (order) {
    case AveragingOrder::AverageThenScore:
        return "average-then-score";
    case AveragingOrder::ScoreThenAverage:
        return "score-then-average";
    }
    return "unknown";
}

std::optional<AveragingOrder> parse_averaging_order(std::string_view text)
{
    if (text == "average-then-score") {
        return AveragingOrder::AverageThenScore;
    }
    if (text == "score-then-average") {
        return AveragingOrder::ScoreThenAverage;
    }
    return std::nullopt;
}

ClassificationReport::ClassificationReport(std::vector<std::string> benchmarkNames, ReportMetadata metadata)
: _benchmarks(std::move(benchmarkNames))
, _metadata(std::move(metadata))
{
}

void ClassificationReport::add_row(Row row)
{
    if (row.scores.size() != _benchmarks.size()) {
        throw DimensionMismatch("Row for {} has {} scores for {} benchmarks", row.country_id, row.scores.size(), _benchmarks.size());
    }
    auto id = row.country_id;
    if (!_rows.emplace(id, std::move(row)).second) {
        throw DuplicateRecordError("Country {} appears twice in the report", id);
    }
}

std::size_t ClassificationReport::benchmark_index(std::string_view benchmark) const
{
    auto iter = std::find(_benchmarks.begin(), _benchmarks.end(), benchmark);
    if (iter == _benchmarks.end()) {
        throw UnknownBenchmark("Unknown benchmark '{}' (known: {})", benchmark, fmt::join(_benchmarks, ", "));
    }
    return static_cast<std::size_t>(iter - _benchmarks.begin());
}

const ClassificationReport::Row& ClassificationReport::row(std::string_view country) const
{
    auto iter = _rows.find(std::string(country));
    if (iter == _rows.end()) {
        throw UnknownCountry("Country '{}' is not in the report", country);
    }
    return iter->second;
}

double ClassificationReport::score(std::string_view country, std::string_view benchmark) const
{
    return row(country).scores[benchmark_index(benchmark)].value();
}

static std::string display_name(const std::string& id, const std::map<std::string, std::string>& names)
{
    if (auto iter = names.find(id); iter != names.end()) {
        return iter->second;
    }
    return builtin_country_name(id).value_or(id);
}

static ReportMetadata make_metadata(const BenchmarkSet& set, NormalizationMode mode, const WeightVector& weights)
{
    ReportMetadata metadata;
    metadata.mode          = mode;
    metadata.weights       = {weights.weights().begin(), weights.weights().end()};
    metadata.benchmark_set = set.identity();
    return metadata;
}

static std::vector<SimilarityScore> score_vector(const FoundationVector& vector, const BenchmarkSet& set, NormalizationMode mode, const WeightVector& weights)
{
    std::vector<SimilarityScore> scores;
    scores.reserve(set.size());
    for (const auto& benchmark : set.benchmarks()) {
        scores.push_back(similarity(mode, vector, benchmark, set.scale(), benchmark.weights.value_or(weights)));
    }
    return scores;
}

ClassificationReport score_all(const std::map<std::string, FoundationVector>& vectors,
                               const BenchmarkSet& set,
                               NormalizationMode mode,
                               const WeightVector& weights,
                               const std::map<std::string, std::string>& names)
{
    if (weights.dimensions() != set.scale().dimensions()) {
        throw DimensionMismatch("{} weights given for a {}-dimensional scale", weights.dimensions(), set.scale().dimensions());
    }

    ClassificationReport report(set.names(), make_metadata(set, mode, weights));
    for (const auto& [country, vector] : vectors) {
        validate_on(vector, set.scale(), country);
        report.add_row({country, display_name(country, names), score_vector(vector, set, mode, weights)});
    }
    return report;
}

ClassificationReport score_then_average(const CountryPanel& panel,
                                        const PeriodWindow& window,
                                        const BenchmarkSet& set,
                                        NormalizationMode mode,
                                        const WeightVector& weights,
                                        std::vector<Exclusion>* excluded)
{
    window.validate();
    if (panel.empty()) {
        throw EmptyPanelError("Panel from {} holds no records", panel.provenance.source);
    }

    auto metadata   = make_metadata(set, mode, weights);
    metadata.window = window;
    metadata.order  = AveragingOrder::ScoreThenAverage;
    ClassificationReport report(set.names(), std::move(metadata));

    std::map<std::string, std::vector<std::vector<double>>> perYear;
    for (const auto& [key, record] : panel.records()) {
        auto& years = perYear[record.country_id];
        if (!record.complete() || !window.contains(record.year)) {
            continue;
        }
        validate_on(*record.scores, set.scale(), record.country_id);
        auto scores = score_vector(*record.scores, set, mode, weights);
        std::vector<double> values;
        for (const auto& s : scores) {
            values.push_back(s.value());
        }
        years.push_back(std::move(values));
    }

    const auto names = panel.country_names();
    for (const auto& [country, years] : perYear) {
        if (static_cast<int>(years.size()) < window.min_years) {
            if (excluded) {
                excluded->push_back({country, fmt::format("{} complete records in {}-{}, minimum {}", years.size(), window.start_year, window.end_year, window.min_years)});
            }
            continue;
        }

        std::vector<FoundationVector> asVectors;
        for (const auto& values : years) {
            asVectors.emplace_back(values);
        }
        auto mean = componentwise_mean(asVectors);

        std::vector<SimilarityScore> scores;
        for (double v : mean.scores()) {
            scores.emplace_back(v);
        }
        report.add_row({country, display_name(country, names), std::move(scores)});
    }
    return report;
}

RankTable top_n(const ClassificationReport& report, std::string_view benchmark, int n)
{
    if (n < 1) {
        throw ConfigError("Rank table size must be at least 1, got {}", n);
    }
    const auto column = report.benchmark_index(benchmark);

    std::vector<const ClassificationReport::Row*> rows;
    rows.reserve(report.size());
    for (const auto& [id, row] : report.rows()) {
        rows.push_back(&row);
    }

    const auto count = std::min<std::size_t>(rows.size(), static_cast<std::size_t>(n));
    std::partial_sort(rows.begin(), rows.begin() + count, rows.end(), [column](const auto* a, const auto* b) {
        const double sa = a->scores[column].value();
        const double sb = b->scores[column].value();
        if (sa != sb) {
            return sa > sb;
        }
        return a->country_id < b->country_id;
    });

    RankTable table;
    table.benchmark = std::string(benchmark);
    for (std::size_t i = 0; i < count; ++i) {
        table.rows.push_back({static_cast<int>(i + 1), rows[i]->country_id, rows[i]->country_name, rows[i]->scores[column].value()});
    }
    return table;
}

std::string nearest_benchmark(const ClassificationReport& report, std::string_view country)
{
    const auto& row = report.row(country);
    if (row.scores.empty()) {
        throw UnknownBenchmark("Report has no benchmarks");
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < row.scores.size(); ++i) {
        if (row.scores[i].value() > row.scores[best].value()) {
            best = i;
        }
    }
    return report.benchmark_names()[best];
}

void write_rank_csv(std::ostream& out, const RankTable& table, int decimals)
{
    const std::vector<std::string> header{"rank", "country_id", "country_name", "score"};
    csv::write_row(out, header);
    for (const auto& row : table.rows) {
        const std::vector<std::string> fields{std::to_string(row.rank), row.country_id, row.country_name, format_decimal(row.score, decimals)};
        csv::write_row(out, fields);
    }
}

void write_rank_text(std::ostream& out, const RankTable& table, int decimals)
{
    std::size_t nameWidth = std::string_view("Country").size();
    for (const auto& row : table.rows) {
        nameWidth = std::max(nameWidth, row.country_name.size());
    }

    const int scoreWidth = std::max(decimals + 3, 5);

    out << fmt::format("Top {} by {}\n", table.rows.size(), table.benchmark);
    out << fmt::format("{:>4}  {:<4}  {:<{}}  {:>{}}\n", "Rank", "ISO", "Country", nameWidth, "Score", scoreWidth);
    for (const auto& row : table.rows) {
        out << fmt::format("{:>4}  {:<4}  {:<{}}  {:>{}}\n", row.rank, row.country_id, row.country_name, nameWidth, format_decimal(row.score, decimals), scoreWidth);
    }
}

}
