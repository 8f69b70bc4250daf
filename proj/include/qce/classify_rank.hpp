#pragma once

#include "qce/benchmarks.hpp"
#include "qce/core_metrics.hpp"
#include "qce/data_ingest.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace qce {

enum class AveragingOrder {
    /// Average foundation scores over the window, then score the averages. Canonical.
    AverageThenScore,
    /// Score every country-year, then average the scores.
    ScoreThenAverage,
};

std::string_view to_string(AveragingOrder order);
std::optional<AveragingOrder> parse_averaging_order(std::string_view text);

struct ReportMetadata
{
    std::optional<PeriodWindow> window;
    NormalizationMode mode = NormalizationMode::FixedRange;
    AveragingOrder order   = AveragingOrder::AverageThenScore;
    std::vector<double> weights;
    std::string benchmark_set;
};

/// Similarity of every country to every benchmark, at full precision.
class ClassificationReport
{
public:
    struct Row
    {
        std::string country_id;
        std::string country_name;
        /// Aligned with benchmark_names().
        std::vector<SimilarityScore> scores;

        bool operator==(const Row&) const = default;
    };

    ClassificationReport() = default;
    explicit ClassificationReport(std::vector<std::string> benchmarkNames, ReportMetadata metadata = {});

    const std::vector<std::string>& benchmark_names() const noexcept
    {
        return _benchmarks;
    }

    /// Rows keyed and ordered by country_id.
    const std::map<std::string, Row>& rows() const noexcept
    {
        return _rows;
    }

    std::size_t size() const noexcept
    {
        return _rows.size();
    }

    bool empty() const noexcept
    {
        return _rows.empty();
    }

    const ReportMetadata& metadata() const noexcept
    {
        return _metadata;
    }

    void set_window(const PeriodWindow& window)
    {
        _metadata.window = window;
    }

    /// Throws if the row does not carry one score per benchmark or the country is already present.
    void add_row(Row row);

    std::size_t benchmark_index(std::string_view benchmark) const;
    double score(std::string_view country, std::string_view benchmark) const;
    const Row& row(std::string_view country) const;

private:
    std::vector<std::string> _benchmarks;
    std::map<std::string, Row> _rows;
    ReportMetadata _metadata;
};

/// Scores each country against each benchmark. A benchmark's own weights,
/// when present, replace `weights` for that benchmark. `names` supplies display
/// names; countries without one fall back to the built-in table or their id.
ClassificationReport score_all(const std::map<std::string, FoundationVector>& vectors,
                               const BenchmarkSet& set,
                               NormalizationMode mode,
                               const WeightVector& weights,
                               const std::map<std::string, std::string>& names = {});

/// Score-then-average variant: mean over in-window complete years of the
/// per-year similarity. Countries below window.min_years are listed in `excluded`.
ClassificationReport score_then_average(const CountryPanel& panel,
                                        const PeriodWindow& window,
                                        const BenchmarkSet& set,
                                        NormalizationMode mode,
                                        const WeightVector& weights,
                                        std::vector<Exclusion>* excluded = nullptr);

struct RankRow
{
    int rank = 0;
    std::string country_id;
    std::string country_name;
    double score = 0.0;

    bool operator==(const RankRow&) const = default;
};

struct RankTable
{
    std::string benchmark;
    std::vector<RankRow> rows;

    bool operator==(const RankTable&) const = default;
};

/// The n highest scores for one benchmark, descending; ties go to the smaller country_id.
RankTable top_n(const ClassificationReport& report, std::string_view benchmark, int n);

/// Derived categorical view: the benchmark with the highest similarity,
/// ties resolved by benchmark declaration order.
std::string nearest_benchmark(const ClassificationReport& report, std::string_view country);

/// rank,country_id,country_name,score
void write_rank_csv(std::ostream& out, const RankTable& table, int decimals = 2);

/// Aligned plain-text table for terminals.
void write_rank_text(std::ostream& out, const RankTable& table, int decimals = 2);

}
