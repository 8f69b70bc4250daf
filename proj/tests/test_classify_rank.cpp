#include "oracles.hpp"

#include "qce/classify_rank.hpp"
#include "qce/error.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace qce;

namespace {

const std::map<std::string, FoundationVector> Nordics{
    {"DNK", {8.39, 7.01, 4.77}},
    {"FIN", {7.69, 6.92, 5.17}},
    {"ISL", {7.79, 7.65, 6.35}},
    {"NOR", {7.50, 6.80, 5.43}},
    {"SWE", {7.78, 7.94, 4.67}},
};

ClassificationReport nordic_report()
{
    return score_all(Nordics, builtin_benchmarks(), NormalizationMode::FixedRange, WeightVector::equal(3));
}

ClassificationReport::Row row(std::string id, std::vector<double> values)
{
    std::vector<SimilarityScore> scores;
    for (double v : values) {
        scores.emplace_back(v);
    }
    return {id, id + " name", std::move(scores)};
}

}

TEST(ScoreAll, EveryCountryAgainstEveryBenchmark)
{
    auto report = nordic_report();
    ASSERT_EQ(report.size(), 5u);
    EXPECT_EQ(report.benchmark_names(), builtin_benchmarks().names());
    EXPECT_EQ(report.metadata().benchmark_set, "capitalism,communism,scandinavian_socialism");

    const auto nordic = oracle::to_hundredths(7.83, 7.26, 5.28);
    for (const auto& [id, x] : Nordics) {
        auto h = oracle::to_hundredths(x[0], x[1], x[2]);
        EXPECT_NEAR(report.score(id, "capitalism"), oracle::fixed_range(h, {1000, 1000, 1000}), 1e-12) << id;
        EXPECT_NEAR(report.score(id, "communism"), oracle::fixed_range(h, {0, 0, 0}), 1e-12) << id;
        EXPECT_NEAR(report.score(id, "scandinavian_socialism"), oracle::fixed_range(h, nordic), 1e-12) << id;
    }
    EXPECT_EQ(report.row("DNK").country_name, "Denmark");
}

TEST(ScoreAll, CapitalCornerAgainstNordicBenchmark)
{
    auto report = score_all({{"XXX", {10, 10, 10}}}, builtin_benchmarks(), NormalizationMode::FixedRange, WeightVector::equal(3), {{"XXX", "Corner"}});
    EXPECT_NEAR(report.score("XXX", "scandinavian_socialism"), 0.679, 1e-12);
    EXPECT_EQ(report.row("XXX").country_name, "Corner");
}

TEST(ScoreAll, BenchmarkWeightsOverrideRunWeights)
{
    std::vector<Benchmark> defs{{"mo_only", {10, 10, 10}, WeightVector({1, 0, 0})}, capitalism_benchmark()};
    auto report = score_all({{"AAA", {5, 0, 0}}}, BenchmarkSet(defs), NormalizationMode::FixedRange, WeightVector::equal(3));
    EXPECT_DOUBLE_EQ(report.score("AAA", "mo_only"), 0.5);
    EXPECT_NEAR(report.score("AAA", "capitalism"), 1.0 - 25.0 / 30.0, 1e-12);
}

TEST(Report, LookupErrors)
{
    auto report = nordic_report();
    EXPECT_THROW(report.score("DNK", "feudalism"), UnknownBenchmark);
    EXPECT_THROW(report.row("ATL"), UnknownCountry);
    EXPECT_THROW(report.add_row(row("DNK", {0.1, 0.2, 0.3})), DuplicateRecordError);
    EXPECT_THROW(report.add_row(row("ZZZ", {0.1})), DimensionMismatch);
}

TEST(TopN, OrderedByScoreThenCountryId)
{
    ClassificationReport report({"b"});
    report.add_row(row("CCC", {0.5}));
    report.add_row(row("AAA", {0.5}));
    report.add_row(row("BBB", {0.9}));
    report.add_row(row("DDD", {0.1}));

    auto table = top_n(report, "b", 3);
    ASSERT_EQ(table.rows.size(), 3u);
    EXPECT_EQ(table.rows[0], (RankRow{1, "BBB", "BBB name", 0.9}));
    EXPECT_EQ(table.rows[1].country_id, "AAA");
    EXPECT_EQ(table.rows[2].country_id, "CCC");
    EXPECT_EQ(top_n(report, "b", 100).rows.size(), 4u);
    EXPECT_THROW(top_n(report, "b", 0), ConfigError);
    EXPECT_THROW(top_n(report, "c", 1), UnknownBenchmark);
}

TEST(TopN, NordicSocialismOrder)
{
    auto table = top_n(nordic_report(), "scandinavian_socialism", 5);
    std::vector<std::string> ids;
    for (const auto& r : table.rows) {
        ids.push_back(r.country_id);
    }
    // Oracle distances in hundredths: FIN 59, NOR 94, DNK 132, SWE 134, ISL 150.
    EXPECT_EQ(ids, (std::vector<std::string>{"FIN", "NOR", "DNK", "SWE", "ISL"}));
}

TEST(NearestBenchmark, ArgmaxWithFirstDeclaredOnTies)
{
    auto report = nordic_report();
    EXPECT_EQ(nearest_benchmark(report, "FIN"), "scandinavian_socialism");

    ClassificationReport tied({"first", "second"});
    tied.add_row(row("TIE", {0.5, 0.5}));
    EXPECT_EQ(nearest_benchmark(tied, "TIE"), "first");
}

TEST(RankOutput, CsvAndText)
{
    RankTable table{"capitalism", {{1, "HKG", "Hong Kong", 0.8999999}, {2, "KOR", "Korea, South", 0.705}}};

    std::ostringstream csv;
    write_rank_csv(csv, table, 2);
    EXPECT_EQ(csv.str(), "rank,country_id,country_name,score\n1,HKG,Hong Kong,0.90\n2,KOR,\"Korea, South\",0.71\n");

    std::ostringstream text;
    write_rank_text(text, table, 2);
    EXPECT_EQ(text.str(),
              "Top 2 by capitalism\n"
              "Rank  ISO   Country       Score\n"
              "   1  HKG   Hong Kong      0.90\n"
              "   2  KOR   Korea, South   0.71\n");
}

TEST(ScoreThenAverage, DiffersFromAverageThenScoreOnlyWhereDistanceIsNonlinear)
{
    CountryPanel panel;
    panel.insert({"AAA", "A", 2000, FoundationVector{2, 8, 5}});
    panel.insert({"AAA", "A", 2001, FoundationVector{8, 2, 5}});
    panel.insert({"AAA", "A", 1990, FoundationVector{0, 0, 0}});

    const PeriodWindow window{1995, 2020, 1};
    std::vector<Benchmark> defs{capitalism_benchmark(), {"mid", {5, 5, 5}, std::nullopt}};
    BenchmarkSet set(defs);

    auto perYear = score_then_average(panel, window, set, NormalizationMode::FixedRange, WeightVector::equal(3));
    auto averaged = average_period(panel, window);
    auto pooled   = score_all(averaged.vectors, set, NormalizationMode::FixedRange, WeightVector::equal(3));

    // Capitalism is linear inside the cube, so both orders agree.
    EXPECT_NEAR(perYear.score("AAA", "capitalism"), pooled.score("AAA", "capitalism"), 1e-12);
    // Mean vector sits on the benchmark; each year is 6 away.
    EXPECT_DOUBLE_EQ(pooled.score("AAA", "mid"), 1.0);
    EXPECT_NEAR(perYear.score("AAA", "mid"), 0.8, 1e-12);
    EXPECT_EQ(perYear.metadata().order, AveragingOrder::ScoreThenAverage);

    std::vector<Exclusion> excluded;
    auto strict = score_then_average(panel, PeriodWindow{1995, 2020, 3}, set, NormalizationMode::FixedRange, WeightVector::equal(3), &excluded);
    EXPECT_TRUE(strict.empty());
    ASSERT_EQ(excluded.size(), 1u);
    EXPECT_EQ(excluded[0].country_id, "AAA");
}

TEST(AveragingOrder, Names)
{
    EXPECT_EQ(parse_averaging_order("score-then-average"), AveragingOrder::ScoreThenAverage);
    EXPECT_EQ(parse_averaging_order("average-then-score"), AveragingOrder::AverageThenScore);
    EXPECT_FALSE(parse_averaging_order("mean"));
    EXPECT_EQ(to_string(AveragingOrder::ScoreThenAverage), "score-then-average");
}
