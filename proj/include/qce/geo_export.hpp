#pragma once

#include "qce/classify_rank.hpp"

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace qce {

struct GeoJoinSpec
{
    /// Feature property holding the alpha-3 code.
    std::string key_property = "ISO_A3";
    /// Prepended to every injected property name.
    std::string properties_prefix = "qce_";
    /// Class breaks shared by all benchmarks. Unset: per-benchmark quintiles of the
    /// observed scores. Empty: no class properties.
    std::optional<std::vector<double>> class_breaks;

    /// Throws ConfigError unless breaks are strictly ascending and inside [0, 1].
    void validate() const;
};

/// One row per country (sorted by country_id): country_id,country_name,<benchmark...>.
/// Returns the number of data rows.
std::size_t export_scores_csv(const ClassificationReport& report, std::ostream& out, int decimals = 2);
std::size_t export_scores_csv(const ClassificationReport& report, const std::filesystem::path& destination, int decimals = 2);

/// Reads a scores CSV written by export_scores_csv back into a report.
ClassificationReport read_scores_csv(std::istream& in, std::string sourceName = "<stream>");

/// Class index of a score: the number of breaks <= score.
int class_index(double score, const std::vector<double>& breaks);

/// 20/40/60/80th percentiles (linear interpolation between order statistics),
/// with repeated values collapsed so the result stays strictly ascending.
std::vector<double> quintile_breaks(std::vector<double> scores);

struct GeoMergeResult
{
    std::string geojson;
    std::size_t feature_count = 0;
    std::size_t matched_features = 0;
    /// Features whose key is absent or has no report entry.
    std::vector<std::string> unmatched_features;
    /// Report countries with no feature.
    std::vector<std::string> unmatched_countries;
    /// Breaks used per benchmark (empty when classes are disabled).
    std::map<std::string, std::vector<double>> breaks;
};

/// Adds <prefix><benchmark> score properties (and <prefix><benchmark>_class when
/// breaks apply) to every feature whose key matches a report country. Geometry is
/// copied through untouched; number tokens keep their original text.
/// Throws ParseError on malformed JSON or a document that is not a FeatureCollection.
GeoMergeResult merge_geojson(const ClassificationReport& report, std::string_view geometry, const GeoJoinSpec& spec);

}
