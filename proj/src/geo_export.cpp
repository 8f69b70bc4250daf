#include "qce/geo_export.hpp"
#include "qce/csv.hpp"
#include "qce/error.hpp"
#include "qce/geo_json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace qce {

void GeoJoinSpec::validate() const
{
    if (key_property.empty()) {
        throw ConfigError("GeoJSON key property must be nonempty");
    }
    if (!class_breaks) {
        return;
    }

    const auto& breaks = *class_breaks;
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        if (!(breaks[i] >= 0.0 && breaks[i] <= 1.0)) {
            throw ConfigError("Class break {} is outside [0, 1]", breaks[i]);
        }
        if (i > 0 && !(breaks[i - 1] < breaks[i])) {
            throw ConfigError("Class breaks must be strictly ascending ({} then {})", breaks[i - 1], breaks[i]);
        }
    }
}

std::size_t export_scores_csv(const ClassificationReport& report, std::ostream& out, int decimals)
{
    std::vector<std::string> fields{"country_id", "country_name"};
    fields.insert(fields.end(), report.benchmark_names().begin(), report.benchmark_names().end());
    csv::write_row(out, fields);

    for (const auto& [id, row] : report.rows()) {
        fields.clear();
        fields.push_back(row.country_id);
        fields.push_back(row.country_name);
        for (const auto& score : row.scores) {
            fields.push_back(format_decimal(score.value(), decimals));
        }
        csv::write_row(out, fields);
    }
    return report.size();
}

std::size_t export_scores_csv(const ClassificationReport& report, const std::filesystem::path& destination, int decimals)
{
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("Cannot write '{}'", destination.string());
    }
    auto count = export_scores_csv(report, out, decimals);
    out.flush();
    if (!out) {
        throw IoError("Failed writing '{}'", destination.string());
    }
    return count;
}

ClassificationReport read_scores_csv(std::istream& in, std::string sourceName)
{
    csv::Reader reader(in);
    std::vector<std::string> header;
    if (!reader.next(header) || header.size() < 2 || header[0] != "country_id" || header[1] != "country_name") {
        throw SchemaError("{} is not a scores CSV (expected country_id,country_name,... header)", sourceName);
    }

    ClassificationReport report(std::vector<std::string>(header.begin() + 2, header.end()));
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        if (fields.size() == 1 && csv::trim(fields[0]).empty()) {
            continue;
        }
        if (fields.size() != header.size()) {
            throw SchemaError("{} record {}: expected {} fields, got {}", sourceName, reader.record_number(), header.size(), fields.size());
        }

        ClassificationReport::Row row{fields[0], fields[1], {}};
        for (std::size_t i = 2; i < fields.size(); ++i) {
            auto value = csv::parse_decimal(fields[i]);
            if (!value) {
                throw SchemaError("{} record {}: unreadable score '{}'", sourceName, reader.record_number(), fields[i]);
            }
            if (!(*value >= 0.0 && *value <= 1.0)) {
                throw RangeError("{} record {}: score {} is outside [0, 1]", sourceName, reader.record_number(), *value);
            }
            row.scores.emplace_back(*value);
        }
        report.add_row(std::move(row));
    }
    return report;
}

int class_index(double score, const std::vector<double>& breaks)
{
    return static_cast<int>(std::upper_bound(breaks.begin(), breaks.end(), score) - breaks.begin());
}

std::vector<double> quintile_breaks(std::vector<double> scores)
{
    if (scores.empty()) {
        return {};
    }
    std::sort(scores.begin(), scores.end());

    std::vector<double> breaks;
    for (int q = 1; q <= 4; ++q) {
        const double position = 0.2 * q * static_cast<double>(scores.size() - 1);
        const auto lower      = static_cast<std::size_t>(std::floor(position));
        const auto upper      = std::min(lower + 1, scores.size() - 1);
        const double fraction = position - static_cast<double>(lower);
        const double value    = scores[lower] + fraction * (scores[upper] - scores[lower]);
        if (breaks.empty() || value > breaks.back()) {
            breaks.push_back(value);
        }
    }
    return breaks;
}

namespace {

std::string feature_key(const json::Value& feature, const std::string& property)
{
    const auto* properties = feature.find("properties");
    if (properties == nullptr || !properties->is_object()) {
        return {};
    }
    const auto* value = properties->find(property);
    if (value == nullptr || (value->kind() != json::Value::Kind::String && value->kind() != json::Value::Kind::Number)) {
        return {};
    }
    return std::string(csv::trim(value->text()));
}

}

GeoMergeResult merge_geojson(const ClassificationReport& report, std::string_view geometry, const GeoJoinSpec& spec)
{
    spec.validate();

    auto document = json::parse(geometry);
    const auto* type = document.find("type");
    if (!document.is_object() || type == nullptr || !type->is_string() || type->text() != "FeatureCollection") {
        throw ParseError("GeoJSON root must be a FeatureCollection object");
    }
    auto* features = document.find("features");
    if (features == nullptr || !features->is_array()) {
        throw ParseError("GeoJSON FeatureCollection has no 'features' array");
    }

    // Geometry is copied through as source text so coordinates keep their exact bytes.
    const auto geometrySources = json::feature_member_sources(geometry, "geometry");
    if (geometrySources.size() != features->items().size()) {
        throw ParseError("GeoJSON feature scan found {} features, parser found {}", geometrySources.size(), features->items().size());
    }

    GeoMergeResult result;
    const auto& benchmarks = report.benchmark_names();
    for (std::size_t b = 0; b < benchmarks.size(); ++b) {
        if (spec.class_breaks) {
            result.breaks[benchmarks[b]] = *spec.class_breaks;
            continue;
        }
        std::vector<double> scores;
        for (const auto& [id, row] : report.rows()) {
            scores.push_back(row.scores[b].value());
        }
        result.breaks[benchmarks[b]] = quintile_breaks(std::move(scores));
    }
    const bool withClasses = !spec.class_breaks || !spec.class_breaks->empty();

    std::set<std::string> matchedCountries;
    result.feature_count = features->items().size();
    for (std::size_t i = 0; i < features->items().size(); ++i) {
        auto& feature = features->items()[i];
        if (!feature.is_object()) {
            throw ParseError("GeoJSON feature {} is not an object", i);
        }

        if (geometrySources[i]) {
            feature.set("geometry", json::Value::raw(std::string(*geometrySources[i])));
        }

        auto key = feature_key(feature, spec.key_property);
        if (key.empty()) {
            result.unmatched_features.push_back(fmt::format("feature {} (no '{}')", i, spec.key_property));
            continue;
        }

        auto rowIter = report.rows().find(key);
        if (rowIter == report.rows().end()) {
            result.unmatched_features.push_back(key);
            continue;
        }

        auto* properties = feature.find("properties");
        for (std::size_t b = 0; b < benchmarks.size(); ++b) {
            const double score = rowIter->second.scores[b].value();
            properties->set(spec.properties_prefix + benchmarks[b], json::Value::number(score));
            if (withClasses) {
                const auto& breaks = result.breaks[benchmarks[b]];
                properties->set(spec.properties_prefix + benchmarks[b] + "_class", json::Value::number(static_cast<long long>(class_index(score, breaks))));
            }
        }
        matchedCountries.insert(key);
        ++result.matched_features;
    }

    for (const auto& [id, row] : report.rows()) {
        if (matchedCountries.count(id) == 0) {
            result.unmatched_countries.push_back(id);
        }
    }

    result.geojson = document.dump();
    result.geojson.push_back('\n');
    return result;
}

}
