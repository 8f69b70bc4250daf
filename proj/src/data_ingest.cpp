#include "qce/data_ingest.hpp"
#include "qce/benchmarks.hpp"
#include "qce/country_names.hpp"
#include "qce/csv.hpp"
#include "qce/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

namespace qce {

ColumnMapping ColumnMapping::fraser_default()
{
    ColumnMapping mapping;
    mapping.country_column = "Countries";
    mapping.year_column    = "Year";
    mapping.foundations    = {{
        {"Regulation", false},
        {"State ownership of Assets", false},
        {"Size of Government", false},
    }};
    return mapping;
}

ColumnMapping ColumnMapping::canonical()
{
    ColumnMapping mapping;
    mapping.country_column      = "country_name";
    mapping.country_code_column = "country_id";
    mapping.year_column         = "year";
    mapping.foundations         = {{{"mo", false}, {"po", false}, {"sg", false}}};
    return mapping;
}

void ColumnMapping::validate() const
{
    std::vector<std::string> columns{country_column, year_column};
    if (country_code_column) {
        columns.push_back(*country_code_column);
    }
    for (const auto& foundation : foundations) {
        columns.push_back(foundation.column);
    }

    std::set<std::string> seen;
    for (const auto& column : columns) {
        if (csv::trim(column).empty()) {
            throw ConfigError("Column mapping contains a blank column name");
        }
        if (!seen.insert(column).second) {
            throw ConfigError("Column '{}' is mapped more than once", column);
        }
    }
}

NameOverrides::NameOverrides(const std::map<std::string, std::string>& overrides)
{
    for (const auto& [raw, code] : overrides) {
        add(raw, code);
    }
}

void NameOverrides::add(std::string_view rawName, std::string code)
{
    if (!is_alpha3_code(code)) {
        throw ConfigError("Name override '{}' maps to '{}', which is not an alpha-3 code", rawName, code);
    }
    _byKey[country_name_key(rawName)] = std::move(code);
}

std::optional<std::string> NameOverrides::find(std::string_view rawName) const
{
    if (auto iter = _byKey.find(country_name_key(rawName)); iter != _byKey.end()) {
        return iter->second;
    }
    return std::nullopt;
}

CountryResolution normalize_country_name(std::string_view raw, const NameOverrides& overrides)
{
    auto name = csv::trim(raw);
    if (!name.empty()) {
        if (auto code = overrides.find(name)) {
            return *code;
        }
        if (auto code = builtin_country_code(name)) {
            return *code;
        }
    }
    return Unresolved{std::string(raw)};
}

void write_exclusion_report(std::ostream& out, const std::vector<Exclusion>& exclusions)
{
    for (const auto& exclusion : exclusions) {
        out << exclusion.country_id << ": " << exclusion.reason << '\n';
    }
}

void CountryPanel::insert(CountryYearRecord record)
{
    Key key{record.country_id, record.year};
    if (_records.count(key) != 0) {
        throw DuplicateRecordError("Duplicate record for {} in {}", record.country_id, record.year);
    }
    _records.emplace(std::move(key), std::move(record));
}

std::size_t CountryPanel::complete_count() const noexcept
{
    return static_cast<std::size_t>(std::count_if(_records.begin(), _records.end(), [](const auto& entry) { return entry.second.complete(); }));
}

const CountryYearRecord* CountryPanel::find(std::string_view country, int year) const
{
    auto iter = _records.find(Key{std::string(country), year});
    return iter == _records.end() ? nullptr : &iter->second;
}

std::map<std::string, std::string> CountryPanel::country_names() const
{
    std::map<std::string, std::string> names;
    for (const auto& [key, record] : _records) {
        names.emplace(record.country_id, record.country_name);
    }
    return names;
}

namespace {

std::string upper(std::string_view text)
{
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

std::string lower(std::string_view text)
{
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::size_t required_column(const std::vector<std::string>& header, const std::string& column)
{
    const auto wanted = lower(csv::trim(column));
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (lower(csv::trim(header[i])) == wanted) {
            return i;
        }
    }
    throw SchemaError("Missing column '{}'", column);
}

std::string_view cell(const std::vector<std::string>& fields, std::size_t index)
{
    return index < fields.size() ? std::string_view(fields[index]) : std::string_view();
}

bool blank_row(const std::vector<std::string>& fields)
{
    return std::all_of(fields.begin(), fields.end(), [](const std::string& f) { return csv::trim(f).empty(); });
}

}

ParseResult parse_dataset(std::istream& source, const ColumnMapping& mapping, const NameOverrides& overrides, std::string sourceName)
{
    mapping.validate();

    csv::Reader reader(source);
    std::vector<std::string> header;
    if (!reader.next(header)) {
        throw SchemaError("{} has no header row", sourceName);
    }

    const auto colCountry = required_column(header, mapping.country_column);
    const auto colYear    = required_column(header, mapping.year_column);
    std::optional<std::size_t> colCode;
    if (mapping.country_code_column) {
        colCode = required_column(header, *mapping.country_code_column);
    }
    std::array<std::size_t, 3> colScores{};
    for (std::size_t i = 0; i < colScores.size(); ++i) {
        colScores[i] = required_column(header, mapping.foundations[i].column);
    }

    const auto scale = FoundationScale::standard();

    ParseResult result;
    result.panel.provenance = {std::move(sourceName), mapping};

    struct UnresolvedName
    {
        std::size_t first_record;
        std::size_t count;
    };
    std::vector<std::pair<std::string, UnresolvedName>> unresolvedNames;

    std::vector<std::string> fields;
    while (reader.next(fields)) {
        if (blank_row(fields)) {
            continue;
        }
        const auto recordNumber = reader.record_number();

        auto rawName = std::string(csv::trim(cell(fields, colCountry)));
        std::string countryId;
        if (colCode) {
            auto code = upper(csv::trim(cell(fields, *colCode)));
            if (is_alpha3_code(code)) {
                countryId = std::move(code);
            }
        }
        if (countryId.empty()) {
            auto resolution = normalize_country_name(rawName, overrides);
            if (const auto* unresolved = std::get_if<Unresolved>(&resolution)) {
                auto label = unresolved->raw.empty() ? std::string("<blank>") : unresolved->raw;
                auto seen = std::find_if(unresolvedNames.begin(), unresolvedNames.end(), [&](const auto& entry) { return entry.first == label; });
                if (seen == unresolvedNames.end()) {
                    unresolvedNames.push_back({label, {recordNumber, 1}});
                } else {
                    ++seen->second.count;
                }
                continue;
            }
            countryId = std::get<std::string>(resolution);
        }

        auto yearCell = csv::trim(cell(fields, colYear));
        auto year     = csv::parse_integer(yearCell);
        if (!year) {
            result.exclusions.push_back({countryId, fmt::format("unparseable year '{}' (record {})", yearCell, recordNumber)});
            continue;
        }
        if (*year < MinimumYear || *year > MaximumYear) {
            throw RangeError("Record {}: year {} is outside [{}, {}]", recordNumber, *year, MinimumYear, MaximumYear);
        }

        std::vector<double> scores;
        bool complete = true;
        for (std::size_t i = 0; i < colScores.size(); ++i) {
            auto value = csv::parse_decimal(cell(fields, colScores[i]));
            if (!value) {
                complete = false;
                continue;
            }
            if (mapping.foundations[i].invert) {
                *value = scale[i].max - *value;
            }
            if (!scale[i].contains(*value)) {
                throw RangeError("Record {}: {} score {} for {} is outside [{}, {}]", recordNumber, mapping.foundations[i].column, *value, countryId, scale[i].min, scale[i].max);
            }
            scores.push_back(*value);
        }

        CountryYearRecord record;
        record.country_id   = countryId;
        record.country_name = builtin_country_name(countryId).value_or(rawName.empty() ? countryId : rawName);
        record.year         = *year;
        if (complete) {
            record.scores = FoundationVector(std::move(scores));
        }

        try {
            result.panel.insert(std::move(record));
        } catch (const DuplicateRecordError& e) {
            throw DuplicateRecordError("Record {}: {}", recordNumber, e.what());
        }
    }

    for (const auto& [label, seen] : unresolvedNames) {
        auto where = seen.count == 1 ? fmt::format("record {}", seen.first_record) : fmt::format("{} records from record {}", seen.count, seen.first_record);
        result.exclusions.push_back({label, fmt::format("unresolved country name ({})", where)});
    }
    return result;
}

ParseResult parse_dataset_file(const std::filesystem::path& path, const ColumnMapping& mapping, const NameOverrides& overrides)
{
    std::ifstream input(path, std::ios::binary);
    if (!input) {
        throw IoError("Cannot open dataset '{}'", path.string());
    }
    return parse_dataset(input, mapping, overrides, path.string());
}

void write_panel_csv(std::ostream& out, const CountryPanel& panel)
{
    const std::vector<std::string> header{"country_id", "country_name", "year", "mo", "po", "sg"};
    csv::write_row(out, header);

    std::vector<std::string> row(header.size());
    for (const auto& [key, record] : panel.records()) {
        row[0] = record.country_id;
        row[1] = record.country_name;
        row[2] = std::to_string(record.year);
        for (std::size_t i = 0; i < 3; ++i) {
            row[3 + i] = record.scores ? format_exact((*record.scores)[i]) : std::string();
        }
        csv::write_row(out, row);
    }
}

CountryPanel read_panel_csv(std::istream& in, std::string sourceName)
{
    auto result = parse_dataset(in, ColumnMapping::canonical(), {}, std::move(sourceName));
    if (!result.exclusions.empty()) {
        const auto& first = result.exclusions.front();
        throw SchemaError("Canonical panel has a row that cannot be read: {}: {}", first.country_id, first.reason);
    }
    return std::move(result.panel);
}

void PeriodWindow::validate() const
{
    if (start_year > end_year) {
        throw ConfigError("Window start {} is after end {}", start_year, end_year);
    }
    if (min_years < 1) {
        throw ConfigError("min_years must be at least 1, got {}", min_years);
    }
}

AveragedPanel average_period(const CountryPanel& panel, const PeriodWindow& window)
{
    window.validate();
    if (panel.empty()) {
        throw EmptyPanelError("Panel from {} holds no records", panel.provenance.source);
    }

    AveragedPanel result;

    auto flush = [&](const std::string& country, const std::string& name, const std::vector<FoundationVector>& vectors) {
        if (static_cast<int>(vectors.size()) < window.min_years) {
            result.excluded.push_back({country, fmt::format("{} complete records in {}-{}, minimum {}", vectors.size(), window.start_year, window.end_year, window.min_years)});
            return;
        }
        result.vectors.emplace(country, componentwise_mean(vectors));
        result.names.emplace(country, name);
    };

    std::string current;
    std::string currentName;
    std::vector<FoundationVector> inWindow;
    for (const auto& [key, record] : panel.records()) {
        if (record.country_id != current) {
            if (!current.empty()) {
                flush(current, currentName, inWindow);
            }
            current     = record.country_id;
            currentName = record.country_name;
            inWindow.clear();
        }
        if (record.complete() && window.contains(record.year)) {
            inWindow.push_back(*record.scores);
        }
    }
    flush(current, currentName, inWindow);

    return result;
}

}
