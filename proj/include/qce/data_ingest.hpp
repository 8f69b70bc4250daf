#pragma once

#include "qce/core_metrics.hpp"

#include <array>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace qce {

inline constexpr int MinimumYear = 1950;
inline constexpr int MaximumYear = 2100;

struct FoundationColumn
{
    std::string column;
    /// Score becomes (scale max - score) when set.
    bool invert = false;

    bool operator==(const FoundationColumn&) const = default;
};

/// Where the country, year and the three foundation scores live in a source CSV.
struct ColumnMapping
{
    std::string country_column;
    /// Optional ISO alpha-3 column; when present its value wins over name resolution.
    std::optional<std::string> country_code_column;
    std::string year_column;
    /// Market organization, private ownership, small government, in that order.
    std::array<FoundationColumn, 3> foundations;

    /// Current public Fraser Economic Freedom CSV export: Regulation -> MO,
    /// State ownership of Assets -> PO, Size of Government -> SG, no inversion.
    static ColumnMapping fraser_default();

    /// Columns of the canonical panel export.
    static ColumnMapping canonical();

    /// Throws ConfigError on blank or repeated column names.
    void validate() const;

    bool operator==(const ColumnMapping&) const = default;
};

/// Raw dataset name -> ISO alpha-3 code, consulted before the built-in table.
class NameOverrides
{
public:
    NameOverrides() = default;
    explicit NameOverrides(const std::map<std::string, std::string>& overrides);

    void add(std::string_view rawName, std::string code);
    std::optional<std::string> find(std::string_view rawName) const;

    std::size_t size() const noexcept
    {
        return _byKey.size();
    }

private:
    std::map<std::string, std::string> _byKey;
};

struct Unresolved
{
    std::string raw;

    bool operator==(const Unresolved&) const = default;
};

using CountryResolution = std::variant<std::string, Unresolved>;

/// Case and punctuation insensitive lookup: overrides first, then the built-in
/// table of standard names and dataset variants, then bare alpha-3 codes.
/// Never guesses: anything else comes back Unresolved.
CountryResolution normalize_country_name(std::string_view raw, const NameOverrides& overrides = {});

struct CountryYearRecord
{
    std::string country_id;
    std::string country_name;
    int year = 0;
    /// Empty when any foundation score was missing or unparseable.
    std::optional<FoundationVector> scores;

    bool complete() const noexcept
    {
        return scores.has_value();
    }

    bool operator==(const CountryYearRecord&) const = default;
};

struct Exclusion
{
    std::string country_id;
    std::string reason;

    bool operator==(const Exclusion&) const = default;
};

/// One "country_id: reason" line per exclusion.
void write_exclusion_report(std::ostream& out, const std::vector<Exclusion>& exclusions);

struct PanelProvenance
{
    std::string source;
    ColumnMapping mapping;
};

/// Country-year records keyed by (country_id, year), at most one per key.
class CountryPanel
{
public:
    using Key = std::pair<std::string, int>;

    /// Throws DuplicateRecordError if the key is taken.
    void insert(CountryYearRecord record);

    const std::map<Key, CountryYearRecord>& records() const noexcept
    {
        return _records;
    }

    std::size_t size() const noexcept
    {
        return _records.size();
    }

    bool empty() const noexcept
    {
        return _records.empty();
    }

    std::size_t complete_count() const noexcept;

    const CountryYearRecord* find(std::string_view country, int year) const;

    /// country_id -> display name of the first record seen for that country.
    std::map<std::string, std::string> country_names() const;

    PanelProvenance provenance;

    /// Compares records only; provenance is metadata.
    bool operator==(const CountryPanel& other) const
    {
        return _records == other._records;
    }

private:
    std::map<Key, CountryYearRecord> _records;
};

struct ParseResult
{
    CountryPanel panel;
    /// Rows dropped because the country could not be resolved or the year could not be read.
    std::vector<Exclusion> exclusions;
};

/// Parses a CSV with a header row into a panel. Rows with a missing or
/// unparseable foundation score are kept as incomplete records.
///
/// Throws SchemaError naming the first mapped column absent from the header,
/// DuplicateRecordError for a repeated (country, year), and RangeError with the
/// record number for scores outside the scale after inversion or years outside
/// [1950, 2100].
ParseResult parse_dataset(std::istream& source, const ColumnMapping& mapping, const NameOverrides& overrides = {}, std::string sourceName = "<stream>");

ParseResult parse_dataset_file(const std::filesystem::path& path, const ColumnMapping& mapping, const NameOverrides& overrides = {});

/// Canonical export: country_id,country_name,year,mo,po,sg with shortest
/// round-trip decimals; incomplete records leave the score cells empty.
void write_panel_csv(std::ostream& out, const CountryPanel& panel);

CountryPanel read_panel_csv(std::istream& in, std::string sourceName = "<stream>");

struct AveragedPanel
{
    std::map<std::string, FoundationVector> vectors;
    std::map<std::string, std::string> names;
    std::vector<Exclusion> excluded;
};

struct PeriodWindow
{
    int start_year = 1995;
    int end_year   = 2020;
    int min_years  = 1;

    void validate() const;
    bool contains(int year) const noexcept
    {
        return year >= start_year && year <= end_year;
    }
};

/// Per-country componentwise mean over complete records inside the window.
/// Countries with fewer than window.min_years such records are excluded and reported.
/// Throws EmptyPanelError when the panel holds no records.
AveragedPanel average_period(const CountryPanel& panel, const PeriodWindow& window);

}
