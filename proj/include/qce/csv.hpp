#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qce::csv {

/// Streaming RFC 4180 reader: quoted fields, doubled quotes, embedded
/// separators and newlines, CRLF or LF line ends, optional UTF-8 BOM.
class Reader
{
public:
    explicit Reader(std::istream& input, char separator = ',');

    /// Reads the next record. Returns false at end of input.
    bool next(std::vector<std::string>& fields);

    /// 1-based number of the record last returned (the header is record 1).
    std::size_t record_number() const noexcept
    {
        return _record;
    }

    /// 1-based line on which the record last returned started.
    std::size_t line_number() const noexcept
    {
        return _recordLine;
    }

private:
    std::istream& _input;
    char _separator;
    std::size_t _record     = 0;
    std::size_t _line       = 1;
    std::size_t _recordLine = 1;
    bool _first             = true;
};

/// Writes one record with '\n' line end, quoting fields only where needed.
void write_row(std::ostream& out, std::span<const std::string> fields);

std::string quote_if_needed(std::string_view field);

std::string_view trim(std::string_view text) noexcept;

/// Parses a decimal cell. Accepts plain ("7.5", "-1e-3") and comma-grouped
/// ("1,234.5") forms. Blank cells and the sentinels NA, n/a, - are missing.
std::optional<double> parse_decimal(std::string_view cell);

std::optional<int> parse_integer(std::string_view cell);

bool is_missing_sentinel(std::string_view cell);

}
