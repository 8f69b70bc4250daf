#include "qce/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace qce::csv {

Reader::Reader(std::istream& input, char separator)
: _input(input)
, _separator(separator)
{
}

bool Reader::next(std::vector<std::string>& fields)
{
    fields.clear();

    if (_first) {
        _first = false;
        // Skip a UTF-8 byte order mark.
        if (_input.peek() == 0xEF) {
            char bom[3] = {};
            _input.read(bom, 3);
            if (!(static_cast<unsigned char>(bom[1]) == 0xBB && static_cast<unsigned char>(bom[2]) == 0xBF)) {
                _input.clear();
                _input.seekg(0);
            }
        }
    }

    if (_input.peek() == std::char_traits<char>::eof()) {
        return false;
    }

    _recordLine = _line;
    ++_record;

    std::string field;
    bool inQuotes   = false;
    bool wasQuoted  = false;
    int ch          = 0;

    while ((ch = _input.get()) != std::char_traits<char>::eof()) {
        const char c = static_cast<char>(ch);

        if (inQuotes) {
            if (c == '"') {
                if (_input.peek() == '"') {
                    _input.get();
                    field.push_back('"');
                } else {
                    inQuotes = false;
                }
            } else {
                if (c == '\n') {
                    ++_line;
                }
                field.push_back(c);
            }
            continue;
        }

        if (c == '"' && !wasQuoted && field.empty()) {
            inQuotes  = true;
            wasQuoted = true;
        } else if (c == _separator) {
            fields.push_back(std::move(field));
            field.clear();
            wasQuoted = false;
        } else if (c == '\r') {
            if (_input.peek() == '\n') {
                continue;
            }
            ++_line;
            break;
        } else if (c == '\n') {
            ++_line;
            break;
        } else {
            field.push_back(c);
        }
    }

    fields.push_back(std::move(field));
    return true;
}

std::string quote_if_needed(std::string_view field)
{
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }

    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, std::span<const std::string> fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            out << ',';
        }
        out << quote_if_needed(fields[i]);
    }
    out << '\n';
}

std::string_view trim(std::string_view text) noexcept
{
    auto isSpace = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (!text.empty() && isSpace(text.front())) {
        text.remove_prefix(1);
    }
    while (!text.empty() && isSpace(text.back())) {
        text.remove_suffix(1);
    }
    return text;
}

static std::string lower(std::string_view text)
{
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool is_missing_sentinel(std::string_view cell)
{
    auto value = lower(trim(cell));
    return value.empty() || value == "na" || value == "n/a" || value == "-";
}

// Digits with commas every three places, e.g. 1,234,567 (optionally signed).
static bool is_comma_grouped(std::string_view integral)
{
    if (!integral.empty() && (integral.front() == '-' || integral.front() == '+')) {
        integral.remove_prefix(1);
    }

    auto firstComma = integral.find(',');
    if (firstComma == std::string_view::npos || firstComma == 0 || firstComma > 3) {
        return false;
    }

    for (std::size_t i = 0; i < integral.size(); ++i) {
        const bool commaSlot = i >= firstComma && (i - firstComma) % 4 == 0;
        if (commaSlot ? integral[i] != ',' : !std::isdigit(static_cast<unsigned char>(integral[i]))) {
            return false;
        }
    }
    return (integral.size() - firstComma) % 4 == 0;
}

std::optional<double> parse_decimal(std::string_view cell)
{
    if (is_missing_sentinel(cell)) {
        return std::nullopt;
    }

    std::string text(trim(cell));
    if (text.find(',') != std::string::npos) {
        auto dot      = text.find('.');
        auto integral = std::string_view(text).substr(0, dot);
        if (!is_comma_grouped(integral)) {
            return std::nullopt;
        }
        text.erase(std::remove(text.begin(), text.end(), ','), text.end());
    }

    const char* begin = text.data();
    const char* end   = text.data() + text.size();
    if (begin != end && *begin == '+') {
        ++begin;
    }

    double value = 0.0;
    auto result  = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::optional<int> parse_integer(std::string_view cell)
{
    auto text = trim(cell);
    int value = 0;
    auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || result.ec != std::errc() || result.ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

}
