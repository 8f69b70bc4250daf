#include "qce/geo_json.hpp"
#include "qce/core_metrics.hpp"
#include "qce/error.hpp"

#include "json.hpp"

#include <algorithm>

namespace qce::json {

Value Value::null()
{
    return Value();
}

Value Value::boolean(bool value)
{
    Value v;
    v._kind = Kind::Boolean;
    v._bool = value;
    return v;
}

Value Value::number(std::string text)
{
    Value v;
    v._kind = Kind::Number;
    v._text = std::move(text);
    return v;
}

Value Value::number(double value)
{
    return number(format_exact(value));
}

Value Value::number(long long value)
{
    return number(std::to_string(value));
}

Value Value::string(std::string text)
{
    Value v;
    v._kind = Kind::String;
    v._text = std::move(text);
    return v;
}

Value Value::array()
{
    Value v;
    v._kind = Kind::Array;
    return v;
}

Value Value::object()
{
    Value v;
    v._kind = Kind::Object;
    return v;
}

Value Value::raw(std::string text)
{
    Value v;
    v._kind = Kind::Raw;
    v._text = std::move(text);
    return v;
}

const Value* Value::find(std::string_view key) const noexcept
{
    auto iter = std::find_if(_members.begin(), _members.end(), [key](const Member& m) { return m.first == key; });
    return iter == _members.end() ? nullptr : &iter->second;
}

Value* Value::find(std::string_view key) noexcept
{
    auto iter = std::find_if(_members.begin(), _members.end(), [key](const Member& m) { return m.first == key; });
    return iter == _members.end() ? nullptr : &iter->second;
}

void Value::set(std::string key, Value value)
{
    if (auto* existing = find(key)) {
        *existing = std::move(value);
        return;
    }
    _members.emplace_back(std::move(key), std::move(value));
}

void Value::push_back(Value value)
{
    _items.push_back(std::move(value));
}

static void dump_string(std::string& out, const std::string& text)
{
    out += nlohmann::json(text).dump();
}

void Value::dump_to(std::string& out) const
{
    switch (_kind) {
    case Kind::Null:
        out += "null";
        break;
    case Kind::Boolean:
        out += _bool ? "true" : "false";
        break;
    case Kind::Number:
    case Kind::Raw:
        out += _text;
        break;
    case Kind::String:
        dump_string(out, _text);
        break;
    case Kind::Array:
        out.push_back('[');
        for (std::size_t i = 0; i < _items.size(); ++i) {
            if (i > 0) {
                out.push_back(',');
            }
            _items[i].dump_to(out);
        }
        out.push_back(']');
        break;
    case Kind::Object:
        out.push_back('{');
        for (std::size_t i = 0; i < _members.size(); ++i) {
            if (i > 0) {
                out.push_back(',');
            }
            dump_string(out, _members[i].first);
            out.push_back(':');
            _members[i].second.dump_to(out);
        }
        out.push_back('}');
        break;
    }
}

std::string Value::dump() const
{
    std::string out;
    dump_to(out);
    return out;
}

namespace {

class DomBuilder : public nlohmann::json_sax<nlohmann::json>
{
public:
    explicit DomBuilder(std::string_view text)
    : _text(text)
    {
    }

    bool null() override
    {
        return add(Value::null());
    }

    bool boolean(bool val) override
    {
        return add(Value::boolean(val));
    }

    bool number_integer(number_integer_t val) override
    {
        return add(Value::number(std::to_string(val)));
    }

    bool number_unsigned(number_unsigned_t val) override
    {
        return add(Value::number(std::to_string(val)));
    }

    bool number_float(number_float_t, const string_t& raw) override
    {
        return add(Value::number(raw));
    }

    bool string(string_t& val) override
    {
        return add(Value::string(std::move(val)));
    }

    bool binary(binary_t&) override
    {
        return false;
    }

    bool start_object(std::size_t) override
    {
        _stack.push_back(Value::object());
        _keys.emplace_back();
        return true;
    }

    bool key(string_t& val) override
    {
        _keys.back() = std::move(val);
        return true;
    }

    bool end_object() override
    {
        _keys.pop_back();
        return close();
    }

    bool start_array(std::size_t) override
    {
        _stack.push_back(Value::array());
        _keys.emplace_back();
        return true;
    }

    bool end_array() override
    {
        _keys.pop_back();
        return close();
    }

    bool parse_error(std::size_t position, const std::string& lastToken, const nlohmann::detail::exception& ex) override
    {
        std::size_t line   = 1;
        std::size_t column = 1;
        const auto end     = std::min(position > 0 ? position - 1 : 0, _text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (_text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }

        std::string what = ex.what();
        std::replace(what.begin(), what.end(), '\n', ' ');
        throw ParseError("Malformed JSON at line {}, column {} (byte {}) near '{}': {}", line, column, position, lastToken, what);
    }

    Value take()
    {
        return std::move(_root);
    }

private:
    bool add(Value value)
    {
        if (_stack.empty()) {
            _root = std::move(value);
            return true;
        }

        auto& parent = _stack.back();
        if (parent.is_object()) {
            parent.members().emplace_back(std::move(_keys.back()), std::move(value));
        } else {
            parent.push_back(std::move(value));
        }
        return true;
    }

    bool close()
    {
        auto value = std::move(_stack.back());
        _stack.pop_back();
        return add(std::move(value));
    }

    std::string_view _text;
    std::vector<Value> _stack;
    std::vector<std::string> _keys;
    Value _root;
};

}

Value parse(std::string_view text)
{
    DomBuilder builder(text);
    nlohmann::json::sax_parse(text.begin(), text.end(), &builder);
    return builder.take();
}

namespace {

// Span scanner over text that parse() has already accepted.
class Scanner
{
public:
    explicit Scanner(std::string_view text)
        : _text(text)
    {
    }

    void skip_space()
    {
        while (_pos < _text.size() && (_text[_pos] == ' ' || _text[_pos] == '\t' || _text[_pos] == '\n' || _text[_pos] == '\r')) {
            ++_pos;
        }
    }

    char peek()
    {
        skip_space();
        return _pos < _text.size() ? _text[_pos] : '\0';
    }

    void expect(char c)
    {
        if (peek() != c) {
            throw ParseError("GeoJSON scan expected '{}' at byte {}", c, _pos);
        }
        ++_pos;
    }

    std::string read_string()
    {
        skip_space();
        const auto start = _pos;
        skip_value();
        return nlohmann::json::parse(_text.substr(start, _pos - start)).get<std::string>();
    }

    std::string_view skip_value()
    {
        skip_space();
        const auto start = _pos;
        if (_pos >= _text.size()) {
            throw ParseError("GeoJSON scan ran past the end of input");
        }

        const char first = _text[_pos];
        if (first == '"') {
            ++_pos;
            while (_pos < _text.size() && _text[_pos] != '"') {
                _pos += _text[_pos] == '\\' ? 2 : 1;
            }
            ++_pos;
        } else if (first == '{' || first == '[') {
            int depth = 0;
            do {
                const char c = _text[_pos];
                if (c == '"') {
                    skip_value();
                    continue;
                }
                if (c == '{' || c == '[') {
                    ++depth;
                } else if (c == '}' || c == ']') {
                    --depth;
                }
                ++_pos;
            } while (depth > 0 && _pos < _text.size());
        } else {
            while (_pos < _text.size() && std::string_view(",]} \t\n\r").find(_text[_pos]) == std::string_view::npos) {
                ++_pos;
            }
        }
        return _text.substr(start, _pos - start);
    }

    // Calls `onMember(key)` positioned at each member value; the callback must consume it.
    template <typename F>
    void each_member(F&& onMember)
    {
        expect('{');
        if (peek() == '}') {
            ++_pos;
            return;
        }
        while (true) {
            auto key = read_string();
            expect(':');
            onMember(key);
            if (peek() == ',') {
                ++_pos;
                continue;
            }
            expect('}');
            return;
        }
    }

    template <typename F>
    void each_item(F&& onItem)
    {
        expect('[');
        if (peek() == ']') {
            ++_pos;
            return;
        }
        while (true) {
            onItem();
            if (peek() == ',') {
                ++_pos;
                continue;
            }
            expect(']');
            return;
        }
    }

private:
    std::string_view _text;
    std::size_t _pos = 0;
};

}

std::vector<std::optional<std::string_view>> feature_member_sources(std::string_view text, std::string_view member)
{
    std::vector<std::optional<std::string_view>> sources;
    Scanner scanner(text);
    if (scanner.peek() != '{') {
        return sources;
    }

    // Duplicate keys resolve to the first occurrence, matching Value::find().
    bool seenFeatures = false;
    scanner.each_member([&](const std::string& key) {
        if (key != "features" || seenFeatures) {
            scanner.skip_value();
            return;
        }
        seenFeatures = true;
        if (scanner.peek() != '[') {
            scanner.skip_value();
            return;
        }
        scanner.each_item([&] {
            std::optional<std::string_view> found;
            if (scanner.peek() != '{') {
                scanner.skip_value();
                sources.push_back(found);
                return;
            }
            scanner.each_member([&](const std::string& featureKey) {
                auto value = scanner.skip_value();
                if (featureKey == member && !found) {
                    found = value;
                }
            });
            sources.push_back(found);
        });
    });
    return sources;
}

}
