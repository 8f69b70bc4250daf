#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qce::json {

/// JSON value that keeps number tokens as their source text, so coordinates
/// survive a parse/serialize cycle byte for byte. Object members keep input order.
class Value
{
public:
    enum class Kind {
        Null,
        Boolean,
        Number,
        String,
        Array,
        Object,
        Raw,
    };

    using Member = std::pair<std::string, Value>;

    Value() = default;

    static Value null();
    static Value boolean(bool value);
    /// `text` must be a valid JSON number token.
    static Value number(std::string text);
    static Value number(double value);
    static Value number(long long value);
    static Value string(std::string text);
    static Value array();
    static Value object();
    /// Already serialized JSON, emitted verbatim by dump().
    static Value raw(std::string text);

    Kind kind() const noexcept
    {
        return _kind;
    }

    bool is_object() const noexcept
    {
        return _kind == Kind::Object;
    }

    bool is_array() const noexcept
    {
        return _kind == Kind::Array;
    }

    bool is_string() const noexcept
    {
        return _kind == Kind::String;
    }

    bool as_bool() const noexcept
    {
        return _bool;
    }

    /// Decoded string value, or the raw token for numbers.
    const std::string& text() const noexcept
    {
        return _text;
    }

    std::vector<Value>& items() noexcept
    {
        return _items;
    }

    const std::vector<Value>& items() const noexcept
    {
        return _items;
    }

    std::vector<Member>& members() noexcept
    {
        return _members;
    }

    const std::vector<Member>& members() const noexcept
    {
        return _members;
    }

    const Value* find(std::string_view key) const noexcept;
    Value* find(std::string_view key) noexcept;

    /// Replaces an existing member in place or appends a new one.
    void set(std::string key, Value value);

    void push_back(Value value);

    /// Compact serialization (no insignificant whitespace), UTF-8 passthrough.
    std::string dump() const;

private:
    void dump_to(std::string& out) const;

    Kind _kind = Kind::Null;
    bool _bool = false;
    std::string _text;
    std::vector<Value> _items;
    std::vector<Member> _members;
};

/// Throws qce::ParseError with line, column and byte offset on malformed input.
Value parse(std::string_view text);

/// For each element of the root object's "features" array, the exact source
/// text of its `member` value. `text` must already have passed parse().
std::vector<std::optional<std::string_view>> feature_member_sources(std::string_view text, std::string_view member);

}
