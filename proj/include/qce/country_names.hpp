#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace qce {

/// Lookup key for country names: ASCII-folded, lower case, letters and digits only.
/// "Korea, Rep." and "korea rep" share the key "korearep".
std::string country_name_key(std::string_view name);

/// Built-in ISO 3166-1 alpha-3 code for a standard name or a common dataset variant.
std::optional<std::string> builtin_country_code(std::string_view name);

/// Display name of a built-in alpha-3 code.
std::optional<std::string> builtin_country_name(std::string_view code);

/// Three upper-case ASCII letters.
bool is_alpha3_code(std::string_view code) noexcept;

}
