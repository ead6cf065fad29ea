#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace cbp {

// Identifier from a display name: trims, maps whitespace runs to '_' and
// anything outside [A-Za-z0-9_.-] (ASCII) to '_'. UTF-8 bytes pass through.
std::string slug(std::string_view name);

// Joins slugged parts with "__"; used for deterministic minted ids.
std::string slug_join(std::initializer_list<std::string_view> parts);
std::string slug_join(const std::vector<std::string>& parts);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string to_lower_ascii(std::string_view s);

// XML text/attribute escaping for the hand-written serializers.
std::string xml_escape(std::string_view s);

}  // namespace cbp
