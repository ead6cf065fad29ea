#include "cbp/text.hpp"

#include <cctype>

namespace cbp {

namespace {

bool is_id_char(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-' || c == '.' || c >= 0x80;
}

}  // namespace

std::string trim(std::string_view s) {
    auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::string slug(std::string_view name) {
    const std::string t = trim(name);
    std::string out;
    out.reserve(t.size());
    bool pending_sep = false;
    for (unsigned char c : t) {
        if (std::isspace(c)) {
            pending_sep = true;
            continue;
        }
        if (pending_sep) {
            out.push_back('_');
            pending_sep = false;
        }
        out.push_back(is_id_char(c) ? static_cast<char>(c) : '_');
    }
    return out;
}

std::string slug_join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += "__";
        out += slug(p);
    }
    return out;
}

std::string slug_join(std::initializer_list<std::string_view> parts) {
    std::vector<std::string> v;
    v.reserve(parts.size());
    for (auto p : parts) v.emplace_back(p);
    return slug_join(v);
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace cbp
