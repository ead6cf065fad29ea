#pragma once

#include <string>
#include <vector>

namespace cbp {

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;     // stable kebab-case identifier
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

inline bool has_errors(const Diagnostics& d) {
    for (const auto& x : d)
        if (x.severity == Severity::Error) return true;
    return false;
}

inline std::string to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

inline std::string format_diagnostic(const Diagnostic& d) {
    return to_string(d.severity) + " [" + d.code + "] " + d.message;
}

}  // namespace cbp
