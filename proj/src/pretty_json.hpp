#pragma once

#include <json.hpp>

#include <string>

namespace ainf::detail {

inline std::string flat_json(const nlohmann::ordered_json& j) {
    if (!j.is_structured() || j.empty()) return j.dump();
    std::string s = j.is_object() ? "{" : "[";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) s += ", ";
        first = false;
        if (j.is_object()) s += nlohmann::ordered_json(it.key()).dump() + ": ";
        s += flat_json(*it);
    }
    return s + (j.is_object() ? "}" : "]");
}

/// Two-space indentation; a container stays on one line when it fits before
/// column `width`. `column` is where the value starts on the current line.
inline void pretty_json(std::string& out, const nlohmann::ordered_json& j, std::size_t indent, std::size_t column,
                        std::size_t width = 100) {
    const std::string flat = flat_json(j);
    if (!j.is_structured() || j.empty() || column + flat.size() <= width) {
        out += flat;
        return;
    }
    const std::string pad(indent + 2, ' ');
    out += j.is_object() ? "{\n" : "[\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        std::size_t col = indent + 2;
        if (j.is_object()) {
            const std::string key = nlohmann::ordered_json(it.key()).dump() + ": ";
            out += key;
            col += key.size();
        }
        pretty_json(out, *it, indent + 2, col, width);
    }
    out += "\n" + std::string(indent, ' ') + (j.is_object() ? "}" : "]");
}

inline std::string pretty_json(const nlohmann::ordered_json& j) {
    std::string out;
    pretty_json(out, j, 0, 0);
    return out + "\n";
}

}  // namespace ainf::detail
