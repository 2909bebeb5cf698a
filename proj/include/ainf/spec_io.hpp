#pragma once

#include "ainf/category.hpp"
#include "ainf/filtration.hpp"
#include "ainf/hochschild.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ainf {

/// Parse failure. `where` is a field path such as "operations[0].entries[3].inputs[1]"
/// or "line 4, column 12" for syntax errors.
class SpecError : public std::runtime_error {
public:
    SpecError(const std::string& where, const std::string& what)
        : std::runtime_error(where.empty() ? what : where + ": " + what), where_(where) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

/// In-memory form of a workbench file.
struct WorkbenchSpec {
    AInfCategory category;
    std::optional<Filtration> filtration;
    std::optional<HochschildCochain> cochain;  // values in the diagonal bimodule
    std::map<std::string, long> parameters;    // e.g. "kappa"
    /// Number of table entries per arity as written in the file (zero entries included).
    std::map<int, std::size_t> listed_entries;
};

/// Strict JSON schema: unknown fields are errors and every object needs a unit.
/// Units imply m_2(1, x) = m_2(x, 1) = x for every pair the file does not list.
WorkbenchSpec parse_spec(std::string_view text);
WorkbenchSpec load_spec(const std::filesystem::path& path);

/// Cochain file ({"format", "cochain"}) with labels resolved against `base`.
HochschildCochain parse_cochain(std::string_view text, const AInfCategory& base);
HochschildCochain load_cochain(const std::filesystem::path& path, const AInfCategory& base);

/// Canonical text: fixed key order, basis in id order, tables sorted by input ids,
/// zero entries dropped, filtration levels as reduced echelon rows.
std::string serialize_spec(const WorkbenchSpec& spec);
std::string serialize_spec(const AInfCategory& category);
void save_spec(const std::filesystem::path& path, const WorkbenchSpec& spec);

}  // namespace ainf
