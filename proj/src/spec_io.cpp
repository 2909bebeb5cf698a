#include "ainf/spec_io.hpp"

#include "pretty_json.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace ainf {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kFormat = "ainf-workbench/1";

std::string at(const std::string& path, std::string_view key) { return path.empty() ? std::string(key) : path + "." + std::string(key); }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
    if (!j.is_object()) throw SpecError(path, "expected an object");
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (const char* a : keys) ok = ok || k == a;
        if (!ok) throw SpecError(at(path, k), "unknown field");
    }
}

const json& require(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) throw SpecError(at(path, key), "missing field");
    return j.at(key);
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw SpecError(path, "expected a string");
    return j.get<std::string>();
}

long as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SpecError(path, "expected an integer");
    return j.get<long>();
}

Field parse_field(const json& j, const std::string& path) {
    const std::string s = as_string(j, path);
    if (s == "Q") return Field::rationals();
    std::string digits;
    if (s.rfind("GF(", 0) == 0 && s.size() > 4 && s.back() == ')')
        digits = s.substr(3, s.size() - 4);
    else if (s.rfind("F_", 0) == 0)
        digits = s.substr(2);
    if (digits.empty() || digits.size() > 9 || digits.find_first_not_of("0123456789") != std::string::npos)
        throw SpecError(path, "unknown field \"" + s + "\" (use \"Q\" or \"GF(p)\")");
    const unsigned long p = std::stoul(digits);
    if (!is_prime(p)) throw SpecError(path, "characteristic " + digits + " is not prime");
    return Field::prime(static_cast<std::uint32_t>(p));
}

Scalar parse_scalar(const json& j, const Field& k, const std::string& path) {
    try {
        if (j.is_number_integer()) return k.from_int(j.get<long>());
        if (j.is_string()) return k.parse(j.get<std::string>());
    } catch (const std::exception& e) {
        throw SpecError(path, e.what());
    }
    throw SpecError(path, "expected an integer or a string \"a/b\"");
}

int lookup(const AInfCategory& c, const json& j, const std::string& path) {
    const std::string s = as_string(j, path);
    auto id = c.find_generator(s);
    if (!id) throw SpecError(path, "unknown basis element \"" + s + "\"");
    return *id;
}

Combo parse_combo(const json& j, const AInfCategory& c, const std::string& path) {
    if (!j.is_object()) throw SpecError(path, "expected an object mapping basis names to scalars");
    Combo out;
    for (const auto& [label, coeff] : j.items()) {
        auto id = c.find_generator(label);
        if (!id) throw SpecError(at(path, label), "unknown basis element \"" + label + "\"");
        add_term(out, *id, parse_scalar(coeff, c.field(), at(path, label)));
    }
    return out;
}

Tuple parse_inputs(const json& j, const AInfCategory& c, const std::string& path) {
    if (!j.is_array() || j.empty()) throw SpecError(path, "expected a non-empty list of basis names");
    Tuple t;
    for (std::size_t i = 0; i < j.size(); ++i) t.push_back(lookup(c, j[i], at(path, i)));
    return t;
}

json parse_text(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset to line and column
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw SpecError("line " + std::to_string(line) + ", column " + std::to_string(col), "malformed JSON");
    }
}

HochschildCochain parse_cochain_section(const json& j, const AInfCategory& c, const std::string& path) {
    allow_keys(j, path, {"arity", "degree", "bimodule", "entries"});
    HochschildCochain h;
    h.arity = static_cast<int>(as_int(require(j, path, "arity"), at(path, "arity")));
    if (h.arity < 0) throw SpecError(at(path, "arity"), "arity must be non-negative");
    h.degree = j.contains("degree") ? static_cast<int>(as_int(j["degree"], at(path, "degree"))) : 0;
    if (j.contains("bimodule") && as_string(j["bimodule"], at(path, "bimodule")) != "diagonal")
        throw SpecError(at(path, "bimodule"), "only the diagonal bimodule is supported");
    const json& entries = require(j, path, "entries");
    if (!entries.is_array()) throw SpecError(at(path, "entries"), "expected a list");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string p = at(at(path, "entries"), i);
        allow_keys(entries[i], p, {"inputs", "object", "output"});
        Tuple t;
        if (h.arity == 0) {
            const std::string obj = as_string(require(entries[i], p, "object"), at(p, "object"));
            auto x = c.find_object(obj);
            if (!x) throw SpecError(at(p, "object"), "unknown object \"" + obj + "\"");
            t = {*x};
        } else {
            t = parse_inputs(require(entries[i], p, "inputs"), c, at(p, "inputs"));
            if (static_cast<int>(t.size()) != h.arity) throw SpecError(at(p, "inputs"), "wrong number of inputs");
        }
        if (h.table.count(t)) throw SpecError(p, "repeated entry");
        h.set(t, parse_combo(require(entries[i], p, "output"), c, at(p, "output")));
    }
    return h;
}

WorkbenchSpec parse_document(const json& doc) {
    allow_keys(doc, "", {"format", "field", "objects", "basis", "units", "operations", "filtration", "parameters",
                         "cochain"});
    if (doc.contains("format") && as_string(doc["format"], "format") != kFormat)
        throw SpecError("format", "unsupported format (expected \"" + std::string(kFormat) + "\")");
    WorkbenchSpec spec;
    const Field k = doc.contains("field") ? parse_field(doc["field"], "field") : Field::rationals();
    AInfCategory c(k);

    if (doc.contains("objects")) {
        const json& objs = doc["objects"];
        if (!objs.is_array() || objs.empty()) throw SpecError("objects", "expected a non-empty list");
        for (std::size_t i = 0; i < objs.size(); ++i) {
            const std::string o = as_string(objs[i], at("objects", i));
            if (c.find_object(o)) throw SpecError(at("objects", i), "duplicate object \"" + o + "\"");
            c.add_object(o);
        }
    } else {
        c.add_object("0");
    }
    auto object = [&](const json& j, const std::string& path) {
        const std::string o = as_string(j, path);
        auto x = c.find_object(o);
        if (!x) throw SpecError(path, "unknown object \"" + o + "\"");
        return *x;
    };

    const json& basis = require(doc, "", "basis");
    if (!basis.is_array()) throw SpecError("basis", "expected a list");
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const std::string p = at("basis", i);
        allow_keys(basis[i], p, {"name", "source", "target", "degree"});
        const std::string name = as_string(require(basis[i], p, "name"), at(p, "name"));
        if (name.empty()) throw SpecError(at(p, "name"), "empty name");
        if (c.find_generator(name)) throw SpecError(at(p, "name"), "duplicate basis label \"" + name + "\"");
        int src = 0, tgt = 0;
        if (basis[i].contains("source") || basis[i].contains("target") || c.num_objects() > 1) {
            src = object(require(basis[i], p, "source"), at(p, "source"));
            tgt = object(require(basis[i], p, "target"), at(p, "target"));
        }
        const int deg = static_cast<int>(as_int(require(basis[i], p, "degree"), at(p, "degree")));
        c.add_generator(name, src, tgt, deg);
    }

    {
        const json& units = require(doc, "", "units");
        if (!units.is_object()) throw SpecError("units", "expected an object mapping objects to basis names");
        for (const auto& [obj, name] : units.items()) {
            auto x = c.find_object(obj);
            if (!x) throw SpecError(at("units", obj), "unknown object \"" + obj + "\"");
            const int id = lookup(c, name, at("units", obj));
            if (c.generator(id).source != *x || c.generator(id).target != *x)
                throw SpecError(at("units", obj), "unit is not an endomorphism of " + obj);
            c.set_unit(*x, id);
        }
        for (int x = 0; x < static_cast<int>(c.num_objects()); ++x)
            if (!c.unit(x)) throw SpecError("units", "object " + c.object_label(x) + " has no unit");
    }

    std::set<Tuple> listed;
    if (doc.contains("operations")) {
        const json& ops = doc["operations"];
        if (!ops.is_array()) throw SpecError("operations", "expected a list of tables");
        std::set<int> seen;
        for (std::size_t i = 0; i < ops.size(); ++i) {
            const std::string p = at("operations", i);
            allow_keys(ops[i], p, {"arity", "entries"});
            const int arity = static_cast<int>(as_int(require(ops[i], p, "arity"), at(p, "arity")));
            if (arity < 1) throw SpecError(at(p, "arity"), "arity must be at least 1");
            if (!seen.insert(arity).second) throw SpecError(at(p, "arity"), "second table for this arity");
            const json& entries = require(ops[i], p, "entries");
            if (!entries.is_array()) throw SpecError(at(p, "entries"), "expected a list");
            spec.listed_entries[arity] = entries.size();
            for (std::size_t e = 0; e < entries.size(); ++e) {
                const std::string q = at(at(p, "entries"), e);
                allow_keys(entries[e], q, {"inputs", "output"});
                const Tuple t = parse_inputs(require(entries[e], q, "inputs"), c, at(q, "inputs"));
                if (static_cast<int>(t.size()) != arity) throw SpecError(at(q, "inputs"), "wrong number of inputs");
                if (!listed.insert(t).second) throw SpecError(q, "repeated entry " + tuple_labels(c, t));
                c.set_operation(t, parse_combo(require(entries[e], q, "output"), c, at(q, "output")));
            }
        }
    }
    for (int x = 0; x < static_cast<int>(c.num_objects()); ++x) {
        const auto u = c.unit(x);
        if (!u) continue;
        for (int id = 0; id < static_cast<int>(c.size()); ++id) {
            const auto& g = c.generator(id);
            if (g.target == x && !listed.count({*u, id})) c.set_operation({*u, id}, Combo{{id, k.one()}});
            if (g.source == x && !listed.count({id, *u})) c.set_operation({id, *u}, Combo{{id, k.one()}});
        }
    }
    spec.category = std::move(c);
    const AInfCategory& cat = spec.category;

    if (doc.contains("filtration")) {
        const json& levels = doc["filtration"];
        if (!levels.is_array() || levels.empty()) throw SpecError("filtration", "expected a non-empty list of levels");
        if (cat.num_objects() != 1) throw SpecError("filtration", "filtrations need a one-object category");
        Filtration F;
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const std::string p = at("filtration", i);
            if (!levels[i].is_array()) throw SpecError(p, "expected a list of spanning vectors");
            std::vector<Vector> span;
            for (std::size_t v = 0; v < levels[i].size(); ++v)
                span.push_back(to_vector(parse_combo(levels[i][v], cat, at(p, v)), k, cat.size()));
            F.levels.push_back(echelon_basis(span, k, cat.size()));
        }
        spec.filtration = std::move(F);
    }
    if (doc.contains("parameters")) {
        const json& ps = doc["parameters"];
        allow_keys(ps, "parameters", {"kappa"});
        for (const auto& [key, v] : ps.items()) spec.parameters[key] = as_int(v, at("parameters", key));
    }
    if (doc.contains("cochain")) spec.cochain = parse_cochain_section(doc["cochain"], cat, "cochain");
    return spec;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError("", "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ojson combo_json(const AInfCategory& c, const Combo& x, int offset = 0) {
    // keys in id order
    ojson out = ojson::object();
    for (const auto& [id, v] : x) out[c.generator(id + offset).label] = v.to_string();
    return out;
}

ojson inputs_json(const AInfCategory& c, const Tuple& t) {
    ojson out = ojson::array();
    for (int id : t) out.push_back(c.generator(id).label);
    return out;
}

}  // namespace

WorkbenchSpec parse_spec(std::string_view text) { return parse_document(parse_text(text)); }

WorkbenchSpec load_spec(const std::filesystem::path& path) { return parse_spec(read_file(path)); }

HochschildCochain parse_cochain(std::string_view text, const AInfCategory& base) {
    const json doc = parse_text(text);
    allow_keys(doc, "", {"format", "cochain"});
    if (doc.contains("format") && as_string(doc["format"], "format") != kFormat)
        throw SpecError("format", "unsupported format (expected \"" + std::string(kFormat) + "\")");
    return parse_cochain_section(require(doc, "", "cochain"), base, "cochain");
}

HochschildCochain load_cochain(const std::filesystem::path& path, const AInfCategory& base) {
    return parse_cochain(read_file(path), base);
}

std::string serialize_spec(const WorkbenchSpec& spec) {
    const AInfCategory& c = spec.category;
    const bool one_object = c.num_objects() == 1;
    ojson doc;
    doc["format"] = kFormat;
    doc["field"] = c.field().name();
    doc["objects"] = ojson::array();
    for (int x = 0; x < static_cast<int>(c.num_objects()); ++x) doc["objects"].push_back(c.object_label(x));
    doc["basis"] = ojson::array();
    for (int id = 0; id < static_cast<int>(c.size()); ++id) {
        const auto& g = c.generator(id);
        ojson b;
        b["name"] = g.label;
        if (!one_object) {
            b["source"] = c.object_label(g.source);
            b["target"] = c.object_label(g.target);
        }
        b["degree"] = g.degree;
        doc["basis"].push_back(std::move(b));
    }
    doc["units"] = ojson::object();
    for (int x = 0; x < static_cast<int>(c.num_objects()); ++x)
        if (auto u = c.unit(x)) doc["units"][c.object_label(x)] = c.generator(*u).label;
    // Unit pairs missing from m_2 are written as explicit zeros so that parsing does not imply them.
    std::map<int, std::map<Tuple, Combo>> tables;
    for (int p : c.arities()) tables[p] = c.operations(p);
    for (int x = 0; x < static_cast<int>(c.num_objects()); ++x) {
        const auto u = c.unit(x);
        if (!u) continue;
        for (int id = 0; id < static_cast<int>(c.size()); ++id) {
            const auto& g = c.generator(id);
            if (g.target == x && !c.operation({*u, id})) tables[2][{*u, id}];
            if (g.source == x && !c.operation({id, *u})) tables[2][{id, *u}];
        }
    }
    doc["operations"] = ojson::array();
    for (const auto& [p, entries] : tables) {
        ojson table;
        table["arity"] = p;
        table["entries"] = ojson::array();
        for (const auto& [t, v] : entries) {
            ojson e;
            e["inputs"] = inputs_json(c, t);
            e["output"] = combo_json(c, v);
            table["entries"].push_back(std::move(e));
        }
        doc["operations"].push_back(std::move(table));
    }
    if (spec.filtration) {
        doc["filtration"] = ojson::array();
        for (const auto& level : spec.filtration->levels) {
            ojson rows = ojson::array();
            for (const auto& r : level.basis()) rows.push_back(combo_json(c, to_combo(r)));
            doc["filtration"].push_back(std::move(rows));
        }
    }
    if (!spec.parameters.empty()) {
        doc["parameters"] = ojson::object();
        for (const auto& [k, v] : spec.parameters) doc["parameters"][k] = v;
    }
    if (spec.cochain) {
        const auto& h = *spec.cochain;
        ojson ch;
        ch["arity"] = h.arity;
        ch["degree"] = h.degree;
        ch["bimodule"] = "diagonal";
        ch["entries"] = ojson::array();
        for (const auto& [t, v] : h.table) {
            ojson e;
            if (h.arity == 0)
                e["object"] = c.object_label(t[0]);
            else
                e["inputs"] = inputs_json(c, t);
            e["output"] = combo_json(c, v);
            ch["entries"].push_back(std::move(e));
        }
        doc["cochain"] = std::move(ch);
    }
    return detail::pretty_json(doc);
}

std::string serialize_spec(const AInfCategory& category) {
    WorkbenchSpec spec;
    spec.category = category;
    return serialize_spec(spec);
}

void save_spec(const std::filesystem::path& path, const WorkbenchSpec& spec) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SpecError("", "cannot write " + path.string());
    out << serialize_spec(spec);
}

}  // namespace ainf
