#include "ainf/category.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace ainf {

void add_term(Combo& into, int id, const Scalar& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = into.emplace(id, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) into.erase(it);
    }
}

void add_scaled(Combo& into, const Combo& x, const Scalar& coeff) {
    if (coeff.is_zero()) return;
    for (const auto& [id, c] : x) add_term(into, id, c * coeff);
}

Combo scaled(const Combo& x, const Scalar& coeff) {
    Combo out;
    add_scaled(out, x, coeff);
    return out;
}

Vector to_vector(const Combo& x, const Field& field, std::size_t n) {
    Vector v = zero_vector(field, n);
    for (const auto& [id, c] : x) v.at(id) = c;
    return v;
}

Combo to_combo(const Vector& v) {
    Combo out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) out.emplace(static_cast<int>(i), v[i]);
    return out;
}

// ---------------------------------------------------------------- construction

int AInfCategory::add_object(std::string label) {
    if (find_object(label)) throw std::invalid_argument("duplicate object label \"" + label + "\"");
    objects_.push_back(std::move(label));
    units_.emplace_back();
    return static_cast<int>(objects_.size()) - 1;
}

int AInfCategory::add_generator(std::string label, int source, int target, int degree) {
    if (source < 0 || target < 0 || source >= static_cast<int>(objects_.size()) ||
        target >= static_cast<int>(objects_.size()))
        throw std::invalid_argument("generator \"" + label + "\" refers to an unknown object");
    if (find_generator(label)) throw std::invalid_argument("duplicate basis label \"" + label + "\"");
    int id = static_cast<int>(gens_.size());
    gens_.push_back({std::move(label), source, target, degree});
    homs_[{source, target}].push_back(id);
    by_target_[target].push_back(id);
    return id;
}

void AInfCategory::set_unit(int object, int generator) {
    const auto& g = gens_.at(generator);
    if (g.source != object || g.target != object)
        throw std::invalid_argument("unit \"" + g.label + "\" is not an endomorphism of " + objects_.at(object));
    units_.at(object) = generator;
}

void AInfCategory::set_operation(Tuple inputs, Combo output) {
    if (inputs.empty()) throw std::invalid_argument("operations need at least one input");
    for (int id : inputs)
        if (id < 0 || id >= static_cast<int>(gens_.size())) throw std::invalid_argument("unknown generator id");
    for (auto it = output.begin(); it != output.end();) it = it->second.is_zero() ? output.erase(it) : std::next(it);
    auto& table = ops_[static_cast<int>(inputs.size())];
    if (output.empty()) {
        table.erase(inputs);
        if (table.empty()) ops_.erase(static_cast<int>(inputs.size()));
    } else {
        table[std::move(inputs)] = std::move(output);
    }
}

// ---------------------------------------------------------------- queries

std::optional<int> AInfCategory::find_object(const std::string& label) const {
    auto it = std::find(objects_.begin(), objects_.end(), label);
    if (it == objects_.end()) return std::nullopt;
    return static_cast<int>(it - objects_.begin());
}

std::optional<int> AInfCategory::find_generator(const std::string& label) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].label == label) return static_cast<int>(i);
    return std::nullopt;
}

const std::vector<int>& AInfCategory::hom(int source, int target) const {
    static const std::vector<int> empty;
    auto it = homs_.find({source, target});
    return it == homs_.end() ? empty : it->second;
}

GradedSpace AInfCategory::hom_space(int source, int target) const {
    GradedSpace g;
    for (int id : hom(source, target)) {
        g.labels.push_back(gens_[id].label);
        g.degrees.push_back(gens_[id].degree);
    }
    return g;
}

bool AInfCategory::is_unit(int id) const {
    int x = gens_.at(id).source;
    return units_.at(x) == id;
}

const Combo* AInfCategory::operation(const Tuple& inputs) const {
    auto t = ops_.find(static_cast<int>(inputs.size()));
    if (t == ops_.end()) return nullptr;
    auto it = t->second.find(inputs);
    return it == t->second.end() ? nullptr : &it->second;
}

const std::map<Tuple, Combo>& AInfCategory::operations(int arity) const {
    static const std::map<Tuple, Combo> empty;
    auto it = ops_.find(arity);
    return it == ops_.end() ? empty : it->second;
}

std::vector<int> AInfCategory::arities() const {
    std::vector<int> out;
    for (const auto& [p, table] : ops_)
        if (!table.empty()) out.push_back(p);
    return out;
}

int AInfCategory::arity_bound() const {
    auto a = arities();
    return a.empty() ? 0 : a.back();
}

bool AInfCategory::composable(const Tuple& t) const {
    for (std::size_t u = 0; u + 1 < t.size(); ++u)
        if (gens_.at(t[u]).source != gens_.at(t[u + 1]).target) return false;
    return true;
}

int AInfCategory::output_degree(const Tuple& t) const {
    int d = 2 - static_cast<int>(t.size());
    for (int id : t) d += gens_.at(id).degree;
    return d;
}

Combo AInfCategory::apply(std::span<const Combo> args) const {
    Combo out;
    if (args.empty()) return out;
    for (const auto& a : args)
        if (a.empty()) return out;
    const std::size_t p = args.size();
    const auto opt = ops_.find(static_cast<int>(p));
    if (opt == ops_.end()) return out;
    const auto& table = opt->second;
    Tuple t(p);
    std::vector<Combo::const_iterator> it(p);
    for (std::size_t u = 0; u < p; ++u) it[u] = args[u].begin();
    while (true) {
        Scalar coeff = it[0]->second;
        t[0] = it[0]->first;
        for (std::size_t u = 1; u < p; ++u) {
            coeff *= it[u]->second;
            t[u] = it[u]->first;
        }
        if (auto e = table.find(t); e != table.end()) add_scaled(out, e->second, coeff);
        std::size_t u = p;
        while (u > 0) {
            --u;
            if (++it[u] != args[u].end()) break;
            it[u] = args[u].begin();
            if (u == 0) return out;
        }
    }
}

void AInfCategory::for_each_composable(int length, const std::function<void(const Tuple&)>& f,
                                       std::optional<int> first) const {
    if (length <= 0) return;
    Tuple t;
    t.reserve(length);
    std::function<void()> rec = [&] {
        if (static_cast<int>(t.size()) == length) {
            f(t);
            return;
        }
        auto it = by_target_.find(gens_[t.back()].source);
        if (it == by_target_.end()) return;
        for (int id : it->second) {
            t.push_back(id);
            rec();
            t.pop_back();
        }
    };
    for (int id = 0; id < static_cast<int>(gens_.size()); ++id) {
        if (first && *first != id) continue;
        t.assign(1, id);
        rec();
    }
}

bool operator==(const AInfCategory& a, const AInfCategory& b) {
    if (!(a.field_ == b.field_) || a.objects_ != b.objects_ || a.units_ != b.units_) return false;
    if (a.gens_.size() != b.gens_.size()) return false;
    for (std::size_t i = 0; i < a.gens_.size(); ++i) {
        const auto &x = a.gens_[i], &y = b.gens_[i];
        if (x.label != y.label || x.source != y.source || x.target != y.target || x.degree != y.degree) return false;
    }
    return a.ops_ == b.ops_;
}

std::string tuple_labels(const AInfCategory& c, const Tuple& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + c.generator(t[i]).label;
    return s + ")";
}

std::string combo_string(const AInfCategory& c, const Combo& x) {
    if (x.empty()) return "0";
    std::string s;
    for (const auto& [id, k] : x) {
        if (!s.empty()) s += " + ";
        if (!k.is_one()) s += k.to_string() + "*";
        s += c.generator(id).label;
    }
    return s;
}

// ---------------------------------------------------------------- reports

void ValidationReport::pass(const std::string& check) { checks_.emplace(check, true); }

void ValidationReport::fail(Witness w) {
    checks_[w.check] = false;
    witnesses_.push_back(std::move(w));
}

void ValidationReport::merge(const ValidationReport& other) {
    for (const auto& [k, v] : other.checks_) {
        auto [it, inserted] = checks_.emplace(k, v);
        if (!inserted) it->second = it->second && v;
    }
    for (const auto& [k, v] : other.flags_) flags_[k] = v;
    witnesses_.insert(witnesses_.end(), other.witnesses_.begin(), other.witnesses_.end());
}

void ValidationReport::sort_witnesses() {
    std::stable_sort(witnesses_.begin(), witnesses_.end(), [](const Witness& a, const Witness& b) {
        return std::tie(a.check, a.n, a.tuple, a.detail) < std::tie(b.check, b.n, b.tuple, b.detail);
    });
}

bool ValidationReport::passed() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const auto& kv) { return kv.second; });
}

bool ValidationReport::passed(const std::string& check) const {
    auto it = checks_.find(check);
    return it == checks_.end() || it->second;
}

Witness make_witness(const AInfCategory& c, std::string check, const Tuple& t, const Combo& discrepancy,
                     std::string detail) {
    Witness w;
    w.check = std::move(check);
    w.n = static_cast<int>(t.size());
    w.tuple = t;
    for (int id : t) w.labels.push_back(c.generator(id).label);
    for (const auto& [id, s] : discrepancy) w.discrepancy.emplace_back(c.generator(id).label, s.to_string());
    w.detail = std::move(detail);
    return w;
}

// ---------------------------------------------------------------- validation

ValidationReport validate_structure(const AInfCategory& c) {
    ValidationReport rep;
    for (const char* k : {"degrees", "composability", "units"}) rep.pass(k);
    rep.set_flag("minimal", c.is_minimal());

    for (int p : c.arities()) {
        for (const auto& [t, out] : c.operations(p)) {
            if (!c.composable(t)) {
                rep.fail(make_witness(c, "composability", t, out, "inputs do not compose"));
                continue;
            }
            const int src = c.generator(t.back()).source;
            const int tgt = c.generator(t.front()).target;
            const int deg = c.output_degree(t);
            for (const auto& [id, s] : out) {
                const auto& g = c.generator(id);
                if (g.source != src || g.target != tgt)
                    rep.fail(make_witness(c, "composability", t, out, "output " + g.label + " lies in the wrong hom-space"));
                if (g.degree != deg)
                    rep.fail(make_witness(c, "degrees", t, out,
                                          "output " + g.label + " has degree " + std::to_string(g.degree) + ", expected " +
                                              std::to_string(deg)));
            }
        }
    }

    for (int x = 0; x < static_cast<int>(c.num_objects()); ++x) {
        auto u = c.unit(x);
        if (!u) {
            rep.fail(Witness{"units", 0, {}, {}, {}, "object " + c.object_label(x) + " has no unit"});
            continue;
        }
        if (c.degree(*u) != 0)
            rep.fail(make_witness(c, "units", {*u}, {}, "unit of " + c.object_label(x) + " has nonzero degree"));
    }

    // m_2(1, f) = f = m_2(f, 1)
    for (int id = 0; id < static_cast<int>(c.size()); ++id) {
        const auto& g = c.generator(id);
        Combo expected{{id, c.field().one()}};
        if (auto u = c.unit(g.target)) {
            const Combo* got = c.operation({*u, id});
            Combo diff = got ? *got : Combo{};
            add_scaled(diff, expected, c.field().from_int(-1));
            if (!diff.empty()) rep.fail(make_witness(c, "units", {*u, id}, diff, "m_2(1, f) != f"));
        }
        if (auto u = c.unit(g.source)) {
            const Combo* got = c.operation({id, *u});
            Combo diff = got ? *got : Combo{};
            add_scaled(diff, expected, c.field().from_int(-1));
            if (!diff.empty()) rep.fail(make_witness(c, "units", {id, *u}, diff, "m_2(f, 1) != f"));
        }
    }
    // m_p vanishes on units for p != 2
    for (int p : c.arities()) {
        if (p == 2) continue;
        for (const auto& [t, out] : c.operations(p))
            if (std::any_of(t.begin(), t.end(), [&](int id) { return c.is_unit(id); }))
                rep.fail(make_witness(c, "units", t, out, "m_" + std::to_string(p) + " is nonzero on a unit"));
    }
    rep.sort_witnesses();
    return rep;
}

// ---------------------------------------------------------------- Stasheff

Combo stasheff_obstruction(const AInfCategory& c, const Tuple& t) {
    const int n = static_cast<int>(t.size());
    const Field& k = c.field();
    Combo total;
    int prefix_degree = 0;  // |a_1| + ... + |a_r|
    for (int r = 0; r < n; ++r) {
        for (int s = 1; s <= n - r; ++s) {
            const int tt = n - r - s;
            const Combo* inner = c.operation(Tuple(t.begin() + r, t.begin() + r + s));
            if (!inner) continue;
            const Scalar coeff = k.one() * sign(r + s * tt + s * prefix_degree);
            Tuple outer(t.begin(), t.begin() + r);
            outer.push_back(0);
            outer.insert(outer.end(), t.begin() + r + s, t.end());
            for (const auto& [id, x] : *inner) {
                outer[r] = id;
                if (const Combo* o = c.operation(outer)) add_scaled(total, *o, coeff * x);
            }
        }
        prefix_degree += c.degree(t[r]);
    }
    return total;
}

ValidationReport check_stasheff(const AInfCategory& c, int n_max, int jobs) {
    const int bound = c.arity_bound();
    if (n_max <= 0) n_max = std::max(1, 2 * bound - 1);
    jobs = std::max(1, jobs);

    ValidationReport rep;
    for (int n = 1; n <= n_max; ++n) {
        const std::string name = "stasheff[" + std::to_string(n) + "]";
        rep.pass(name);
        std::mutex mu;
        std::vector<Witness> found;
        auto sweep = [&](int worker) {
            std::vector<Witness> local;
            for (int first = worker; first < static_cast<int>(c.size()); first += jobs) {
                c.for_each_composable(
                    n,
                    [&](const Tuple& t) {
                        Combo o = stasheff_obstruction(c, t);
                        if (!o.empty()) local.push_back(make_witness(c, name, t, o));
                    },
                    first);
            }
            std::lock_guard lock(mu);
            found.insert(found.end(), local.begin(), local.end());
        };
        if (jobs == 1) {
            sweep(0);
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < jobs; ++w) pool.emplace_back(sweep, w);
            for (auto& th : pool) th.join();
        }
        for (auto& w : found) rep.fail(std::move(w));
    }
    rep.sort_witnesses();
    return rep;
}

// ---------------------------------------------------------------- constructions

int reduced_form_parity(std::span<const int> degrees) {
    const int p = static_cast<int>(degrees.size());
    int e = 0;
    for (int u = 0; u < p; ++u) e += (p - 1 - u) * degrees[u];
    return e & 1;
}

AInfCategory opposite(const AInfCategory& c) {
    AInfCategory op(c.field());
    for (int x = 0; x < static_cast<int>(c.num_objects()); ++x) op.add_object(c.object_label(x));
    for (int id = 0; id < static_cast<int>(c.size()); ++id) {
        const auto& g = c.generator(id);
        op.add_generator(g.label, g.target, g.source, g.degree);
    }
    for (int x = 0; x < static_cast<int>(c.num_objects()); ++x)
        if (auto u = c.unit(x)) op.set_unit(x, *u);
    for (int p : c.arities()) {
        for (const auto& [t, out] : c.operations(p)) {
            Tuple rev(t.rbegin(), t.rend());
            int e = (p - 1) * (p - 2) / 2;
            for (int u = 0; u < p; ++u)
                for (int v = u + 1; v < p; ++v) e += c.degree(rev[u]) * c.degree(rev[v]);
            op.set_operation(rev, scaled(out, c.field().one() * sign(e)));
        }
    }
    return op;
}

AInfCategory full_subcategory(const AInfCategory& c, const std::vector<int>& objects) {
    if (objects.empty()) throw std::invalid_argument("full subcategory needs at least one object");
    std::map<int, int> obj_map;
    AInfCategory sub(c.field());
    for (int x : objects) {
        if (x < 0 || x >= static_cast<int>(c.num_objects())) throw std::invalid_argument("unknown object index");
        if (obj_map.count(x)) continue;
        obj_map[x] = sub.add_object(c.object_label(x));
    }
    std::map<int, int> gen_map;
    for (int id = 0; id < static_cast<int>(c.size()); ++id) {
        const auto& g = c.generator(id);
        if (obj_map.count(g.source) && obj_map.count(g.target))
            gen_map[id] = sub.add_generator(g.label, obj_map[g.source], obj_map[g.target], g.degree);
    }
    for (const auto& [x, y] : obj_map)
        if (auto u = c.unit(x)) sub.set_unit(y, gen_map.at(*u));
    for (int p : c.arities()) {
        for (const auto& [t, out] : c.operations(p)) {
            Tuple nt;
            bool inside = true;
            for (int id : t) {
                auto it = gen_map.find(id);
                if (it == gen_map.end()) {
                    inside = false;
                    break;
                }
                nt.push_back(it->second);
            }
            if (!inside) continue;
            Combo no;
            for (const auto& [id, s] : out) {
                auto it = gen_map.find(id);
                if (it != gen_map.end()) add_term(no, it->second, s);
            }
            sub.set_operation(nt, no);
        }
    }
    return sub;
}

AInfCategory full_subcategory(const AInfCategory& c, const std::vector<std::string>& objects) {
    std::vector<int> ids;
    for (const auto& l : objects) {
        auto x = c.find_object(l);
        if (!x) throw std::invalid_argument("unknown object \"" + l + "\"");
        ids.push_back(*x);
    }
    return full_subcategory(c, ids);
}

}  // namespace ainf
