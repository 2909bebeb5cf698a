#include "ainf/hochschild.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ainf {

namespace {

/// Reduced-degree operation mu_p = (-1)^{sum_u (p-u)|a_u|} m_p, multilinear on combinations.
Combo mu(const AInfCategory& C, std::span<const Combo> args) {
    Combo out;
    const std::size_t p = args.size();
    if (p == 0 || C.operations(static_cast<int>(p)).empty()) return out;
    Tuple t(p);
    std::vector<int> degs(p);
    std::function<void(std::size_t, Scalar)> rec = [&](std::size_t u, Scalar c) {
        if (u == p) {
            if (const Combo* v = C.operation(t)) add_scaled(out, *v, c * sign(reduced_form_parity(degs)));
            return;
        }
        for (const auto& [id, x] : args[u]) {
            t[u] = id;
            degs[u] = C.degree(id);
            rec(u + 1, c * x);
        }
    };
    rec(0, C.field().one());
    return out;
}

Combo unit_combo(const Field& k, int id) { return Combo{{id, k.one()}}; }

}  // namespace

// ---------------------------------------------------------------- bimodules

void Bimodule::set_action(Tuple inputs, int slot, Combo output) {
    for (auto it = output.begin(); it != output.end();) it = it->second.is_zero() ? output.erase(it) : std::next(it);
    auto key = std::make_pair(std::move(inputs), slot);
    if (output.empty())
        actions.erase(key);
    else
        actions[std::move(key)] = std::move(output);
}

const Combo* Bimodule::action(const Tuple& inputs, int slot) const {
    auto it = actions.find({inputs, slot});
    return it == actions.end() ? nullptr : &it->second;
}

Bimodule diagonal_bimodule(const AInfCategory& C, const std::string& name) {
    Bimodule M;
    M.name = name;
    for (int id = 0; id < static_cast<int>(C.size()); ++id) {
        Generator g = C.generator(id);
        g.label = name + "(" + g.label + ")";
        M.basis.push_back(std::move(g));
    }
    for (int p : C.arities())
        for (const auto& [t, v] : C.operations(p))
            for (int slot = 0; slot < p; ++slot) M.set_action(t, slot, v);
    return M;
}

Bimodule direct_sum(const Bimodule& a, const Bimodule& b) {
    Bimodule M;
    M.name = a.name + "+" + b.name;
    M.basis = a.basis;
    std::set<std::string> seen;
    for (const auto& g : a.basis) seen.insert(g.label);
    for (const auto& g : b.basis) {
        if (!seen.insert(g.label).second) throw BimoduleError("direct_sum: repeated basis label " + g.label);
        M.basis.push_back(g);
    }
    M.actions = a.actions;
    const int off = static_cast<int>(a.size());
    for (const auto& [key, v] : b.actions) {
        Tuple t = key.first;
        t[key.second] += off;
        Combo w;
        for (const auto& [id, x] : v) w.emplace(id + off, x);
        M.actions[{t, key.second}] = std::move(w);
    }
    return M;
}

ValidationReport check_bimodule(const AInfCategory& C, const Bimodule& M) {
    ValidationReport rep;
    rep.pass("basis");
    rep.pass("actions");
    for (std::size_t id = 0; id < M.size(); ++id) {
        const auto& g = M.basis[id];
        if (g.source < 0 || g.target < 0 || g.source >= static_cast<int>(C.num_objects()) ||
            g.target >= static_cast<int>(C.num_objects()))
            rep.fail(Witness{"basis", 0, {static_cast<int>(id)}, {g.label}, {}, "object out of range"});
    }
    if (!rep.passed()) return rep;
    for (const auto& [key, v] : M.actions) {
        const auto& [t, slot] = key;
        const int p = static_cast<int>(t.size());
        auto fail = [&](const std::string& why) {
            rep.fail(Witness{"actions", p, t, {}, {}, why + " (bimodule slot " + std::to_string(slot) + ")"});
        };
        if (slot < 0 || slot >= p) {
            fail("slot out of range");
            continue;
        }
        bool ok = true;
        std::vector<const Generator*> gs;
        for (int u = 0; u < p && ok; ++u) {
            const bool in_m = u == slot;
            const std::size_t bound = in_m ? M.size() : C.size();
            if (t[u] < 0 || static_cast<std::size_t>(t[u]) >= bound) {
                fail("id out of range");
                ok = false;
            } else {
                gs.push_back(in_m ? &M.basis[t[u]] : &C.generator(t[u]));
            }
        }
        if (!ok) continue;
        int deg = 2 - p;
        for (int u = 0; u < p; ++u) {
            deg += gs[u]->degree;
            if (u + 1 < p && gs[u]->source != gs[u + 1]->target) ok = false;
        }
        if (!ok) {
            fail("inputs are not composable");
            continue;
        }
        for (const auto& [id, x] : v) {
            if (id < 0 || static_cast<std::size_t>(id) >= M.size()) {
                fail("output id out of range");
                continue;
            }
            const auto& g = M.basis[id];
            if (g.degree != deg) fail("output " + g.label + " has the wrong degree");
            if (g.target != gs.front()->target || g.source != gs.back()->source)
                fail("output " + g.label + " lies in the wrong hom-space");
        }
    }
    rep.sort_witnesses();
    return rep;
}

// ---------------------------------------------------------------- cochains

void HochschildCochain::set(Tuple inputs, Combo output) {
    for (auto it = output.begin(); it != output.end();) it = it->second.is_zero() ? output.erase(it) : std::next(it);
    if (output.empty())
        table.erase(inputs);
    else
        table[std::move(inputs)] = std::move(output);
}

const Combo* HochschildCochain::value(const Tuple& inputs) const {
    auto it = table.find(inputs);
    return it == table.end() ? nullptr : &it->second;
}

bool is_normalized(const AInfCategory& C, const HochschildCochain& eta) {
    if (eta.arity == 0) return true;
    for (const auto& [t, v] : eta.table)
        for (int id : t)
            if (C.is_unit(id)) return false;
    return true;
}

AInfCategory square_zero_extension(const AInfCategory& C, const Bimodule& M, int shift) {
    auto rep = check_bimodule(C, M);
    if (!rep.passed()) {
        const auto& w = rep.witnesses().front();
        throw BimoduleError("inconsistent bimodule: " + w.detail);
    }
    AInfCategory E(C.field());
    for (int x = 0; x < static_cast<int>(C.num_objects()); ++x) E.add_object(C.object_label(x));
    for (int id = 0; id < static_cast<int>(C.size()); ++id) {
        const auto& g = C.generator(id);
        E.add_generator(g.label, g.source, g.target, g.degree);
    }
    const int off = static_cast<int>(C.size());
    for (const auto& g : M.basis) {
        if (E.find_generator(g.label)) throw BimoduleError("bimodule label " + g.label + " clashes with the base");
        E.add_generator(g.label, g.source, g.target, g.degree - shift);
    }
    for (int x = 0; x < static_cast<int>(C.num_objects()); ++x)
        if (auto u = C.unit(x)) E.set_unit(x, *u);
    for (int p : C.arities())
        for (const auto& [t, v] : C.operations(p)) E.set_operation(t, v);
    for (const auto& [key, v] : M.actions) {
        const auto& [t, slot] = key;
        Tuple u = t;
        u[slot] += off;
        int after = 0;
        for (std::size_t w = slot + 1; w < t.size(); ++w) after += C.degree(t[w]);
        const Scalar s = sign(shift * after);
        Combo out;
        for (const auto& [id, x] : v) out.emplace(id + off, s * x);
        E.set_operation(std::move(u), std::move(out));
    }
    return E;
}

namespace {

int degree_sum(const AInfCategory& C, const Tuple& t) {
    int s = 0;
    for (int id : t) s += C.degree(id);
    return s;
}

/// Sign turning an m-form table entry into its reduced form and back.
Scalar reduced_sign(const AInfCategory& C, const Tuple& t) {
    std::vector<int> degs;
    for (int id : t) degs.push_back(C.degree(id));
    return sign(reduced_form_parity(degs));
}

void check_cochain(const AInfCategory& C, const Bimodule& M, const HochschildCochain& eta) {
    if (eta.arity < 0) throw HochschildError("negative cochain arity");
    for (const auto& [t, v] : eta.table) {
        if (eta.arity == 0) {
            if (t.size() != 1 || t[0] < 0 || t[0] >= static_cast<int>(C.num_objects()))
                throw HochschildError("arity 0 entries are keyed by a single object index");
            for (const auto& [id, x] : v) {
                if (id < 0 || static_cast<std::size_t>(id) >= M.size())
                    throw HochschildError("cochain value outside the bimodule");
                const auto& g = M.basis[id];
                if (g.degree != eta.degree || g.source != t[0] || g.target != t[0])
                    throw HochschildError("cochain value " + g.label + " does not fit object " + C.object_label(t[0]));
            }
            continue;
        }
        if (t.empty()) throw HochschildError("cochain entry with no arguments");
        if (!C.composable(t)) throw HochschildError("cochain entry on a non-composable tuple");
        const int deg = eta.degree + eta.arity - static_cast<int>(t.size()) + degree_sum(C, t);
        for (const auto& [id, x] : v) {
            if (id < 0 || static_cast<std::size_t>(id) >= M.size())
                throw HochschildError("cochain value outside the bimodule");
            const auto& g = M.basis[id];
            if (g.degree != deg)
                throw HochschildError("cochain value " + g.label + " does not have internal degree " +
                                      std::to_string(eta.degree));
            if (g.target != C.generator(t.front()).target || g.source != C.generator(t.back()).source)
                throw HochschildError("cochain value " + g.label + " lies in the wrong hom-space");
        }
    }
}

/// Values of eta in reduced form, as combinations of extension ids.
Combo reduced_value(const AInfCategory& C, const HochschildCochain& eta, const Tuple& t) {
    const Combo* v = eta.value(t);
    if (!v) return {};
    const int off = static_cast<int>(C.size());
    const Scalar s = eta.arity == 0 ? C.field().one() : reduced_sign(C, t);
    Combo out;
    for (const auto& [id, x] : *v) out.emplace(id + off, s * x);
    return out;
}

/// eta added to the m-form table of the extension by Sigma^{arity-2} M with the
/// sign (-1)^{shift * sum (|a_u| - 1)}, which turns the Stasheff relation of the
/// sum into the bracket with the bar differential.
AInfCategory with_cochain(AInfCategory E, const AInfCategory& C, const HochschildCochain& eta) {
    const int off = static_cast<int>(C.size());
    const int shift = eta.arity - 2;
    for (const auto& [t, v] : eta.table) {
        const Scalar s = sign(shift * (degree_sum(C, t) - static_cast<int>(t.size())));
        Combo out = E.operation(t) ? *E.operation(t) : Combo{};
        for (const auto& [id, x] : v) add_term(out, id + off, s * x);
        E.set_operation(t, std::move(out));
    }
    return E;
}

}  // namespace

HochschildCochain hochschild_differential(const AInfCategory& C, const Bimodule& M, const HochschildCochain& eta) {
    if (!is_normalized(C, eta)) throw HochschildError("hochschild_differential: cochain is not normalized");
    check_cochain(C, M, eta);
    HochschildCochain out{eta.arity + 1, eta.degree, {}};
    if (eta.is_zero()) return out;
    const Field& k = C.field();
    const AInfCategory E = square_zero_extension(C, M, 0);
    const int off = static_cast<int>(C.size());
    // shifted degree of eta as a map on the bar construction
    const int D = eta.arity + eta.degree - 1;
    std::set<int> lengths;
    if (eta.arity == 0)
        lengths.insert(0);
    else
        for (const auto& [t, v] : eta.table) lengths.insert(static_cast<int>(t.size()));
    const std::vector<int> ar = C.arities();
    const int lo = std::max(1, *lengths.begin() + (ar.empty() ? 1 : ar.front()) - 1);
    const int hi = *lengths.rbegin() + (ar.empty() ? 1 : ar.back()) - 1;
    for (int n = lo; n <= hi; ++n)
        C.for_each_composable(n, [&](const Tuple& t) {
            std::vector<int> before(n + 1, 0);
            for (int r = 0; r < n; ++r) before[r + 1] = before[r] + C.degree(t[r]) - 1;
            auto outer_args = [&](int r, int s, Combo mid) {
                std::vector<Combo> args;
                for (int u = 0; u < r; ++u) args.push_back(unit_combo(k, t[u]));
                args.push_back(std::move(mid));
                for (int u = r + s; u < n; ++u) args.push_back(unit_combo(k, t[u]));
                return args;
            };
            Combo bracket;
            // mu with eta inside
            for (int s : lengths)
                for (int r = 0; r + s <= n; ++r) {
                    Tuple inner(t.begin() + r, t.begin() + r + s);
                    if (s == 0) inner = {r < n ? C.generator(t[r]).target : C.generator(t[n - 1]).source};
                    if (Combo in = reduced_value(C, eta, inner); !in.empty())
                        add_scaled(bracket, mu(E, outer_args(r, s, std::move(in))), sign(D * before[r]));
                }
            // eta with mu inside
            if (eta.arity > 0)
                for (int r = 0; r < n; ++r)
                    for (int s = 1; r + s <= n; ++s) {
                        std::vector<Combo> inner_args;
                        for (int u = r; u < r + s; ++u) inner_args.push_back(unit_combo(k, t[u]));
                        for (const auto& [id, x] : mu(C, inner_args)) {
                            Tuple o(t.begin(), t.begin() + r);
                            o.push_back(id);
                            o.insert(o.end(), t.begin() + r + s, t.end());
                            add_scaled(bracket, reduced_value(C, eta, o), -sign(D + before[r]) * x);
                        }
                    }
            const Scalar s = reduced_sign(C, t) * sign(n);
            Combo v;
            for (const auto& [id, x] : bracket) {
                if (id < off) throw HochschildError("hochschild_differential: base component in the bracket");
                v.emplace(id - off, s * x);
            }
            if (!v.empty()) out.table[t] = std::move(v);
        });
    return out;
}

AInfCategory deform_by_cocycle(const AInfCategory& C, const Bimodule& M, const HochschildCochain& eta,
                               bool require_normalized) {
    if (eta.arity < 1) throw HochschildError("deform_by_cocycle: cochains of arity 0 would add curvature");
    if (eta.degree != 0)
        throw HochschildError("deform_by_cocycle: cochain of internal degree " + std::to_string(eta.degree) +
                              " does not fit the shift " + std::to_string(eta.arity - 2));
    if (require_normalized && !is_normalized(C, eta))
        throw HochschildError("deform_by_cocycle: cochain is not normalized");
    check_cochain(C, M, eta);
    for (const auto& [t, v] : eta.table)
        if (static_cast<int>(t.size()) != eta.arity) throw HochschildError("deform_by_cocycle: mixed arities");
    return with_cochain(square_zero_extension(C, M, eta.arity - 2), C, eta);
}

// ---------------------------------------------------------------- functors

StrictIsomorphism coboundary_isomorphism(const AInfCategory& C, const Bimodule& M, const HochschildCochain& phi) {
    if (phi.arity < 1) throw HochschildError("coboundary_isomorphism: needs a cochain of arity at least 1");
    if (phi.degree != 0) throw HochschildError("coboundary_isomorphism: needs internal degree 0");
    if (!is_normalized(C, phi)) throw HochschildError("coboundary_isomorphism: cochain is not normalized");
    check_cochain(C, M, phi);
    StrictIsomorphism F;
    const int off = static_cast<int>(C.size());
    const int p = phi.arity;
    for (const auto& [t, v] : phi.table) {
        const Scalar s = reduced_sign(C, t) * sign(p + 1 + (p - 1) * (degree_sum(C, t) - p));
        Combo out;
        for (const auto& [id, x] : v) out.emplace(id + off, s * x);
        F.correction[t] = std::move(out);
    }
    return F;
}

ValidationReport check_functor(const AInfCategory& source, const AInfCategory& target, const StrictIsomorphism& F,
                               int n_max) {
    if (source.size() != target.size() || source.num_objects() != target.num_objects())
        throw std::invalid_argument("check_functor: categories do not share generators");
    const Field& k = target.field();
    int bound = std::max(source.arity_bound(), target.arity_bound());
    for (const auto& [t, v] : F.correction) bound = std::max<int>(bound, t.size());
    if (n_max <= 0) n_max = std::max(1, 2 * bound - 1);

    auto component = [&](const Tuple& t) {
        Combo out = t.size() == 1 ? unit_combo(k, t[0]) : Combo{};
        if (auto it = F.correction.find(t); it != F.correction.end()) add_scaled(out, it->second, k.one());
        return out;
    };
    // F on a tuple whose entries are combinations of source generators.
    auto apply_F = [&](std::span<const Combo> args) {
        Combo out;
        Tuple t(args.size());
        std::function<void(std::size_t, Scalar)> rec = [&](std::size_t u, Scalar c) {
            if (u == args.size()) {
                add_scaled(out, component(t), c);
                return;
            }
            for (const auto& [id, x] : args[u]) {
                t[u] = id;
                rec(u + 1, c * x);
            }
        };
        rec(0, k.one());
        return out;
    };

    ValidationReport rep;
    for (int n = 1; n <= n_max; ++n) {
        const std::string name = "functor[" + std::to_string(n) + "]";
        rep.pass(name);
        source.for_each_composable(n, [&](const Tuple& t) {
            Combo diff;
            // mu of target on F applied blockwise
            std::vector<Combo> blocks;
            std::function<void(int)> split = [&](int start) {
                if (start == n) {
                    add_scaled(diff, mu(target, blocks), k.one());
                    return;
                }
                for (int end = start + 1; end <= n; ++end) {
                    Combo b = component(Tuple(t.begin() + start, t.begin() + end));
                    if (b.empty()) continue;
                    blocks.push_back(std::move(b));
                    split(end);
                    blocks.pop_back();
                }
            };
            split(0);
            // F of source mu in one slot
            int before = 0;
            for (int r = 0; r < n; ++r) {
                for (int s = 1; r + s <= n; ++s) {
                    std::vector<Combo> inner;
                    for (int u = r; u < r + s; ++u) inner.push_back(unit_combo(k, t[u]));
                    Combo in = mu(source, inner);
                    if (in.empty()) continue;
                    std::vector<Combo> args;
                    for (int u = 0; u < r; ++u) args.push_back(unit_combo(k, t[u]));
                    args.push_back(std::move(in));
                    for (int u = r + s; u < n; ++u) args.push_back(unit_combo(k, t[u]));
                    add_scaled(diff, apply_F(args), -sign(before));
                }
                before += source.degree(t[r]) - 1;
            }
            if (!diff.empty()) rep.fail(make_witness(target, name, t, diff));
        });
    }
    rep.sort_witnesses();
    return rep;
}

}  // namespace ainf
