#include "ainf/filtration.hpp"

#include <algorithm>
#include <functional>

namespace ainf {

const Subspace& Filtration::level(int p) const {
    if (levels.empty()) throw FiltrationError("empty filtration");
    if (p < 0) p = 0;
    return levels[std::min<std::size_t>(p, levels.size() - 1)];
}

std::vector<std::size_t> Filtration::dims() const {
    std::vector<std::size_t> out;
    for (const auto& l : levels) out.push_back(l.dim());
    return out;
}

void require_algebra(const AInfCategory& R, const char* what) {
    if (R.num_objects() != 1)
        throw FiltrationError(std::string(what) + ": expected a one-object category, got " +
                              std::to_string(R.num_objects()) + " objects");
}

namespace {

std::vector<int> degrees_of(const AInfCategory& R) {
    std::vector<int> d;
    for (int id = 0; id < static_cast<int>(R.size()); ++id) d.push_back(R.degree(id));
    return d;
}

Combo apply_vectors(const AInfCategory& R, const std::vector<const Vector*>& args) {
    std::vector<Combo> combos;
    combos.reserve(args.size());
    for (const Vector* v : args) combos.push_back(to_combo(*v));
    return R.apply(combos);
}

}  // namespace

ValidationReport check_filtration(const AInfCategory& R, const Filtration& F) {
    require_algebra(R, "check_filtration");
    ValidationReport rep;
    rep.pass("levels");
    rep.pass("compatibility");
    const std::size_t dim = R.size();
    const Field& k = R.field();
    auto level_failure = [&](const std::string& detail) {
        rep.fail(Witness{"levels", 0, {}, {}, {}, detail});
    };

    if (F.levels.empty()) {
        level_failure("no levels given");
        return rep;
    }
    for (std::size_t p = 0; p < F.levels.size(); ++p)
        if (F.levels[p].ambient_dim() != dim) {
            level_failure("F^" + std::to_string(p) + " lives in a space of the wrong dimension");
            return rep;
        }
    const int n = F.length();
    if (!(F.levels.front() == Subspace::full(k, dim))) level_failure("F^0 is not the whole algebra");
    if (!F.levels.back().is_zero()) level_failure("F^" + std::to_string(n) + " is not zero");
    if (n < 1) level_failure("filtration length must be at least 1");
    const auto degrees = degrees_of(R);
    for (int p = 0; p <= n; ++p) {
        if (p < n && !F.levels[p].contains(F.levels[p + 1]))
            level_failure("F^" + std::to_string(p + 1) + " is not contained in F^" + std::to_string(p));
        if (!F.levels[p].is_graded(degrees)) level_failure("F^" + std::to_string(p) + " is not graded");
    }
    if (!rep.passed("levels")) return rep;

    for (int p : R.arities()) {
        std::vector<int> idx(p, 0);
        while (true) {
            int sum = 0;
            bool nonzero = true;
            for (int i : idx) {
                sum += i;
                nonzero = nonzero && !F.level(i).is_zero();
            }
            if (nonzero) {
                const Subspace& target = F.level(std::min(sum, n));
                std::vector<const Vector*> args(p);
                std::function<bool(int)> rec = [&](int u) -> bool {
                    if (u == p) {
                        Combo out = apply_vectors(R, args);
                        if (target.contains(to_vector(out, k, dim))) return true;
                        Witness w;
                        w.check = "compatibility";
                        w.n = p;
                        w.tuple = idx;
                        for (const Vector* v : args) w.labels.push_back(combo_string(R, to_combo(*v)));
                        for (const auto& [id, s] : out) w.discrepancy.emplace_back(R.generator(id).label, s.to_string());
                        w.detail = "m_" + std::to_string(p) + " lands outside F^" + std::to_string(std::min(sum, n));
                        rep.fail(std::move(w));
                        return false;
                    }
                    for (const Vector& v : F.level(idx[u]).basis()) {
                        args[u] = &v;
                        if (!rec(u + 1)) return false;
                    }
                    return true;
                };
                rec(0);
            }
            int u = p - 1;
            while (u >= 0 && ++idx[u] == n) idx[u--] = 0;
            if (u < 0) break;
        }
    }
    rep.sort_witnesses();
    return rep;
}

Filtration degree_filtration(const AInfCategory& R) {
    require_algebra(R, "degree_filtration");
    if (!R.is_minimal()) throw FiltrationError("degree_filtration: the algebra is not minimal (m_1 != 0)");
    int depth = 0;
    for (int id = 0; id < static_cast<int>(R.size()); ++id) {
        const int d = R.degree(id);
        if (d > 0)
            throw FiltrationError("degree_filtration: basis element \"" + R.generator(id).label +
                                  "\" has positive degree " + std::to_string(d));
        depth = std::max(depth, -d);
    }
    Filtration F;
    for (int p = 0; p <= depth + 1; ++p) {
        std::vector<Vector> span;
        for (int id = 0; id < static_cast<int>(R.size()); ++id)
            if (R.degree(id) <= -p) span.push_back(unit_vector(R.field(), R.size(), id));
        F.levels.push_back(echelon_basis(span, R.field(), R.size()));
    }
    return F;
}

Subspace product(const AInfCategory& R, const Subspace& X, const Subspace& Y) {
    std::vector<Vector> span;
    for (const Vector& x : X.basis())
        for (const Vector& y : Y.basis()) {
            std::array<Combo, 2> args{to_combo(x), to_combo(y)};
            Combo out = R.apply(args);
            if (!out.empty()) span.push_back(to_vector(out, R.field(), R.size()));
        }
    return echelon_basis(span, R.field(), R.size());
}

Subspace degree_part(const AInfCategory& R, int degree) {
    std::vector<Vector> span;
    for (int id = 0; id < static_cast<int>(R.size()); ++id)
        if (R.degree(id) == degree) span.push_back(unit_vector(R.field(), R.size(), id));
    return echelon_basis(span, R.field(), R.size());
}

Subspace radical(const AInfCategory& R) {
    require_algebra(R, "radical");
    if (!R.field().is_rational())
        throw FiltrationError("radical: only characteristic 0 is supported, got " + R.field().name());
    const Field& k = R.field();
    std::vector<int> base;
    for (int id = 0; id < static_cast<int>(R.size()); ++id)
        if (R.degree(id) == 0) base.push_back(id);

    auto mul = [&](int x, int y) -> Combo {
        const Combo* c = R.operation({x, y});
        return c ? *c : Combo{};
    };
    // tr(L_x) for each basis element x of R_0
    std::map<int, Scalar> trace;
    for (int x : base) {
        Scalar t = k.zero();
        for (int y : base) {
            Combo xy = mul(x, y);
            if (auto it = xy.find(y); it != xy.end()) t += it->second;
        }
        trace[x] = t;
    }
    Matrix form(k, base.size(), base.size());
    for (std::size_t i = 0; i < base.size(); ++i)
        for (std::size_t j = 0; j < base.size(); ++j) {
            Scalar t = k.zero();
            for (const auto& [id, c] : mul(base[i], base[j])) {
                auto it = trace.find(id);
                if (it != trace.end()) t += c * it->second;
            }
            form.at(i, j) = t;
        }
    std::vector<Vector> span;
    for (const Vector& v : form.kernel()) {
        Vector full = zero_vector(k, R.size());
        for (std::size_t i = 0; i < base.size(); ++i) full[base[i]] = v[i];
        span.push_back(full);
    }
    return echelon_basis(span, k, R.size());
}

int nilpotency_index(const AInfCategory& R, const Subspace& J) {
    int a = 1;
    Subspace power = J;
    while (!power.is_zero()) {
        Subspace next = product(R, power, J);
        if (next == power) throw FiltrationError("nilpotency_index: subspace is not nilpotent");
        power = std::move(next);
        ++a;
    }
    return a;
}

QuotientPresentation quotient_presentation(const AInfCategory& R, const Subspace& I) {
    std::vector<Vector> preferred;
    if (auto u = R.unit(0)) preferred.push_back(unit_vector(R.field(), R.size(), *u));
    return quotient_space(Subspace::full(R.field(), R.size()), I, preferred);
}

AInfCategory quotient_algebra(const AInfCategory& R, const Subspace& I) {
    require_algebra(R, "quotient_algebra");
    const Field& k = R.field();
    const std::size_t dim = R.size();

    for (int p : R.arities())
        for (int slot = 0; slot < p; ++slot)
            for (const Vector& v : I.basis()) {
                std::vector<Combo> args(p);
                args[slot] = to_combo(v);
                bool bad = false;
                R.for_each_composable(p - 1, [&](const Tuple& rest) {
                    if (bad) return;
                    for (int u = 0, r = 0; u < p; ++u)
                        if (u != slot) args[u] = Combo{{rest[r++], k.one()}};
                    if (!I.contains(to_vector(R.apply(args), k, dim))) bad = true;
                });
                if (p == 1 && !I.contains(to_vector(R.apply(args), k, dim))) bad = true;
                if (bad)
                    throw FiltrationError("quotient_algebra: subspace is not an ideal for m_" + std::to_string(p));
            }

    QuotientPresentation q = quotient_presentation(R, I);

    AInfCategory out(k);
    out.add_object(R.object_label(0));
    std::vector<Combo> reps;
    for (const Vector& rep : q.representatives) {
        Combo c = to_combo(rep);
        const int id0 = c.begin()->first;
        std::string label = (c.size() == 1 && c.begin()->second.is_one()) ? R.generator(id0).label
                                                                           : "[" + combo_string(R, c) + "]";
        out.add_generator(label, 0, 0, R.degree(id0));
        reps.push_back(std::move(c));
    }
    if (auto u = R.unit(0)) {
        Vector cls = q.project(unit_vector(k, dim, *u));
        Combo c = to_combo(cls);
        if (c.size() == 1 && c.begin()->second.is_one()) out.set_unit(0, c.begin()->first);
    }
    const int qdim = static_cast<int>(q.dim());
    for (int p : R.arities()) {
        Tuple t(p, 0);
        std::vector<Combo> args(p);
        while (true) {
            for (int u = 0; u < p; ++u) args[u] = reps[t[u]];
            Combo val = R.apply(args);
            if (!val.empty()) out.set_operation(t, to_combo(q.project(to_vector(val, k, dim))));
            int u = p - 1;
            while (u >= 0 && ++t[u] == qdim) t[u--] = 0;
            if (u < 0) break;
        }
        if (qdim == 0) break;
    }
    return out;
}

std::pair<Filtration, AppendixParams> appendix_filtration(const AInfCategory& R, int kappa) {
    require_algebra(R, "appendix_filtration");
    if (kappa <= 0) throw FiltrationError("appendix_filtration: kappa must be positive");
    if (!R.field().is_rational())
        throw FiltrationError("appendix_filtration: only characteristic 0 is supported, got " + R.field().name());
    if (!R.is_minimal()) throw FiltrationError("appendix_filtration: the algebra is not minimal (m_1 != 0)");
    for (int id = 0; id < static_cast<int>(R.size()); ++id) {
        const int d = R.degree(id);
        if (d != 0 && d != -kappa)
            throw FiltrationError("appendix_filtration: basis element \"" + R.generator(id).label + "\" has degree " +
                                  std::to_string(d) + ", expected 0 or " + std::to_string(-kappa));
    }
    const Field& k = R.field();
    const std::size_t dim = R.size();

    AppendixParams params;
    params.kappa = kappa;
    params.J = radical(R);
    params.a = nilpotency_index(R, params.J);
    const Subspace top = degree_part(R, -kappa);
    params.N = (kappa + 2) * (params.a - 1);
    // with J = 0 the quotient R/F^1 must still drop the degree -kappa part
    if (params.N == 0 && !top.is_zero()) params.N = 1;

    std::vector<Subspace> jpow{degree_part(R, 0), params.J};
    for (int u = 2; u <= params.a; ++u) jpow.push_back(product(R, jpow.back(), params.J));

    Filtration F;
    F.levels.push_back(Subspace::full(k, dim));
    for (int p = 1; p <= params.N; ++p) F.levels.push_back(jpow[std::min(p, params.a)] + top);
    auto sandwich = [&](int u, int v) {
        if (u >= params.a || v >= params.a) return Subspace(k, dim);
        Subspace s = u == 0 ? top : product(R, jpow[u], top);
        return v == 0 ? s : product(R, s, jpow[v]);
    };
    for (int q = 1; F.levels.back().dim() > 0; ++q) {
        Subspace level(k, dim);
        for (int u = 0; u <= q; ++u) level = level + sandwich(u, q - u);
        F.levels.push_back(std::move(level));
    }
    return {std::move(F), std::move(params)};
}

}  // namespace ainf
