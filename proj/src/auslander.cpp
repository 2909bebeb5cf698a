#include "ainf/auslander.hpp"

#include <algorithm>
#include <set>

namespace ainf {

const QuotientPresentation& AuslanderCategory::presentation(int source, int target) const {
    auto it = homs.find({source, target});
    if (it == homs.end()) throw AuslanderError("no hom-space between the given objects");
    return it->second;
}

const Vector& AuslanderCategory::lift(int gamma_id) const {
    const auto& g = gamma.generator(gamma_id);
    return presentation(g.source, g.target).representatives.at(local_index.at(gamma_id));
}

Combo AuslanderCategory::project(int source, int target, const Vector& v) const {
    const Vector coords = presentation(source, target).project(v);
    const auto& ids = gamma.hom(source, target);
    Combo out;
    for (std::size_t k = 0; k < coords.size(); ++k)
        if (!coords[k].is_zero()) out.emplace(ids[k], coords[k]);
    return out;
}

bool index_inequality_holds(std::span<const int> idx) {
    if (idx.size() < 2) return true;
    int rhs = 0;
    for (std::size_t u = 0; u + 1 < idx.size(); ++u) rhs += std::max(idx[u + 1] - idx[u], 0);
    return std::max(idx.back() - idx.front(), 0) <= rhs;
}

bool chain_inequality_holds(std::span<const int> idx, int n) {
    const int p = static_cast<int>(idx.size()) - 1;
    auto step = [&](int u) { return std::max(idx[u + 1] - idx[u], 0); };  // 0-based slot u
    // L[k] for k = 0..p-1 (0-based slot k replaced by n - i_k)
    std::vector<int> L(p);
    int prefix = 0;
    for (int k = 0; k < p; ++k) {
        L[k] = prefix + (n - idx[k]);
        prefix += step(k);
    }
    for (int k = 0; k < p; ++k) {
        int full = L[k];
        for (int u = k + 1; u < p; ++u) full += step(u);
        if (full < L[k]) return false;
        for (int q = k; q > 0; --q)
            if (L[q] < L[q - 1]) return false;
        if (L[0] < n - idx[0]) return false;
    }
    return true;
}

namespace {

std::string rep_label(const AInfCategory& R, const Vector& rep) {
    Combo c = to_combo(rep);
    if (c.size() == 1 && c.begin()->second.is_one()) return R.generator(c.begin()->first).label;
    return "[" + combo_string(R, c) + "]";
}

Tuple object_sequence(const AInfCategory& g, const Tuple& t) {
    Tuple idx{g.generator(t.front()).target};
    for (int id : t) idx.push_back(g.generator(id).source);
    return idx;
}

}  // namespace

AuslanderCategory build_auslander(const AInfCategory& R, const Filtration& F) {
    require_algebra(R, "build_auslander");
    ValidationReport fr = check_filtration(R, F);
    if (!fr.passed()) {
        std::string why = fr.witnesses().empty() ? "invalid filtration" : fr.witnesses().front().detail;
        throw AuslanderError("build_auslander: filtration check failed: " + why);
    }
    const int n = F.length();
    const Field& k = R.field();
    const std::size_t dim = R.size();

    AuslanderCategory A;
    A.base = R;
    A.filtration = F;
    A.gamma = AInfCategory(k);
    for (int i = 0; i < n; ++i) A.gamma.add_object(std::to_string(i));

    std::vector<Vector> preferred;
    std::optional<Vector> unit_vec;
    if (auto u = R.unit(0)) {
        unit_vec = unit_vector(k, dim, *u);
        preferred.push_back(*unit_vec);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto q = quotient_space(F.level(std::max(j - i, 0)), F.level(n - i), preferred);
            for (std::size_t r = 0; r < q.dim(); ++r) {
                const Vector& rep = q.representatives[r];
                int deg = 0;
                for (std::size_t c = 0; c < dim; ++c)
                    if (!rep[c].is_zero()) {
                        deg = R.degree(static_cast<int>(c));
                        break;
                    }
                A.gamma.add_generator(rep_label(R, rep) + "@" + std::to_string(j) + ">" + std::to_string(i), j, i, deg);
                A.local_index.push_back(static_cast<int>(r));
                if (i == j && unit_vec && rep == *unit_vec)
                    A.gamma.set_unit(i, static_cast<int>(A.gamma.size()) - 1);
            }
            A.homs.emplace(std::make_pair(j, i), std::move(q));
        }

    A.inequalities.pass("index_inequality");
    A.inequalities.pass("chain_inequality");
    std::set<Tuple> seen;
    for (int p : R.arities()) {
        A.gamma.for_each_composable(p, [&](const Tuple& t) {
            const Tuple idx = object_sequence(A.gamma, t);
            if (seen.insert(idx).second) {
                if (!index_inequality_holds(idx))
                    A.inequalities.fail(Witness{"index_inequality", p, idx, {}, {}, "index inequality violated"});
                if (!chain_inequality_holds(idx, n))
                    A.inequalities.fail(Witness{"chain_inequality", p, idx, {}, {}, "inequality chain violated"});
            }
            std::vector<Combo> args;
            args.reserve(p);
            for (int id : t) args.push_back(to_combo(A.lift(id)));
            Combo val = R.apply(args);
            if (val.empty()) return;
            Vector v = to_vector(val, k, dim);
            if (!F.level(std::max(idx.back() - idx.front(), 0)).contains(v))
                throw AuslanderError("build_auslander: m_" + std::to_string(p) + tuple_labels(A.gamma, t) +
                                     " leaves the numerator of its target hom-space");
            A.gamma.set_operation(t, A.project(idx.back(), idx.front(), v));
        });
    }
    A.inequalities.sort_witnesses();
    return A;
}

ValidationReport verify_lift_independence(const AuslanderCategory& A, std::mt19937& rng, int trials) {
    const AInfCategory& R = A.base;
    const AInfCategory& G = A.gamma;
    const Field& k = R.field();
    const std::size_t dim = R.size();
    std::uniform_int_distribution<int> coeff(-3, 3);

    ValidationReport rep;
    rep.pass("lift_independence");
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<Combo> lifts(G.size());
        for (int id = 0; id < static_cast<int>(G.size()); ++id) {
            const auto& g = G.generator(id);
            Vector v = A.lift(id);
            for (const Vector& d : A.presentation(g.source, g.target).denominator.basis())
                axpy(v, k.from_int(coeff(rng)), d);
            lifts[id] = to_combo(v);
        }
        for (int p : R.arities()) {
            G.for_each_composable(p, [&](const Tuple& t) {
                std::vector<Combo> args;
                for (int id : t) args.push_back(lifts[id]);
                const int src = G.generator(t.back()).source, tgt = G.generator(t.front()).target;
                Combo got = A.project(src, tgt, to_vector(R.apply(args), k, dim));
                const Combo* stored = G.operation(t);
                Combo diff = stored ? *stored : Combo{};
                add_scaled(diff, got, k.from_int(-1));
                if (!diff.empty())
                    rep.fail(make_witness(G, "lift_independence", t, diff,
                                          "trial " + std::to_string(trial) + " changes the class"));
            });
        }
    }
    rep.sort_witnesses();
    return rep;
}

GeneratorEmbedding embed_generator(const AuslanderCategory& A) {
    const AInfCategory& R = A.base;
    const AInfCategory& G = A.gamma;
    const Field& k = R.field();
    GeneratorEmbedding out;
    out.report.pass("embedding");
    const auto& hom00 = G.hom(0, 0);
    if (hom00.size() != R.size()) {
        out.report.fail(Witness{"embedding", 0, {}, {}, {}, "gamma(0,0) and R differ in dimension"});
        return out;
    }
    for (int id = 0; id < static_cast<int>(R.size()); ++id) {
        const Vector e = unit_vector(k, R.size(), id);
        auto it = std::find_if(hom00.begin(), hom00.end(), [&](int g) { return A.lift(g) == e; });
        if (it == hom00.end()) {
            out.report.fail(make_witness(R, "embedding", {id}, {}, "basis element has no matching generator in gamma(0,0)"));
            return out;
        }
        out.image.push_back(*it);
    }
    auto image_of = [&](const Combo& c) {
        Combo m;
        for (const auto& [id, s] : c) add_term(m, out.image[id], s);
        return m;
    };
    std::set<int> arities;
    for (int p : R.arities()) arities.insert(p);
    for (int p : G.arities()) arities.insert(p);
    for (int p : arities) {
        R.for_each_composable(p, [&](const Tuple& t) {
            Tuple gt;
            for (int id : t) gt.push_back(out.image[id]);
            const Combo* r = R.operation(t);
            const Combo* g = G.operation(gt);
            Combo diff = g ? *g : Combo{};
            add_scaled(diff, image_of(r ? *r : Combo{}), k.from_int(-1));
            if (!diff.empty()) out.report.fail(make_witness(G, "embedding", gt, diff, "m_p differs from R"));
        });
    }
    if (R.unit(0) && G.unit(0) != out.image[*R.unit(0)])
        out.report.fail(Witness{"embedding", 0, {}, {}, {}, "unit is not preserved"});
    out.report.sort_witnesses();
    return out;
}

AInfCategory flatten(const AuslanderCategory& A) {
    const AInfCategory& G = A.gamma;
    const Field& k = G.field();
    const int n = static_cast<int>(G.num_objects());
    AInfCategory flat(k);
    flat.add_object("*");
    // basis: global unit, then every gamma generator except the unit of object 0
    std::vector<int> to_flat(G.size(), -1);
    const int one = flat.add_generator("1", 0, 0, 0);
    flat.set_unit(0, one);
    const std::optional<int> e0 = G.unit(0);
    for (int id = 0; id < static_cast<int>(G.size()); ++id) {
        if (e0 && id == *e0) continue;
        const auto& g = G.generator(id);
        to_flat[id] = flat.add_generator(g.label, 0, 0, g.degree);
    }
    // e_0 = 1 - sum_{i >= 1} e_i
    auto convert = [&](const Combo& c) {
        Combo out;
        for (const auto& [id, s] : c) {
            if (e0 && id == *e0) {
                add_term(out, one, s);
                for (int i = 1; i < n; ++i)
                    if (auto e = G.unit(i)) add_term(out, to_flat[*e], -s);
            } else {
                add_term(out, to_flat[id], s);
            }
        }
        return out;
    };
    for (int p : G.arities())
        for (const auto& [t, val] : G.operations(p)) {
            if (std::any_of(t.begin(), t.end(), [&](int id) { return e0 && id == *e0; })) continue;
            Tuple ft;
            for (int id : t) ft.push_back(to_flat[id]);
            flat.set_operation(ft, convert(val));
        }
    for (int id = 0; id < static_cast<int>(flat.size()); ++id) {
        flat.set_operation({one, id}, Combo{{id, k.one()}});
        flat.set_operation({id, one}, Combo{{id, k.one()}});
    }
    return flat;
}

}  // namespace ainf
