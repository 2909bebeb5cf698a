#pragma once

#include "ainf/category.hpp"

#include <initializer_list>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace fixtures {

using ainf::AInfCategory;
using ainf::Combo;
using ainf::Field;

struct Term {
    long coeff;
    std::string label;
};

/// One-object algebra from labeled basis and degrees; the first element is the unit.
inline AInfCategory algebra(std::initializer_list<std::pair<std::string, int>> basis, Field k = Field::rationals()) {
    AInfCategory c(k);
    c.add_object("0");
    for (const auto& [label, deg] : basis) c.add_generator(label, 0, 0, deg);
    c.set_unit(0, 0);
    for (int id = 0; id < static_cast<int>(c.size()); ++id) {
        c.set_operation({0, id}, Combo{{id, k.one()}});
        c.set_operation({id, 0}, Combo{{id, k.one()}});
    }
    return c;
}

inline void set(AInfCategory& c, std::initializer_list<std::string> inputs, std::initializer_list<Term> output) {
    ainf::Tuple t;
    for (const auto& l : inputs) t.push_back(*c.find_generator(l));
    Combo out;
    for (const auto& [coeff, label] : output) ainf::add_term(out, *c.find_generator(label), c.field().from_int(coeff));
    c.set_operation(t, out);
}

inline AInfCategory field_k(Field k = Field::rationals()) { return algebra({{"1", 0}}, k); }

inline AInfCategory k_times_k(Field k = Field::rationals()) {
    auto c = algebra({{"1", 0}, {"e", 0}}, k);
    set(c, {"e", "e"}, {{1, "e"}});
    return c;
}

inline AInfCategory dual_numbers(Field k = Field::rationals()) { return algebra({{"1", 0}, {"eps", 0}}, k); }

/// Upper-triangular 2x2 matrices, basis {1, E12, E22}.
inline AInfCategory upper2(Field k = Field::rationals()) {
    auto c = algebra({{"1", 0}, {"E12", 0}, {"E22", 0}}, k);
    set(c, {"E12", "E22"}, {{1, "E12"}});
    set(c, {"E22", "E22"}, {{1, "E22"}});
    return c;
}

/// Upper-triangular 3x3 matrices, basis {1, E12, E13, E23, E22, E33}; E11 = 1 - E22 - E33.
inline AInfCategory upper3(Field k = Field::rationals()) {
    auto c = algebra({{"1", 0}, {"E12", 0}, {"E13", 0}, {"E23", 0}, {"E22", 0}, {"E33", 0}}, k);
    const std::vector<std::tuple<int, int>> units{{1, 2}, {1, 3}, {2, 3}, {2, 2}, {3, 3}};
    auto name = [](int i, int j) { return "E" + std::to_string(i) + std::to_string(j); };
    for (auto [i, j] : units)
        for (auto [r, s] : units)
            if (j == r) set(c, {name(i, j), name(r, s)}, {{1, name(i, s)}});
    return c;
}

/// Path algebra of 1 -a-> 2 -b-> 3, basis {1, e2, e3, a, b, ba}; m_2(f, g) = f o g.
inline AInfCategory path_a3(Field k = Field::rationals()) {
    auto c = algebra({{"1", 0}, {"e2", 0}, {"e3", 0}, {"a", 0}, {"b", 0}, {"ba", 0}}, k);
    set(c, {"e2", "e2"}, {{1, "e2"}});
    set(c, {"e3", "e3"}, {{1, "e3"}});
    set(c, {"e2", "a"}, {{1, "a"}});
    set(c, {"b", "e2"}, {{1, "b"}});
    set(c, {"e3", "b"}, {{1, "b"}});
    set(c, {"b", "a"}, {{1, "ba"}});
    set(c, {"e3", "ba"}, {{1, "ba"}});
    return c;
}

/// Basis {1, eps, t}, deg t = -1, eps^2 = 0, m_3(eps, eps, eps) = t.
inline AInfCategory toy(Field k = Field::rationals()) {
    auto c = algebra({{"1", 0}, {"eps", 0}, {"t", -1}}, k);
    set(c, {"eps", "eps", "eps"}, {{1, "t"}});
    return c;
}

/// Basis {1, x, y}: x*x = y, x*y = x, y*x = 0.
inline AInfCategory nonassoc(Field k = Field::rationals()) {
    auto c = algebra({{"1", 0}, {"x", 0}, {"y", 0}}, k);
    set(c, {"x", "x"}, {{1, "y"}});
    set(c, {"x", "y"}, {{1, "x"}});
    return c;
}

/// R_0 = k[eps]/eps^2, R_{-1} = span{t, s}, eps * t = s, all other products of non-units zero.
inline AInfCategory dual_with_top(Field k = Field::rationals()) {
    auto c = algebra({{"1", 0}, {"eps", 0}, {"t", -1}, {"s", -1}}, k);
    set(c, {"eps", "t"}, {{1, "s"}});
    return c;
}

struct Named {
    std::string name;
    AInfCategory algebra;
};

inline std::vector<Named> associative_corpus(Field k = Field::rationals()) {
    return {{"k", field_k(k)},          {"k x k", k_times_k(k)}, {"k[eps]/eps^2", dual_numbers(k)},
            {"upper 2x2", upper2(k)}, {"upper 3x3", upper3(k)}, {"path A3", path_a3(k)}};
}

}  // namespace fixtures
