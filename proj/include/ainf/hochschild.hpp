#pragma once

#include "ainf/category.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ainf {

class BimoduleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class HochschildError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Bimodule over a finite A-infinity category. Basis elements are placed like
/// morphisms (source, target objects of the base). An action entry takes a
/// composable tuple whose argument at `slot` is a bimodule id and whose other
/// arguments are base ids, and returns a combination of bimodule ids.
struct Bimodule {
    std::string name;
    std::vector<Generator> basis;
    std::map<std::pair<Tuple, int>, Combo> actions;

    std::size_t size() const { return basis.size(); }
    /// Zero outputs erase the entry.
    void set_action(Tuple inputs, int slot, Combo output);
    const Combo* action(const Tuple& inputs, int slot) const;
};

/// C as a bimodule over itself, every operation with one argument moved into the
/// bimodule. Labels are name(label).
Bimodule diagonal_bimodule(const AInfCategory& C, const std::string& name = "M");
/// Basis of `a` followed by the basis of `b`; labels must not collide.
Bimodule direct_sum(const Bimodule& a, const Bimodule& b);

/// Ids in range, composability and action degrees (arity p shifts degree by 2 - p).
ValidationReport check_bimodule(const AInfCategory& C, const Bimodule& M);

/// Table cochain C^{(x) arity} -> M. `degree` is the internal degree:
/// |value| - sum of argument degrees, measured in M. Entries of another length
/// (differentials over bases with higher operations) carry internal degree
/// degree + arity - length. Arity 0 entries are keyed by {object}.
struct HochschildCochain {
    int arity = 0;
    int degree = 0;
    std::map<Tuple, Combo> table;

    /// Zero outputs erase the entry.
    void set(Tuple inputs, Combo output);
    const Combo* value(const Tuple& inputs) const;
    bool is_zero() const { return table.empty(); }
};

/// Vanishes whenever an argument is a unit.
bool is_normalized(const AInfCategory& C, const HochschildCochain& eta);

/// C together with Sigma^shift M (degrees lowered by shift). Operations with
/// exactly one M argument come from the actions, with the sign
/// (-1)^{shift * (sum of degrees of the arguments after the M slot)}; two or
/// more M arguments give zero. Generator ids of C are kept; M ids follow.
AInfCategory square_zero_extension(const AInfCategory& C, const Bimodule& M, int shift);

/// Commutator with the bar differential, evaluated on every composable tuple of
/// C. For an associative base in degree 0 this is the classical alternating sum
/// a_1 f(..) - f(a_1 a_2, ..) + ... + (-1)^{n+1} f(..) a_{n+1}. The result may
/// carry several arities when C has higher operations.
HochschildCochain hochschild_differential(const AInfCategory& C, const Bimodule& M, const HochschildCochain& eta);

/// Square-zero extension by Sigma^{n-2} M with m_n increased by eta on pure C
/// inputs. Throws unless eta has internal degree 0 and, when requested, is normalized.
AInfCategory deform_by_cocycle(const AInfCategory& C, const Bimodule& M, const HochschildCochain& eta,
                               bool require_normalized = true);

/// Functor between categories with the same generators: identity on objects,
/// first component the identity plus correction, higher components the
/// correction entries. Components are stored in reduced-degree form.
struct StrictIsomorphism {
    std::map<Tuple, Combo> correction;
};

/// Isomorphism from the extension deformed by d(phi) to the undeformed one.
StrictIsomorphism coboundary_isomorphism(const AInfCategory& C, const Bimodule& M, const HochschildCochain& phi);

/// A-infinity functor equations on every composable tuple up to n_max (0 = twice
/// the larger arity bound minus one). Checks are named "functor[n]".
ValidationReport check_functor(const AInfCategory& source, const AInfCategory& target, const StrictIsomorphism& F,
                               int n_max = 0);

}  // namespace ainf
