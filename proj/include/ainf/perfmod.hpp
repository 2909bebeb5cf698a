#pragma once

#include "ainf/auslander.hpp"
#include "ainf/category.hpp"
#include "ainf/linalg.hpp"

#include <compare>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ainf {

class TwistedComplexError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Shifted copy of a representable: object of gamma and shift k. A morphism
/// between entries of shifts k_a -> k_b built on a generator g has degree
/// |g| + k_a - k_b, so P[k] at j sits k degrees lower than P at j.
struct TwEntry {
    int object = 0;
    int shift = 0;
    friend bool operator==(const TwEntry&, const TwEntry&) = default;
};

/// One-sided twisted complex over the opposite of gamma. connection[(b, a)]
/// with b > a is a combination of gamma generators in gamma(o_b, o_a),
/// i.e. morphisms from entry a to entry b in the opposite category.
struct TwistedComplex {
    std::string label;
    std::vector<TwEntry> entries;
    std::map<std::pair<int, int>, Combo> connection;
};

/// Basis element of Hom(X, Y): generator `gen` from source entry a of X to target entry b of Y.
struct TwKey {
    int target = 0;
    int source = 0;
    int gen = 0;
    friend auto operator<=>(const TwKey&, const TwKey&) = default;
};
using TwElement = std::map<TwKey, Scalar>;

struct ModuleMorphismElement {
    TwistedComplex source;
    TwistedComplex target;
    TwElement entries;
    int degree = 0;
};

struct HomComplexResult {
    std::map<int, std::vector<TwKey>> basis;  // per degree
    FiniteComplex complex;
    Cohomology cohomology;

    std::map<int, std::size_t> dims() const;
    std::map<int, std::size_t> cohomology_dims() const { return cohomology.dims(); }
    /// Coordinates of a homogeneous element in the degree-q basis.
    Vector coordinates(const TwElement& x, int degree) const;
    TwElement element(const Vector& v, int degree) const;
};

/// Perfect modules over gamma realized as twisted complexes. P_i = gamma(i, -)
/// is the single entry (i, 0); Hom(P_j, X) computes X(j).
class PerfModules {
public:
    explicit PerfModules(AuslanderCategory A);

    const AuslanderCategory& auslander() const { return A_; }
    const AInfCategory& gamma() const { return A_.gamma; }
    /// Opposite of gamma; twisted complexes are built over it.
    const AInfCategory& dual() const { return dual_; }
    int n() const { return A_.n(); }

    int degree(const TwistedComplex& X, const TwistedComplex& Y, const TwKey& k) const;

    /// Triangularity, connection degrees and the Maurer-Cartan equation.
    ValidationReport check(const TwistedComplex& X) const;
    /// Sum of mu(delta, ..., delta) over all chains; zero iff X satisfies Maurer-Cartan.
    TwElement curvature(const TwistedComplex& X) const;

    /// m_p on Hom(X_2, X_1) x ... x Hom(X_{p+1}, X_p), objects listed X_1 first.
    TwElement operation(std::span<const TwistedComplex* const> objects, std::span<const TwElement> args) const;
    TwElement differential(const TwistedComplex& X, const TwistedComplex& Y, const TwElement& f) const;

    TwistedComplex representable(int i, int shift = 0) const;
    /// Class of the unit in gamma(i, i+1), as a closed degree-0 map P_{i+1} -> P_i.
    ModuleMorphismElement psi(int i) const;
    /// Entries of the source shifted by one, then the target; f below the diagonal.
    TwistedComplex cone(const ModuleMorphismElement& f) const;
    /// S_i = cone(psi_i) for i < n-1 and S_{n-1} = P_{n-1}.
    TwistedComplex simple(int i) const;

    /// Value of X at object j, computed straight from gamma's operations.
    FiniteComplex evaluate_at(const TwistedComplex& X, int j) const;
    HomComplexResult hom_complex(const TwistedComplex& X, const TwistedComplex& Y) const;

    /// Full A-infinity category on the given twisted complexes. The first
    /// diagonal basis element of each endomorphism space is replaced by the identity.
    AInfCategory tw_category(const std::vector<TwistedComplex>& objects) const;

private:
    AuslanderCategory A_;
    AInfCategory dual_;
};

/// Cohomology of a one-object category's m_1.
Cohomology algebra_cohomology(const AInfCategory& R);

using DimTable = std::vector<std::vector<std::map<int, std::size_t>>>;  // [j][i]

struct SodReport {
    int n = 0;
    DimTable hom_p_s;  // Hom(P_j, S_i)
    DimTable hom_s_s;  // Hom(S_j, S_i)
    std::map<int, std::size_t> rbar_cohomology;
    std::vector<std::string> generation;
    ValidationReport report;

    bool passed() const { return report.passed(); }
};

/// Orthogonality tables and the semi-orthogonal decomposition verdict.
/// `jobs` > 1 computes table cells on several threads.
SodReport sod_report(const AuslanderCategory& A, int jobs = 1);

}  // namespace ainf
