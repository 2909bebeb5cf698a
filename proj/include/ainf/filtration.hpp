#pragma once

#include "ainf/category.hpp"
#include "ainf/linalg.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace ainf {

/// Decreasing chain F^0 = R ⊇ F^1 ⊇ ... ⊇ F^n = 0 of subspaces of a
/// one-object category's underlying space, coordinates over generator ids.
struct Filtration {
    std::vector<Subspace> levels;

    /// The vanishing index n.
    int length() const { return static_cast<int>(levels.size()) - 1; }
    /// F^p, with F^p = F^n = 0 for p >= n.
    const Subspace& level(int p) const;
    std::vector<std::size_t> dims() const;
};

struct AppendixParams {
    int kappa = 0;
    Subspace J;
    int a = 0;
    int N = 0;
};

class FiltrationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Throws FiltrationError unless R has exactly one object.
void require_algebra(const AInfCategory& R, const char* what);

/// Checks "levels" (F^0 = R, F^n = 0, decreasing, graded) and "compatibility":
/// m_p(F^{i_1}, ..., F^{i_p}) ⊆ F^{min(i_1+...+i_p, n)} on spanning vectors.
ValidationReport check_filtration(const AInfCategory& R, const Filtration& F);

/// F^p spanned by the basis elements of degree <= -p.
Filtration degree_filtration(const AInfCategory& R);

/// Span of m_2(x, y) for x in X, y in Y.
Subspace product(const AInfCategory& R, const Subspace& X, const Subspace& Y);
/// Span of the basis elements of the given degree.
Subspace degree_part(const AInfCategory& R, int degree);

/// Jacobson radical of the degree-0 part, as the kernel of the trace form
/// (x, y) -> tr(L_{xy}). Characteristic 0 only.
Subspace radical(const AInfCategory& R);

/// Smallest a >= 1 with J^a = 0.
int nilpotency_index(const AInfCategory& R, const Subspace& J);

/// full / I with the unit preferred as a representative; generator k of
/// quotient_algebra(R, I) is the class of representatives[k].
QuotientPresentation quotient_presentation(const AInfCategory& R, const Subspace& I);

/// R / I with the induced operations. Representatives prefer the unit, then
/// basis vectors; a representative that is a basis vector keeps its label.
/// Throws FiltrationError if I is not an ideal for some m_p.
AInfCategory quotient_algebra(const AInfCategory& R, const Subspace& I);

/// Filtration for R concentrated in degrees 0 and -kappa, built from J = rad R_0:
/// F^p = J^min(p,a) + R_{-kappa} for 1 <= p <= N, then
/// F^{N+q} = sum_{u+v=q} J^u R_{-kappa} J^v, cut at the first zero level.
std::pair<Filtration, AppendixParams> appendix_filtration(const AInfCategory& R, int kappa);

}  // namespace ainf
