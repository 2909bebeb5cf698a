#pragma once

#include "ainf/category.hpp"
#include "ainf/filtration.hpp"
#include "ainf/linalg.hpp"

#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ainf {

class AuslanderError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Filtered algebra (R, F) together with the category gamma on objects
/// 0..n-1 with gamma(j, i) = F^max(j-i,0) / F^(n-i).
struct AuslanderCategory {
    AInfCategory base;
    Filtration filtration;
    AInfCategory gamma;
    /// Quotient presentation per (source j, target i).
    std::map<std::pair<int, int>, QuotientPresentation> homs;
    /// Per gamma generator: its position inside the presentation of its hom-space.
    std::vector<int> local_index;
    /// Integer inequalities checked for every index tuple that occurs.
    ValidationReport inequalities;

    int n() const { return filtration.length(); }
    const QuotientPresentation& presentation(int source, int target) const;
    /// Chosen representative in R of a gamma basis element.
    const Vector& lift(int gamma_id) const;
    /// Class in gamma(source, target) of a vector in the numerator.
    Combo project(int source, int target, const Vector& v) const;
};

/// max(i_{p+1} - i_1, 0) <= sum_u max(i_{u+1} - i_u, 0).
bool index_inequality_holds(std::span<const int> idx);
/// Chain L_k >= L_{k-1} >= ... >= L_1 = n - i_1 for every k, where
/// L_k = sum_{u<k} max(i_{u+1} - i_u, 0) + (n - i_k), and the full sum with
/// slot k replaced by n - i_k dominates L_k.
bool chain_inequality_holds(std::span<const int> idx, int n);

/// Throws AuslanderError if F is not a valid filtration of R, or if some
/// operation fails to descend to the quotients.
AuslanderCategory build_auslander(const AInfCategory& R, const Filtration& F);

/// Recomputes every gamma operation entry with lifts perturbed by random
/// elements of the denominators and compares the classes ("lift_independence").
ValidationReport verify_lift_independence(const AuslanderCategory& A, std::mt19937& rng, int trials);

/// Basis identification R -> gamma(0, 0): generator id of R -> gamma id.
/// Checks ("embedding") that every m_p table is carried over exactly.
struct GeneratorEmbedding {
    std::vector<int> image;
    ValidationReport report;
};
GeneratorEmbedding embed_generator(const AuslanderCategory& A);

/// One-object algebra on the direct sum of all gamma hom-spaces, with
/// idempotents e_i adjoined as the images of the units plus a global unit.
AInfCategory flatten(const AuslanderCategory& A);

}  // namespace ainf
