#pragma once

#include "ainf/linalg.hpp"
#include "ainf/scalar.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ainf {

/// Sparse vector over the global basis of a category. Zero coefficients are never stored.
using Combo = std::map<int, Scalar>;
/// Basis ids a_1, ..., a_p, outermost first: m_2(f, g) = f o g.
using Tuple = std::vector<int>;

void add_term(Combo& into, int id, const Scalar& coeff);
void add_scaled(Combo& into, const Combo& x, const Scalar& coeff);
Combo scaled(const Combo& x, const Scalar& coeff);

/// Dense coordinates over generator ids 0..n-1 and back.
Vector to_vector(const Combo& x, const Field& field, std::size_t n);
Combo to_combo(const Vector& v);

struct Generator {
    std::string label;
    int source = 0;
    int target = 0;
    int degree = 0;
};

/// Finite strictly unital A-infinity category with chosen bases.
///
/// Generators are numbered globally; hom(x, y) lists the ids of morphisms
/// x -> y. An operation entry maps a composable tuple (a_1, ..., a_p) with
/// a_u : x_{u+1} -> x_u to a combination of generators x_{p+1} -> x_1.
/// Absent entries are zero. Built incrementally, then treated as immutable.
class AInfCategory {
public:
    AInfCategory() = default;
    explicit AInfCategory(Field field) : field_(field) {}

    int add_object(std::string label);
    int add_generator(std::string label, int source, int target, int degree);
    void set_unit(int object, int generator);
    /// Stores `output` with zero terms dropped; a zero output erases the entry.
    void set_operation(Tuple inputs, Combo output);

    const Field& field() const { return field_; }

    std::size_t num_objects() const { return objects_.size(); }
    const std::string& object_label(int x) const { return objects_.at(x); }
    std::optional<int> find_object(const std::string& label) const;

    std::size_t size() const { return gens_.size(); }
    const Generator& generator(int id) const { return gens_.at(id); }
    int degree(int id) const { return gens_.at(id).degree; }
    std::optional<int> find_generator(const std::string& label) const;

    const std::vector<int>& hom(int source, int target) const;
    GradedSpace hom_space(int source, int target) const;

    std::optional<int> unit(int object) const { return units_.at(object); }
    bool is_unit(int id) const;

    const Combo* operation(const Tuple& inputs) const;
    const std::map<Tuple, Combo>& operations(int arity) const;
    std::vector<int> arities() const;
    int arity_bound() const;
    bool is_minimal() const { return operations(1).empty(); }

    bool composable(const Tuple& t) const;
    int output_degree(const Tuple& t) const;

    /// Multilinear evaluation of m_p on combinations.
    Combo apply(std::span<const Combo> args) const;

    /// Calls f on every composable tuple of the given length, in lexicographic id order.
    /// With `first` set, only tuples starting with that id are visited.
    void for_each_composable(int length, const std::function<void(const Tuple&)>& f,
                             std::optional<int> first = std::nullopt) const;

    /// Bit-exact equality of objects, bases, units and tables.
    friend bool operator==(const AInfCategory& a, const AInfCategory& b);

private:
    Field field_;
    std::vector<std::string> objects_;
    std::vector<Generator> gens_;
    std::map<std::pair<int, int>, std::vector<int>> homs_;
    std::map<int, std::vector<int>> by_target_;
    std::vector<std::optional<int>> units_;
    std::map<int, std::map<Tuple, Combo>> ops_;
};

std::string tuple_labels(const AInfCategory& c, const Tuple& t);
/// "2*x + -1/3*y"; "0" for the empty combination.
std::string combo_string(const AInfCategory& c, const Combo& x);

struct Witness {
    std::string check;
    int n = 0;
    Tuple tuple;
    std::vector<std::string> labels;
    std::vector<std::pair<std::string, std::string>> discrepancy;  // label -> scalar
    std::string detail;
};

/// Pass/fail per named check; every failure carries at least one witness.
class ValidationReport {
public:
    void pass(const std::string& check);
    void fail(Witness w);
    void set_flag(const std::string& name, bool value) { flags_[name] = value; }
    void merge(const ValidationReport& other);
    /// Witnesses ordered by (check, n, tuple).
    void sort_witnesses();

    bool passed() const;
    bool passed(const std::string& check) const;
    const std::map<std::string, bool>& checks() const { return checks_; }
    const std::map<std::string, bool>& flags() const { return flags_; }
    const std::vector<Witness>& witnesses() const { return witnesses_; }

private:
    std::map<std::string, bool> checks_;
    std::map<std::string, bool> flags_;
    std::vector<Witness> witnesses_;
};

Witness make_witness(const AInfCategory& c, std::string check, const Tuple& t, const Combo& discrepancy,
                     std::string detail = {});

/// Degrees, composability, strict unitality; flags "minimal".
ValidationReport validate_structure(const AInfCategory& c);

/// Sum over r+s+t = n of (-1)^{r+st} m_{r+1+t}(1^r (x) m_s (x) 1^t) on a basis tuple,
/// with the Koszul sign (-1)^{s(|a_1|+...+|a_r|)}.
Combo stasheff_obstruction(const AInfCategory& c, const Tuple& t);

/// Checks every Stasheff identity with n <= n_max (default 2*arity_bound - 1).
/// `jobs` > 1 splits the sweep over threads; the report does not depend on it.
ValidationReport check_stasheff(const AInfCategory& c, int n_max = 0, int jobs = 1);

/// hom^op(x, y) = hom(y, x); m^op_p(a_1..a_p) = (-1)^{s} m_p(a_p..a_1) with
/// s = sum_{u<v}|a_u||a_v| + (p-1)(p-2)/2.
AInfCategory opposite(const AInfCategory& c);

/// Throws std::invalid_argument on an unknown or empty object list.
AInfCategory full_subcategory(const AInfCategory& c, const std::vector<int>& objects);
AInfCategory full_subcategory(const AInfCategory& c, const std::vector<std::string>& objects);

/// Parity of sum_u (p-u)|a_u|: mu_p = (-1)^{this} m_p relates the m-form used
/// here to the reduced-degree form with purely Koszul relations.
int reduced_form_parity(std::span<const int> degrees);

}  // namespace ainf
