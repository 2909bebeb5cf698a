#pragma once

#include "ainf/scalar.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ainf {

using Vector = std::vector<Scalar>;

Vector zero_vector(const Field& field, std::size_t n);
Vector unit_vector(const Field& field, std::size_t n, std::size_t k);
bool is_zero(const Vector& v);
void axpy(Vector& y, const Scalar& a, const Vector& x);  // y += a x
std::string to_string(const Vector& v);

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by quotient_space when the denominator is not inside the numerator.
class ContainmentError : public std::invalid_argument {
public:
    ContainmentError(const std::string& what, Vector witness)
        : std::invalid_argument(what), witness_(std::move(witness)) {}
    const Vector& witness() const { return witness_; }

private:
    Vector witness_;
};

/// Raised when a differential does not square to zero.
class NotAComplex : public std::invalid_argument {
public:
    NotAComplex(const std::string& what, int degree, std::size_t row, std::size_t col)
        : std::invalid_argument(what), degree_(degree), row_(row), col_(col) {}
    int degree() const { return degree_; }
    std::size_t row() const { return row_; }
    std::size_t col() const { return col_; }

private:
    int degree_;
    std::size_t row_, col_;
};

/// Dense matrix, row major.
class Matrix {
public:
    Matrix() = default;
    Matrix(const Field& field, std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector apply(const Vector& v) const;
    Matrix operator*(const Matrix& o) const;
    bool is_zero() const;
    Vector column(std::size_t c) const;

    /// Basis of {v : M v = 0}.
    std::vector<Vector> kernel() const;
    std::size_t rank() const;

private:
    Field field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

/// Labeled basis with a cohomological degree per element.
struct GradedSpace {
    std::vector<std::string> labels;
    std::vector<int> degrees;

    std::size_t dim() const { return labels.size(); }
    /// Throws if labels repeat or the two lists differ in length.
    void validate() const;
};

/// Subspace of k^n held in reduced row echelon form, so equality is row equality.
class Subspace {
public:
    Subspace() = default;
    Subspace(const Field& field, std::size_t ambient_dim);  // zero subspace

    static Subspace full(const Field& field, std::size_t ambient_dim);

    const Field& field() const { return field_; }
    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return rows_.size(); }
    bool is_zero() const { return rows_.empty(); }
    const std::vector<Vector>& basis() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// v minus its projection along the echelon rows; zero iff v lies in the span.
    Vector residual(const Vector& v) const;
    bool contains(const Vector& v) const;
    bool contains(const Subspace& other) const;

    Subspace operator+(const Subspace& other) const;
    friend bool operator==(const Subspace& a, const Subspace& b);

    /// True when every echelon row is homogeneous for the given degrees.
    bool is_graded(std::span<const int> degrees) const;
    /// Dimension of the degree-d part (requires a graded subspace).
    std::map<int, std::size_t> graded_dims(std::span<const int> degrees) const;

private:
    friend Subspace echelon_basis(std::span<const Vector> vectors, const Field& field, std::size_t ambient_dim);

    Field field_;
    std::size_t ambient_ = 0;
    std::vector<Vector> rows_;
    std::vector<std::size_t> pivots_;
};

/// Throws DimensionMismatch if some vector has the wrong length.
Subspace echelon_basis(std::span<const Vector> vectors, const Field& field, std::size_t ambient_dim);
bool membership(const Subspace& s, const Vector& v);

/// numerator / denominator with chosen coset representatives.
struct QuotientPresentation {
    Subspace numerator;
    Subspace denominator;
    std::vector<Vector> representatives;  // lifts of the quotient basis
    Matrix projection;                    // dim x ambient, valid on the numerator

    std::size_t dim() const { return representatives.size(); }
    Vector project(const Vector& v) const { return projection.apply(v); }
    Vector lift(const Vector& coords) const;
};

/// Representatives are picked greedily from `preferred`, then the ambient
/// standard basis, then the numerator's echelon rows. Homogeneous inputs give
/// homogeneous representatives.
QuotientPresentation quotient_space(const Subspace& numerator, const Subspace& denominator,
                                    std::span<const Vector> preferred = {});

/// Bounded cochain complex; differential.at(q) maps degree q to degree q+1
/// and has shape dims[q+1] x dims[q].
struct FiniteComplex {
    Field field;
    std::map<int, std::size_t> dims;
    std::map<int, Matrix> differential;

    std::size_t dim(int q) const;
    /// Zero matrix of the right shape when no differential is stored.
    Matrix d(int q) const;
    /// Throws NotAComplex with the first nonzero entry of d^{q+1} d^q.
    void check() const;
    int euler_characteristic() const;
};

struct CohomologyGroup {
    std::size_t dim = 0;
    std::vector<Vector> representatives;  // cocycles, one per class
    QuotientPresentation presentation;    // ker d^q / im d^{q-1}
};

struct Cohomology {
    std::map<int, CohomologyGroup> groups;  // only nonzero groups

    std::size_t dim(int q) const;
    std::map<int, std::size_t> dims() const;
    std::size_t total_dim() const;
    int euler_characteristic() const;
};

Cohomology complex_cohomology(const FiniteComplex& complex);

}  // namespace ainf
