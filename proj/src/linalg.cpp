#include "ainf/linalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ainf {

Vector zero_vector(const Field& field, std::size_t n) { return Vector(n, field.zero()); }

Vector unit_vector(const Field& field, std::size_t n, std::size_t k) {
    Vector v = zero_vector(field, n);
    v.at(k) = field.one();
    return v;
}

bool is_zero(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

void axpy(Vector& y, const Scalar& a, const Vector& x) {
    if (a.is_zero()) return;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (!x[i].is_zero()) y[i] += a * x[i];
}

std::string to_string(const Vector& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

namespace {

// In-place reduced row echelon form; returns pivot columns. If `transform` is
// non-null it is updated by the same row operations.
std::vector<std::size_t> rref(std::vector<Vector>& rows, std::size_t ncols, std::vector<Vector>* transform = nullptr) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c].is_zero()) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        if (transform) std::swap((*transform)[p], (*transform)[r]);
        Scalar inv = rows[r][c].inverse();
        for (auto& x : rows[r]) x *= inv;
        if (transform)
            for (auto& x : (*transform)[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            Scalar f = -rows[i][c];
            axpy(rows[i], f, rows[r]);
            if (transform) axpy((*transform)[i], f, (*transform)[r]);
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    if (transform) transform->resize(r);
    return pivots;
}

}  // namespace

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(const Field& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

Vector Matrix::apply(const Vector& v) const {
    if (v.size() != cols_) throw DimensionMismatch("matrix/vector size mismatch");
    Vector out = zero_vector(field_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (!at(r, c).is_zero() && !v[c].is_zero()) out[r] += at(r, c) * v[c];
    return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("matrix product size mismatch");
    Matrix out(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (!o.at(k, j).is_zero()) out.at(i, j) += at(i, k) * o.at(k, j);
        }
    return out;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

std::vector<Vector> Matrix::kernel() const {
    std::vector<Vector> rows(rows_);
    for (std::size_t r = 0; r < rows_; ++r) rows[r].assign(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
    auto pivots = rref(rows, cols_);
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        Vector v = unit_vector(field_, cols_, free);
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t Matrix::rank() const {
    std::vector<Vector> rows(rows_);
    for (std::size_t r = 0; r < rows_; ++r) rows[r].assign(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
    return rref(rows, cols_).size();
}

// ---------------------------------------------------------------- GradedSpace

void GradedSpace::validate() const {
    if (labels.size() != degrees.size()) throw DimensionMismatch("graded space: labels and degrees differ in length");
    std::set<std::string> seen;
    for (const auto& l : labels)
        if (!seen.insert(l).second) throw std::invalid_argument("duplicate basis label \"" + l + "\"");
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(const Field& field, std::size_t ambient_dim) : field_(field), ambient_(ambient_dim) {}

Subspace Subspace::full(const Field& field, std::size_t ambient_dim) {
    std::vector<Vector> vs;
    for (std::size_t k = 0; k < ambient_dim; ++k) vs.push_back(unit_vector(field, ambient_dim, k));
    return echelon_basis(vs, field, ambient_dim);
}

Subspace echelon_basis(std::span<const Vector> vectors, const Field& field, std::size_t ambient_dim) {
    Subspace s(field, ambient_dim);
    for (const auto& v : vectors)
        if (v.size() != ambient_dim)
            throw DimensionMismatch("vector of length " + std::to_string(v.size()) + " in ambient space of dimension " +
                                    std::to_string(ambient_dim));
    s.rows_.assign(vectors.begin(), vectors.end());
    s.pivots_ = rref(s.rows_, ambient_dim);
    return s;
}

Vector Subspace::residual(const Vector& v) const {
    if (v.size() != ambient_) throw DimensionMismatch("membership: vector length differs from ambient dimension");
    Vector r = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Scalar c = r[pivots_[i]];
        if (!c.is_zero()) axpy(r, -c, rows_[i]);
    }
    return r;
}

bool Subspace::contains(const Vector& v) const { return ainf::is_zero(residual(v)); }

bool Subspace::contains(const Subspace& other) const {
    return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const Vector& v) { return contains(v); });
}

Subspace Subspace::operator+(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw DimensionMismatch("subspace sum: ambient dimensions differ");
    std::vector<Vector> all = rows_;
    all.insert(all.end(), other.rows_.begin(), other.rows_.end());
    return echelon_basis(all, field_, ambient_);
}

bool operator==(const Subspace& a, const Subspace& b) { return a.ambient_ == b.ambient_ && a.rows_ == b.rows_; }

bool Subspace::is_graded(std::span<const int> degrees) const {
    for (const auto& row : rows_) {
        std::set<int> ds;
        for (std::size_t k = 0; k < row.size(); ++k)
            if (!row[k].is_zero()) ds.insert(degrees[k]);
        if (ds.size() > 1) return false;
    }
    return true;
}

std::map<int, std::size_t> Subspace::graded_dims(std::span<const int> degrees) const {
    std::map<int, std::size_t> out;
    for (std::size_t i = 0; i < rows_.size(); ++i) ++out[degrees[pivots_[i]]];
    return out;
}

bool membership(const Subspace& s, const Vector& v) { return s.contains(v); }

// ---------------------------------------------------------------- quotients

Vector QuotientPresentation::lift(const Vector& coords) const {
    Vector v = zero_vector(numerator.field(), numerator.ambient_dim());
    for (std::size_t i = 0; i < representatives.size(); ++i) axpy(v, coords.at(i), representatives[i]);
    return v;
}

QuotientPresentation quotient_space(const Subspace& numerator, const Subspace& denominator,
                                    std::span<const Vector> preferred) {
    if (numerator.ambient_dim() != denominator.ambient_dim())
        throw DimensionMismatch("quotient: ambient dimensions differ");
    for (const auto& v : denominator.basis())
        if (!numerator.contains(v))
            throw ContainmentError("quotient: denominator not contained in numerator, witness " + to_string(v), v);

    const Field& field = numerator.field();
    const std::size_t n = numerator.ambient_dim();
    const std::size_t target = numerator.dim() - denominator.dim();

    QuotientPresentation q;
    q.numerator = numerator;
    q.denominator = denominator;

    Subspace covered = denominator;
    auto consider = [&](const Vector& c) {
        if (q.representatives.size() == target) return;
        if (!numerator.contains(c) || covered.contains(c)) return;
        q.representatives.push_back(c);
        std::vector<Vector> one{c};
        covered = covered + echelon_basis(one, field, n);
    };
    for (const auto& c : preferred) consider(c);
    for (std::size_t k = 0; k < n; ++k) consider(unit_vector(field, n, k));
    for (const auto& c : numerator.basis()) consider(c);

    // Coordinates with respect to (representatives, denominator basis).
    std::vector<Vector> combined = q.representatives;
    combined.insert(combined.end(), denominator.basis().begin(), denominator.basis().end());
    const std::size_t m = combined.size();
    std::vector<Vector> transform;
    for (std::size_t i = 0; i < m; ++i) transform.push_back(unit_vector(field, m, i));
    auto pivots = rref(combined, n, &transform);

    q.projection = Matrix(field, target, n);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (std::size_t j = 0; j < target; ++j) q.projection.at(j, pivots[i]) = transform[i][j];
    return q;
}

// ---------------------------------------------------------------- complexes

std::size_t FiniteComplex::dim(int q) const {
    auto it = dims.find(q);
    return it == dims.end() ? 0 : it->second;
}

Matrix FiniteComplex::d(int q) const {
    auto it = differential.find(q);
    if (it != differential.end()) return it->second;
    return Matrix(field, dim(q + 1), dim(q));
}

void FiniteComplex::check() const {
    for (const auto& [q, m] : differential) {
        if (m.rows() != dim(q + 1) || m.cols() != dim(q))
            throw DimensionMismatch("differential in degree " + std::to_string(q) + " has the wrong shape");
    }
    for (const auto& [q, m] : differential) {
        Matrix dd = d(q + 1) * m;
        for (std::size_t r = 0; r < dd.rows(); ++r)
            for (std::size_t c = 0; c < dd.cols(); ++c)
                if (!dd.at(r, c).is_zero())
                    throw NotAComplex("d o d != 0 from degree " + std::to_string(q) + " at entry (" + std::to_string(r) +
                                          "," + std::to_string(c) + ")",
                                      q, r, c);
    }
}

int FiniteComplex::euler_characteristic() const {
    int chi = 0;
    for (const auto& [q, n] : dims) chi += (q % 2 == 0 ? 1 : -1) * static_cast<int>(n);
    return chi;
}

std::size_t Cohomology::dim(int q) const {
    auto it = groups.find(q);
    return it == groups.end() ? 0 : it->second.dim;
}

std::map<int, std::size_t> Cohomology::dims() const {
    std::map<int, std::size_t> out;
    for (const auto& [q, g] : groups) out[q] = g.dim;
    return out;
}

std::size_t Cohomology::total_dim() const {
    std::size_t t = 0;
    for (const auto& [q, g] : groups) t += g.dim;
    return t;
}

int Cohomology::euler_characteristic() const {
    int chi = 0;
    for (const auto& [q, g] : groups) chi += (q % 2 == 0 ? 1 : -1) * static_cast<int>(g.dim);
    return chi;
}

Cohomology complex_cohomology(const FiniteComplex& complex) {
    complex.check();
    Cohomology out;
    for (const auto& [q, n] : complex.dims) {
        if (n == 0) continue;
        auto kernel = complex.d(q).kernel();
        Subspace cycles = echelon_basis(kernel, complex.field, n);
        Matrix in = complex.d(q - 1);
        std::vector<Vector> cols;
        for (std::size_t c = 0; c < in.cols(); ++c) cols.push_back(in.column(c));
        Subspace boundaries = echelon_basis(cols, complex.field, n);
        if (cycles.dim() == boundaries.dim()) continue;
        CohomologyGroup g;
        g.presentation = quotient_space(cycles, boundaries);
        g.dim = g.presentation.dim();
        g.representatives = g.presentation.representatives;
        out.groups.emplace(q, std::move(g));
    }
    return out;
}

}  // namespace ainf
