#include "ainf/linalg.hpp"
#include "generators.hpp"

#include <doctest.h>

using namespace ainf;

namespace {
const Field Q = Field::rationals();
Vector vec(std::initializer_list<long> xs) {
    Vector v;
    for (long x : xs) v.push_back(Q.from_int(x));
    return v;
}
}  // namespace

TEST_SUITE("linalg") {
    TEST_CASE("scalar arithmetic is exact over Q and F_p") {
        CHECK(Q.parse("1/3") + Q.parse("2/3") == Q.one());
        CHECK((Q.parse("-4/6")).to_string() == "-2/3");
        const Field F7 = Field::prime(7);
        CHECK(F7.parse("3") * F7.parse("5") == F7.one());
        CHECK(F7.parse("-1").to_string() == "6");
        CHECK(F7.parse("1/3") * F7.from_int(3) == F7.one());
        CHECK_THROWS_AS(Field::prime(9), std::invalid_argument);
        CHECK_THROWS(Q.parse("0.5"));
        CHECK_THROWS(F7.parse("1/7"));
        CHECK_THROWS_AS(Q.zero().inverse(), std::domain_error);
    }

    TEST_CASE("field axioms on random elements") {
        std::mt19937 rng(11);
        for (const Field& k : {Q, Field::prime(5), Field::prime(101)})
            for (int i = 0; i < 200; ++i) {
                Scalar a = gen::scalar(rng, k), b = gen::scalar(rng, k), c = gen::scalar(rng, k);
                CHECK(a * (b + c) == a * b + a * c);
                CHECK((a + b) - b == a);
                if (!a.is_zero()) CHECK(a * a.inverse() == k.one());
            }
    }

    TEST_CASE("echelon_basis examples") {
        std::vector<Vector> v1{vec({1, 0, 0}), vec({1, 1, 0})};
        Subspace s = echelon_basis(v1, Q, 3);
        CHECK(s.dim() == 2);
        CHECK(s.basis()[0] == vec({1, 0, 0}));
        CHECK(s.basis()[1] == vec({0, 1, 0}));
        CHECK(echelon_basis(std::vector<Vector>{}, Q, 3).dim() == 0);
        std::vector<Vector> v2{vec({2, 4}), vec({1, 2})};
        Subspace t = echelon_basis(v2, Q, 2);
        CHECK(t.dim() == 1);
        CHECK(t.basis()[0] == vec({1, 2}));
        std::vector<Vector> bad{vec({1, 2}), vec({1})};
        CHECK_THROWS_AS(echelon_basis(bad, Q, 2), DimensionMismatch);
    }

    TEST_CASE("membership examples") {
        Subspace s = echelon_basis(std::vector<Vector>{vec({1, 0})}, Q, 2);
        CHECK(membership(s, vec({3, 0})));
        CHECK_FALSE(membership(s, vec({0, 1})));
        CHECK(membership(Subspace(Q, 2), vec({0, 0})));
        CHECK_THROWS_AS(membership(s, vec({1, 0, 0})), DimensionMismatch);
    }

    TEST_CASE("span of echelon basis equals span of inputs") {
        std::mt19937 rng(3);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n = 1 + rng() % 6;
            auto vs = gen::vectors(rng, Q, rng() % 6, n);
            Subspace s = echelon_basis(vs, Q, n);
            for (const auto& v : vs) CHECK(s.contains(v));
            Subspace back = echelon_basis(s.basis(), Q, n);
            CHECK(back == s);
            for (const auto& b : s.basis()) {
                // b lies in span(vs): appending it does not raise the rank
                auto more = vs;
                more.push_back(b);
                CHECK(echelon_basis(more, Q, n).dim() == s.dim());
            }
        }
    }

    TEST_CASE("quotient examples") {
        Subspace full = Subspace::full(Q, 3);
        CHECK(quotient_space(full, full).dim() == 0);
        auto q0 = quotient_space(full, Subspace(Q, 3));
        CHECK(q0.dim() == 3);
        for (std::size_t i = 0; i < 3; ++i) CHECK(q0.representatives[i] == unit_vector(Q, 3, i));
        // span{1, eps, t} / span{eps, t} with basis order (1, eps, t)
        Subspace den = echelon_basis(std::vector<Vector>{vec({0, 1, 0}), vec({0, 0, 1})}, Q, 3);
        auto q = quotient_space(full, den);
        CHECK(q.dim() == 1);
        CHECK(q.representatives[0] == vec({1, 0, 0}));
        Subspace line = echelon_basis(std::vector<Vector>{vec({1, 1, 0})}, Q, 3);
        try {
            quotient_space(line, den);
            FAIL("containment violation not detected");
        } catch (const ContainmentError& e) {
            CHECK_FALSE(line.contains(e.witness()));
            CHECK(den.contains(e.witness()));
        }
    }

    TEST_CASE("projection after lift is the identity, lift after projection is identity modulo denominator") {
        std::mt19937 rng(5);
        for (const Field& k : {Q, Field::prime(3)})
            for (int trial = 0; trial < 80; ++trial) {
                const std::size_t n = 1 + rng() % 6;
                Subspace num = echelon_basis(gen::vectors(rng, k, rng() % 6, n), k, n);
                std::vector<Vector> dv;
                for (std::size_t i = 0; i < num.dim(); ++i)
                    if (rng() % 2) {
                        Vector v = zero_vector(k, n);
                        for (const auto& b : num.basis()) axpy(v, gen::scalar(rng, k), b);
                        dv.push_back(v);
                    }
                Subspace den = echelon_basis(dv, k, n);
                auto q = quotient_space(num, den);
                REQUIRE(q.dim() == num.dim() - den.dim());
                for (std::size_t i = 0; i < q.dim(); ++i)
                    CHECK(q.project(q.representatives[i]) == unit_vector(k, q.dim(), i));
                for (const auto& b : num.basis()) {
                    Vector back = q.lift(q.project(b));
                    axpy(back, k.from_int(-1), b);
                    CHECK(den.contains(back));
                }
            }
    }

    TEST_CASE("graded quotients have homogeneous representatives") {
        std::vector<int> degrees{0, 0, -1, -1};
        Subspace num = echelon_basis(std::vector<Vector>{vec({1, 1, 0, 0}), vec({0, 0, 1, 2}), vec({0, 0, 0, 1})}, Q, 4);
        Subspace den = echelon_basis(std::vector<Vector>{vec({0, 0, 1, 0})}, Q, 4);
        REQUIRE(num.is_graded(degrees));
        auto q = quotient_space(num, den);
        for (const auto& r : q.representatives) CHECK(echelon_basis(std::vector<Vector>{r}, Q, 4).is_graded(degrees));
    }

    TEST_CASE("cohomology examples") {
        FiniteComplex zero{Q, {{0, 2}, {1, 3}}, {}};
        auto h = complex_cohomology(zero);
        CHECK(h.dim(0) == 2);
        CHECK(h.dim(1) == 3);

        FiniteComplex id{Q, {{0, 1}, {1, 1}}, {}};
        Matrix one(Q, 1, 1);
        one.at(0, 0) = Q.one();
        id.differential[0] = one;
        CHECK(complex_cohomology(id).total_dim() == 0);

        // span{eps, t} -> span{1, eps, t} in degrees -1, 0
        FiniteComplex cone{Q, {{-1, 2}, {0, 3}}, {}};
        Matrix inc(Q, 3, 2);
        inc.at(1, 0) = Q.one();
        inc.at(2, 1) = Q.one();
        cone.differential[-1] = inc;
        auto hc = complex_cohomology(cone);
        CHECK(hc.dims() == std::map<int, std::size_t>{{0, 1}});
        REQUIRE(hc.groups.at(0).representatives.size() == 1);
        CHECK(hc.groups.at(0).representatives[0] == vec({1, 0, 0}));

        FiniteComplex bad{Q, {{0, 1}, {1, 1}, {2, 1}}, {}};
        bad.differential[0] = one;
        bad.differential[1] = one;
        try {
            complex_cohomology(bad);
            FAIL("d^2 != 0 not detected");
        } catch (const NotAComplex& e) {
            CHECK(e.degree() == 0);
        }
    }

    TEST_CASE("euler characteristic is preserved by cohomology") {
        std::mt19937 rng(17);
        for (int trial = 0; trial < 60; ++trial) {
            // random complex built as d = B A with A B = 0 via block structure
            const std::size_t a = 1 + rng() % 4, b = 1 + rng() % 4, c = 1 + rng() % 4;
            Matrix d0 = gen::matrix(rng, Q, b, a);
            // d1 kills the image of d0: rows of d1 from the left kernel of d0
            Matrix t(Q, a, b);
            for (std::size_t i = 0; i < b; ++i)
                for (std::size_t j = 0; j < a; ++j) t.at(j, i) = d0.at(i, j);
            auto left = t.kernel();
            Matrix d1(Q, c, b);
            for (std::size_t r = 0; r < c && !left.empty(); ++r) {
                Vector row = zero_vector(Q, b);
                for (const auto& v : left) axpy(row, gen::scalar(rng, Q), v);
                for (std::size_t j = 0; j < b; ++j) d1.at(r, j) = row[j];
            }
            FiniteComplex fc{Q, {{0, a}, {1, b}, {2, c}}, {{0, d0}, {1, d1}}};
            auto h = complex_cohomology(fc);
            CHECK(h.euler_characteristic() == fc.euler_characteristic());
            std::size_t rank0 = d0.rank(), rank1 = d1.rank();
            CHECK(h.dim(0) == a - rank0);
            CHECK(h.dim(1) == b - rank0 - rank1);
            CHECK(h.dim(2) == c - rank1);
        }
    }
}
