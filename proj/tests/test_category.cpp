#include "ainf/category.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace ainf;

namespace {

bool has_witness(const ValidationReport& r, const std::string& check, const std::vector<std::string>& labels) {
    for (const auto& w : r.witnesses())
        if (w.check == check && w.labels == labels) return true;
    return false;
}

/// Sum over u < v of degree products plus (p-1)(p-2)/2; the spec-only sign
/// sum_{u<v}|a_u||a_v| without the arity term.
AInfCategory opposite_without_arity_term(const AInfCategory& c) {
    AInfCategory op = opposite(c);
    for (int p : c.arities())
        for (const auto& [t, out] : c.operations(p)) {
            Tuple rev(t.rbegin(), t.rend());
            int e = 0;
            for (int u = 0; u < p; ++u)
                for (int v = u + 1; v < p; ++v) e += c.degree(rev[u]) * c.degree(rev[v]);
            op.set_operation(rev, scaled(out, sign(e)));
        }
    return op;
}

}  // namespace

TEST_SUITE("ainf") {
    TEST_CASE("validate_structure on the dual numbers") {
        auto c = fixtures::dual_numbers();
        auto r = validate_structure(c);
        CHECK(r.passed());
        CHECK(r.flags().at("minimal"));

        fixtures::set(c, {"1", "eps"}, {});
        auto bad = validate_structure(c);
        CHECK_FALSE(bad.passed("units"));
        CHECK(has_witness(bad, "units", {"1", "eps"}));
    }

    TEST_CASE("validate_structure on TOY and degree violations") {
        auto c = fixtures::toy();
        CHECK(validate_structure(c).passed());
        CHECK(validate_structure(c).flags().at("minimal"));
        fixtures::set(c, {"eps", "eps"}, {{1, "t"}});
        auto r = validate_structure(c);
        CHECK_FALSE(r.passed("degrees"));
        CHECK(has_witness(r, "degrees", {"eps", "eps"}));
    }

    TEST_CASE("higher operations on units are rejected") {
        auto c = fixtures::toy();
        fixtures::set(c, {"1", "eps", "eps"}, {{1, "t"}});
        auto r = validate_structure(c);
        CHECK_FALSE(r.passed("units"));
        CHECK(has_witness(r, "units", {"1", "eps", "eps"}));
    }

    TEST_CASE("composability is enforced on multi-object tables") {
        AInfCategory c(Field::rationals());
        c.add_object("x");
        c.add_object("y");
        int ix = c.add_generator("1x", 0, 0, 0), iy = c.add_generator("1y", 1, 1, 0);
        int f = c.add_generator("f", 0, 1, 0);
        c.set_unit(0, ix);
        c.set_unit(1, iy);
        for (auto [a, b] : std::vector<std::pair<int, int>>{{ix, ix}, {iy, iy}, {iy, f}, {f, ix}})
            c.set_operation({a, b}, Combo{{a == iy && b == f ? f : (a == f ? f : a), Scalar(1)}});
        CHECK(validate_structure(c).passed());
        c.set_operation({f, f}, Combo{{f, Scalar(1)}});
        CHECK_FALSE(validate_structure(c).passed("composability"));
    }

    TEST_CASE("associative corpus passes every Stasheff identity") {
        for (const auto& [name, c] : fixtures::associative_corpus()) {
            CAPTURE(name);
            auto r = check_stasheff(c);
            CHECK(r.passed());
            CHECK(r.checks().size() == 3);
        }
    }

    TEST_CASE("TOY passes Stasheff up to arity 5 and beyond") {
        auto c = fixtures::toy();
        CHECK(check_stasheff(c).passed());
        CHECK(check_stasheff(c, 8).passed());
    }

    TEST_CASE("non-associative table fails at n = 3 with witness (x,x,x)") {
        auto r = check_stasheff(fixtures::nonassoc());
        CHECK_FALSE(r.passed());
        CHECK(r.passed("stasheff[1]"));
        CHECK(r.passed("stasheff[2]"));
        CHECK_FALSE(r.passed("stasheff[3]"));
        CHECK(has_witness(r, "stasheff[3]", {"x", "x", "x"}));
    }

    TEST_CASE("parallel sweep gives the same report") {
        std::mt19937 rng(23);
        for (int trial = 0; trial < 10; ++trial) {
            auto c = gen::random_table(rng, Field::rationals(), 4, 3);
            auto a = check_stasheff(c, 0, 1), b = check_stasheff(c, 0, 4);
            CHECK(a.checks() == b.checks());
            REQUIRE(a.witnesses().size() == b.witnesses().size());
            for (std::size_t i = 0; i < a.witnesses().size(); ++i) {
                CHECK(a.witnesses()[i].tuple == b.witnesses()[i].tuple);
                CHECK(a.witnesses()[i].discrepancy == b.witnesses()[i].discrepancy);
            }
        }
    }

    TEST_CASE("obstruction agrees with the reduced-degree oracle on random tables") {
        std::mt19937 rng(29);
        for (const Field& k : {Field::rationals(), Field::prime(7)})
            for (int trial = 0; trial < 25; ++trial) {
                auto c = gen::random_table(rng, k, 4, 3);
                for (int n = 1; n <= 4; ++n)
                    c.for_each_composable(n, [&](const Tuple& t) {
                        Combo a = stasheff_obstruction(c, t), b = oracles::reduced_stasheff(c, t);
                        Combo neg = scaled(b, Scalar(-1));
                        CHECK((a == b || a == neg));
                    });
            }
    }

    TEST_CASE("opposite examples and involution") {
        auto k2 = fixtures::k_times_k();
        CHECK(opposite(k2) == k2);
        auto toy = fixtures::toy();
        CHECK(opposite(opposite(toy)) == toy);
        auto u = fixtures::upper2();
        auto op = opposite(u);
        // E12 * E22 = E12 becomes E22 *op E12 = E12
        CHECK(op.operation({*op.find_generator("E22"), *op.find_generator("E12")}) != nullptr);
        CHECK(op.operation({*op.find_generator("E12"), *op.find_generator("E22")}) == nullptr);
        CHECK(check_stasheff(op).passed());
    }

    TEST_CASE("opposite of a two-object category transposes hom dimensions") {
        AInfCategory c(Field::rationals());
        c.add_object("x");
        c.add_object("y");
        int ix = c.add_generator("1x", 0, 0, 0), iy = c.add_generator("1y", 1, 1, 0);
        int f = c.add_generator("f", 0, 1, 0);
        c.set_unit(0, ix);
        c.set_unit(1, iy);
        auto op = opposite(c);
        CHECK(op.hom(0, 1).empty());
        CHECK(op.hom(1, 0).size() == 1);
        CHECK(op.generator(f).source == 1);
    }

    TEST_CASE("opposite carries obstructions to obstructions up to sign") {
        std::mt19937 rng(31);
        bool symmetric_only_breaks = false;
        for (const Field& k : {Field::rationals(), Field::prime(5)})
            for (int trial = 0; trial < 25; ++trial) {
                auto c = gen::random_table(rng, k, 4, 3);
                auto op = opposite(c);
                auto sym = opposite_without_arity_term(c);
                for (int n = 1; n <= 5; ++n)
                    c.for_each_composable(n, [&](const Tuple& t) {
                        Tuple rev(t.rbegin(), t.rend());
                        Combo a = stasheff_obstruction(c, t);
                        Combo b = stasheff_obstruction(op, rev);
                        CHECK((b == a || b == scaled(a, Scalar(-1))));
                        Combo s = stasheff_obstruction(sym, rev);
                        if (!(s == a || s == scaled(a, Scalar(-1)))) symmetric_only_breaks = true;
                    });
            }
        CHECK(symmetric_only_breaks);
    }

    TEST_CASE("full subcategory examples") {
        auto toy = fixtures::toy();
        CHECK(full_subcategory(toy, std::vector<int>{0}) == toy);
        CHECK_THROWS_AS(full_subcategory(toy, std::vector<std::string>{"nope"}), std::invalid_argument);
        CHECK_THROWS_AS(full_subcategory(toy, std::vector<int>{}), std::invalid_argument);

        AInfCategory c(Field::rationals());
        c.add_object("x");
        c.add_object("y");
        int ix = c.add_generator("1x", 0, 0, 0), iy = c.add_generator("1y", 1, 1, 0);
        c.set_unit(0, ix);
        c.set_unit(1, iy);
        c.set_operation({ix, ix}, Combo{{ix, Scalar(1)}});
        c.set_operation({iy, iy}, Combo{{iy, Scalar(1)}});
        auto sub = full_subcategory(c, std::vector<std::string>{"y"});
        CHECK(sub.num_objects() == 1);
        CHECK(sub.size() == 1);
        CHECK(sub.unit(0) == 0);
        CHECK(check_stasheff(sub).passed());
    }

    TEST_CASE("unit normalization holds for every corpus table") {
        auto check = [](const AInfCategory& c) {
            for (int p : c.arities()) {
                if (p == 2) continue;
                for (const auto& [t, out] : c.operations(p))
                    for (int id : t) CHECK_FALSE(c.is_unit(id));
            }
        };
        for (const auto& [name, c] : fixtures::associative_corpus()) check(c);
        check(fixtures::toy());
    }
}
