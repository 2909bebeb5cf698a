// One line per acceptance criterion; exit status 0 iff every line is PASS.

#include "ainf/auslander.hpp"
#include "ainf/cli.hpp"
#include "ainf/filtration.hpp"
#include "ainf/hochschild.hpp"
#include "ainf/perfmod.hpp"
#include "ainf/spec_io.hpp"
#include "fixtures.hpp"
#include "random_algebras.hpp"
#include "random_cochains.hpp"
#include "random_modules.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

using namespace ainf;

namespace {

const std::filesystem::path kData = AINF_DATA_DIR;

using Dims = std::map<int, std::size_t>;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Filtration radical_powers(const AInfCategory& R) {
    const Subspace J = radical(R);
    Filtration F{{Subspace::full(R.field(), R.size())}};
    Subspace P = J;
    while (true) {
        F.levels.push_back(P);
        if (P.is_zero()) return F;
        P = product(R, P, J);
    }
}

// 1
Outcome stasheff_soundness() {
    Outcome o;
    double slowest = 0;
    for (const auto& [name, R] : fixtures::associative_corpus()) {
        const auto t0 = std::chrono::steady_clock::now();
        const bool ok = check_stasheff(R).passed() && validate_structure(R).passed();
        const double s = seconds_since(t0);
        slowest = std::max(slowest, s);
        o.require(ok, name + " rejected");
        o.require(s < 1.0, name + " took over 1 s");
    }
    const auto t0 = std::chrono::steady_clock::now();
    const auto rep = check_stasheff(fixtures::nonassoc());
    slowest = std::max(slowest, seconds_since(t0));
    o.require(!rep.passed(), "non-associative algebra accepted");
    bool found = false;
    for (const auto& w : rep.witnesses())
        found = found || (w.n == 3 && w.labels == std::vector<std::string>{"x", "x", "x"});
    o.require(found, "no witness (x,x,x) at n = 3");
    if (o.pass) {
        std::ostringstream os;
        os << "6 corpus algebras pass, (x,x,x) witnessed; slowest " << std::fixed << std::setprecision(3) << slowest
           << " s";
        o.detail = os.str();
    }
    return o;
}

// 2
Outcome toy_pipeline() {
    Outcome o;
    const auto R = fixtures::toy();
    const auto [F, params] = appendix_filtration(R, 1);
    o.require(F.dims() == std::vector<std::size_t>{3, 2, 1, 1, 0}, "level dims differ from (3,2,1,1,0)");
    o.require(F.length() == 4, "n != 4");
    o.require(check_filtration(R, F).passed(), "compatibility fails");
    const auto Rbar = quotient_algebra(R, F.level(1));
    o.require(Rbar.size() == 1, "R/F^1 is not one-dimensional");
    o.require(radical(Rbar).is_zero(), "R/F^1 has a radical");
    if (o.pass) o.detail = "dims (3,2,1,1,0), n = 4, R/F^1 = k semisimple";
    return o;
}

// 3
Outcome auslander_construction() {
    Outcome o;
    const auto R = fixtures::toy();
    const auto A = build_auslander(R, appendix_filtration(R, 1).first);
    const std::vector<std::vector<std::size_t>> expected{{3, 2, 1, 1}, {2, 2, 1, 0}, {2, 2, 2, 1}, {1, 1, 1, 1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            o.require(A.gamma.hom(j, i).size() == expected[i][j],
                      "dim hom(" + std::to_string(j) + ", " + std::to_string(i) + ")");
    o.require(validate_structure(A.gamma).passed(), "structure");
    o.require(check_stasheff(A.gamma).passed(), "Stasheff");
    o.require(A.inequalities.passed(), "index inequalities");
    std::mt19937 rng(3);
    o.require(verify_lift_independence(A, rng, 50).passed(), "lift independence");
    if (o.pass)
        o.detail = "rowwise dims match, Stasheff up to n = " + std::to_string(2 * A.gamma.arity_bound() - 1) +
                   ", 50 lift perturbations";
    return o;
}

bool sod_conditions(const AuslanderCategory& A, const SodReport& S, std::string& why) {
    const Dims rbar = algebra_cohomology(quotient_algebra(A.base, A.filtration.level(1))).dims();
    auto fail = [&](const std::string& w) {
        why = w;
        return false;
    };
    if (!S.passed()) return fail("report verdict FAIL");
    if (S.rbar_cohomology != rbar) return fail("H(Rbar) mismatch");
    if (!S.report.flags().count("end_algebra_compared") || !S.report.flags().at("end_algebra_compared"))
        return fail("End(S_i) products not compared");
    for (int j = 0; j < S.n; ++j)
        for (int i = 0; i < S.n; ++i) {
            if (j > i && (!S.hom_p_s[j][i].empty() || !S.hom_s_s[j][i].empty())) return fail("nonzero Hom for j > i");
            if (j == i && (S.hom_p_s[i][i] != rbar || S.hom_s_s[i][i] != rbar)) return fail("diagonal differs");
        }
    return true;
}

// 4
Outcome semi_orthogonality() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const int jobs = std::max(1u, std::thread::hardware_concurrency());
    const auto R = fixtures::toy();
    std::string why;
    {
        const auto A = build_auslander(R, appendix_filtration(R, 1).first);
        const auto S = sod_report(A, jobs);
        o.require(S.n == 4 && sod_conditions(A, S, why), "TOY appendix: " + why);
    }
    {
        const auto A = build_auslander(R, degree_filtration(R));
        const auto S = sod_report(A, jobs);
        o.require(S.n == 2 && sod_conditions(A, S, why), "TOY degree: " + why);
    }
    std::mt19937 rng(4);
    const int trials = 30;
    for (int trial = 0; trial < trials; ++trial) {
        const Field k = trial % 5 == 4 ? Field::prime(3) : Field::rationals();
        const auto fa = gen::random_filtered_algebra(rng, k, 6, 5);
        o.require(fa.algebra.size() <= 6 && fa.filtration.length() <= 5, "generator out of range");
        o.require(check_filtration(fa.algebra, fa.filtration).passed(), fa.description + ": filtration invalid");
        const auto A = build_auslander(fa.algebra, fa.filtration);
        const auto S = sod_report(A, jobs);
        o.require(sod_conditions(A, S, why), fa.description + ": " + why);
    }
    const double s = seconds_since(t0);
    o.require(s < 120, "over 2 min");
    if (o.pass) {
        std::ostringstream os;
        os << "TOY n = 4 and n = 2, " << trials << " random filtered algebras";
        o.detail = os.str();
    }
    return o;
}

// 5
Outcome integer_inequality() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    long tuples = 0;
    for (int n = 1; n <= 8; ++n)
        for (int p = 1; p <= 6; ++p) {
            std::vector<int> idx(p + 1, 0);
            while (true) {
                ++tuples;
                o.require(index_inequality_holds(idx) && chain_inequality_holds(idx, n), "counterexample");
                int u = p;
                while (u >= 0 && ++idx[u] == n) idx[u--] = 0;
                if (u < 0) break;
            }
        }
    o.require(seconds_since(t0) < 1.0, "over 1 s");
    if (o.pass) o.detail = std::to_string(tuples) + " index tuples";
    return o;
}

// 6
Outcome yoneda() {
    Outcome o;
    std::vector<AuslanderCategory> gammas;
    const auto toy = fixtures::toy();
    gammas.push_back(build_auslander(toy, appendix_filtration(toy, 1).first));
    gammas.push_back(build_auslander(toy, degree_filtration(toy)));
    for (const auto& R : {fixtures::upper3(), fixtures::path_a3(), fixtures::dual_numbers()})
        gammas.push_back(build_auslander(R, radical_powers(R)));
    std::mt19937 rng(6);
    int pairs = 0;
    while (pairs < 100) {
        const PerfModules M(gammas[pairs % gammas.size()]);
        for (const auto& Y : gen::random_modules(rng, M, 2)) {
            if (pairs == 100) break;
            const int j = static_cast<int>(rng() % M.n());
            o.require(M.check(Y).passed(), "Maurer-Cartan fails for " + Y.label);
            const Dims lhs = M.hom_complex(M.representable(j), Y).cohomology_dims();
            const Dims rhs = complex_cohomology(M.evaluate_at(Y, j)).dims();
            o.require(lhs == rhs, "dims differ for " + Y.label + " at " + std::to_string(j));
            ++pairs;
        }
    }
    if (o.pass) o.detail = std::to_string(pairs) + " pairs over " + std::to_string(gammas.size()) + " categories";
    return o;
}

// 7
Outcome deformation() {
    Outcome o;
    std::mt19937 rng(7);
    const auto corpus = gen::small_corpus();
    int cocycles = 0, others = 0, coboundaries = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto& [name, C] = corpus[trial % corpus.size()];
        const auto M = diagonal_bimodule(C);
        const int n = 2 + (trial / static_cast<int>(corpus.size())) % 2;
        HochschildCochain eta;
        std::optional<HochschildCochain> phi;
        switch (trial % 3) {
            case 0:
                phi = gen::random_cochain(rng, C, M, n - 1);
                eta = hochschild_differential(C, M, *phi);
                break;
            case 1:
                eta = gen::sum(hochschild_differential(C, M, gen::random_cochain(rng, C, M, n - 1)),
                               gen::random_cochain(rng, C, M, n, 0.2));
                break;
            default:
                eta = gen::random_cochain(rng, C, M, n);
        }
        eta.arity = n;
        const std::string tag = name + " arity " + std::to_string(n);
        o.require(is_normalized(C, eta), tag + ": not normalized");
        const bool cocycle = hochschild_differential(C, M, eta).is_zero();
        (cocycle ? cocycles : others)++;
        const auto E = deform_by_cocycle(C, M, eta);
        o.require(check_stasheff(E).passed() == cocycle, tag + ": Stasheff disagrees with the cocycle condition");
        if (phi) {
            ++coboundaries;
            o.require(cocycle, tag + ": coboundary not closed");
            const auto F = coboundary_isomorphism(C, M, *phi);
            o.require(check_functor(E, square_zero_extension(C, M, n - 2), F).passed(),
                      tag + ": strict isomorphism fails");
        }
    }
    o.require(cocycles > 0 && others > 0, "degenerate sample");
    if (o.pass)
        o.detail = "50 cochains: " + std::to_string(cocycles) + " cocycles (" + std::to_string(coboundaries) +
                   " coboundaries with verified isomorphisms), " + std::to_string(others) + " non-cocycles";
    return o;
}

// 8
Outcome cli_contract() {
    Outcome o;
    auto run = [](std::vector<std::string> args, std::string* out = nullptr) {
        std::ostringstream os, es;
        const int code = run_cli(args, os, es);
        if (out) *out = os.str();
        return code;
    };
    std::string out;
    o.require(run({"sod", (kData / "toy.spec").string(), "--format", "json"}, &out) == 0, "sod exit code");
    {
        const auto j = nlohmann::json::parse(out);
        o.require(j["verdict"] == "PASS", "sod verdict");
        for (const char* t : {"hom_p_s", "hom_s_s"}) {
            const auto& tab = j["tables"][t]["total"];
            o.require(tab.size() == 4 && tab[0].size() == 4, std::string(t) + " is not 4x4");
        }
    }
    o.require(run({"stasheff", (kData / "nonassoc.spec").string(), "--format", "json"}, &out) == 1,
              "stasheff exit code");
    {
        const auto j = nlohmann::json::parse(out);
        o.require(!j["witnesses"].empty() && j["witnesses"][0]["n"] == 3 &&
                      j["witnesses"][0]["tuple"] == nlohmann::json::array({"x", "x", "x"}),
                  "witness (x,x,x) missing");
    }
    const auto dir = std::filesystem::temp_directory_path() / ("ainfbench-acceptance-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const std::string gamma = (dir / "gamma.spec").string();
    o.require(run({"gamma", "build", (kData / "toy.spec").string(), "-o", gamma}) == 0, "gamma build exit code");
    o.require(run({"validate", gamma}) == 0, "validate gamma exit code");
    std::filesystem::remove_all(dir);

    std::vector<AInfCategory> all;
    for (const Field& k : {Field::rationals(), Field::prime(5)})
        for (const auto& [name, R] : fixtures::associative_corpus(k)) all.push_back(R);
    for (const auto& R : {fixtures::toy(), fixtures::nonassoc(), fixtures::dual_with_top()}) all.push_back(R);
    const auto toy = fixtures::toy();
    all.push_back(build_auslander(toy, appendix_filtration(toy, 1).first).gamma);
    all.push_back(build_auslander(toy, degree_filtration(toy)).gamma);
    for (const auto& R : {fixtures::upper3(), fixtures::path_a3()})
        all.push_back(build_auslander(R, radical_powers(R)).gamma);
    std::size_t files = 0;
    for (const auto& c : all) {
        const std::string once = serialize_spec(c);
        const auto back = parse_spec(once);
        o.require(back.category == c && serialize_spec(back) == once, "round trip differs");
    }
    for (const auto& entry : std::filesystem::directory_iterator(kData)) {
        if (entry.path().extension() != ".spec") continue;
        const std::string once = serialize_spec(load_spec(entry.path()));
        o.require(serialize_spec(parse_spec(once)) == once, entry.path().filename().string() + " round trip differs");
        ++files;
    }
    if (o.pass)
        o.detail = "3 CLI examples, byte-identical round trip on " + std::to_string(all.size()) + " categories and " +
                   std::to_string(files) + " files";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 stasheff soundness", stasheff_soundness},
        {"2 toy pipeline", toy_pipeline},
        {"3 auslander construction", auslander_construction},
        {"4 semi-orthogonality", semi_orthogonality},
        {"5 integer inequality", integer_inequality},
        {"6 yoneda invariant", yoneda},
        {"7 deformation criterion", deformation},
        {"8 cli contract", cli_contract},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double s = seconds_since(t0);
        failed += !o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << std::left << std::setw(26) << name << std::right << std::fixed
                  << std::setprecision(2) << std::setw(8) << s << " s  " << o.detail << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
