#include "ainf/auslander.hpp"
#include "ainf/cli.hpp"
#include "ainf/hochschild.hpp"
#include "ainf/perfmod.hpp"
#include "ainf/spec_io.hpp"
#include "fixtures.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ainf;
using nlohmann::json;

namespace {

const std::filesystem::path kData = AINF_DATA_DIR;

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) { return (kData / name).string(); }

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("ainfbench-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path_ / name) << text;
        return file(name);
    }

private:
    std::filesystem::path path_;
};

json report(const Run& r) {
    json j = json::parse(r.out);
    j.erase("timings");
    return j;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("sod on TOY") {
        const Run r = run({"sod", data("toy.spec"), "--format", "json"});
        CHECK(r.code == 0);
        const json j = json::parse(r.out);
        CHECK(j["command"] == "sod");
        CHECK(j["verdict"] == "PASS");
        CHECK(j["witnesses"].empty());
        CHECK(j["info"]["n"] == 4);
        CHECK(j.contains("timings"));

        const auto R = fixtures::toy();
        const auto A = build_auslander(R, appendix_filtration(R, 1).first);
        const auto S = sod_report(A);
        for (const char* name : {"hom_p_s", "hom_s_s"}) {
            const auto& table = j["tables"][name]["total"];
            const DimTable& expected = std::string(name) == "hom_p_s" ? S.hom_p_s : S.hom_s_s;
            REQUIRE(table.size() == 4);
            for (int jj = 0; jj < 4; ++jj) {
                REQUIRE(table[jj].size() == 4);
                for (int i = 0; i < 4; ++i) {
                    std::size_t tot = 0;
                    for (const auto& [q, d] : expected[jj][i]) {
                        tot += d;
                        CHECK(j["tables"][name]["graded"][jj][i][std::to_string(q)] == d);
                    }
                    CHECK(table[jj][i] == tot);
                    if (jj > i) CHECK(tot == 0);
                }
            }
        }
    }

    TEST_CASE("sod text report and thread count") {
        const Run text = run({"sod", data("toy.spec")});
        CHECK(text.code == 0);
        CHECK(text.out.find("verdict: PASS") != std::string::npos);
        CHECK(text.out.find("hom_p_s [j][i]") != std::string::npos);
        const Run a = run({"sod", data("toy.spec"), "--format", "json", "--jobs", "1"});
        const Run b = run({"sod", data("toy.spec"), "--format", "json", "--jobs", "4"});
        CHECK(report(a) == report(b));
    }

    TEST_CASE("stasheff on the non-associative algebra") {
        const Run r = run({"stasheff", data("nonassoc.spec"), "--format", "json"});
        CHECK(r.code == 1);
        const json j = json::parse(r.out);
        CHECK(j["verdict"] == "FAIL");
        REQUIRE_FALSE(j["witnesses"].empty());
        CHECK(j["witnesses"][0]["n"] == 3);
        CHECK(j["witnesses"][0]["tuple"] == json::array({"x", "x", "x"}));
        CHECK(j["witnesses"][0]["discrepancy"] == json{{"x", "-1"}});

        // every in-memory witness is reported, sorted by (n, tuple)
        const auto rep = check_stasheff(fixtures::nonassoc());
        CHECK(j["witnesses"].size() == rep.witnesses().size());
        for (std::size_t w = 1; w < j["witnesses"].size(); ++w) {
            const auto& p = j["witnesses"][w - 1];
            const auto& q = j["witnesses"][w];
            CHECK((p["n"] < q["n"] || (p["n"] == q["n"] && p["tuple"] <= q["tuple"])));
        }
        const Run text = run({"stasheff", data("nonassoc.spec")});
        CHECK(text.code == 1);
        CHECK(text.out.find("stasheff[3] n=3 (x,x,x)") != std::string::npos);
    }

    TEST_CASE("stasheff arity bound") {
        CHECK(run({"stasheff", data("nonassoc.spec"), "--max-arity", "2"}).code == 0);
        CHECK(run({"stasheff", data("toy.spec"), "--jobs", "3"}).code == 0);
    }

    TEST_CASE("gamma round trip re-validates") {
        TempDir tmp;
        const std::string out = tmp.file("gamma.spec");
        const Run build = run({"gamma", "build", data("toy.spec"), "-o", out});
        CHECK(build.code == 0);
        const Run check = run({"validate", out});
        CHECK(check.code == 0);
        CHECK(check.out.find("verdict: PASS") != std::string::npos);

        const auto R = fixtures::toy();
        const auto A = build_auslander(R, appendix_filtration(R, 1).first);
        CHECK(load_spec(out).category == A.gamma);
        std::ifstream in(out);
        std::stringstream text;
        text << in.rdbuf();
        CHECK(text.str() == serialize_spec(A.gamma));

        const json j = json::parse(run({"gamma", "build", data("toy.spec"), "-o", out, "--format", "json"}).out);
        const json dims = {{3, 2, 1, 1}, {2, 2, 1, 0}, {2, 2, 2, 1}, {1, 1, 1, 1}};
        // rows by target i, columns by source j
        for (int i = 0; i < 4; ++i)
            for (int jj = 0; jj < 4; ++jj) CHECK(j["tables"]["hom_dims"]["total"][jj][i] == dims[i][jj]);
    }

    TEST_CASE("filtration subcommands") {
        TempDir tmp;
        const Run app = run({"filtration", "appendix", data("toy.spec"), "--kappa", "1", "-o", tmp.file("a.spec")});
        CHECK(app.code == 0);
        const auto spec = load_spec(tmp.file("a.spec"));
        REQUIRE(spec.filtration);
        CHECK(spec.filtration->dims() == std::vector<std::size_t>{3, 2, 1, 1, 0});
        CHECK(run({"filtration", "check", tmp.file("a.spec")}).code == 0);

        CHECK(run({"filtration", "degree", data("toy.spec"), "-o", tmp.file("d.spec")}).code == 0);
        CHECK(load_spec(tmp.file("d.spec")).filtration->dims() == std::vector<std::size_t>{3, 1, 0});
        CHECK(run({"sod", tmp.file("d.spec")}).code == 0);

        CHECK(run({"filtration", "check", data("upper2.spec")}).code == 0);
        CHECK(run({"sod", data("upper2.spec")}).code == 0);
    }

    TEST_CASE("failing filtration check") {
        TempDir tmp;
        auto spec = load_spec(data("toy.spec"));
        const auto& k = spec.category.field();
        Filtration F;
        F.levels.push_back(Subspace::full(k, 3));
        const std::vector<Vector> one_t{unit_vector(k, 3, 0), unit_vector(k, 3, 2)};
        F.levels.push_back(echelon_basis(one_t, k, 3));
        F.levels.push_back(Subspace(k, 3));
        spec.filtration = F;
        save_spec(tmp.file("bad.spec"), spec);
        const Run r = run({"filtration", "check", tmp.file("bad.spec"), "--format", "json"});
        CHECK(r.code == 1);
        const json j = json::parse(r.out);
        CHECK(j["verdict"] == "FAIL");
        CHECK_FALSE(j["witnesses"].empty());
        CHECK(run({"sod", tmp.file("bad.spec")}).code == 1);
        CHECK(run({"gamma", "build", tmp.file("bad.spec"), "-o", tmp.file("g.spec")}).code == 1);
        CHECK_FALSE(std::filesystem::exists(tmp.file("g.spec")));
    }

    TEST_CASE("deform") {
        TempDir tmp;
        const Run r = run({"deform", data("dual_numbers_cocycle.spec"), "-o", tmp.file("out.spec")});
        CHECK(r.code == 0);
        const auto out = load_spec(tmp.file("out.spec")).category;
        CHECK(out.size() == 4);
        CHECK(check_stasheff(out).passed());

        // upper2: one cochain per basis pair, exit code tracks the cocycle condition
        const auto C = fixtures::upper2();
        const auto M = diagonal_bimodule(C);
        const std::string base = data("upper2.spec");
        int others = 0;
        for (const char* a : {"E12", "E22"})
            for (const char* b : {"E12", "E22"})
                for (const char* v : {"E12", "E22"}) {
                    const std::string text = std::string(R"({"cochain": {"arity": 2, "entries": [{"inputs": [")") + a +
                                             R"(", ")" + b + R"("], "output": {")" + v + R"(": "1"}}]}})";
                    const auto eta = parse_cochain(text, C);
                    const bool closed = hochschild_differential(C, M, eta).is_zero();
                    others += !closed;
                    const Run d = run({"deform", base, "--cochain", tmp.write("c.json", text), "-o",
                                       tmp.file("o.spec"), "--format", "json"});
                    CHECK(d.code == (closed ? 0 : 1));
                    const json j = json::parse(d.out);
                    CHECK(j["checks"]["cocycle"] == closed);
                }
        // a coboundary is always closed
        HochschildCochain phi{1, 0, {}};
        phi.set({1}, Combo{{2, Scalar(1)}});
        phi.set({2}, Combo{{1, Scalar(1)}});
        const auto dphi = hochschild_differential(C, M, phi);
        REQUIRE_FALSE(dphi.is_zero());
        json entries = json::array();
        for (const auto& [t, v] : dphi.table) {
            json e;
            for (int id : t) e["inputs"].push_back(C.generator(id).label);
            for (const auto& [id, c] : v) e["output"][C.generator(id).label] = c.to_string();
            entries.push_back(e);
        }
        const json cob = {{"cochain", {{"arity", 2}, {"entries", entries}}}};
        CHECK(run({"deform", base, "--cochain", tmp.write("cob.json", cob.dump()), "-o", tmp.file("o.spec")}).code == 0);
        CHECK(check_stasheff(load_spec(tmp.file("o.spec")).category).passed());
        CHECK(others > 0);
        CHECK(others > 0);
    }

    TEST_CASE("usage and parse errors exit 2") {
        TempDir tmp;
        CHECK(run({}).code == 2);
        CHECK(run({"frobnicate"}).code == 2);
        CHECK(run({"validate"}).code == 2);
        CHECK(run({"validate", tmp.file("missing.spec")}).code == 2);
        CHECK(run({"sod", data("toy.spec"), "--format", "xml"}).code == 2);
        CHECK(run({"stasheff", data("toy.spec"), "--jobs", "0"}).code == 2);
        CHECK(run({"filtration", "appendix", data("toy.spec"), "-o", tmp.file("x")}).code == 2);
        CHECK(run({"filtration", "check", data("toy.spec")}).code == 2);
        CHECK(run({"gamma", "build", data("toy.spec")}).code == 2);
        CHECK(run({"deform", data("toy.spec"), "-o", tmp.file("x")}).code == 2);

        const Run bad = run({"validate", tmp.write("bad.spec", R"({"basis": [], "units": {}, "extra": 1})")});
        CHECK(bad.code == 2);
        CHECK(bad.err.find("extra: unknown field") != std::string::npos);
        const Run syntax = run({"validate", tmp.write("syntax.spec", "{\n\"basis\": [\n")});
        CHECK(syntax.code == 2);
        CHECK(syntax.err.find("line") != std::string::npos);

        // appendix filtration needs an algebra in degrees 0 and -kappa
        CHECK(run({"filtration", "appendix", data("toy.spec"), "--kappa", "2", "-o", tmp.file("x")}).code == 2);
        // normalization is required for deformations
        const std::string unnormalized =
            tmp.write("u.json", R"({"cochain": {"arity": 2, "entries": [{"inputs": ["1", "E22"], "output": {"E12": "1"}}]}})");
        CHECK(run({"deform", data("upper2.spec"), "--cochain", unnormalized, "-o", tmp.file("x")}).code == 2);
    }

    TEST_CASE("help") {
        const Run r = run({"--help"});
        CHECK(r.code == 0);
        CHECK(r.out.find("sod") != std::string::npos);
    }
}
