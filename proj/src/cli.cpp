#include "ainf/cli.hpp"

#include "ainf/auslander.hpp"
#include "ainf/filtration.hpp"
#include "ainf/hochschild.hpp"
#include "ainf/perfmod.hpp"
#include "ainf/spec_io.hpp"
#include "pretty_json.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace ainf {

namespace {

using ojson = nlohmann::ordered_json;

/// Input problem detected after parsing; exits with kUsageError.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Clock {
public:
    void lap(const std::string& name) {
        const auto now = std::chrono::steady_clock::now();
        laps_.emplace_back(name, std::chrono::duration<double, std::milli>(now - last_).count());
        last_ = now;
    }
    ojson json() const {
        auto rounded = [](double ms) { return std::round(ms * 1000) / 1000; };
        ojson out = ojson::object();
        double total = 0;
        for (const auto& [name, ms] : laps_) {
            out[name + "_ms"] = rounded(ms);
            total += ms;
        }
        out["total_ms"] = rounded(total);
        return out;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, double>> laps_;
};

/// Accumulates checks, witnesses and tables for one command.
struct Report {
    std::string command;
    std::string input;
    ValidationReport checks;
    ojson tables = ojson::object();
    ojson info = ojson::object();
    std::vector<std::pair<std::string, std::string>> notes;  // text-only lines
    Clock clock;

    bool passed() const { return checks.passed(); }
};

std::vector<Witness> ordered_witnesses(const ValidationReport& r) {
    std::vector<Witness> w = r.witnesses();
    std::stable_sort(w.begin(), w.end(), [](const Witness& a, const Witness& b) {
        return std::tie(a.n, a.tuple, a.check, a.detail) < std::tie(b.n, b.tuple, b.check, b.detail);
    });
    return w;
}

ojson witness_json(const Witness& w) {
    ojson j;
    j["check"] = w.check;
    j["n"] = w.n;
    j["tuple"] = w.labels;
    ojson d = ojson::object();
    for (const auto& [label, v] : w.discrepancy) d[label] = v;
    j["discrepancy"] = d;
    if (!w.detail.empty()) j["detail"] = w.detail;
    return j;
}

std::string witness_text(const Witness& w) {
    std::ostringstream os;
    os << w.check << " n=" << w.n << " (";
    for (std::size_t i = 0; i < w.labels.size(); ++i) os << (i ? "," : "") << w.labels[i];
    os << ")";
    if (!w.discrepancy.empty()) {
        os << " ->";
        bool first = true;
        for (const auto& [label, v] : w.discrepancy) {
            os << (first ? " " : " + ") << v << "*" << label;
            first = false;
        }
    }
    if (!w.detail.empty()) os << " [" << w.detail << "]";
    return os.str();
}

void emit(const Report& r, const std::string& format, std::ostream& out) {
    const auto witnesses = ordered_witnesses(r.checks);
    if (format == "json") {
        ojson j;
        j["command"] = r.command;
        j["input"] = r.input;
        j["verdict"] = r.passed() ? "PASS" : "FAIL";
        j["checks"] = ojson::object();
        for (const auto& [name, ok] : r.checks.checks()) j["checks"][name] = ok;
        j["flags"] = ojson::object();
        for (const auto& [name, v] : r.checks.flags()) j["flags"][name] = v;
        j["info"] = r.info;
        j["tables"] = r.tables;
        j["witnesses"] = ojson::array();
        for (const auto& w : witnesses) j["witnesses"].push_back(witness_json(w));
        j["timings"] = r.clock.json();
        out << detail::pretty_json(j);
        return;
    }
    out << r.command << " " << r.input << "\n";
    for (const auto& [name, ok] : r.checks.checks()) out << "  " << (ok ? "ok    " : "FAILED") << " " << name << "\n";
    for (const auto& [name, v] : r.checks.flags()) out << "  flag   " << name << " = " << (v ? "true" : "false") << "\n";
    for (const auto& [key, text] : r.notes) out << "  " << key << (text.front() == '\n' ? ":" : ": ") << text << "\n";
    if (!witnesses.empty()) {
        out << "witnesses:\n";
        for (const auto& w : witnesses) out << "  " << witness_text(w) << "\n";
    }
    out << "verdict: " << (r.passed() ? "PASS" : "FAIL") << "\n";
}

ojson graded_json(const std::map<int, std::size_t>& dims) {
    ojson j = ojson::object();
    for (const auto& [q, d] : dims) j[std::to_string(q)] = d;
    return j;
}

std::size_t total(const std::map<int, std::size_t>& dims) {
    std::size_t s = 0;
    for (const auto& [q, d] : dims) s += d;
    return s;
}

std::string graded_text(const std::map<int, std::size_t>& dims) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [q, d] : dims) {
        os << (first ? "" : " ") << q << ":" << d;
        first = false;
    }
    return os.str();
}

/// Table [j][i] as graded dims and as total dims.
void add_table(Report& r, const std::string& name, const DimTable& t) {
    ojson graded = ojson::array(), totals = ojson::array();
    std::ostringstream text;
    for (const auto& row : t) {
        ojson g = ojson::array(), s = ojson::array();
        text << "\n    ";
        for (const auto& cell : row) {
            g.push_back(graded_json(cell));
            s.push_back(total(cell));
            text << std::setw(14) << (cell.empty() ? "0" : "{" + graded_text(cell) + "}");
        }
        graded.push_back(g);
        totals.push_back(s);
    }
    r.tables[name] = {{"rows", "source j"}, {"columns", "target i"}, {"total", totals}, {"graded", graded}};
    r.notes.emplace_back(name + " [j][i]", text.str());
}

WorkbenchSpec read_spec(const std::string& path) { return load_spec(path); }

void write_output(const std::string& path, const WorkbenchSpec& spec, Report& r) {
    save_spec(path, spec);
    r.info["output"] = path;
    r.notes.emplace_back("wrote", path);
}

void add_stasheff(Report& r, const AInfCategory& c, int n_max, int jobs) {
    r.checks.merge(validate_structure(c));
    r.clock.lap("structure");
    r.checks.merge(check_stasheff(c, n_max, jobs));
    r.clock.lap("stasheff");
}

void describe(Report& r, const WorkbenchSpec& spec) {
    const AInfCategory& c = spec.category;
    r.info["field"] = c.field().name();
    r.info["objects"] = c.num_objects();
    r.info["basis"] = c.size();
    ojson sizes = ojson::object();
    for (int p : c.arities()) sizes[std::to_string(p)] = c.operations(p).size();
    r.info["table_entries"] = sizes;
}

Filtration filtration_for(const WorkbenchSpec& spec, Report& r) {
    if (spec.filtration) {
        r.info["filtration"] = "file";
        return *spec.filtration;
    }
    if (auto k = spec.parameters.find("kappa"); k != spec.parameters.end()) {
        r.info["filtration"] = "appendix";
        auto [F, params] = appendix_filtration(spec.category, static_cast<int>(k->second));
        r.info["appendix"] = {{"kappa", params.kappa}, {"a", params.a}, {"N", params.N}};
        return F;
    }
    r.info["filtration"] = "degree";
    return degree_filtration(spec.category);
}

void add_filtration_info(Report& r, const Filtration& F) {
    r.info["n"] = F.length();
    r.info["level_dims"] = F.dims();
    std::ostringstream os;
    for (std::size_t d : F.dims()) os << (os.tellp() ? " " : "") << d;
    r.notes.emplace_back("level dims", os.str());
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Verification workbench for finite A-infinity algebras and categories", "ainfbench"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "ainfbench 1.0");

    std::string file, output, cochain_file, format = "text";
    int max_arity = 0, jobs = 1, kappa = 0;
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
    };
    auto add_jobs = [&](CLI::App* sub) {
        sub->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber);
    };
    auto add_file = [&](CLI::App* sub) { sub->add_option("file", file, "Spec file")->required(); };
    auto add_output = [&](CLI::App* sub) { sub->add_option("-o,--output", output, "Output spec file")->required(); };

    auto* validate = app.add_subcommand("validate", "Structure, Stasheff identities and any filtration in the file");
    add_file(validate), add_format(validate), add_jobs(validate);

    auto* stasheff = app.add_subcommand("stasheff", "Stasheff identities up to a maximal arity");
    add_file(stasheff), add_format(stasheff), add_jobs(stasheff);
    stasheff->add_option("--max-arity", max_arity, "Largest n (default 2 * arity bound - 1)")
        ->check(CLI::NonNegativeNumber);

    auto* filtration = app.add_subcommand("filtration", "Filtration tools");
    filtration->require_subcommand(1);
    auto* fcheck = filtration->add_subcommand("check", "Check the filtration stored in the file");
    add_file(fcheck), add_format(fcheck);
    auto* fdegree = filtration->add_subcommand("degree", "Write the degree filtration");
    add_file(fdegree), add_format(fdegree), add_output(fdegree);
    auto* fappendix = filtration->add_subcommand("appendix", "Write the filtration for an algebra in degrees 0 and -K");
    add_file(fappendix), add_format(fappendix), add_output(fappendix);
    fappendix->add_option("--kappa", kappa, "Positive degree gap K")->required()->check(CLI::PositiveNumber);

    auto* gamma = app.add_subcommand("gamma", "Auslander category");
    gamma->require_subcommand(1);
    auto* gbuild = gamma->add_subcommand("build", "Build the Auslander category of a filtered algebra");
    add_file(gbuild), add_format(gbuild), add_output(gbuild);

    auto* sod = app.add_subcommand("sod", "Semi-orthogonal decomposition report");
    add_file(sod), add_format(sod), add_jobs(sod);

    auto* deform = app.add_subcommand("deform", "Deform by a Hochschild cocycle with diagonal coefficients");
    add_file(deform), add_format(deform), add_output(deform), add_jobs(deform);
    deform->add_option("--cochain", cochain_file, "Cochain file (default: the cochain section of the spec)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::CallForVersion&) {
        out << "ainfbench 1.0\n";
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    Report r;
    r.input = file;
    try {
        if (validate->parsed()) {
            r.command = "validate";
            const auto spec = read_spec(file);
            r.clock.lap("parse");
            describe(r, spec);
            add_stasheff(r, spec.category, 0, jobs);
            if (spec.filtration) {
                r.checks.merge(check_filtration(spec.category, *spec.filtration));
                add_filtration_info(r, *spec.filtration);
                r.clock.lap("filtration");
            }
        } else if (stasheff->parsed()) {
            r.command = "stasheff";
            const auto spec = read_spec(file);
            r.clock.lap("parse");
            describe(r, spec);
            r.info["max_arity"] = max_arity ? max_arity : 2 * spec.category.arity_bound() - 1;
            add_stasheff(r, spec.category, max_arity, jobs);
        } else if (fcheck->parsed()) {
            r.command = "filtration check";
            const auto spec = read_spec(file);
            r.clock.lap("parse");
            if (!spec.filtration) throw UsageError(file + ": no filtration section");
            add_filtration_info(r, *spec.filtration);
            r.checks.merge(check_filtration(spec.category, *spec.filtration));
            r.clock.lap("filtration");
        } else if (fdegree->parsed() || fappendix->parsed()) {
            auto spec = read_spec(file);
            r.clock.lap("parse");
            if (fdegree->parsed()) {
                r.command = "filtration degree";
                spec.filtration = degree_filtration(spec.category);
            } else {
                r.command = "filtration appendix";
                auto [F, params] = appendix_filtration(spec.category, kappa);
                spec.filtration = std::move(F);
                spec.parameters["kappa"] = kappa;
                r.info["appendix"] = {{"kappa", params.kappa}, {"a", params.a}, {"N", params.N}};
                r.notes.emplace_back("a, N", std::to_string(params.a) + ", " + std::to_string(params.N));
            }
            add_filtration_info(r, *spec.filtration);
            r.checks.merge(check_filtration(spec.category, *spec.filtration));
            r.clock.lap("filtration");
            write_output(output, spec, r);
        } else if (gbuild->parsed()) {
            r.command = "gamma build";
            const auto spec = read_spec(file);
            r.clock.lap("parse");
            const Filtration F = filtration_for(spec, r);
            add_filtration_info(r, F);
            r.checks.merge(check_filtration(spec.category, F));
            if (r.passed()) {
                const auto A = build_auslander(spec.category, F);
                r.checks.merge(A.inequalities);
                r.clock.lap("build");
                std::vector<std::vector<std::size_t>> dims(A.n(), std::vector<std::size_t>(A.n()));
                for (int j = 0; j < A.n(); ++j)
                    for (int i = 0; i < A.n(); ++i) dims[j][i] = A.gamma.hom(j, i).size();
                r.tables["hom_dims"] = {{"rows", "source j"}, {"columns", "target i"}, {"total", dims}};
                WorkbenchSpec g;
                g.category = A.gamma;
                write_output(output, g, r);
                r.clock.lap("write");
            }
        } else if (sod->parsed()) {
            r.command = "sod";
            const auto spec = read_spec(file);
            r.clock.lap("parse");
            const Filtration F = filtration_for(spec, r);
            add_filtration_info(r, F);
            r.checks.merge(check_filtration(spec.category, F));
            if (r.passed()) {
                const auto A = build_auslander(spec.category, F);
                r.clock.lap("build");
                const auto S = sod_report(A, jobs);
                r.clock.lap("sod");
                r.checks.merge(S.report);
                add_table(r, "hom_p_s", S.hom_p_s);
                add_table(r, "hom_s_s", S.hom_s_s);
                r.tables["rbar_cohomology"] = graded_json(S.rbar_cohomology);
                r.info["generation"] = S.generation;
                for (const auto& line : S.generation) r.notes.emplace_back("generation", line);
            }
        } else if (deform->parsed()) {
            r.command = "deform";
            const auto spec = read_spec(file);
            const AInfCategory& C = spec.category;
            HochschildCochain eta;
            if (!cochain_file.empty())
                eta = load_cochain(cochain_file, C);
            else if (spec.cochain)
                eta = *spec.cochain;
            else
                throw UsageError(file + ": no cochain section and no --cochain file");
            r.clock.lap("parse");
            const Bimodule M = diagonal_bimodule(C);
            r.info["arity"] = eta.arity;
            r.info["normalized"] = is_normalized(C, eta);
            const auto d = hochschild_differential(C, M, eta);
            if (d.is_zero()) {
                r.checks.pass("cocycle");
            } else {
                for (const auto& [t, v] : d.table) {
                    Witness w;
                    w.check = "cocycle";
                    w.n = static_cast<int>(t.size());
                    w.tuple = t;
                    w.labels.clear();
                    for (int id : t) w.labels.push_back(C.generator(id).label);
                    for (const auto& [id, c] : v) w.discrepancy.emplace_back(M.basis[id].label, c.to_string());
                    r.checks.fail(std::move(w));
                }
            }
            r.clock.lap("differential");
            WorkbenchSpec out_spec;
            out_spec.category = deform_by_cocycle(C, M, eta);
            r.clock.lap("deform");
            add_stasheff(r, out_spec.category, 0, jobs);
            write_output(output, out_spec, r);
        }
    } catch (const SpecError& e) {
        err << "error: " << (e.where().empty() ? "" : file + ": ") << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }
    emit(r, format, out);
    return r.passed() ? kPass : kCheckFailed;
}

}  // namespace ainf
