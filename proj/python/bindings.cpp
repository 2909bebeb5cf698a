#include "ainf/auslander.hpp"
#include "ainf/cli.hpp"
#include "ainf/filtration.hpp"
#include "ainf/hochschild.hpp"
#include "ainf/perfmod.hpp"
#include "ainf/spec_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace ainf;

namespace {

Tuple ids(const AInfCategory& c, const std::vector<std::string>& labels) {
    Tuple t;
    for (const auto& l : labels) {
        auto id = c.find_generator(l);
        if (!id) throw py::key_error("unknown basis element " + l);
        t.push_back(*id);
    }
    return t;
}

std::map<std::string, std::string> labelled(const AInfCategory& c, const Combo& x) {
    std::map<std::string, std::string> out;
    for (const auto& [id, v] : x) out[c.generator(id).label] = v.to_string();
    return out;
}

py::dict report_dict(const ValidationReport& r) {
    py::list witnesses;
    for (const auto& w : r.witnesses()) {
        py::dict d;
        d["check"] = w.check;
        d["n"] = w.n;
        d["tuple"] = w.labels;
        py::dict disc;
        for (const auto& [label, v] : w.discrepancy) disc[py::str(label)] = v;
        d["discrepancy"] = disc;
        d["detail"] = w.detail;
        witnesses.append(d);
    }
    py::dict out;
    out["passed"] = r.passed();
    out["checks"] = r.checks();
    out["flags"] = r.flags();
    out["witnesses"] = witnesses;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact A-infinity algebra workbench";

    py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
    py::register_exception<FiltrationError>(m, "FiltrationError", PyExc_ValueError);
    py::register_exception<AuslanderError>(m, "AuslanderError", PyExc_ValueError);
    py::register_exception<HochschildError>(m, "HochschildError", PyExc_ValueError);

    py::class_<AInfCategory>(m, "Category")
        .def_property_readonly("field", [](const AInfCategory& c) { return c.field().name(); })
        .def_property_readonly("num_objects", &AInfCategory::num_objects)
        .def("__len__", &AInfCategory::size)
        .def_property_readonly("labels",
                               [](const AInfCategory& c) {
                                   std::vector<std::string> out;
                                   for (int id = 0; id < static_cast<int>(c.size()); ++id)
                                       out.push_back(c.generator(id).label);
                                   return out;
                               })
        .def_property_readonly("degrees",
                               [](const AInfCategory& c) {
                                   std::vector<int> out;
                                   for (int id = 0; id < static_cast<int>(c.size()); ++id) out.push_back(c.degree(id));
                                   return out;
                               })
        .def_property_readonly("arities", &AInfCategory::arities)
        .def("hom_dim",
             [](const AInfCategory& c, int source, int target) { return c.hom(source, target).size(); })
        .def(
            "operation",
            [](const AInfCategory& c, const std::vector<std::string>& inputs) {
                const Combo* v = c.operation(ids(c, inputs));
                return v ? labelled(c, *v) : std::map<std::string, std::string>{};
            },
            py::arg("inputs"), "m_p on basis labels, as {label: scalar}")
        .def("serialize", [](const AInfCategory& c) { return serialize_spec(c); })
        .def("__eq__", [](const AInfCategory& a, const AInfCategory& b) { return a == b; })
        .def("__repr__", [](const AInfCategory& c) {
            return "<Category over " + c.field().name() + ", " + std::to_string(c.num_objects()) + " objects, dim " +
                   std::to_string(c.size()) + ">";
        });

    py::class_<Filtration>(m, "Filtration")
        .def_property_readonly("n", &Filtration::length)
        .def("dims", &Filtration::dims);

    py::class_<HochschildCochain>(m, "Cochain")
        .def_readonly("arity", &HochschildCochain::arity)
        .def_readonly("degree", &HochschildCochain::degree)
        .def("is_zero", &HochschildCochain::is_zero)
        .def("__len__", [](const HochschildCochain& h) { return h.table.size(); });

    py::class_<WorkbenchSpec>(m, "Spec")
        .def_readonly("category", &WorkbenchSpec::category)
        .def_readonly("filtration", &WorkbenchSpec::filtration)
        .def_readonly("cochain", &WorkbenchSpec::cochain)
        .def_readonly("parameters", &WorkbenchSpec::parameters)
        .def_readonly("listed_entries", &WorkbenchSpec::listed_entries)
        .def("serialize", [](const WorkbenchSpec& s) { return serialize_spec(s); });

    m.def("parse_spec", [](const std::string& text) { return parse_spec(text); }, py::arg("text"));
    m.def("load_spec", [](const std::string& path) { return load_spec(path); }, py::arg("path"));
    m.def("parse_cochain", [](const std::string& text, const AInfCategory& c) { return parse_cochain(text, c); },
          py::arg("text"), py::arg("category"));

    m.def("validate_structure", [](const AInfCategory& c) { return report_dict(validate_structure(c)); });
    m.def(
        "check_stasheff",
        [](const AInfCategory& c, int max_arity, int jobs) {
            ValidationReport r;
            {
                py::gil_scoped_release release;
                r = check_stasheff(c, max_arity, jobs);
            }
            return report_dict(r);
        },
        py::arg("category"), py::arg("max_arity") = 0, py::arg("jobs") = 1);

    m.def("check_filtration", [](const AInfCategory& R, const Filtration& F) {
        return report_dict(check_filtration(R, F));
    });
    m.def("degree_filtration", &degree_filtration);
    m.def(
        "appendix_filtration",
        [](const AInfCategory& R, int kappa) {
            auto [F, p] = appendix_filtration(R, kappa);
            std::map<std::string, int> params{{"kappa", p.kappa}, {"a", p.a}, {"N", p.N}};
            return std::make_pair(F, params);
        },
        py::arg("category"), py::arg("kappa"));
    m.def("radical_dim", [](const AInfCategory& R) { return radical(R).dim(); });
    m.def("quotient_by_level", [](const AInfCategory& R, const Filtration& F, int p) {
        return quotient_algebra(R, F.level(p));
    });

    py::class_<AuslanderCategory>(m, "Auslander")
        .def_property_readonly("n", &AuslanderCategory::n)
        .def_readonly("gamma", &AuslanderCategory::gamma)
        .def("hom_dims", [](const AuslanderCategory& A) {
            // [target i][source j]
            std::vector<std::vector<std::size_t>> out(A.n(), std::vector<std::size_t>(A.n()));
            for (int i = 0; i < A.n(); ++i)
                for (int j = 0; j < A.n(); ++j) out[i][j] = A.gamma.hom(j, i).size();
            return out;
        });
    m.def("build_auslander", &build_auslander, py::arg("category"), py::arg("filtration"));

    m.def(
        "sod_report",
        [](const AuslanderCategory& A, int jobs) {
            SodReport S;
            {
                py::gil_scoped_release release;
                S = sod_report(A, jobs);
            }
            py::dict out = report_dict(S.report);
            out["n"] = S.n;
            out["hom_p_s"] = S.hom_p_s;
            out["hom_s_s"] = S.hom_s_s;
            out["rbar_cohomology"] = S.rbar_cohomology;
            out["generation"] = S.generation;
            return out;
        },
        py::arg("auslander"), py::arg("jobs") = 1);

    py::class_<TwistedComplex>(m, "TwistedComplex")
        .def_readonly("label", &TwistedComplex::label)
        .def("__len__", [](const TwistedComplex& X) { return X.entries.size(); });
    py::class_<PerfModules>(m, "PerfModules")
        .def(py::init<AuslanderCategory>())
        .def_property_readonly("n", &PerfModules::n)
        .def("representable", &PerfModules::representable, py::arg("i"), py::arg("shift") = 0)
        .def("simple", &PerfModules::simple)
        .def("cone_of_psi", [](const PerfModules& M, int i) { return M.cone(M.psi(i)); })
        .def("check", [](const PerfModules& M, const TwistedComplex& X) { return report_dict(M.check(X)); })
        .def("evaluate_cohomology",
             [](const PerfModules& M, const TwistedComplex& X, int j) {
                 return complex_cohomology(M.evaluate_at(X, j)).dims();
             })
        .def("hom_cohomology", [](const PerfModules& M, const TwistedComplex& X, const TwistedComplex& Y) {
            return M.hom_complex(X, Y).cohomology_dims();
        });

    m.def("hochschild_differential", [](const AInfCategory& C, const HochschildCochain& eta) {
        return hochschild_differential(C, diagonal_bimodule(C), eta);
    });
    m.def("deform", [](const AInfCategory& C, const HochschildCochain& eta) {
        return deform_by_cocycle(C, diagonal_bimodule(C), eta);
    });

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = run_cli(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs one CLI invocation; returns (exit code, stdout, stderr).");
}
