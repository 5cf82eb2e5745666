// Python bindings for the main operations: group cohomology, pointed-category
// auto-equivalence counts, equivalence/extension classification, metric forms.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gext/acceptance.hpp"
#include "gext/classify.hpp"

namespace py = pybind11;
using namespace gext;

namespace {

py::dict cohomology_py(const std::string& group, const std::string& module_desc, int degree,
                       const std::string& support) {
    auto G = make_group(group);
    auto mod = parse_module(module_desc, G);
    auto res = cohomology(mod, degree);
    py::dict d;
    d["z_order"] = res.z_order;
    d["b_order"] = res.b_order;
    d["h_order"] = res.h_order;
    d["invariants"] = res.invariants;
    if (!support.empty() && support != "none") {
        SupportHom s = support == "product" ? sum_support(mod->coeffs)
                       : support == "zero"  ? zero_support(mod->coeffs)
                                            : throw std::invalid_argument("support: zero|product");
        auto d1 = d1_subgroup(mod, s);
        d["d1_order"] = d1.order;
        d["z1_mod_d1"] = res.z_order / d1.order;
    }
    return d;
}

py::dict cstar_py(const std::string& group, int degree) {
    auto res = cstar_cohomology(make_group(group), degree);
    py::dict d;
    d["h_order"] = res.h_order;
    d["invariants"] = res.invariants;
    return d;
}

py::dict aut_pointed_py(const std::string& group) {
    auto en = monoidal_autoequivalences(make_pointed(make_group(group)));
    py::dict d;
    d["phi_level"] = en.phi_level;
    d["stab_order"] = en.stab_order;
    d["h2_order"] = en.h2_order;
    d["class_count"] = static_cast<ll>(en.classes.size());
    return d;
}

py::dict classify_equiv_py(const std::string& total, const std::vector<int>& kernel, const std::string& predicate,
                           bool with_oracle) {
    auto g = make_graded(make_pointed(make_group(total)), kernel);
    auto p = make_auto_equivalence_problem(g, parse_predicate(predicate));
    auto s = equivalence_count(p, with_oracle);
    py::dict d;
    d["z1"] = s.z1;
    d["d1"] = s.d1;
    d["z1_mod_d1"] = s.z1_mod_d1;
    d["h2_grading"] = s.h2_g;
    d["torsor_count"] = s.total;
    d["rows"] = static_cast<ll>(s.rows.size());
    if (with_oracle) {
        d["oracle_fine"] = s.oracle_fine;
        d["oracle_quadruple"] = s.oracle_quadruple;
        d["invisible_twists"] = s.collapse_order;
        d["paths_agree"] = s.total == s.oracle_quadruple;
    }
    return d;
}

py::dict classify_ext_py(const std::string& base, const std::string& grading, const std::string& action,
                         bool with_oracle) {
    AbelianGroup A = parse_abelian(base);
    auto G = make_group(grading);
    std::vector<Matrix> c(G->order, Matrix::identity(A.rank()));
    if (action == "inv") {
        Matrix neg(A.rank(), A.rank());
        for (int i = 0; i < A.rank(); ++i) neg.at(i, i) = A.factors[i] - 1;
        for (int g = 1; g < G->order; ++g) c[g] = neg;
    } else if (action != "trivial") {
        throw std::invalid_argument("action: trivial|inv");
    }
    auto p = make_extension_problem(std::move(A), G, std::move(c));
    auto count = extension_count(p);
    py::dict d;
    d["h2_lambda"] = count.h2_lambda;
    d["h3_cstar"] = count.h3_cstar;
    d["o3_vanishes"] = count.o3_vanishes;
    d["o4_vanishes"] = count.o4_vanishes;
    d["torsor_count"] = count.count;
    if (with_oracle && p.base.order() * G->order <= 24) {
        auto en = enumerate_extensions(p);
        d["brute_force_count"] = en.count;
        d["paths_agree"] = en.count == count.count;
    }
    return d;
}

py::list metric_py(const std::string& form_text) {
    QuadraticForm Q = read_form(form_text);
    auto P = em_realize(Q);
    py::list out;
    for (const auto& f : find_distinguished(Q)) {
        py::dict d;
        d["element"] = f.element;
        d["kind"] = f.kind == TorsionKind::Boson ? "boson" : f.kind == TorsionKind::Fermion ? "fermion" : "neither";
        d["grading_faithful"] = f.grading_faithful;
        if (f.kind != TorsionKind::Neither) {
            PointedFunctor F = build_Fz(P, f);
            d["coherent"] = true;
            d["braided"] = is_braided(P, F);
        }
        out.append(d);
    }
    return out;
}

py::dict reproduce_py() {
    auto run = run_acceptance(nullptr);
    py::dict d;
    py::list rows;
    for (const auto& c : run.criteria) {
        py::dict r;
        r["number"] = c.number;
        r["title"] = c.title;
        r["pass"] = c.pass;
        rows.append(r);
    }
    d["criteria"] = rows;
    d["coverage_ok"] = run.coverage_ok;
    d["all_pass"] = run.all_pass;
    return d;
}

}  // namespace

PYBIND11_MODULE(_gext, m) {
    m.doc() = "graded equivalence and extension counts for pointed fusion categories";
    m.def("group_order", [](const std::string& spec) { return make_group(spec)->order; }, py::arg("spec"));
    m.def("automorphism_count",
          [](const std::string& spec) { return static_cast<ll>(automorphisms(make_group(spec)).size()); },
          py::arg("spec"));
    m.def("cohomology", &cohomology_py, py::arg("group"), py::arg("module"), py::arg("degree"),
          py::arg("support") = "none");
    m.def("cstar_cohomology", &cstar_py, py::arg("group"), py::arg("degree"));
    m.def("aut_pointed", &aut_pointed_py, py::arg("group"));
    m.def("classify_equiv", &classify_equiv_py, py::arg("total"), py::arg("kernel"), py::arg("predicate") = "ttp",
          py::arg("with_oracle") = true);
    m.def("classify_ext", &classify_ext_py, py::arg("base"), py::arg("grading"), py::arg("action") = "trivial",
          py::arg("with_oracle") = true);
    m.def("metric", &metric_py, py::arg("form_text"));
    m.def("reproduce", &reproduce_py);
    m.attr("__version__") = "1.0.0";
}
