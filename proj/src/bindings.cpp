#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "fancohom/cohomology.hpp"
#include "fancohom/io.hpp"
#include "fancohom/kcomplex.hpp"
#include "fancohom/random_fans.hpp"

namespace py = pybind11;
using namespace fancohom;

namespace {

/* Integers cross the boundary as decimal strings, so arbitrary precision
 * survives in both directions. */

Integer to_integer(const py::handle& obj) {
    return Integer(py::str(obj).cast<std::string>());
}

py::object to_py_int(const Integer& x) {
    static py::object int_type = py::module_::import("builtins").attr("int");
    return int_type(x.str());
}

IntVec vec_from(const py::sequence& entries) {
    IntVec v(static_cast<Index>(py::len(entries)));
    Index i = 0;
    for (const py::handle& e : entries) v[i++] = to_integer(e);
    return v;
}

IntMat mat_from(const py::sequence& rows) {
    std::vector<IntVec> parsed;
    for (const py::handle& row : rows)
        parsed.push_back(vec_from(py::cast<py::sequence>(row)));
    if (parsed.empty()) throw py::value_error("matrix needs at least one row");
    for (const IntVec& r : parsed)
        if (r.size() != parsed[0].size())
            throw py::value_error("matrix rows must all have the same length");
    return rows_to_matrix(parsed[0].size(), parsed);
}

py::list vec_to(const IntVec& v) {
    py::list out;
    for (Index i = 0; i < v.size(); ++i) out.append(to_py_int(v[i]));
    return out;
}

py::list mat_to(const IntMat& m) {
    py::list out;
    for (Index i = 0; i < m.rows(); ++i) {
        py::list row;
        for (Index j = 0; j < m.cols(); ++j) row.append(to_py_int(m(i, j)));
        out.append(row);
    }
    return out;
}

std::vector<std::vector<IntVec>> cone_lists(const py::sequence& cones) {
    std::vector<std::vector<IntVec>> out;
    for (const py::handle& cone : cones) {
        std::vector<IntVec> gens;
        for (const py::handle& ray : py::cast<py::sequence>(cone))
            gens.push_back(vec_from(py::cast<py::sequence>(ray)));
        out.push_back(std::move(gens));
    }
    return out;
}

py::dict group_to_dict(const CohomologyGroup& g) {
    py::dict out;
    out["rank"] = static_cast<long long>(g.free_rank);
    py::list tor;
    for (const Integer& t : g.torsion) tor.append(to_py_int(t));
    out["torsion"] = tor;
    return out;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "hypothesis_violation";
    }
}

py::dict report_to_dict(const Report& rep) {
    py::dict out;
    out["regime"] = rep.regime;
    out["verdict"] = verdict_name(rep.verdict);
    if (!rep.hypothesis_note.empty()) out["hypothesis_note"] = rep.hypothesis_note;
    py::list checks;
    for (const CheckLine& c : rep.checks) {
        py::dict jc;
        jc["name"] = c.name;
        jc["ok"] = c.ok;
        if (!c.detail.empty()) jc["detail"] = c.detail;
        checks.append(jc);
    }
    out["checks"] = checks;
    return out;
}

std::vector<Integer> eta_from(const py::sequence& eta) {
    std::vector<Integer> out;
    for (const py::handle& e : eta) out.push_back(to_integer(e));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cohomology of rational fans with exact integer arithmetic";

    py::register_exception<IoError>(m, "IoError");
    py::register_exception<FanError>(m, "FanError");
    py::register_exception<ComplexError>(m, "ComplexError");

    py::class_<Fan>(m, "Fan")
        .def_static(
            "from_maximal",
            [](long long rank, const py::sequence& cones) {
                return Fan::from_maximal(static_cast<Index>(rank), cone_lists(cones));
            },
            py::arg("rank"), py::arg("cones"),
            "Fan generated by the given maximal cones, each a list of rays")
        .def_static("from_json", &fan_from_json, py::arg("text"))
        .def("to_json", &fan_to_json)
        .def("summary", &fan_summary)
        .def_property_readonly("rank", &Fan::ambient_rank)
        .def("size", &Fan::size)
        .def("f_vector", &Fan::f_vector)
        .def("is_complete", &Fan::is_complete)
        .def("is_simplicial", &Fan::is_simplicial)
        .def("rays",
             [](const Fan& f) {
                 py::list out;
                 for (Index i : f.by_dim(1)) out.append(vec_to(f.cone(i).rays[0]));
                 return out;
             },
             "Primitive ray generators in canonical order")
        .def("__eq__",
             [](const Fan& a, const Fan& b) { return fan_to_json(a) == fan_to_json(b); })
        .def("__repr__",
             [](const Fan& f) { return "<Fan: " + fan_summary(f) + ">"; });

    m.def("projective_space", &projective_space_fan, py::arg("r"));
    m.def(
        "hirzebruch",
        [](const py::handle& a) { return hirzebruch_fan(to_integer(a)); },
        py::arg("a"));
    m.def("product", &product_fan, py::arg("a"), py::arg("b"));
    m.def(
        "gamma",
        [](const py::sequence& rays) {
            std::vector<IntVec> gens;
            for (const py::handle& ray : rays)
                gens.push_back(vec_from(py::cast<py::sequence>(ray)));
            if (gens.empty()) throw py::value_error("gamma needs at least one ray");
            return gamma_fan(gens[0].size(), gens);
        },
        py::arg("rays"), "Face fan of the single cone spanned by the rays");
    m.def(
        "graph",
        [](const Fan& base, const py::sequence& eta) {
            GraphFans g = graph_fans(base, eta_from(eta));
            py::dict out;
            out["flat"] = g.flat;
            out["upper"] = g.upper;
            out["full"] = g.full;
            const std::vector<Index>& rays = g.full.by_dim(1);
            for (size_t i = 0; i < rays.size(); ++i)
                if (rays[i] == g.rho) out["downward_ray"] = static_cast<long long>(i);
            return out;
        },
        py::arg("base"), py::arg("eta"),
        "Flat, upper and full fans over the graph of the lift eta");

    m.def(
        "cohomology",
        [](const Fan& f) {
            CohomologyTable t = cohomology_table(f);
            py::dict out;
            for (int p = 0; p <= static_cast<int>(t.ambient_rank); ++p)
                for (int q = 0; q <= static_cast<int>(t.ambient_rank); ++q) {
                    const CohomologyGroup& g = t.group(p, q);
                    if (!g.is_zero()) out[py::make_tuple(p, q)] = group_to_dict(g);
                }
            return out;
        },
        py::arg("fan"),
        "Nonzero groups H^q of the p-th complex, keyed by (p, q)");
    m.def(
        "betti",
        [](const Fan& f) { return betti_numbers(cohomology_table(f)); },
        py::arg("fan"));
    m.def(
        "euler",
        [](const Fan& f, int p) { return to_py_int(euler_oracle(f, p)); },
        py::arg("fan"), py::arg("p"),
        "Euler characteristic of the p-th complex, from the f-vector alone");

    m.def(
        "verify",
        [](const Fan& f, const std::string& theorem, const py::object& rho,
           const py::object& eta) {
            if (theorem == "prop2.1") return report_to_dict(verify_single_cone(f));
            if (theorem == "prop4.1")
                return report_to_dict(verify_complete_simplicial(f));
            if (theorem == "prop4.1-kcomplex")
                return report_to_dict(verify_double_complex(f));
            if (theorem == "thm4.2") {
                if (rho.is_none()) throw py::value_error("thm4.2 needs rho");
                long long ray = py::cast<long long>(rho);
                const std::vector<Index>& rays = f.by_dim(1);
                if (ray < 0 || ray >= static_cast<long long>(rays.size()))
                    throw py::value_error("rho is out of range");
                return report_to_dict(
                    verify_star_removal(f, rays[static_cast<size_t>(ray)]));
            }
            if (theorem == "cor4.4") return report_to_dict(verify_convex_support(f));
            if (theorem == "lem4.3") {
                std::vector<Integer> lifts;
                if (!eta.is_none()) lifts = eta_from(py::cast<py::sequence>(eta));
                if (lifts.empty()) lifts.assign(f.by_dim(1).size(), Integer(0));
                return report_to_dict(verify_graph_transfer(f, lifts));
            }
            throw py::value_error("unknown theorem name: " + theorem);
        },
        py::arg("fan"), py::arg("theorem"), py::arg("rho") = py::none(),
        py::arg("eta") = py::none(),
        "Run one verification regime; thm4.2 takes a ray index, lem4.3 a lift");

    m.def(
        "hermite",
        [](const py::sequence& rows) { return mat_to(hermite_form(mat_from(rows)).h); },
        py::arg("matrix"), "Row Hermite normal form");
    m.def(
        "smith",
        [](const py::sequence& rows) {
            py::list out;
            for (const Integer& d : smith_form(mat_from(rows)).invariant_factors())
                out.append(to_py_int(d));
            return out;
        },
        py::arg("matrix"), "Invariant factors of the Smith normal form");
    m.def(
        "kernel",
        [](const py::sequence& rows) { return mat_to(kernel_basis(mat_from(rows))); },
        py::arg("matrix"), "Columns spanning the saturated integer kernel");
    m.def(
        "saturate",
        [](const py::sequence& rows) { return mat_to(saturate_rows(mat_from(rows))); },
        py::arg("matrix"), "Basis of the saturation of the row span");
    m.def(
        "rank",
        [](const py::sequence& rows) { return rational_rank(mat_from(rows)); },
        py::arg("matrix"));
}
