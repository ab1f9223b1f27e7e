#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lgi/errors.hpp"
#include "lgi/experiments.hpp"
#include "lgi/lie_core.hpp"
#include "lgi/order_theory.hpp"

namespace py = pybind11;

namespace {

lgi::AlgebraDescriptor descriptor(const std::string& kind, int n) {
  if (kind == "so") return lgi::AlgebraDescriptor::so(n);
  if (kind == "sl") return lgi::AlgebraDescriptor::sl(n);
  if (kind == "gl") return lgi::AlgebraDescriptor::gl(n);
  throw lgi::LookupError("unknown algebra '" + kind + "' (expected so, sl or gl)");
}

lgi::AlgebraElement element(const std::string& kind, const Eigen::MatrixXd& a) {
  return {descriptor(kind, static_cast<int>(a.rows())), a};
}

lgi::ExperimentConfig config(const std::map<std::string, std::string>& m) { return lgi::experiment_config_from_map(m); }

}  // namespace

PYBIND11_MODULE(_lgi, m) {
  m.doc() = "Integrators on Lie groups and homogeneous spaces";

  auto base = py::register_exception<lgi::Error>(m, "LgiError", PyExc_RuntimeError);
  py::register_exception<lgi::LookupError>(m, "LgiLookupError", base.ptr());

  m.def("problem_names", &lgi::problem_names);
  m.def("method_names", &lgi::method_names);

  m.def("group_exp", [](const Eigen::MatrixXd& a, const std::string& kind) { return lgi::group_exp(element(kind, a)).value(); },
        py::arg("a"), py::arg("kind") = "gl");
  m.def("cayley", [](const Eigen::MatrixXd& a, const std::string& kind) { return lgi::cayley(element(kind, a)).value(); },
        py::arg("a"), py::arg("kind") = "gl");
  m.def("bracket", [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return lgi::bracket(element("gl", a), element("gl", b)).value();
  });
  m.def(
      "dexpinv",
      [](const Eigen::MatrixXd& u, const Eigen::MatrixXd& w, int order, const std::string& kind) {
        return lgi::dexpinv(element(kind, u), element(kind, w), order).value();
      },
      py::arg("u"), py::arg("w"), py::arg("m"), py::arg("kind") = "gl");

  m.def("dim_free_lie", &lgi::dim_free_lie);
  m.def("c_kappa", [](const std::vector<int>& kappa) { return lgi::c_kappa(kappa).str(); });
  m.def("trees", [](int nodes) {
    std::vector<std::string> out;
    for (const auto& t : lgi::trees_with_nodes(nodes)) out.push_back(t.str());
    return out;
  });
  m.def(
      "check_order",
      [](const std::string& scheme, int q) {
        const auto rep = lgi::check_order(lgi::CFScheme::by_name(scheme), q);
        py::list rows;
        for (const auto& r : rep.rows)
          rows.append(py::make_tuple(r.tree.str(), lgi::to_string(r.scheme_coeff), lgi::to_string(r.exact_coeff), r.pass));
        return py::dict(py::arg("pass") = rep.pass, py::arg("checked") = rep.checked(),
                        py::arg("independent") = rep.independent, py::arg("rows") = rows);
      },
      py::arg("scheme"), py::arg("order"));

  m.def("converge", [](const std::map<std::string, std::string>& cfg) {
    std::vector<py::tuple> rows;
    for (const auto& r : lgi::converge(config(cfg)).rows)
      rows.push_back(py::make_tuple(r.h, r.steps, r.error, r.order ? py::cast(*r.order) : py::none()));
    return rows;
  });
  m.def("drift", [](const std::map<std::string, std::string>& cfg) {
    const auto r = lgi::drift(config(cfg));
    py::dict out;
    for (std::size_t i = 0; i < r.invariant_names.size(); ++i) out[py::str(r.invariant_names[i])] = r.max_drift[i];
    return out;
  });
  m.def("integrate", [](const std::map<std::string, std::string>& cfg) {
    const auto rec = lgi::integrate_problem(config(cfg));
    std::vector<Eigen::MatrixXd> states;
    for (const auto& s : rec.states) states.push_back(lgi::ambient(s));
    return py::make_tuple(rec.times, states, rec.observer_names, rec.invariants);
  });
}
