#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>

#include "qbaf/core.hpp"
#include "qbaf/engine.hpp"
#include "qbaf/genbench.hpp"
#include "qbaf/postulates.hpp"
#include "qbaf/semantics.hpp"

namespace py = pybind11;

namespace {

qbaf::SolveMode mode_from(const std::string& mode) {
  if (mode == "auto") return qbaf::SolveMode::AcyclicAuto;
  if (mode == "discrete") return qbaf::SolveMode::Discrete;
  if (mode == "continuous") return qbaf::SolveMode::Continuous;
  throw std::invalid_argument("mode must be auto, discrete, or continuous");
}

py::dict solve_py(const std::string& framework, const std::string& semantics,
                  const std::string& mode, double epsilon, int max_iter, double step) {
  qbaf::Qbaf q = qbaf::parse_qbaf(framework);
  qbaf::SemanticsSpec spec = qbaf::parse_semantics_spec(semantics);
  qbaf::SolveConfig cfg;
  cfg.mode = mode_from(mode);
  cfg.epsilon = epsilon;
  cfg.max_iter = max_iter;
  cfg.step_h = step;
  qbaf::SolveResult res = qbaf::solve(q, spec, cfg);

  py::dict strengths;
  for (int i = 0; i < q.size(); ++i)
    strengths[py::str(q.argument(i).id)] = res.strengths[i];
  py::dict out;
  out["strengths"] = strengths;
  out["status"] = qbaf::status_name(res.status);
  out["iterations"] = res.iterations;
  out["residual"] = res.residual;
  if (res.oscillation_period) out["oscillation_period"] = *res.oscillation_period;
  return out;
}

py::dict analyze_py(const std::string& framework) {
  qbaf::Qbaf q = qbaf::parse_qbaf(framework);
  qbaf::GraphInfo gi = qbaf::analyze_graph(q);
  py::dict out;
  out["acyclic"] = gi.acyclic;
  out["max_in_degree"] = gi.max_in_degree;
  out["at_most_one_cycle"] = gi.at_most_one_cycle;
  out["scc_count"] = static_cast<int>(gi.sccs.size());
  return out;
}

double bound_py(const std::string& framework, const std::string& q_name) {
  qbaf::Qbaf q = qbaf::parse_qbaf(framework);
  if (q_name != "sum" && q_name != "max") throw std::invalid_argument("q must be sum or max");
  return qbaf::convergence_bound(q, q_name == "max" ? qbaf::QSel::Max : qbaf::QSel::Sum);
}

std::map<std::string, bool> postulates_py(const std::string& semantics, int n,
                                          std::uint64_t seed) {
  qbaf::SemanticsSpec spec = qbaf::parse_semantics_spec(semantics);
  std::map<std::string, bool> out;
  for (const qbaf::PostulateReport& r : qbaf::run_postulate_suite(spec, n, seed))
    out[qbaf::principle_name(r.principle)] = r.passed();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gradual semantics for quantitative bipolar argumentation frameworks";

  m.def("solve", &solve_py, py::arg("framework"), py::arg("semantics") = "ddrl",
        py::arg("mode") = "auto", py::arg("epsilon") = 1e-6, py::arg("max_iter") = 10000,
        py::arg("step") = 0.05,
        "Solve a framework (JSON text) and return strengths plus solver status.");
  m.def("analyze", &analyze_py, py::arg("framework"),
        "Graph facts: acyclicity, max in-degree, cycle structure, SCC count.");
  m.def("convergence_bound", &bound_py, py::arg("framework"), py::arg("q") = "sum",
        "Strict gamma upper bound guaranteeing convergence for the clamp families.");
  m.def("check_postulates", &postulates_py, py::arg("semantics"), py::arg("n") = 200,
        py::arg("seed") = 7,
        "Run the twelve principle checkers; returns {principle: passed}.");
  m.def(
      "gen_ladder",
      [](int n, std::uint64_t seed, bool force_unit_tau) {
        return qbaf::serialize_qbaf(qbaf::gen_ladder(n, seed, force_unit_tau));
      },
      py::arg("n"), py::arg("seed"), py::arg("force_unit_tau") = false,
      "Goal-with-attackers-and-supporters benchmark framework (JSON text).");
  m.def(
      "gen_random_acyclic",
      [](std::uint64_t seed) { return qbaf::serialize_qbaf(qbaf::gen_random_acyclic(seed)); },
      py::arg("seed"), "Random acyclic framework (JSON text).");
  m.def(
      "gen_random_cyclic",
      [](int n, double density, std::uint64_t seed) {
        return qbaf::serialize_qbaf(qbaf::gen_random_cyclic(n, density, seed));
      },
      py::arg("n"), py::arg("density"), py::arg("seed"),
      "Random directed framework without the acyclicity restriction (JSON text).");
  m.def(
      "normalize",
      [](const std::string& framework) {
        return qbaf::serialize_qbaf(qbaf::parse_qbaf(framework));
      },
      py::arg("framework"), "Parse and re-serialize a framework in canonical form.");
}
