// Thin JSON-text bridge; the Python package turns the strings into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "dpcolor/coloring.hpp"
#include "dpcolor/discharging.hpp"
#include "dpcolor/error.hpp"
#include "dpcolor/generator.hpp"
#include "dpcolor/io.hpp"
#include "dpcolor/reducible.hpp"
#include "dpcolor/tree_colorers.hpp"

namespace py = pybind11;
using namespace dpcolor;
using ojson = nlohmann::ordered_json;

namespace {

std::string check_class(const std::string& graph) {
  const ClassReport r = check_class_p45(graph_from_json(graph));
  ojson chords = ojson::array();
  for (const Edge& e : r.outer_chords) chords.push_back({e.u, e.v});
  return ojson{{"in_class", r.in_class()},
               {"connected", r.connected},
               {"two_connected", r.two_connected},
               {"four_cycle", r.four_cycle ? ojson(*r.four_cycle) : ojson(nullptr)},
               {"five_cycle", r.five_cycle ? ojson(*r.five_cycle) : ojson(nullptr)},
               {"outer_is_cycle", r.outer_is_cycle},
               {"outer_is_good", r.outer_is_good},
               {"outer_chords", chords}}
      .dump();
}

std::string reducible(const std::string& graph) {
  ojson out = ojson::array();
  for (const auto& r : find_reducible(graph_from_json(graph))) out.push_back(ojson::parse(report_to_json(r)));
  return out.dump();
}

std::string ledger(const std::string& graph) {
  const PlaneGraph g = graph_from_json(graph);
  const ChargeLedger l = apply_rules(g, initial_charges(g));
  return ledger_to_json(g, l, audit_final(g, l));
}

std::string audit(const std::string& graph) { return verdict_to_json(meta_audit(graph_from_json(graph))); }

std::string cover_violations(const std::string& graph, const std::string& cover) {
  ojson out = ojson::array();
  for (const auto& v : validate_cover(graph_from_json(graph).graph(), cover_from_json(cover))) out.push_back(v.detail);
  return out.dump();
}

// Returns the colouring as JSON, or None when the cover admits none.
py::object solve(const std::string& graph, const std::string& cover, int m, const std::string& boundary,
                 double budget_sec) {
  const PlaneGraph g = graph_from_json(graph);
  const Cover c = cover_from_json(cover);
  const int n = g.vertex_count();
  require(c.vertex_count() == n, ErrorKind::PreconditionViolated, "cover and graph disagree on the vertex count");
  MultiColoring fixed = boundary.empty() ? MultiColoring(n) : coloring_from_json(boundary, n).coloring;
  const FoldSpec spec{m, c.sizes(), std::vector<int>(static_cast<std::size_t>(n), 2 * m)};
  SolveOptions opts;
  opts.budget_sec = budget_sec;
  SolveResult res;
  {
    py::gil_scoped_release release;
    res = exhaustive_solve(g.graph(), c, spec, fixed, opts);
  }
  if (res.status == SolveStatus::Timeout) fail(ErrorKind::SolverTooLarge, "solver budget exhausted");
  if (res.status == SolveStatus::Unsat) return py::none();
  return py::str(coloring_to_json(res.coloring, m));
}

std::string tree_color(const std::string& lists) {
  const ListAssignment a = list_assignment_from_json(lists);
  const ListColoring out = color_lists(a.shape, a.lists, a.m);
  ojson j = ojson::parse(list_coloring_to_json(a.shape, a.m, out.phi));
  j["case"] = out.trace.case_taken;
  j["fallback_used"] = out.trace.fallback_used;
  return j.dump();
}

std::string generate(int n, std::uint64_t seed, int outer, bool strict, int min_degree) {
  GeneratorOptions opts;
  opts.target_vertices = n;
  opts.outer_length = outer;
  opts.strict = strict;
  opts.min_internal_degree = min_degree;
  return graph_to_json(generate_graph(opts, seed));
}

}  // namespace

PYBIND11_MODULE(_dpcolor, m) {
  m.doc() = "DP-colouring of plane graphs without 4- and 5-cycles";

  // The message starts with the error kind, e.g. "Parse: ...".
  static py::exception<Error> error(m, "DpcolorError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("check_class", &check_class, py::arg("graph"));
  m.def("reducible", &reducible, py::arg("graph"));
  m.def("ledger", &ledger, py::arg("graph"));
  m.def("meta_audit", &audit, py::arg("graph"));
  m.def("cover_violations", &cover_violations, py::arg("graph"), py::arg("cover"));
  m.def("solve", &solve, py::arg("graph"), py::arg("cover"), py::arg("m") = 1, py::arg("boundary") = "",
        py::arg("budget_sec") = 60.0);
  m.def("tree_color", &tree_color, py::arg("lists"));
  m.def("generate", &generate, py::arg("n") = 12, py::arg("seed") = 0, py::arg("outer") = 0,
        py::arg("strict") = false, py::arg("min_degree") = 0);
}
