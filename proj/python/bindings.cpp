#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "occin/bench.hpp"
#include "occin/exact_solver.hpp"
#include "occin/heuristic.hpp"
#include "occin/milp.hpp"
#include "occin/validator.hpp"
#include "occin/version.hpp"

namespace py = pybind11;
using namespace occin;

namespace {

SolveConfig make_config(const std::string& mode, const std::string& coupling, int max_wavelengths,
                        std::int64_t node_limit, double time_limit, int parallel) {
  SolveConfig cfg;
  cfg.mode = parse_mode(mode);
  cfg.coupling = parse_coupling(coupling);
  cfg.max_wavelengths = max_wavelengths;
  cfg.node_limit = node_limit;
  cfg.time_limit = time_limit;
  cfg.parallel_width = parallel;
  cfg.deterministic = parallel <= 1;
  return cfg;
}

py::list lightpath_rows(const Solution& s) {
  py::list out;
  for (const auto& d : s.demands) {
    for (const auto& seg : d.segments) {
      py::dict row;
      row["kind"] = d.kind == DemandKind::Comm ? "comm" : "comp";
      row["index"] = d.index + 1;
      row["computing_node"] = d.computing_node ? py::cast(d.computing_node->external()) : py::none();
      row["segment"] = seg.segment;
      std::vector<int> route;
      for (NodeId v : seg.lightpath.route) route.push_back(v.external());
      row["route"] = route;
      row["wavelength"] = seg.lightpath.wavelength;
      out.append(row);
    }
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_occin, m) {
  m.attr("__version__") = std::string(kVersion);

  py::class_<Topology>(m, "Topology")
      .def_property_readonly("name", &Topology::name)
      .def_property_readonly("node_count", &Topology::node_count)
      .def_property_readonly("arc_count", &Topology::arc_count)
      .def("in_degree", [](const Topology& t, int v) { return t.in_degree(NodeId::from_external(v)); })
      .def("edges",
           [](const Topology& t) {
             std::vector<std::pair<int, int>> out;
             for (const auto& e : t.edges()) out.emplace_back(e.first + 1, e.second + 1);
             return out;
           })
      .def("serialize", &serialize_topology)
      .def("__repr__", [](const Topology& t) {
        return "<Topology " + t.name() + ": " + std::to_string(t.node_count()) + " nodes, " +
               std::to_string(t.arc_count()) + " arcs>";
      });

  py::class_<Instance>(m, "Instance")
      .def_readonly("topology", &Instance::topology)
      .def_readonly("max_wavelengths", &Instance::max_wavelengths)
      .def_property_readonly("comm",
                             [](const Instance& i) {
                               std::vector<std::pair<int, int>> out;
                               for (const auto& d : i.comm) out.emplace_back(d.src.external(), d.dst.external());
                               return out;
                             })
      .def_property_readonly("comp",
                             [](const Instance& i) {
                               std::vector<std::tuple<int, int, int>> out;
                               for (const auto& q : i.comp) {
                                 out.emplace_back(q.src1.external(), q.src2.external(), q.dst.external());
                               }
                               return out;
                             })
      .def("serialize", &serialize_instance);

  py::class_<Solution>(m, "Solution")
      .def_property_readonly("status", [](const Solution& s) { return std::string(to_string(s.status)); })
      .def_property_readonly("mode", [](const Solution& s) { return std::string(to_string(s.mode)); })
      .def_readonly("wavelength_count", &Solution::wavelength_count)
      .def_readonly("wavelength_link_units", &Solution::wavelength_link_units)
      .def_property_readonly("nodes_expanded", [](const Solution& s) { return s.stats.nodes_expanded; })
      .def_property_readonly("lower_bound", [](const Solution& s) { return s.stats.lower_bound; })
      .def("lightpaths", &lightpath_rows)
      .def("to_json", &solution_to_json, py::arg("instance"), py::arg("timing") = false)
      .def_static("from_json", &solution_from_json);

  m.def("load_topology", &topology_from_spec, py::arg("spec") = "builtin:cost239",
        "builtin:cost239, builtin:toy or a topology file path");
  m.def("load_instance", [](const std::string& text, const Topology& t) { return parse_instance(text, t); },
        py::arg("text"), py::arg("topology"));
  m.def(
      "generate",
      [](const Topology& t, int dest, std::uint64_t seed, const std::string& pairing) {
        const GeneratorSpec spec{NodeId::from_external(dest), seed};
        return parse_pairing(pairing) == Pairing::Fresh ? generate_star_instance(t, spec)
                                                       : generate_star_instance_fixed(t, spec);
      },
      py::arg("topology"), py::arg("dest"), py::arg("seed") = kCalibrationSeed, py::arg("pairing") = "fresh");

  m.def(
      "solve",
      [](const Instance& i, const std::string& mode, const std::string& coupling, const std::string& solver,
         int max_wavelengths, std::int64_t node_limit, double time_limit, int parallel) {
        const auto cfg = make_config(mode, coupling, max_wavelengths, node_limit, time_limit, parallel);
        py::gil_scoped_release release;
        if (solver == "exact") return solve_exact(i, cfg);
        if (solver == "heuristic") return solve_heuristic(i, cfg);
        throw std::invalid_argument("unknown solver '" + solver + "'");
      },
      py::arg("instance"), py::arg("mode") = "occin", py::arg("coupling") = "demand", py::arg("solver") = "exact",
      py::arg("max_wavelengths") = 0, py::arg("node_limit") = 0, py::arg("time_limit") = 0.0,
      py::arg("parallel") = 1);

  m.def(
      "export_lp",
      [](const Instance& i, const std::string& mode, const std::string& coupling, int max_wavelengths,
         bool secondary_objective) {
        auto cfg = make_config(mode, coupling, max_wavelengths, 0, 0.0, 1);
        cfg.secondary_objective = secondary_objective;
        return export_lp(encode(i, cfg));
      },
      py::arg("instance"), py::arg("mode") = "occin", py::arg("coupling") = "demand", py::arg("max_wavelengths") = 0,
      py::arg("secondary_objective") = false);

  m.def(
      "solve_via_ilp",
      [](const Instance& i, const std::string& assignment, const std::string& mode, const std::string& coupling,
         int max_wavelengths) {
        return solve_via_ilp(i, make_config(mode, coupling, max_wavelengths, 0, 0.0, 1), assignment);
      },
      py::arg("instance"), py::arg("assignment"), py::arg("mode") = "occin", py::arg("coupling") = "demand",
      py::arg("max_wavelengths") = 0);

  m.def(
      "validate",
      [](const Solution& s, const Instance& i, const std::string& coupling, int max_wavelengths) {
        auto cfg = make_config(std::string(to_string(s.mode)), coupling, max_wavelengths, 0, 0.0, 1);
        const auto r = validate(s, i, cfg);
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& v : r.violations) out.emplace_back(v.rule, v.detail);
        return out;
      },
      py::arg("solution"), py::arg("instance"), py::arg("coupling") = "demand", py::arg("max_wavelengths") = 0,
      "Violations as (rule, detail) pairs; empty when the solution is valid.");

  m.def("lower_bound", [](const Instance& i, const std::string& mode) { return lower_bound(i, parse_mode(mode)); },
        py::arg("instance"), py::arg("mode") = "occin");

  m.def(
      "sweep",
      [](const Topology& t, std::uint64_t seed, const std::string& coupling, const std::string& solver,
         const std::string& pairing) {
        BenchConfig cfg;
        cfg.seed = seed;
        cfg.coupling = parse_coupling(coupling);
        cfg.solver = parse_solver(solver);
        cfg.pairing = parse_pairing(pairing);
        BenchReport r;
        {
          py::gil_scoped_release release;
          r = run_sweep(t, cfg);
        }
        py::list rows;
        for (const auto& row : r.rows) {
          py::dict d;
          d["dest"] = row.dest;
          d["in_degree"] = row.in_degree;
          d["bypass_lambda"] = row.bypass_lambda;
          d["occin_lambda"] = row.occin_lambda;
          d["bypass_wl_links"] = row.bypass_wl_links;
          d["occin_wl_links"] = row.occin_wl_links;
          rows.append(d);
        }
        return rows;
      },
      py::arg("topology"), py::arg("seed") = 1, py::arg("coupling") = "demand", py::arg("solver") = "exact",
      py::arg("pairing") = "fresh");

  m.def("spearman", &spearman, py::arg("x"), py::arg("y"));
}
