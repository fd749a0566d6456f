#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "occin/bench.hpp"
#include "occin/demand.hpp"
#include "occin/exact_solver.hpp"
#include "occin/heuristic.hpp"
#include "occin/milp.hpp"
#include "occin/validator.hpp"
#include "occin/version.hpp"

namespace fs = std::filesystem;
using namespace occin;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInfeasible = 2;
constexpr int kLimit = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

// Relative topology paths that do not exist here are looked up in $OCCIN_TOPOLOGY_DIR.
Topology open_topology(const std::string& spec) {
  if (spec.rfind("builtin:", 0) == 0) return topology_from_spec(spec);
  fs::path p(spec);
  if (p.is_relative() && !fs::exists(p)) {
    if (const char* dir = std::getenv("OCCIN_TOPOLOGY_DIR"); dir && *dir) {
      const fs::path alt = fs::path(dir) / p;
      if (fs::exists(alt)) return topology_from_spec(alt.string());
    }
  }
  return topology_from_spec(spec);
}

int status_code(Status s) {
  switch (s) {
    case Status::Optimal:
    case Status::Feasible:
      return kOk;
    case Status::Infeasible:
      return kInfeasible;
    case Status::LimitReached:
      return kLimit;
  }
  return kUsage;
}

struct Common {
  std::string topology = "builtin:cost239";
  std::string demands;
  std::string mode = "occin";
  std::string coupling = "demand";
  int max_wavelengths = 0;
  std::string out;
};

void add_instance_options(CLI::App* cmd, Common& c, bool with_mode) {
  cmd->add_option("--topology", c.topology, "builtin:cost239, builtin:toy or a topology file")->capture_default_str();
  cmd->add_option("--demands", c.demands, "demand file")->required();
  if (with_mode) {
    cmd->add_option("--mode", c.mode, "bypass | occin")->check(CLI::IsMember({"bypass", "occin"}))->capture_default_str();
    cmd->add_option("--coupling", c.coupling, "demand | segment")
        ->check(CLI::IsMember({"demand", "segment"}))
        ->capture_default_str();
  }
  cmd->add_option("--max-wavelengths", c.max_wavelengths, "wavelength budget (0: from the demand file)")
      ->check(CLI::NonNegativeNumber);
}

Instance load_instance(const Common& c, const Topology& t) { return parse_instance(read_file(c.demands), t); }

SolveConfig base_config(const Common& c) {
  SolveConfig cfg;
  cfg.mode = parse_mode(c.mode);
  cfg.coupling = parse_coupling(c.coupling);
  cfg.max_wavelengths = c.max_wavelengths;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optical computing-communication network planner"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // solve
  Common solve_opts;
  std::string solver = "exact", output = "json", assignment;
  bool deterministic = false;
  std::int64_t node_limit = 0;
  double time_limit = 0.0;
  int parallel = 1, k_candidates = 8;
  std::string order = "longest";
  auto* solve = app.add_subcommand("solve", "Provision a demand set");
  add_instance_options(solve, solve_opts, true);
  solve->add_option("--solver", solver, "exact | heuristic | ilp")
      ->check(CLI::IsMember({"exact", "heuristic", "ilp"}))
      ->capture_default_str();
  solve->add_option("--assignment", assignment, "variable values of the exported LP (--solver ilp)");
  solve->add_flag("--deterministic", deterministic, "sequential search, no timing in the output");
  solve->add_option("--output", output, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  solve->add_option("--out", solve_opts.out, "output file (default: stdout)");
  solve->add_option("--node-limit", node_limit, "search node budget (0: none)")->check(CLI::NonNegativeNumber);
  solve->add_option("--time-limit", time_limit, "seconds (0: none)")->check(CLI::NonNegativeNumber);
  solve->add_option("--parallel", parallel, "search workers")->check(CLI::PositiveNumber)->capture_default_str();
  solve->add_option("--k", k_candidates, "candidate routes per segment")->check(CLI::PositiveNumber)->capture_default_str();
  solve->add_option("--order", order, "heuristic demand order: longest | input")
      ->check(CLI::IsMember({"longest", "input"}))
      ->capture_default_str();

  // generate
  std::string gen_topology = "builtin:cost239", gen_out, gen_pairing = "fresh";
  int gen_dest = 0, gen_wavelengths = 0;
  std::uint64_t gen_seed = kCalibrationSeed;
  auto* generate = app.add_subcommand("generate", "Write a star demand set towards one destination");
  generate->add_option("--topology", gen_topology, "builtin:cost239, builtin:toy or a topology file")->capture_default_str();
  generate->add_option("--dest", gen_dest, "destination node")->required();
  generate->add_option("--seed", gen_seed, "pairing seed")->capture_default_str();
  generate->add_option("--pairing", gen_pairing, "fresh | fixed")->check(CLI::IsMember({"fresh", "fixed"}))->capture_default_str();
  generate->add_option("--max-wavelengths", gen_wavelengths, "budget written to the file (0: default)")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--out", gen_out, "output file (default: stdout)");

  // bench-sweep
  std::string bench_topology = "builtin:cost239", bench_coupling = "demand", bench_solver = "exact",
              bench_pairing = "fresh", bench_out, bench_json;
  std::uint64_t bench_seed = kCalibrationSeed;
  bool bench_deterministic = false;
  int bench_parallel = 1;
  std::int64_t bench_node_limit = 0;
  double bench_time_limit = 0.0;
  auto* bench = app.add_subcommand("bench-sweep", "Solve every destination in both modes");
  bench->add_option("--topology", bench_topology, "builtin:cost239, builtin:toy or a topology file")->capture_default_str();
  bench->add_option("--seed", bench_seed, "pairing seed")->capture_default_str();
  bench->add_option("--coupling", bench_coupling, "demand | segment")
      ->check(CLI::IsMember({"demand", "segment"}))
      ->capture_default_str();
  bench->add_option("--solver", bench_solver, "exact | heuristic")
      ->check(CLI::IsMember({"exact", "heuristic"}))
      ->capture_default_str();
  bench->add_option("--pairing", bench_pairing, "fresh | fixed")->check(CLI::IsMember({"fresh", "fixed"}))->capture_default_str();
  bench->add_flag("--deterministic", bench_deterministic, "sequential, times written as 0");
  bench->add_option("--parallel", bench_parallel, "destinations solved at once")->check(CLI::PositiveNumber);
  bench->add_option("--node-limit", bench_node_limit, "search node budget per solve")->check(CLI::NonNegativeNumber);
  bench->add_option("--time-limit", bench_time_limit, "seconds per solve")->check(CLI::NonNegativeNumber);
  bench->add_option("--out", bench_out, "CSV file (default: stdout)");
  bench->add_option("--json", bench_json, "also write the report with metadata as JSON");

  // export-lp
  Common lp_opts;
  bool secondary = false;
  auto* export_cmd = app.add_subcommand("export-lp", "Write the MILP model in LP format");
  add_instance_options(export_cmd, lp_opts, true);
  export_cmd->add_flag("--secondary-objective", secondary, "also minimise total flow");
  export_cmd->add_option("--out", lp_opts.out, "output file (default: stdout)");

  // validate
  Common val_opts;
  std::string solution_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a solution document");
  add_instance_options(validate_cmd, val_opts, true);
  validate_cmd->add_option("--solution", solution_path, "solution JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const CLI::App* sub = nullptr;
    for (const auto* s : app.get_subcommands()) sub = s;
    std::cerr << (sub ? sub->help() : app.help());
    return kUsage;
  }

  try {
    if (*solve) {
      const Topology t = open_topology(solve_opts.topology);
      const Instance inst = load_instance(solve_opts, t);
      SolveConfig cfg = base_config(solve_opts);
      cfg.deterministic = deterministic;
      cfg.parallel_width = deterministic ? 1 : parallel;
      cfg.node_limit = node_limit;
      cfg.time_limit = time_limit;
      cfg.k_candidates = k_candidates;
      cfg.order = order == "input" ? DemandOrder::InputOrder : DemandOrder::LongestFirst;

      Solution s;
      if (solver == "exact") {
        s = solve_exact(inst, cfg);
      } else if (solver == "heuristic") {
        s = solve_heuristic(inst, cfg);
      } else {
        if (assignment.empty()) throw UsageError("--solver ilp needs --assignment");
        s = solve_via_ilp(inst, cfg, read_file(assignment));
      }
      write_output(solve_opts.out,
                   output == "json" ? solution_to_json(s, inst, !deterministic) : solution_to_csv(s));
      if (s.status == Status::Infeasible) std::cerr << "no provisioning within " << cfg.budget(inst) << " wavelengths\n";
      if (s.status == Status::LimitReached) std::cerr << "search limit reached\n";
      return status_code(s.status);
    }

    if (*generate) {
      const Topology t = open_topology(gen_topology);
      if (gen_dest < 1 || gen_dest > t.node_count()) {
        throw UsageError("--dest " + std::to_string(gen_dest) + " outside 1.." + std::to_string(t.node_count()));
      }
      const GeneratorSpec spec{NodeId::from_external(gen_dest), gen_seed};
      Instance inst = gen_pairing == "fresh" ? generate_star_instance(t, spec) : generate_star_instance_fixed(t, spec);
      if (gen_wavelengths > 0) inst.max_wavelengths = gen_wavelengths;
      write_output(gen_out, serialize_instance(inst));
      return kOk;
    }

    if (*bench) {
      const Topology t = open_topology(bench_topology);
      BenchConfig cfg;
      cfg.seed = bench_seed;
      cfg.coupling = parse_coupling(bench_coupling);
      cfg.solver = parse_solver(bench_solver);
      cfg.pairing = parse_pairing(bench_pairing);
      cfg.deterministic = bench_deterministic;
      cfg.parallel_width = bench_parallel;
      cfg.node_limit = bench_node_limit;
      cfg.time_limit = bench_time_limit;
      const BenchReport report = run_sweep(t, cfg);
      write_output(bench_out, bench_to_csv(report));
      if (!bench_json.empty()) write_output(bench_json, bench_to_json(report));
      for (const auto& row : report.rows) {
        if (row.bypass_status == Status::LimitReached || row.occin_status == Status::LimitReached) {
          std::cerr << "search limit reached for destination " << row.dest << '\n';
          return kLimit;
        }
      }
      return kOk;
    }

    if (*export_cmd) {
      const Topology t = open_topology(lp_opts.topology);
      const Instance inst = load_instance(lp_opts, t);
      SolveConfig cfg = base_config(lp_opts);
      cfg.secondary_objective = secondary;
      write_output(lp_opts.out, export_lp(encode(inst, cfg)));
      return kOk;
    }

    if (*validate_cmd) {
      const Topology t = open_topology(val_opts.topology);
      const Instance inst = load_instance(val_opts, t);
      const SolveConfig cfg = base_config(val_opts);
      const Solution s = solution_from_json(read_file(solution_path));
      const ValidationReport report = validate(s, inst, cfg);
      std::cout << report_to_json(report);
      return report.ok ? kOk : kInfeasible;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
