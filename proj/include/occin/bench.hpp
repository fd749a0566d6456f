#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "occin/solution.hpp"
#include "occin/topology.hpp"

namespace occin {

enum class SolverKind { Exact, Heuristic };
enum class Pairing { Fresh, Fixed };

std::string_view to_string(SolverKind k);
std::string_view to_string(Pairing p);
SolverKind parse_solver(std::string_view s);
Pairing parse_pairing(std::string_view s);

struct BenchConfig {
  std::uint64_t seed = 1;
  Coupling coupling = Coupling::PerDemand;
  SolverKind solver = SolverKind::Exact;
  Pairing pairing = Pairing::Fresh;
  bool deterministic = true;
  int parallel_width = 1;  // destinations solved concurrently when not deterministic
  std::int64_t node_limit = 0;
  double time_limit = 0.0;
  int k_candidates = 8;
};

struct BenchRow {
  int dest = 0;  // 1-based
  int in_degree = 0;
  int bypass_lambda = 0;
  int occin_lambda = 0;
  int bypass_wl_links = 0;
  int occin_wl_links = 0;
  std::int64_t bypass_nodes_expanded = 0;
  std::int64_t occin_nodes_expanded = 0;
  double bypass_ms = 0.0;
  double occin_ms = 0.0;
  Status bypass_status = Status::Infeasible;
  Status occin_status = Status::Infeasible;
};

struct BenchReport {
  std::string topology;
  BenchConfig config;
  std::string version;
  std::vector<BenchRow> rows;  // by destination id
};

/// Every node in turn as destination, both modes. Throws if an instance cannot be generated.
BenchReport run_sweep(const Topology& t, const BenchConfig& cfg);

/// Header dest,in_degree,bypass_lambda,occin_lambda,bypass_wl_links,occin_wl_links,
/// bypass_nodes_expanded,occin_nodes_expanded,bypass_ms,occin_ms. Times are 0 in deterministic runs.
std::string bench_to_csv(const BenchReport& r);

/// Rows plus metadata (schema "occin.bench/1").
std::string bench_to_json(const BenchReport& r);

/// Spearman rank correlation with average ranks for ties; 0 when either side is constant.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace occin
