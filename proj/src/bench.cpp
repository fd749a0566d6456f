#include "occin/bench.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "occin/demand.hpp"
#include "occin/exact_solver.hpp"
#include "occin/heuristic.hpp"
#include "occin/version.hpp"

namespace occin {

std::string_view to_string(SolverKind k) { return k == SolverKind::Exact ? "exact" : "heuristic"; }
std::string_view to_string(Pairing p) { return p == Pairing::Fresh ? "fresh" : "fixed"; }

SolverKind parse_solver(std::string_view s) {
  if (s == "exact") return SolverKind::Exact;
  if (s == "heuristic") return SolverKind::Heuristic;
  throw std::invalid_argument("unknown solver '" + std::string(s) + "'");
}

Pairing parse_pairing(std::string_view s) {
  if (s == "fresh") return Pairing::Fresh;
  if (s == "fixed") return Pairing::Fixed;
  throw std::invalid_argument("unknown pairing '" + std::string(s) + "'");
}

namespace {

BenchRow sweep_row(const Topology& t, const BenchConfig& cfg, NodeId dest) {
  const GeneratorSpec spec{dest, cfg.seed};
  const Instance inst =
      cfg.pairing == Pairing::Fresh ? generate_star_instance(t, spec) : generate_star_instance_fixed(t, spec);
  BenchRow row;
  row.dest = dest.external();
  row.in_degree = t.in_degree(dest);
  for (Mode mode : {Mode::Bypass, Mode::Occin}) {
    SolveConfig sc;
    sc.mode = mode;
    sc.coupling = cfg.coupling;
    sc.deterministic = true;
    sc.node_limit = cfg.node_limit;
    sc.time_limit = cfg.time_limit;
    sc.k_candidates = cfg.k_candidates;
    const Solution s = cfg.solver == SolverKind::Exact ? solve_exact(inst, sc) : solve_heuristic(inst, sc);
    if (s.status == Status::Infeasible) {
      throw std::runtime_error("destination " + std::to_string(row.dest) + ": no " + std::string(to_string(mode)) +
                               " provisioning within " + std::to_string(inst.max_wavelengths) + " wavelengths");
    }
    const double ms = cfg.deterministic ? 0.0 : s.stats.elapsed_ms;
    if (mode == Mode::Bypass) {
      row.bypass_lambda = s.wavelength_count;
      row.bypass_wl_links = s.wavelength_link_units;
      row.bypass_nodes_expanded = s.stats.nodes_expanded;
      row.bypass_ms = ms;
      row.bypass_status = s.status;
    } else {
      row.occin_lambda = s.wavelength_count;
      row.occin_wl_links = s.wavelength_link_units;
      row.occin_nodes_expanded = s.stats.nodes_expanded;
      row.occin_ms = ms;
      row.occin_status = s.status;
    }
  }
  return row;
}

std::string format_ms(double ms) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << ms;
  return os.str();
}

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> rank(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
    i = j + 1;
  }
  return rank;
}

}  // namespace

BenchReport run_sweep(const Topology& t, const BenchConfig& cfg) {
  BenchReport report;
  report.topology = t.name();
  report.config = cfg;
  report.version = kVersion;
  const int n = t.node_count();
  report.rows.resize(static_cast<std::size_t>(n));

  const int width = cfg.deterministic ? 1 : std::clamp(cfg.parallel_width, 1, n);
  if (width == 1) {
    for (int d = 0; d < n; ++d) report.rows[static_cast<std::size_t>(d)] = sweep_row(t, cfg, NodeId{d});
    return report;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(width));
  {
    std::vector<std::jthread> workers;
    for (int w = 0; w < width; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (int d = w; d < n; d += width) report.rows[static_cast<std::size_t>(d)] = sweep_row(t, cfg, NodeId{d});
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return report;
}

std::string bench_to_csv(const BenchReport& r) {
  std::ostringstream os;
  os << "dest,in_degree,bypass_lambda,occin_lambda,bypass_wl_links,occin_wl_links,"
        "bypass_nodes_expanded,occin_nodes_expanded,bypass_ms,occin_ms\n";
  for (const auto& row : r.rows) {
    os << row.dest << ',' << row.in_degree << ',' << row.bypass_lambda << ',' << row.occin_lambda << ','
       << row.bypass_wl_links << ',' << row.occin_wl_links << ',' << row.bypass_nodes_expanded << ','
       << row.occin_nodes_expanded << ',';
    if (r.config.deterministic) {
      os << "0,0\n";
    } else {
      os << format_ms(row.bypass_ms) << ',' << format_ms(row.occin_ms) << '\n';
    }
  }
  return os.str();
}

std::string bench_to_json(const BenchReport& r) {
  nlohmann::json doc;
  doc["schema"] = "occin.bench/1";
  doc["version"] = r.version;
  doc["topology"] = r.topology;
  doc["seed"] = r.config.seed;
  doc["coupling"] = to_string(r.config.coupling);
  doc["solver"] = to_string(r.config.solver);
  doc["pairing"] = to_string(r.config.pairing);
  doc["deterministic"] = r.config.deterministic;
  std::vector<double> deg, bypass, occin;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json j = {{"dest", row.dest},
                        {"in_degree", row.in_degree},
                        {"bypass_lambda", row.bypass_lambda},
                        {"occin_lambda", row.occin_lambda},
                        {"bypass_wl_links", row.bypass_wl_links},
                        {"occin_wl_links", row.occin_wl_links},
                        {"bypass_nodes_expanded", row.bypass_nodes_expanded},
                        {"occin_nodes_expanded", row.occin_nodes_expanded},
                        {"bypass_status", to_string(row.bypass_status)},
                        {"occin_status", to_string(row.occin_status)}};
    if (!r.config.deterministic) {
      j["bypass_ms"] = row.bypass_ms;
      j["occin_ms"] = row.occin_ms;
    }
    rows.push_back(std::move(j));
    deg.push_back(row.in_degree);
    bypass.push_back(row.bypass_lambda);
    occin.push_back(row.occin_lambda);
  }
  doc["rows"] = std::move(rows);
  doc["spearman_in_degree_bypass"] = spearman(deg, bypass);
  doc["spearman_in_degree_occin"] = spearman(deg, occin);
  return doc.dump(2) + "\n";
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: samples differ in length");
  if (x.size() < 2) return 0.0;
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace occin
