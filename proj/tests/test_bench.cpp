#include "doctest.h"

#include <sstream>

#include "occin/bench.hpp"

using namespace occin;

TEST_CASE("spearman") {
  CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
  CHECK(spearman({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0));
  CHECK(spearman({1, 1, 2, 2}, {1, 2, 1, 2}) == doctest::Approx(0.0));
  CHECK(spearman({1, 2, 3}, {5, 5, 5}) == 0.0);
  // Average ranks: x -> 1, 2.5, 2.5, 4.
  CHECK(spearman({1, 2, 2, 3}, {1, 2, 3, 4}) == doctest::Approx(0.9486833));
  CHECK_THROWS(spearman({1, 2}, {1}));
}

TEST_CASE("sweep over cost239") {
  BenchConfig cfg;
  cfg.seed = kCalibrationSeed;
  const auto r = run_sweep(builtin_cost239(), cfg);
  REQUIRE(r.rows.size() == 11);
  CHECK(r.rows[0].dest == 1);
  CHECK(r.rows[0].in_degree == 4);
  CHECK(r.rows[0].bypass_lambda == 3);
  CHECK(r.rows[0].occin_lambda == 2);
  std::vector<double> deg, bypass, occin;
  for (const auto& row : r.rows) {
    CHECK(row.occin_lambda <= row.bypass_lambda);
    CHECK(row.bypass_status == Status::Optimal);
    deg.push_back(row.in_degree);
    bypass.push_back(row.bypass_lambda);
    occin.push_back(row.occin_lambda);
  }
  CHECK(spearman(deg, bypass) <= 0.0);
  CHECK(spearman(deg, occin) <= 0.0);
}

TEST_CASE("csv layout") {
  BenchConfig cfg;
  const auto r = run_sweep(builtin_cost239(), cfg);
  const auto csv = bench_to_csv(r);
  std::istringstream is(csv);
  std::string header;
  std::getline(is, header);
  CHECK(header ==
        "dest,in_degree,bypass_lambda,occin_lambda,bypass_wl_links,occin_wl_links,bypass_nodes_expanded,"
        "occin_nodes_expanded,bypass_ms,occin_ms");
  int rows = 0;
  for (std::string line; std::getline(is, line);) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 9);
    CHECK(line.substr(line.size() - 4) == ",0,0");
  }
  CHECK(rows == 11);
  CHECK(bench_to_csv(run_sweep(builtin_cost239(), cfg)) == csv);
  CHECK(bench_to_json(r).find("\"pairing\": \"fresh\"") != std::string::npos);
}

TEST_CASE("heuristic sweep stays above the exact sweep") {
  for (Pairing p : {Pairing::Fresh, Pairing::Fixed}) {
    BenchConfig cfg;
    cfg.pairing = p;
    cfg.seed = 11;
    const auto exact = run_sweep(builtin_cost239(), cfg);
    cfg.solver = SolverKind::Heuristic;
    const auto heur = run_sweep(builtin_cost239(), cfg);
    for (std::size_t k = 0; k < exact.rows.size(); ++k) {
      CHECK(heur.rows[k].bypass_lambda >= exact.rows[k].bypass_lambda);
      CHECK(heur.rows[k].occin_lambda >= exact.rows[k].occin_lambda);
    }
  }
}

TEST_CASE("parallel sweep keeps row order and values") {
  BenchConfig cfg;
  cfg.seed = 5;
  const auto a = run_sweep(builtin_cost239(), cfg);
  cfg.deterministic = false;
  cfg.parallel_width = 4;
  const auto b = run_sweep(builtin_cost239(), cfg);
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    CHECK(b.rows[k].dest == a.rows[k].dest);
    CHECK(b.rows[k].bypass_lambda == a.rows[k].bypass_lambda);
    CHECK(b.rows[k].occin_lambda == a.rows[k].occin_lambda);
  }
}

TEST_CASE("sweep rejects topologies that cannot be paired") {
  const std::vector<Edge> e = {{0, 1}, {1, 2}, {2, 3}};
  CHECK_THROWS(run_sweep(Topology::from_edges(4, e, "p4"), BenchConfig{}));
}

TEST_CASE("names") {
  CHECK(parse_solver("heuristic") == SolverKind::Heuristic);
  CHECK(parse_pairing("fixed") == Pairing::Fixed);
  CHECK_THROWS(parse_pairing("random"));
}
