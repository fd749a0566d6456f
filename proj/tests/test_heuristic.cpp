#include "doctest.h"

#include "occin/exact_solver.hpp"
#include "occin/heuristic.hpp"
#include "occin/validator.hpp"
#include "support.hpp"

using namespace occin;

namespace {
NodeId n(int one_based) { return NodeId::from_external(one_based); }

Topology triangle() {
  const std::vector<Edge> e = {{0, 1}, {1, 2}, {0, 2}};
  return Topology::from_edges(3, e, "triangle");
}
}  // namespace

TEST_CASE("computing node choice") {
  CHECK(choose_computing_node(builtin_toy(), {n(1), n(2), n(5)}) == n(3));
  CHECK(computing_cost(builtin_toy(), {n(1), n(2), n(5)}, n(3)) == 4);
  CHECK(computing_cost(builtin_toy(), {n(1), n(2), n(5)}, n(1)) == 5);
  CHECK(choose_computing_node(triangle(), {n(1), n(2), n(3)}) == n(1));
  CHECK(choose_computing_node(builtin_cost239(), {n(2), n(3), n(1)}) == n(2));
  CHECK(computing_cost(builtin_cost239(), {n(2), n(3), n(1)}, n(2)) == 2);
}

TEST_CASE("ranking prefers the source nearer the destination") {
  const auto t = builtin_cost239();
  // 3 and 8 both reach 1; 8 is adjacent to 1 while 3 is two hops away.
  const auto ranked = rank_computing_nodes(t, {n(3), n(8), n(1)});
  CHECK(ranked.front() == n(8));
  for (NodeId x : ranked) CHECK(x != n(1));
  CHECK(ranked.size() == 10);
}

TEST_CASE("unreachable computing request") {
  const std::vector<Edge> e = {{0, 1}, {2, 3}};
  const auto t = Topology::from_edges(4, e, "split");
  CHECK_THROWS(choose_computing_node(t, {NodeId{0}, NodeId{2}, NodeId{3}}));
  SolveConfig cfg;
  const auto i = make_instance(t, {}, {{NodeId{0}, NodeId{2}, NodeId{3}}});
  CHECK(solve_heuristic(i, cfg).status == Status::Infeasible);
}

TEST_CASE("heuristic examples") {
  SolveConfig cfg;
  const auto toy = make_instance(builtin_toy(), {}, {{n(1), n(2), n(5)}});
  const auto s = solve_heuristic(toy, cfg);
  CHECK(s.status == Status::Feasible);
  CHECK(s.wavelength_count == 1);

  const auto single = make_instance(builtin_cost239(), {{n(4), n(6)}}, {});
  CHECK(solve_heuristic(single, cfg).wavelength_count == 1);

  auto table = generate_star_instance(builtin_cost239(), {n(1), kCalibrationSeed});
  cfg.mode = Mode::Bypass;
  CHECK(solve_heuristic(table, cfg).wavelength_count >= 3);
}

TEST_CASE("heuristic respects the budget") {
  SolveConfig cfg;
  cfg.mode = Mode::Bypass;
  const auto toy = make_instance(builtin_toy(), {}, {{n(1), n(2), n(5)}}, 1);
  const auto s = solve_heuristic(toy, cfg);
  CHECK(s.status == Status::Infeasible);
  CHECK(s.demands.empty());
}

TEST_CASE("heuristic is valid, deterministic and never below the optimum") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const auto i = testing::random_instance(seed);
    for (Mode m : {Mode::Bypass, Mode::Occin}) {
      for (Coupling c : {Coupling::PerDemand, Coupling::PerSegment}) {
        for (DemandOrder o : {DemandOrder::LongestFirst, DemandOrder::InputOrder}) {
          SolveConfig cfg;
          cfg.mode = m;
          cfg.coupling = c;
          cfg.order = o;
          const auto h = solve_heuristic(i, cfg);
          CHECK(h == solve_heuristic(i, cfg));
          if (h.status != Status::Feasible) continue;
          CHECK(validate(h, i, cfg).ok);
          const auto e = solve_exact(i, cfg);
          REQUIRE(e.status == Status::Optimal);
          CHECK(h.wavelength_count >= e.wavelength_count);
        }
      }
    }
  }
}
