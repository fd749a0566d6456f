#include "doctest.h"

#include "occin/exact_solver.hpp"
#include "occin/solution.hpp"

using namespace occin;

namespace {
NodeId n(int one_based) { return NodeId::from_external(one_based); }
std::vector<NodeId> route(std::initializer_list<int> nodes) {
  std::vector<NodeId> r;
  for (int v : nodes) r.push_back(n(v));
  return r;
}

Instance toy_instance() { return make_instance(builtin_toy(), {}, {{n(1), n(2), n(5)}}, 2); }

Solution toy_bypass() {
  Solution s;
  s.mode = Mode::Bypass;
  s.status = Status::Feasible;
  s.demands.push_back({DemandKind::Comp, 0, n(5), {{1, {route({1, 3, 4, 5}), 1}}, {2, {route({2, 3, 4, 5}), 2}}}});
  refresh_metrics(s);
  return s;
}

Solution toy_occin() {
  Solution s;
  s.mode = Mode::Occin;
  s.status = Status::Optimal;
  s.demands.push_back(
      {DemandKind::Comp, 0, n(3), {{1, {route({1, 3}), 1}}, {2, {route({2, 3}), 1}}, {3, {route({3, 4, 5}), 1}}}});
  refresh_metrics(s);
  return s;
}
}  // namespace

TEST_CASE("spectral metrics") {
  CHECK(metrics(toy_bypass()) == SpectralMetrics{2, 6});
  CHECK(metrics(toy_occin()) == SpectralMetrics{1, 4});
  CHECK(metrics(Solution{}) == SpectralMetrics{0, 0});
}

TEST_CASE("enum names") {
  CHECK(to_string(Mode::Bypass) == "bypass");
  CHECK(parse_mode("occin") == Mode::Occin);
  CHECK(parse_coupling("segment") == Coupling::PerSegment);
  CHECK(to_string(Status::LimitReached) == "limit_reached");
  CHECK(parse_status("optimal") == Status::Optimal);
  CHECK_THROWS(parse_mode("hybrid"));
}

TEST_CASE("json round trip") {
  const auto i = toy_instance();
  for (const auto& s : {toy_bypass(), toy_occin()}) {
    const auto text = solution_to_json(s, i, false);
    CHECK(text.find("occin.solution/1") != std::string::npos);
    CHECK(text.find("time_ms") == std::string::npos);
    CHECK(solution_from_json(text) == s);
  }
  CHECK(solution_to_json(toy_occin(), i, true).find("time_ms") != std::string::npos);
}

TEST_CASE("json errors") {
  CHECK_THROWS(solution_from_json("{"));
  CHECK_THROWS(solution_from_json("{\"mode\": \"occin\"}"));
  CHECK_THROWS(solution_from_json("[]"));
}

TEST_CASE("csv rows") {
  const auto csv = solution_to_csv(toy_occin());
  CHECK(csv ==
        "kind,index,computing_node,segment,route,lambda\n"
        "comp,1,3,1,1-3,1\n"
        "comp,1,3,2,2-3,1\n"
        "comp,1,3,3,3-4-5,1\n");
}

TEST_CASE("solver output round trips") {
  const auto i = make_instance(builtin_cost239(), {{n(4), n(6)}}, {{n(2), n(3), n(1)}, {n(5), n(9), n(1)}});
  for (Mode m : {Mode::Bypass, Mode::Occin}) {
    SolveConfig cfg;
    cfg.mode = m;
    auto s = solve_exact(i, cfg);
    s.stats.elapsed_ms = 0;
    CHECK(solution_from_json(solution_to_json(s, i, false)) == s);
  }
}
