#include "doctest.h"

#include <sstream>

#include "occin/exact_solver.hpp"
#include "occin/milp.hpp"
#include "occin/validator.hpp"
#include "support.hpp"

using namespace occin;

namespace {
NodeId n(int one_based) { return NodeId::from_external(one_based); }

Instance toy(int w = 2) { return make_instance(builtin_toy(), {}, {{n(1), n(2), n(5)}}, w); }

Instance path3() {
  const std::vector<Edge> e = {{0, 1}, {1, 2}};
  return make_instance(Topology::from_edges(3, e, "path"), {{n(1), n(3)}, {n(2), n(3)}}, {}, 2);
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::size_t expected_size(const Instance& i, int W, Coupling c) {
  const std::size_t arcs = static_cast<std::size_t>(i.topology.arc_count());
  const std::size_t V = static_cast<std::size_t>(i.topology.node_count());
  const std::size_t comm = i.comm.size(), comp = i.comp.size(), w = static_cast<std::size_t>(W);
  const std::size_t per = c == Coupling::PerDemand ? 1 : 3;
  return w * arcs * (comm + 3 * comp) + w * (comm + per * comp) + w + comp * V + per * comp * w * V;
}
}  // namespace

TEST_CASE("variable names round trip") {
  const std::vector<VarKey> keys = {{VarKind::Flow, 3, 0, 2, 17, 0},    {VarKind::Flow, 1, 3, 1, 1, 0},
                                    {VarKind::Assign, 2, 0, 4, 0, 0},   {VarKind::Assign, 2, 2, 1, 0, 0},
                                    {VarKind::Use, 0, 0, 5, 0, 0},      {VarKind::CompNode, 6, 0, 0, 0, 11},
                                    {VarKind::Linearize, 6, 0, 2, 0, 3}, {VarKind::Linearize, 6, 1, 2, 0, 3}};
  for (const auto& k : keys) {
    const auto parsed = VarKey::parse(k.name());
    REQUIRE(parsed.has_value());
    CHECK(*parsed == k);
  }
  CHECK(VarKey{VarKind::Flow, 3, 0, 2, 17, 0}.name() == "f_d3_s0_w2_e17");
  CHECK(VarKey{VarKind::Assign, 2, 2, 1, 0, 0}.name() == "a_d2_s2_w1");
  CHECK(VarKey{VarKind::Use, 0, 0, 5, 0, 0}.name() == "u_5");
  CHECK(VarKey{VarKind::CompNode, 6, 0, 0, 0, 11}.name() == "c_q6_v11");
  CHECK(VarKey{VarKind::Linearize, 6, 0, 2, 0, 3}.name() == "z_q6_w2_v3");
  for (const char* bad : {"", "u_", "u_x", "f_d1_w1_e1", "a_d1_s4_w1", "c_q1", "z_q1_w1", "x_1", "u_1_2", "f_d1_s0_w1_e1x"}) {
    CHECK_FALSE(VarKey::parse(bad).has_value());
  }
}

TEST_CASE("model size") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto i = testing::random_instance(seed);
    for (Coupling c : {Coupling::PerDemand, Coupling::PerSegment}) {
      const auto m = encode_rwca(i, c);
      CHECK(m.variables.size() == expected_size(i, 3, c));
      for (const auto& row : m.constraints) {
        for (const auto& t : row.terms) {
          CHECK(t.var >= 0);
          CHECK(static_cast<std::size_t>(t.var) < m.variables.size());
        }
      }
    }
  }
  const auto ref = generate_star_instance(builtin_cost239(), {n(1), kCalibrationSeed});
  EncodeOptions opt;
  opt.wavelengths = 3;
  CHECK(encode_rwca(ref, Coupling::PerDemand, opt).variables.size() == 2578);
}

TEST_CASE("rwa model treats computing requests as two lightpaths") {
  const auto m = encode_rwa(toy());
  CHECK(m.demands.size() == 2);
  CHECK(m.variables.size() == 2u * 8u * 2u + 2u * 2u + 2u);
  auto zero = toy();
  zero.max_wavelengths = 0;
  CHECK_THROWS_AS(encode_rwa(zero), std::invalid_argument);
}

TEST_CASE("lp text") {
  const auto text = export_lp(encode_rwa(toy()));
  const auto l = lines(text);
  auto at = std::find(l.begin(), l.end(), "Minimize");
  REQUIRE(at != l.end());
  CHECK(*(at + 1) == "u_1 + u_2");
  for (const char* section : {"Subject To", "Bounds", "Binaries", "End"}) {
    CHECK(std::find(l.begin(), l.end(), section) != l.end());
  }
  CHECK(text.find(" clash_w1_e1:") != std::string::npos);
  CHECK(text.find(" sym_w1: u_1 - u_2 >= 0") != std::string::npos);
  CHECK(export_lp(encode_rwa(toy())) == text);
  for (const auto& line : l) CHECK(line.size() <= 255);
}

TEST_CASE("binaries section lists every variable") {
  IlpModel m;
  const int x = m.add_variable({VarKind::Use, 0, 0, 1, 0, 0});
  const int y = m.add_variable({VarKind::Use, 0, 0, 2, 0, 0});
  const int z = m.add_variable({VarKind::Use, 0, 0, 3, 0, 0});
  m.objective = {{1, x}, {1, y}, {1, z}};
  m.constraints.push_back({"r1", {{1, x}, {-1, y}}, Sense::GreaterEqual, 0});
  m.constraints.push_back({"r2", {{1, x}, {2, z}}, Sense::LessEqual, 2});
  const auto l = lines(export_lp(m));
  auto bin = std::find(l.begin(), l.end(), "Binaries");
  REQUIRE(bin != l.end());
  CHECK(*(bin + 1) == " u_1 u_2 u_3");
  CHECK(*(bin + 2) == "End");
  CHECK(std::find(l.begin(), l.end(), " r2: u_1 + 2 u_3 <= 2") != l.end());
}

TEST_CASE("secondary objective weights wavelengths above flow") {
  EncodeOptions opt;
  opt.secondary_objective = true;
  const auto m = encode_rwca(toy(), Coupling::PerDemand, opt);
  int flows = 0;
  for (const auto& k : m.variables) flows += k.kind == VarKind::Flow;
  CHECK(m.objective.front().coef == flows + 1);
  CHECK(static_cast<int>(m.objective.size()) == 2 + flows);
}

TEST_CASE("decode recovers solver output") {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const auto i = testing::random_instance(seed);
    for (Mode mode : {Mode::Bypass, Mode::Occin}) {
      for (Coupling c : {Coupling::PerDemand, Coupling::PerSegment}) {
        SolveConfig cfg;
        cfg.mode = mode;
        cfg.coupling = c;
        const auto s = solve_exact(i, cfg);
        if (s.status != Status::Optimal) continue;
        const auto m = encode(i, cfg);
        const auto values = assignment_from_solution(m, s, i);
        const auto d = decode_solution(m, values, i);
        CHECK(validate(d, i, cfg).ok);
        CHECK(d.demands == s.demands);
        int objective = 0;
        for (const auto& t : m.objective) {
          auto it = values.find(m.variables[static_cast<std::size_t>(t.var)]);
          if (it != values.end()) objective += t.coef * it->second;
        }
        CHECK(objective == d.wavelength_count);
      }
    }
  }
}

TEST_CASE("decode drops circulations") {
  const auto i = make_instance(builtin_cost239(), {{n(1), n(6)}}, {}, 1);
  SolveConfig cfg;
  cfg.mode = Mode::Bypass;
  const auto s = solve_exact(i, cfg);
  REQUIRE(s.wavelength_link_units == 1);
  const auto m = encode(i, cfg);
  auto v = assignment_from_solution(m, s, i);
  const auto& t = i.topology;
  auto loop = [&](int a, int b) {
    v[{VarKind::Flow, 1, 0, 1, *t.find_arc(n(a), n(b)) + 1, 0}] = 1;
    v[{VarKind::Flow, 1, 0, 1, *t.find_arc(n(b), n(a)) + 1, 0}] = 1;
  };
  loop(5, 9);   // detached
  loop(1, 2);   // walked first from the source, then spliced out
  loop(6, 10);  // at the sink
  const auto d = decode_solution(m, v, i);
  CHECK(d.demands == s.demands);
  CHECK(d.wavelength_link_units == 1);
}

TEST_CASE("decode names the first violated constraint") {
  const auto i = path3();
  const auto m = encode_rwa(i);
  Assignment v;
  v[{VarKind::Use, 0, 0, 1, 0, 0}] = 1;
  v[{VarKind::Assign, 1, 0, 1, 0, 0}] = 1;
  v[{VarKind::Assign, 2, 0, 1, 0, 0}] = 1;
  v[{VarKind::Flow, 1, 0, 1, 1, 0}] = 1;  // 1->2
  v[{VarKind::Flow, 1, 0, 1, 3, 0}] = 1;  // 2->3
  v[{VarKind::Flow, 2, 0, 1, 3, 0}] = 1;  // 2->3
  try {
    decode_solution(m, v, i);
    FAIL("expected a clash");
  } catch (const DecodeError& e) {
    CHECK(std::string(e.what()) == "constraint clash_w1_e3 violated");
  }
  v.erase({VarKind::Assign, 2, 0, 1, 0, 0});
  CHECK_THROWS_WITH_AS(decode_solution(m, v, i), "constraint assign_d2 violated", DecodeError);
  Assignment stray;
  stray[{VarKind::Use, 0, 0, 7, 0, 0}] = 1;
  CHECK_THROWS_AS(decode_solution(m, stray, i), DecodeError);
}

TEST_CASE("assignment text") {
  const auto a = parse_assignment("# Objective value = 1\nu_1 1\na_d1_w1 1\nf_d1_s0_w1_e3 0.9999999\nz_q1_w1_v2 -0\n");
  CHECK(a.size() == 4);
  CHECK(a.at({VarKind::Flow, 1, 0, 1, 3, 0}) == 1);
  CHECK(a.at({VarKind::Linearize, 1, 0, 1, 0, 2}) == 0);
  const auto h = parse_assignment(
      "Model status\nOptimal\n\n# Primal solution values\nFeasible\nObjective 1\n# Columns 2\nu_1 1\nu_2 0\n"
      "# Rows 1\nsym_w1 1\n# Dual solution values\nFeasible\n# Columns 2\nu_1 5\n");
  CHECK(h.size() == 2);
  CHECK(h.at({VarKind::Use, 0, 0, 1, 0, 0}) == 1);
  CHECK_THROWS(parse_assignment(""));
  CHECK_THROWS(parse_assignment("Objective 3\n"));
  CHECK_THROWS(parse_assignment("u_1 0.5\n"));
  CHECK_THROWS(parse_assignment("u_1 2\n"));
  CHECK_THROWS(parse_assignment("u_1 yes\n"));
}
