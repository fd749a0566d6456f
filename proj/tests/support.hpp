#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "occin/demand.hpp"
#include "occin/random.hpp"
#include "occin/solution.hpp"

namespace occin::testing {

// Connected random graph on 4..6 nodes with 1..4 demands and a budget of 3.
inline Instance random_instance(std::uint64_t seed, int max_nodes = 6, int max_demands = 4) {
  PortableRng rng(mix_seed(seed, 0x5eed));
  const int n = 4 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_nodes - 3)));
  std::set<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.insert({static_cast<int>(rng.below(static_cast<std::uint64_t>(v))), v});
  const int extra = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  for (int k = 0; k < extra; ++k) {
    const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
  }
  const std::vector<Edge> list(edges.begin(), edges.end());
  Topology t = Topology::from_edges(n, list, "random");

  auto node = [&] { return static_cast<int>(rng.below(static_cast<std::uint64_t>(n))); };
  std::vector<CommDemand> comm;
  std::vector<CompDemand> comp;
  const int demands = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_demands)));
  for (int k = 0; k < demands; ++k) {
    if (rng.chance(1, 2)) {
      const int s = node();
      int d = node();
      while (d == s) d = node();
      comm.push_back({NodeId{s}, NodeId{d}});
    } else {
      const int a = node();
      int b = node();
      while (b == a) b = node();
      int d = node();
      while (d == a || d == b) d = node();
      comp.push_back({NodeId{a}, NodeId{b}, NodeId{d}});
    }
  }
  return make_instance(std::move(t), std::move(comm), std::move(comp), 3);
}

struct LightpathRef {
  std::size_t record;
  std::size_t segment;
};

inline std::vector<LightpathRef> lightpaths(const Solution& s) {
  std::vector<LightpathRef> out;
  for (std::size_t r = 0; r < s.demands.size(); ++r) {
    for (std::size_t k = 0; k < s.demands[r].segments.size(); ++k) out.push_back({r, k});
  }
  return out;
}

inline Lightpath& at(Solution& s, LightpathRef ref) { return s.demands[ref.record].segments[ref.segment].lightpath; }

inline bool share_link(const Lightpath& a, const Lightpath& b) {
  for (std::size_t i = 0; i + 1 < a.route.size(); ++i) {
    for (std::size_t j = 0; j + 1 < b.route.size(); ++j) {
      if (a.route[i] == b.route[j] && a.route[i + 1] == b.route[j + 1]) return true;
    }
  }
  return false;
}

// Moves one lightpath onto the wavelength of another lightpath sharing a link with it.
inline std::optional<Solution> collide_wavelengths(const Solution& s) {
  const auto refs = lightpaths(s);
  for (const auto& a : refs) {
    for (const auto& b : refs) {
      if (a.record == b.record && a.segment == b.segment) continue;
      Solution m = s;
      if (!share_link(at(m, a), at(m, b))) continue;
      at(m, a).wavelength = at(m, b).wavelength;
      return m;
    }
  }
  return std::nullopt;
}

// Drops the last hop of the longest lightpath.
inline std::optional<Solution> truncate_route(const Solution& s) {
  const auto refs = lightpaths(s);
  if (refs.empty()) return std::nullopt;
  Solution m = s;
  auto longest = *std::max_element(refs.begin(), refs.end(), [&](LightpathRef x, LightpathRef y) {
    return at(m, x).route.size() < at(m, y).route.size();
  });
  at(m, longest).route.pop_back();
  return m;
}

// Declares the destination of the first computing request as its computing node.
inline std::optional<Solution> computing_at_destination(const Solution& s, const Instance& i) {
  for (std::size_t r = 0; r < s.demands.size(); ++r) {
    if (s.demands[r].kind != DemandKind::Comp) continue;
    Solution m = s;
    m.demands[r].computing_node = i.comp[static_cast<std::size_t>(m.demands[r].index)].dst;
    return m;
  }
  return std::nullopt;
}

inline std::vector<NodeId> route(std::initializer_list<int> one_based) {
  std::vector<NodeId> r;
  for (int v : one_based) r.push_back(NodeId::from_external(v));
  return r;
}

// Destination 1 of COST239 with the calibration pairing.
inline Instance reference_instance() {
  return generate_star_instance(builtin_cost239(), {NodeId::from_external(1), kCalibrationSeed});
}

inline Solution reference_bypass() {
  const NodeId d = NodeId::from_external(1);
  Solution s;
  s.mode = Mode::Bypass;
  s.status = Status::Optimal;
  s.demands = {
      {DemandKind::Comp, 0, d, {{1, {route({2, 1}), 1}}, {2, {route({3, 8, 1}), 2}}}},
      {DemandKind::Comp, 1, d, {{1, {route({4, 10, 2, 1}), 2}}, {2, {route({10, 2, 1}), 3}}}},
      {DemandKind::Comp, 2, d, {{1, {route({5, 7, 1}), 3}}, {2, {route({7, 1}), 1}}}},
      {DemandKind::Comp, 3, d, {{1, {route({6, 1}), 1}}, {2, {route({11, 6, 1}), 3}}}},
      {DemandKind::Comp, 4, d, {{1, {route({8, 1}), 1}}, {2, {route({9, 8, 1}), 3}}}},
  };
  refresh_metrics(s);
  return s;
}

inline Solution reference_occin() {
  auto x = [](int v) { return NodeId::from_external(v); };
  Solution s;
  s.mode = Mode::Occin;
  s.status = Status::Optimal;
  s.demands = {
      {DemandKind::Comp, 0, x(2), {{2, {route({3, 2}), 1}}, {3, {route({2, 1}), 1}}}},
      {DemandKind::Comp, 1, x(10), {{1, {route({4, 10}), 2}}, {3, {route({10, 2, 1}), 2}}}},
      {DemandKind::Comp, 2, x(7), {{1, {route({5, 7}), 1}}, {3, {route({7, 1}), 1}}}},
      {DemandKind::Comp, 3, x(6), {{2, {route({11, 6}), 1}}, {3, {route({6, 1}), 1}}}},
      {DemandKind::Comp, 4, x(8), {{2, {route({9, 8}), 1}}, {3, {route({8, 1}), 1}}}},
  };
  refresh_metrics(s);
  return s;
}

}  // namespace occin::testing
