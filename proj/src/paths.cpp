#include "occin/paths.hpp"

namespace occin {

std::vector<int> distances_to(const Topology& t, NodeId dst, const ArcSet& allowed) {
  const auto n = static_cast<std::size_t>(t.node_count());
  std::vector<int> dist(n, -1);
  std::vector<NodeId> queue;
  queue.reserve(n);
  queue.push_back(dst);
  dist[static_cast<std::size_t>(dst.value)] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId v = queue[head];
    for (int a : t.in_arcs(v)) {
      if (!allowed.test(a)) continue;
      const auto u = static_cast<std::size_t>(t.arc(a).tail.value);
      if (dist[u] < 0) {
        dist[u] = dist[static_cast<std::size_t>(v.value)] + 1;
        queue.push_back(t.arc(a).tail);
      }
    }
  }
  return dist;
}

std::vector<bool> reachable(const Topology& t, NodeId origin, const ArcSet& allowed, bool reverse) {
  const auto n = static_cast<std::size_t>(t.node_count());
  std::vector<bool> seen(n, false);
  std::vector<NodeId> stack{origin};
  seen[static_cast<std::size_t>(origin.value)] = true;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (int a : reverse ? t.in_arcs(v) : t.out_arcs(v)) {
      if (!allowed.test(a)) continue;
      const NodeId w = reverse ? t.arc(a).tail : t.arc(a).head;
      if (!seen[static_cast<std::size_t>(w.value)]) {
        seen[static_cast<std::size_t>(w.value)] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace occin
