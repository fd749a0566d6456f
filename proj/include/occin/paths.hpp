#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "occin/topology.hpp"

namespace occin {

/// Fixed-size set of arc ids.
class ArcSet {
 public:
  ArcSet() = default;
  explicit ArcSet(int size, bool full = false)
      : size_(size), words_(static_cast<std::size_t>((size + 63) / 64), full ? ~0ULL : 0ULL) {
    if (full) trim();
  }

  int size() const { return size_; }
  bool test(int i) const { return (words_[word(i)] >> bit(i)) & 1ULL; }
  void set(int i) { words_[word(i)] |= 1ULL << bit(i); }
  void reset(int i) { words_[word(i)] &= ~(1ULL << bit(i)); }

  bool intersects(const ArcSet& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & o.words_[w]) return true;
    return false;
  }
  int count() const {
    int n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
  }
  ArcSet& operator|=(const ArcSet& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  ArcSet& subtract(const ArcSet& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
    return *this;
  }
  ArcSet complement() const {
    ArcSet r = *this;
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
  }
  friend bool operator==(const ArcSet&, const ArcSet&) = default;

 private:
  static std::size_t word(int i) { return static_cast<std::size_t>(i) >> 6; }
  static int bit(int i) { return i & 63; }
  void trim() {
    if (size_ % 64 != 0 && !words_.empty()) words_.back() &= (1ULL << (size_ % 64)) - 1ULL;
  }

  int size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Hop distances to `dst` using only `allowed` arcs; -1 if unreachable.
std::vector<int> distances_to(const Topology& t, NodeId dst, const ArcSet& allowed);

/// Nodes reachable from `origin` (forward) or reaching it (reverse) over `allowed` arcs.
std::vector<bool> reachable(const Topology& t, NodeId origin, const ArcSet& allowed, bool reverse);

/*
  Enumerates simple src->dst paths over `allowed` arcs in nondecreasing hop
  count, ties in lexicographic node order. Paths of each length are produced
  by a depth-bounded search pruned with distances to the target, so the first
  k paths visited are the k shortest. `visit(nodes, arcs)` returns false to
  stop. Returns false if the visitor stopped the enumeration.
*/
template <class Visitor>
bool for_each_simple_path(const Topology& t, NodeId src, NodeId dst, const ArcSet& allowed,
                          Visitor&& visit) {
  if (src == dst) return true;
  const auto dist = distances_to(t, dst, allowed);
  if (dist[static_cast<std::size_t>(src.value)] < 0) return true;

  std::vector<NodeId> nodes{src};
  std::vector<int> arcs;
  std::vector<char> on_path(static_cast<std::size_t>(t.node_count()), 0);
  on_path[static_cast<std::size_t>(src.value)] = 1;

  // Returns false when the visitor asked to stop.
  auto extend = [&](auto&& self, NodeId v, int remaining) -> bool {
    if (v == dst) return remaining != 0 || visit(nodes, arcs);
    for (int a : t.out_arcs(v)) {
      if (!allowed.test(a)) continue;
      const NodeId h = t.arc(a).head;
      const auto hi = static_cast<std::size_t>(h.value);
      if (on_path[hi] || dist[hi] < 0 || dist[hi] > remaining - 1) continue;
      on_path[hi] = 1;
      nodes.push_back(h);
      arcs.push_back(a);
      const bool go_on = self(self, h, remaining - 1);
      arcs.pop_back();
      nodes.pop_back();
      on_path[hi] = 0;
      if (!go_on) return false;
    }
    return true;
  };

  for (int length = dist[static_cast<std::size_t>(src.value)]; length < t.node_count(); ++length) {
    if (!extend(extend, src, length)) return false;
  }
  return true;
}

}  // namespace occin
