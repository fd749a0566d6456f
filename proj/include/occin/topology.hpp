#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace occin {

/// Zero-based node index. Files and reports use 1-based labels.
struct NodeId {
  int value = 0;

  constexpr NodeId() = default;
  constexpr explicit NodeId(int v) : value(v) {}
  constexpr auto operator<=>(const NodeId&) const = default;

  constexpr int external() const { return value + 1; }
  static constexpr NodeId from_external(int one_based) { return NodeId{one_based - 1}; }
};

struct Arc {
  int id = 0;
  NodeId tail;
  NodeId head;

  friend bool operator==(const Arc&, const Arc&) = default;
};

class TopologyError : public std::runtime_error {
 public:
  enum class Kind { NodeOutOfRange, DuplicateEdge, SelfLoop, Syntax, BadHeader };

  TopologyError(Kind kind, const std::string& what, int line = 0)
      : std::runtime_error(what), kind_(kind), line_(line) {}

  Kind kind() const { return kind_; }
  /// 1-based line number for file errors, 0 otherwise.
  int line() const { return line_; }

 private:
  Kind kind_;
  int line_;
};

/// Undirected edge given by zero-based endpoints.
using Edge = std::pair<int, int>;

/*
  Immutable directed-arc model of an optical network.

  Every undirected fiber becomes two antiparallel arcs. Edge i of the input
  list yields arc 2i (u->v) and arc 2i+1 (v->u). Wavelength occupancy is
  tracked per arc, so the two directions of a fiber never clash.
*/
class Topology {
 public:
  Topology() = default;

  static Topology from_edges(int node_count, std::span<const Edge> edges, std::string name,
                             std::vector<std::string> labels = {});

  const std::string& name() const { return name_; }
  int node_count() const { return node_count_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(int id) const { return arcs_.at(static_cast<std::size_t>(id)); }

  /// Arc ids leaving / entering a node, ordered by the opposite endpoint.
  std::span<const int> out_arcs(NodeId v) const;
  std::span<const int> in_arcs(NodeId v) const;

  int out_degree(NodeId v) const { return static_cast<int>(out_arcs(v).size()); }
  int in_degree(NodeId v) const { return static_cast<int>(in_arcs(v).size()); }

  std::optional<int> find_arc(NodeId tail, NodeId head) const;
  bool contains(NodeId v) const { return v.value >= 0 && v.value < node_count_; }

  /// Undirected edges with u < v, sorted.
  std::vector<Edge> edges() const;

  /// Same name, node count, labels and arc set (arc ids may differ).
  friend bool operator==(const Topology& a, const Topology& b);

 private:
  std::string name_;
  int node_count_ = 0;
  std::vector<std::string> labels_;
  std::vector<Arc> arcs_;
  std::vector<int> out_offsets_, out_index_;
  std::vector<int> in_offsets_, in_index_;
  std::vector<int> arc_matrix_;  // node_count^2, -1 when absent
};

/// Simple directed path. Construction through `Path::from_nodes` validates it.
struct Path {
  std::vector<NodeId> nodes;
  std::vector<int> arcs;

  int hops() const { return static_cast<int>(arcs.size()); }
  NodeId source() const { return nodes.front(); }
  NodeId target() const { return nodes.back(); }

  static Path from_nodes(const Topology& t, std::vector<NodeId> nodes);
  friend bool operator==(const Path&, const Path&) = default;
};

/// Eleven-node, 26-fiber COST239 reference network.
Topology builtin_cost239();

/// Five-node example network: A-X, B-X, X-I, I-C (A=1, B=2, X=3, I=4, C=5).
Topology builtin_toy();

Topology load_topology(std::string_view text);
std::string serialize_topology(const Topology& t);

/// Resolve "builtin:cost239", "builtin:toy" or read a topology file.
Topology topology_from_spec(const std::string& spec);

/// Hop-count distances from `src` (or to `dst` with reverse=true); -1 if unreachable.
std::vector<int> hop_distances(const Topology& t, NodeId origin, bool reverse = false);

/// Up to k simple paths in nondecreasing hop count, ties by lexicographic node sequence.
std::vector<Path> k_shortest_simple_paths(const Topology& t, NodeId src, NodeId dst, int k);

std::string format_route(std::span<const NodeId> nodes);

}  // namespace occin
