#include "occin/topology.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "occin/paths.hpp"

namespace occin {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string_view strip_comment(std::string_view line) {
  if (auto pos = line.find('#'); pos != std::string_view::npos) line = line.substr(0, pos);
  return line;
}

}  // namespace

Topology Topology::from_edges(int node_count, std::span<const Edge> edges, std::string name,
                              std::vector<std::string> labels) {
  if (node_count < 1) throw TopologyError(TopologyError::Kind::BadHeader, "node count must be >= 1");
  if (!labels.empty() && static_cast<int>(labels.size()) != node_count)
    throw TopologyError(TopologyError::Kind::BadHeader, "label count does not match node count");

  Topology t;
  t.name_ = std::move(name);
  t.node_count_ = node_count;
  t.labels_ = std::move(labels);
  if (t.labels_.empty()) {
    for (int v = 1; v <= node_count; ++v) t.labels_.push_back(std::to_string(v));
  }

  const auto n = static_cast<std::size_t>(node_count);
  t.arc_matrix_.assign(n * n, -1);
  t.arcs_.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= node_count || v < 0 || v >= node_count) {
      throw TopologyError(TopologyError::Kind::NodeOutOfRange,
                          "edge (" + std::to_string(u + 1) + "," + std::to_string(v + 1) +
                              ") references a node outside 1.." + std::to_string(node_count));
    }
    if (u == v) {
      throw TopologyError(TopologyError::Kind::SelfLoop,
                          "self-loop on node " + std::to_string(u + 1));
    }
    auto& fwd = t.arc_matrix_[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)];
    auto& rev = t.arc_matrix_[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(u)];
    if (fwd >= 0 || rev >= 0) {
      throw TopologyError(TopologyError::Kind::DuplicateEdge,
                          "duplicate edge (" + std::to_string(u + 1) + "," + std::to_string(v + 1) + ")");
    }
    fwd = static_cast<int>(t.arcs_.size());
    t.arcs_.push_back(Arc{fwd, NodeId{u}, NodeId{v}});
    rev = static_cast<int>(t.arcs_.size());
    t.arcs_.push_back(Arc{rev, NodeId{v}, NodeId{u}});
  }

  // CSR adjacency, each row ordered by the opposite endpoint.
  t.out_offsets_.assign(n + 1, 0);
  t.in_offsets_.assign(n + 1, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (t.arc_matrix_[a * n + b] >= 0) {
        ++t.out_offsets_[a + 1];
        ++t.in_offsets_[b + 1];
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    t.out_offsets_[v + 1] += t.out_offsets_[v];
    t.in_offsets_[v + 1] += t.in_offsets_[v];
  }
  t.out_index_.resize(t.arcs_.size());
  t.in_index_.resize(t.arcs_.size());
  std::vector<int> out_fill(t.out_offsets_.begin(), t.out_offsets_.end() - 1);
  std::vector<int> in_fill(t.in_offsets_.begin(), t.in_offsets_.end() - 1);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (int id = t.arc_matrix_[a * n + b]; id >= 0) {
        t.out_index_[static_cast<std::size_t>(out_fill[a]++)] = id;
      }
      if (int id = t.arc_matrix_[b * n + a]; id >= 0) {
        t.in_index_[static_cast<std::size_t>(in_fill[a]++)] = id;
      }
    }
  }
  return t;
}

std::span<const int> Topology::out_arcs(NodeId v) const {
  const auto i = static_cast<std::size_t>(v.value);
  return std::span<const int>(out_index_).subspan(
      static_cast<std::size_t>(out_offsets_[i]),
      static_cast<std::size_t>(out_offsets_[i + 1] - out_offsets_[i]));
}

std::span<const int> Topology::in_arcs(NodeId v) const {
  const auto i = static_cast<std::size_t>(v.value);
  return std::span<const int>(in_index_).subspan(
      static_cast<std::size_t>(in_offsets_[i]),
      static_cast<std::size_t>(in_offsets_[i + 1] - in_offsets_[i]));
}

std::optional<int> Topology::find_arc(NodeId tail, NodeId head) const {
  if (!contains(tail) || !contains(head)) return std::nullopt;
  const int id = arc_matrix_[static_cast<std::size_t>(tail.value) * static_cast<std::size_t>(node_count_) +
                             static_cast<std::size_t>(head.value)];
  if (id < 0) return std::nullopt;
  return id;
}

std::vector<Edge> Topology::edges() const {
  std::vector<Edge> out;
  for (const auto& a : arcs_) {
    if (a.tail.value < a.head.value) out.emplace_back(a.tail.value, a.head.value);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const Topology& a, const Topology& b) {
  return a.name_ == b.name_ && a.node_count_ == b.node_count_ && a.labels_ == b.labels_ &&
         a.edges() == b.edges();
}

Path Path::from_nodes(const Topology& t, std::vector<NodeId> nodes) {
  if (nodes.empty()) throw std::invalid_argument("path has no nodes");
  std::vector<char> seen(static_cast<std::size_t>(t.node_count()), 0);
  Path p;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!t.contains(nodes[i])) throw std::invalid_argument("path node out of range");
    auto& s = seen[static_cast<std::size_t>(nodes[i].value)];
    if (s) throw std::invalid_argument("path repeats node " + std::to_string(nodes[i].external()));
    s = 1;
    if (i > 0) {
      auto arc = t.find_arc(nodes[i - 1], nodes[i]);
      if (!arc) {
        throw std::invalid_argument("no arc " + std::to_string(nodes[i - 1].external()) + "->" +
                                    std::to_string(nodes[i].external()));
      }
      p.arcs.push_back(*arc);
    }
  }
  p.nodes = std::move(nodes);
  return p;
}

Topology builtin_cost239() {
  // 1 Copenhagen, 2 Amsterdam, 3 Luxembourg, 4 Milan, 5 Vienna, 6 London,
  // 7 Berlin, 8 Prague, 9 Zurich, 10 Brussels, 11 Paris.
  static const std::vector<Edge> kEdges = [] {
    const int one_based[][2] = {{1, 2},  {1, 6},  {1, 7},  {1, 8},  {2, 3},  {2, 6},  {2, 7},
                                {2, 10}, {3, 8},  {3, 9},  {3, 10}, {3, 11}, {4, 5},  {4, 9},
                                {4, 10}, {4, 11}, {5, 7},  {5, 8},  {5, 9},  {6, 10}, {6, 11},
                                {7, 8},  {7, 11}, {8, 9},  {9, 11}, {10, 11}};
    std::vector<Edge> e;
    for (const auto& p : one_based) e.emplace_back(p[0] - 1, p[1] - 1);
    return e;
  }();
  return Topology::from_edges(11, kEdges, "cost239",
                              {"Copenhagen", "Amsterdam", "Luxembourg", "Milan", "Vienna", "London",
                               "Berlin", "Prague", "Zurich", "Brussels", "Paris"});
}

Topology builtin_toy() {
  const std::vector<Edge> edges = {{0, 2}, {1, 2}, {2, 3}, {3, 4}};
  return Topology::from_edges(5, edges, "toy", {"A", "B", "X", "I", "C"});
}

Topology load_topology(std::string_view text) {
  std::string name;
  int node_count = -1;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  std::vector<int> edge_lines;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto words = split_words(strip_comment(raw));
    if (words.empty()) continue;
    const auto fail = [&](const std::string& msg) -> TopologyError {
      return TopologyError(TopologyError::Kind::Syntax,
                           "line " + std::to_string(line_no) + ": " + msg, line_no);
    };

    if (node_count < 0) {
      if (words[0] != "topology" || words.size() != 3) throw fail("expected 'topology <name> <node_count>'");
      auto n = parse_int(words[2]);
      if (!n || *n < 1) throw fail("invalid node count '" + std::string(words[2]) + "'");
      name = std::string(words[1]);
      node_count = *n;
      labels.resize(static_cast<std::size_t>(node_count));
      for (int v = 0; v < node_count; ++v) labels[static_cast<std::size_t>(v)] = std::to_string(v + 1);
      continue;
    }

    if (words[0] == "label") {
      if (words.size() < 3) throw fail("expected 'label <index> <text>'");
      auto idx = parse_int(words[1]);
      if (!idx) throw fail("invalid node index '" + std::string(words[1]) + "'");
      if (*idx < 1 || *idx > node_count) {
        throw TopologyError(TopologyError::Kind::NodeOutOfRange,
                            "line " + std::to_string(line_no) + ": label references node " +
                                std::to_string(*idx) + " outside 1.." + std::to_string(node_count) +
                                " in '" + std::string(raw) + "'",
                            line_no);
      }
      std::string label(words[2]);
      for (std::size_t w = 3; w < words.size(); ++w) label += " " + std::string(words[w]);
      labels[static_cast<std::size_t>(*idx - 1)] = std::move(label);
    } else if (words[0] == "edge") {
      if (words.size() != 3) throw fail("expected 'edge <u> <v>'");
      auto u = parse_int(words[1]);
      auto v = parse_int(words[2]);
      if (!u || !v) throw fail("invalid edge endpoint");
      edges.emplace_back(*u - 1, *v - 1);
      edge_lines.push_back(line_no);
    } else {
      throw fail("unknown record '" + std::string(words[0]) + "'");
    }
  }
  if (node_count < 0) throw TopologyError(TopologyError::Kind::Syntax, "missing topology header", 1);

  // Validate edge by edge so semantic errors carry the offending record.
  std::set<Edge> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    const std::string where = "line " + std::to_string(edge_lines[i]) + ": edge " +
                              std::to_string(u + 1) + " " + std::to_string(v + 1);
    if (u < 0 || u >= node_count || v < 0 || v >= node_count) {
      throw TopologyError(TopologyError::Kind::NodeOutOfRange,
                          where + " references a node outside 1.." + std::to_string(node_count),
                          edge_lines[i]);
    }
    if (u == v) throw TopologyError(TopologyError::Kind::SelfLoop, where + " is a self-loop", edge_lines[i]);
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
      throw TopologyError(TopologyError::Kind::DuplicateEdge, where + " duplicates an earlier edge",
                          edge_lines[i]);
    }
  }
  return Topology::from_edges(node_count, edges, std::move(name), std::move(labels));
}

std::string serialize_topology(const Topology& t) {
  std::ostringstream os;
  os << "topology " << t.name() << ' ' << t.node_count() << '\n';
  for (int v = 0; v < t.node_count(); ++v) {
    const auto& label = t.labels()[static_cast<std::size_t>(v)];
    if (label != std::to_string(v + 1)) os << "label " << v + 1 << ' ' << label << '\n';
  }
  for (const auto& [u, v] : t.edges()) os << "edge " << u + 1 << ' ' << v + 1 << '\n';
  return os.str();
}

Topology topology_from_spec(const std::string& spec) {
  if (spec == "builtin:cost239") return builtin_cost239();
  if (spec == "builtin:toy") return builtin_toy();
  std::ifstream in(spec, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open topology file '" + spec + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_topology(buf.str());
}

std::vector<int> hop_distances(const Topology& t, NodeId origin, bool reverse) {
  std::vector<int> dist(static_cast<std::size_t>(t.node_count()), -1);
  std::deque<NodeId> queue{origin};
  dist[static_cast<std::size_t>(origin.value)] = 0;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (int a : reverse ? t.in_arcs(v) : t.out_arcs(v)) {
      const NodeId w = reverse ? t.arc(a).tail : t.arc(a).head;
      auto& d = dist[static_cast<std::size_t>(w.value)];
      if (d < 0) {
        d = dist[static_cast<std::size_t>(v.value)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<Path> k_shortest_simple_paths(const Topology& t, NodeId src, NodeId dst, int k) {
  if (src == dst) throw std::invalid_argument("k_shortest_simple_paths: source equals target");
  if (k < 1) throw std::invalid_argument("k_shortest_simple_paths: k must be >= 1");
  if (!t.contains(src) || !t.contains(dst)) throw std::invalid_argument("k_shortest_simple_paths: node out of range");
  std::vector<Path> out;
  for_each_simple_path(t, src, dst, ArcSet(t.arc_count(), true),
                       [&](const std::vector<NodeId>& nodes, const std::vector<int>& arcs) {
                         out.push_back(Path{nodes, arcs});
                         return static_cast<int>(out.size()) < k;
                       });
  return out;
}

std::string format_route(std::span<const NodeId> nodes) {
  std::string s;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(nodes[i].external());
  }
  return s;
}

}  // namespace occin
