#include "occin/oracle.hpp"

#include <string>
#include <vector>

namespace occin {

namespace {

struct Route {
  std::vector<int> arcs;
};

// All simple routes src->dst with at most `max_hops` hops, by plain recursion.
class RouteBook {
 public:
  RouteBook(const Topology& t, int max_hops) : n_(t.node_count()), max_hops_(max_hops), adj_(static_cast<std::size_t>(n_)) {
    for (const auto& a : t.arcs()) adj_[static_cast<std::size_t>(a.tail.value)].push_back({a.head.value, a.id});
  }

  std::vector<Route> between(int src, int dst) const {
    std::vector<Route> out;
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::vector<int> arcs;
    seen[static_cast<std::size_t>(src)] = 1;
    dfs(src, dst, seen, arcs, out);
    return out;
  }

 private:
  void dfs(int v, int dst, std::vector<char>& seen, std::vector<int>& arcs, std::vector<Route>& out) const {
    if (v == dst) {
      out.push_back({arcs});
      return;
    }
    if (static_cast<int>(arcs.size()) == max_hops_) return;
    for (auto [w, arc] : adj_[static_cast<std::size_t>(v)]) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      arcs.push_back(arc);
      dfs(w, dst, seen, arcs, out);
      arcs.pop_back();
      seen[static_cast<std::size_t>(w)] = 0;
    }
  }

  int n_;
  int max_hops_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
};

// One way of serving a demand: a list of legs, each with its candidate routes.
struct Choice {
  bool one_wavelength = true;
  std::vector<std::vector<Route>> legs;
};

struct Unit {
  std::vector<Choice> choices;
};

class Enumerator {
 public:
  Enumerator(std::vector<Unit> units, int arcs) : units_(std::move(units)), arcs_(arcs) {}

  bool feasible(int wavelengths) {
    W_ = wavelengths;
    occ_.assign(static_cast<std::size_t>(W_), std::vector<char>(static_cast<std::size_t>(arcs_), 0));
    opened_ = 0;
    return unit(0);
  }

 private:
  bool fits(int lambda, const Route& r) const {
    for (int a : r.arcs) {
      if (occ_[static_cast<std::size_t>(lambda)][static_cast<std::size_t>(a)]) return false;
    }
    return true;
  }
  void mark(int lambda, const Route& r, char v) {
    for (int a : r.arcs) occ_[static_cast<std::size_t>(lambda)][static_cast<std::size_t>(a)] = v;
  }

  bool unit(std::size_t u) {
    if (u == units_.size()) return true;
    for (const auto& c : units_[u].choices) {
      if (c.one_wavelength) {
        const int top = opened_ < W_ ? opened_ : W_ - 1;
        for (int lambda = 0; lambda <= top; ++lambda) {
          const int before = opened_;
          if (lambda == opened_) ++opened_;
          const bool ok = leg(u, c, 0, lambda);
          opened_ = before;
          if (ok) return true;
        }
      } else if (leg(u, c, 0, -1)) {
        return true;
      }
    }
    return false;
  }

  bool leg(std::size_t u, const Choice& c, std::size_t k, int lambda) {
    if (k == c.legs.size()) return unit(u + 1);
    for (const auto& r : c.legs[k]) {
      if (lambda >= 0) {
        if (!fits(lambda, r)) continue;
        mark(lambda, r, 1);
        const bool ok = leg(u, c, k + 1, lambda);
        mark(lambda, r, 0);
        if (ok) return true;
        continue;
      }
      const int top = opened_ < W_ ? opened_ : W_ - 1;
      for (int l = 0; l <= top; ++l) {
        if (!fits(l, r)) continue;
        const int before = opened_;
        if (l == opened_) ++opened_;
        mark(l, r, 1);
        const bool ok = leg(u, c, k + 1, -1);
        mark(l, r, 0);
        opened_ = before;
        if (ok) return true;
      }
    }
    return false;
  }

  std::vector<Unit> units_;
  int arcs_;
  int W_ = 0;
  int opened_ = 0;
  std::vector<std::vector<char>> occ_;
};

}  // namespace

std::optional<int> brute_force_optimum(const Instance& i, const SolveConfig& cfg, const OracleLimits& lim) {
  const Topology& t = i.topology;
  const int n = t.node_count();
  if (n > lim.max_nodes) throw OracleRefusal(std::to_string(n) + " nodes exceed the oracle limit");
  if (i.demand_count() > lim.max_demands) {
    throw OracleRefusal(std::to_string(i.demand_count()) + " demands exceed the oracle limit");
  }
  if (lim.max_route_hops < n - 1) throw OracleRefusal("hop limit shorter than the longest simple route");
  if (i.demand_count() == 0) return 0;

  const RouteBook book(t, lim.max_route_hops);
  std::vector<Unit> units;
  auto single = [&](NodeId s, NodeId d) {
    Choice c;
    c.legs.push_back(book.between(s.value, d.value));
    units.push_back({{c}});
  };
  for (const auto& d : i.comm) single(d.src, d.dst);
  for (const auto& q : i.comp) {
    if (cfg.mode == Mode::Bypass) {
      single(q.src1, q.dst);
      single(q.src2, q.dst);
      continue;
    }
    Unit u;
    for (int x = 0; x < n; ++x) {
      if (x == q.dst.value) continue;
      Choice c;
      c.one_wavelength = cfg.coupling == Coupling::PerDemand;
      if (x != q.src1.value) c.legs.push_back(book.between(q.src1.value, x));
      if (x != q.src2.value) c.legs.push_back(book.between(q.src2.value, x));
      c.legs.push_back(book.between(x, q.dst.value));
      u.choices.push_back(std::move(c));
    }
    units.push_back(std::move(u));
  }

  const int budget = cfg.budget(i);
  const int cap = budget < lim.max_wavelengths ? budget : lim.max_wavelengths;
  Enumerator e(std::move(units), t.arc_count());
  for (int w = 1; w <= cap; ++w) {
    if (e.feasible(w)) return w;
  }
  if (budget > cap) throw OracleRefusal("optimum exceeds the oracle wavelength limit");
  return std::nullopt;
}

}  // namespace occin
