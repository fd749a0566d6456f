#include "occin/exact_solver.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>

#include "occin/heuristic.hpp"
#include "occin/paths.hpp"

namespace occin {

namespace {

using Clock = std::chrono::steady_clock;
using NodeMask = std::uint64_t;

constexpr NodeMask bit_of(NodeId v) { return NodeMask{1} << v.value; }

// One unit of search: a lone lightpath, or an OCCIN computing request with its segments.
struct Task {
  bool compute = false;
  DemandKind record_kind = DemandKind::Comm;
  int record_index = 0;
  int segment = 0;    // lone lightpath: 0 for comm, 1/2 for bypass legs
  NodeId src, dst;    // lone lightpath endpoints
  CompDemand q{};     // computing request
  std::vector<NodeId> x_order;
  int static_cost = 0;
  int group = 0;      // index of the flow group of `sink()`

  NodeId sink() const { return compute ? q.dst : dst; }
};

struct Placement {
  NodeId x;
  std::array<std::vector<NodeId>, 4> routes;
  std::array<int, 4> lambda{};
  std::array<bool, 4> present{};
};

// Reachability of one task on one wavelength.
struct Reach {
  NodeMask a = 0;  // forward from src (or src1)
  NodeMask b = 0;  // forward from src2
  NodeMask z = 0;  // backward from dst
};

NodeMask reach_mask(const Topology& t, NodeId origin, const ArcSet& used, bool reverse) {
  NodeMask seen = bit_of(origin);
  NodeId stack[64];
  int top = 0;
  stack[top++] = origin;
  while (top > 0) {
    const NodeId v = stack[--top];
    for (int a : reverse ? t.in_arcs(v) : t.out_arcs(v)) {
      if (used.test(a)) continue;
      const NodeId w = reverse ? t.arc(a).tail : t.arc(a).head;
      if (!(seen & bit_of(w))) {
        seen |= bit_of(w);
        stack[top++] = w;
      }
    }
  }
  return seen;
}

/*
  Unit-capacity max flow from the remaining tasks of one group to its sink.
  A lone lightpath feeds its source; a per-demand computing request feeds
  either source (its src1->x->dst walk is one unit on one wavelength); a
  per-segment computing request may enter anywhere, since its final leg
  starts at an arbitrary computing node.
*/
class GroupFlow {
 public:
  GroupFlow(const Topology& t, NodeId sink, std::vector<int> members, const std::vector<Task>& tasks,
            Coupling coupling)
      : t_(t), sink_(sink), members_(std::move(members)) {
    const int n = t.node_count();
    node_count_ = n + static_cast<int>(members_.size()) + 1;
    source_ = node_count_ - 1;
    head_.assign(static_cast<std::size_t>(node_count_), -1);
    for (const auto& a : t.arcs()) add_edge(a.tail.value, a.head.value);
    for (std::size_t m = 0; m < members_.size(); ++m) {
      const int task_node = n + static_cast<int>(m);
      task_edge_.push_back(add_edge(source_, task_node));
      const Task& task = tasks[static_cast<std::size_t>(members_[m])];
      if (!task.compute) {
        add_edge(task_node, task.src.value);
      } else if (coupling == Coupling::PerDemand) {
        add_edge(task_node, task.q.src1.value);
        add_edge(task_node, task.q.src2.value);
      } else {
        for (int v = 0; v < n; ++v) {
          if (v != sink.value) add_edge(task_node, v);
        }
      }
    }
  }

  const std::vector<int>& members() const { return members_; }

  /// Flow value with `used` arcs blocked and only `active` member tasks feeding.
  int value(const ArcSet& used, const std::vector<char>& active) {
    for (std::size_t e = 0; e < cap_.size(); e += 2) {
      cap_[e] = 1;
      cap_[e + 1] = 0;
    }
    for (int a = 0; a < t_.arc_count(); ++a) {
      if (used.test(a)) cap_[static_cast<std::size_t>(2 * a)] = 0;
    }
    for (std::size_t m = 0; m < members_.size(); ++m) {
      if (!active[static_cast<std::size_t>(members_[m])]) cap_[static_cast<std::size_t>(task_edge_[m])] = 0;
    }
    int flow = 0;
    std::vector<int> parent_edge(static_cast<std::size_t>(node_count_));
    std::vector<int> queue(static_cast<std::size_t>(node_count_));
    while (true) {
      std::fill(parent_edge.begin(), parent_edge.end(), -1);
      std::size_t qh = 0, qt = 0;
      queue[qt++] = source_;
      parent_edge[static_cast<std::size_t>(source_)] = -2;
      bool reached = false;
      while (qh < qt && !reached) {
        const int v = queue[qh++];
        for (int e = head_[static_cast<std::size_t>(v)]; e >= 0; e = next_[static_cast<std::size_t>(e)]) {
          const int w = to_[static_cast<std::size_t>(e)];
          if (cap_[static_cast<std::size_t>(e)] <= 0 || parent_edge[static_cast<std::size_t>(w)] != -1) continue;
          parent_edge[static_cast<std::size_t>(w)] = e;
          if (w == sink_.value) {
            reached = true;
            break;
          }
          queue[qt++] = w;
        }
      }
      if (!reached) break;
      for (int v = sink_.value; v != source_;) {
        const int e = parent_edge[static_cast<std::size_t>(v)];
        --cap_[static_cast<std::size_t>(e)];
        ++cap_[static_cast<std::size_t>(e ^ 1)];
        v = to_[static_cast<std::size_t>(e ^ 1)];
      }
      ++flow;
    }
    return flow;
  }

 private:
  int add_edge(int from, int to) {
    const int id = static_cast<int>(to_.size());
    to_.push_back(to);
    cap_.push_back(1);
    next_.push_back(head_[static_cast<std::size_t>(from)]);
    head_[static_cast<std::size_t>(from)] = id;
    to_.push_back(from);
    cap_.push_back(0);
    next_.push_back(head_[static_cast<std::size_t>(to)]);
    head_[static_cast<std::size_t>(to)] = id + 1;
    return id;
  }

  const Topology& t_;
  NodeId sink_;
  std::vector<int> members_;
  int node_count_ = 0;
  int source_ = 0;
  std::vector<int> head_, next_, to_, cap_;
  std::vector<int> task_edge_;
};

struct Shared {
  std::atomic<bool> stop{false};
  std::atomic<bool> aborted{false};
  std::atomic<std::int64_t> nodes{0};
  std::int64_t node_limit = 0;
  std::optional<Clock::time_point> deadline;
};

struct Problem {
  const Topology* topology = nullptr;
  Coupling coupling = Coupling::PerDemand;
  std::vector<Task> tasks;
  std::vector<NodeId> group_sinks;
  std::vector<Reach> full_reach;
};

class Search {
 public:
  enum class Step { Continue, Found, Abort };

  Search(const Problem& p, int wavelengths, int route_limit, int worker, int width, Shared& shared)
      : p_(p),
        t_(*p.topology),
        W_(wavelengths),
        route_limit_(route_limit),
        worker_(worker),
        width_(width),
        shared_(shared),
        used_(static_cast<std::size_t>(wavelengths), ArcSet(p.topology->arc_count())),
        active_(p.tasks.size(), 1),
        placement_(p.tasks.size()),
        reach_(p.tasks.size(), std::vector<Reach>(static_cast<std::size_t>(wavelengths))) {
    for (std::size_t g = 0; g < p.group_sinks.size(); ++g) {
      std::vector<int> members;
      for (std::size_t i = 0; i < p.tasks.size(); ++i) {
        if (p.tasks[i].group == static_cast<int>(g)) members.push_back(static_cast<int>(i));
      }
      groups_.emplace_back(t_, p.group_sinks[g], std::move(members), p.tasks, p.coupling);
    }
    flow_.assign(groups_.size(), std::vector<int>(static_cast<std::size_t>(W_), 0));
    full_flow_.assign(groups_.size(), 0);
    need_.assign(groups_.size(), 0);
    for (const auto& task : p.tasks) ++need_[static_cast<std::size_t>(task.group)];
  }

  Step run() {
    const ArcSet empty(t_.arc_count());
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      full_flow_[g] = groups_[g].value(empty, active_);
      if (static_cast<std::int64_t>(full_flow_[g]) * W_ < need_[g]) return Step::Continue;
    }
    return search();
  }

  const std::vector<Placement>& placements() const { return placement_; }
  std::int64_t nodes() const { return nodes_; }

 private:
  // ---- bookkeeping ---------------------------------------------------------

  bool limits_hit() {
    if (shared_.stop.load(std::memory_order_relaxed)) return true;
    const auto total = shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (shared_.node_limit > 0 && total > shared_.node_limit) {
      shared_.aborted = true;
      shared_.stop = true;
      return true;
    }
    if (shared_.deadline && (nodes_ & 255) == 0 && Clock::now() > *shared_.deadline) {
      shared_.aborted = true;
      shared_.stop = true;
      return true;
    }
    return false;
  }

  bool fresh_available() const { return opened_ < W_; }

  Reach compute_reach(const Task& task, int lambda) const {
    const ArcSet& used = used_[static_cast<std::size_t>(lambda)];
    Reach r;
    if (!task.compute) {
      r.a = reach_mask(t_, task.src, used, false);
    } else {
      r.a = reach_mask(t_, task.q.src1, used, false);
      r.b = reach_mask(t_, task.q.src2, used, false);
      r.z = reach_mask(t_, task.q.dst, used, true);
    }
    return r;
  }

  const Reach& reach_on(std::size_t task, int lambda) const {
    return lambda < opened_ ? reach_[task][static_cast<std::size_t>(lambda)] : p_.full_reach[task];
  }

  // Number of ways the task could still be served when routed alone; 0 means dead.
  int options(std::size_t i) const {
    const Task& task = p_.tasks[i];
    const int span = opened_ + (fresh_available() ? 1 : 0);
    if (!task.compute) {
      int n = 0;
      for (int l = 0; l < span; ++l) n += (reach_on(i, l).a & bit_of(task.dst)) != 0;
      return n;
    }
    const NodeMask not_dst = ~bit_of(task.q.dst);
    if (p_.coupling == Coupling::PerDemand) {
      int n = 0;
      for (int l = 0; l < span; ++l) {
        const auto& r = reach_on(i, l);
        n += (r.a & r.b & r.z & not_dst) != 0;
      }
      return n;
    }
    NodeMask a = 0, b = 0, z = 0;
    for (int l = 0; l < span; ++l) {
      const auto& r = reach_on(i, l);
      a |= r.a;
      b |= r.b;
      z |= r.z;
    }
    return std::popcount(a & b & z & not_dst);
  }

  bool group_bound_ok(std::size_t g) const {
    if (need_[g] == 0) return true;
    std::int64_t supply = static_cast<std::int64_t>(W_ - opened_) * full_flow_[g];
    for (int l = 0; l < opened_; ++l) supply += flow_[g][static_cast<std::size_t>(l)];
    return supply >= need_[g];
  }

  // Pending legs of the task being placed: route endpoints plus fixed wavelength (-1: any).
  struct Pending {
    NodeId src, dst;
    int lambda;
  };

  bool pending_ok() const {
    for (const auto& leg : pending_) {
      if (leg.lambda >= 0) {
        if (!(reach_mask(t_, leg.src, used_[static_cast<std::size_t>(leg.lambda)], false) & bit_of(leg.dst)))
          return false;
        continue;
      }
      if (fresh_available()) continue;
      bool any = false;
      for (int l = 0; l < opened_ && !any; ++l) {
        any = (reach_mask(t_, leg.src, used_[static_cast<std::size_t>(l)], false) & bit_of(leg.dst)) != 0;
      }
      if (!any) return false;
    }
    return true;
  }

  struct Saved {
    std::vector<Reach> reach;
    std::vector<int> flow;
  };

  Saved save_lambda(int lambda) const {
    Saved s;
    s.reach.reserve(p_.tasks.size());
    for (const auto& r : reach_) s.reach.push_back(r[static_cast<std::size_t>(lambda)]);
    for (const auto& f : flow_) s.flow.push_back(f[static_cast<std::size_t>(lambda)]);
    return s;
  }

  void restore_lambda(int lambda, const Saved& s) {
    for (std::size_t i = 0; i < reach_.size(); ++i) reach_[i][static_cast<std::size_t>(lambda)] = s.reach[i];
    for (std::size_t g = 0; g < flow_.size(); ++g) flow_[g][static_cast<std::size_t>(lambda)] = s.flow[g];
  }

  // Refresh caches of an opened wavelength after its occupancy changed, then test every bound.
  bool refresh_and_check(int lambda) {
    for (std::size_t i = 0; i < p_.tasks.size(); ++i) {
      if (active_[i]) reach_[i][static_cast<std::size_t>(lambda)] = compute_reach(p_.tasks[i], lambda);
    }
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      if (need_[g] == 0) continue;
      flow_[g][static_cast<std::size_t>(lambda)] = groups_[g].value(used_[static_cast<std::size_t>(lambda)], active_);
      if (!group_bound_ok(g)) return false;
    }
    for (std::size_t i = 0; i < p_.tasks.size(); ++i) {
      if (active_[i] && options(i) == 0) return false;
    }
    return pending_ok();
  }

  // ---- wavelength opening --------------------------------------------------

  // Makes `lambda` usable; returns true when it was a fresh wavelength.
  bool open(int lambda) {
    if (lambda < opened_) return false;
    ++opened_;
    const auto l = static_cast<std::size_t>(lambda);
    for (std::size_t i = 0; i < reach_.size(); ++i) reach_[i][l] = p_.full_reach[i];
    for (std::size_t g = 0; g < flow_.size(); ++g) flow_[g][l] = full_flow_[g];
    return true;
  }
  void close(bool fresh) {
    if (fresh) --opened_;
  }

  // ---- route growth ----------------------------------------------------------

  template <class Then>
  Step route(NodeId src, NodeId dst, int lambda, std::vector<NodeId>& out, Then&& then) {
    if (src == dst) {
      out = {src};
      return then();
    }
    ArcSet& used = used_[static_cast<std::size_t>(lambda)];
    const auto dist = distances_to(t_, dst, used.complement());
    const int start = dist[static_cast<std::size_t>(src.value)];
    if (start < 0) return Step::Continue;

    std::vector<NodeId> nodes{src};
    NodeMask on_path = bit_of(src);
    int completed = 0;

    auto extend = [&](auto&& self, NodeId v, int remaining) -> Step {
      if (v == dst) {
        if (remaining != 0) return Step::Continue;
        ++completed;
        out = nodes;
        const Step s = then();
        if (s != Step::Continue) return s;
        if (route_limit_ > 0 && completed >= route_limit_) return Step::Abort;  // local stop
        return Step::Continue;
      }
      for (int a : t_.out_arcs(v)) {
        if (used.test(a)) continue;
        const NodeId h = t_.arc(a).head;
        const int dh = dist[static_cast<std::size_t>(h.value)];
        if ((on_path & bit_of(h)) || dh < 0 || dh > remaining - 1) continue;
        if (limits_hit()) return Step::Abort;
        ++nodes_;
        used.set(a);
        const Saved saved = save_lambda(lambda);
        Step s = Step::Continue;
        if (refresh_and_check(lambda)) {
          nodes.push_back(h);
          on_path |= bit_of(h);
          s = self(self, h, remaining - 1);
          on_path &= ~bit_of(h);
          nodes.pop_back();
        }
        restore_lambda(lambda, saved);
        used.reset(a);
        if (s != Step::Continue) return s;
      }
      return Step::Continue;
    };

    for (int length = start; length < t_.node_count(); ++length) {
      const Step s = extend(extend, src, length);
      if (s == Step::Found) return s;
      if (s == Step::Abort) {
        // A route budget stop is local; a limit stop propagates.
        return shared_.stop.load(std::memory_order_relaxed) ? Step::Abort : Step::Continue;
      }
    }
    return Step::Continue;
  }

  // ---- task branching --------------------------------------------------------

  Step complete(std::size_t task) {
    if (depth_ == 0 && width_ > 1) {
      const auto idx = root_counter_++;
      if (static_cast<int>(idx % static_cast<std::uint64_t>(width_)) != worker_) return Step::Continue;
    }
    ++depth_;
    const Step s = search();
    --depth_;
    (void)task;
    return s;
  }

  Step branch_single(std::size_t i) {
    const Task& task = p_.tasks[i];
    Placement& pl = placement_[i];
    const int span = std::min(opened_ + 1, W_);
    for (int l = 0; l < span; ++l) {
      if (!(reach_on(i, l).a & bit_of(task.dst))) continue;
      const bool fresh = open(l);
      pl = Placement{};
      pl.present[0] = true;
      pl.lambda[0] = l;
      const Step s = route(task.src, task.dst, l, pl.routes[0], [&] { return complete(i); });
      close(fresh);
      if (s != Step::Continue) return s;
    }
    return Step::Continue;
  }

  Step branch_per_demand(std::size_t i) {
    const Task& task = p_.tasks[i];
    const auto& q = task.q;
    Placement& pl = placement_[i];
    const int span = std::min(opened_ + 1, W_);
    for (int l = 0; l < span; ++l) {
      for (NodeId x : task.x_order) {
        const auto& r = reach_on(i, l);
        if (!(r.a & r.b & r.z & bit_of(x))) continue;
        const bool fresh = open(l);
        pl = Placement{};
        pl.x = x;
        pl.lambda = {l, l, l, l};
        pl.present = {false, x != q.src1, x != q.src2, true};
        pending_.clear();
        if (pl.present[1]) pending_.push_back({q.src1, x, l});
        if (pl.present[2]) pending_.push_back({q.src2, x, l});

        const Step s = route(x, q.dst, l, pl.routes[3], [&] {
          const auto saved_pending = pending_;
          if (!pending_.empty() && pending_.front().src == q.src1) pending_.erase(pending_.begin());
          const Step s1 = route(q.src1, x, l, pl.routes[1], [&] {
            const auto inner = pending_;
            pending_.clear();
            const Step s2 = route(q.src2, x, l, pl.routes[2], [&] {
              const auto keep = pending_;
              pending_.clear();
              const Step s3 = complete(i);
              pending_ = keep;
              return s3;
            });
            pending_ = inner;
            return s2;
          });
          pending_ = saved_pending;
          return s1;
        });
        pending_.clear();
        close(fresh);
        if (s != Step::Continue) return s;
      }
    }
    return Step::Continue;
  }

  Step branch_per_segment(std::size_t i) {
    const Task& task = p_.tasks[i];
    const auto& q = task.q;
    Placement& pl = placement_[i];
    for (NodeId x : task.x_order) {
      pl = Placement{};
      pl.x = x;
      pl.present = {false, x != q.src1, x != q.src2, true};
      pending_.clear();
      if (pl.present[1]) pending_.push_back({q.src1, x, -1});
      if (pl.present[2]) pending_.push_back({q.src2, x, -1});
      if (!pending_ok()) continue;

      // Legs in order 3, 1, 2; each picks its own wavelength.
      auto leg = [&](auto&& self, int which) -> Step {
        if (which == 3) {
          const auto keep = pending_;
          pending_.clear();
          const Step s = complete(i);
          pending_ = keep;
          return s;
        }
        static constexpr int order[] = {3, 1, 2};
        const int seg = order[which];
        if (!pl.present[static_cast<std::size_t>(seg)]) return self(self, which + 1);
        const NodeId from = seg == 1 ? q.src1 : seg == 2 ? q.src2 : x;
        const NodeId to = seg == 3 ? q.dst : x;
        const auto keep = pending_;
        if (seg != 3) pending_.erase(pending_.begin());
        const int span = std::min(opened_ + 1, W_);
        for (int l = 0; l < span; ++l) {
          const bool fresh = open(l);
          pl.lambda[static_cast<std::size_t>(seg)] = l;
          const Step s = route(from, to, l, pl.routes[static_cast<std::size_t>(seg)],
                               [&] { return self(self, which + 1); });
          close(fresh);
          if (s != Step::Continue) {
            pending_ = keep;
            return s;
          }
        }
        pending_ = keep;
        return Step::Continue;
      };
      const Step s = leg(leg, 0);
      pending_.clear();
      if (s != Step::Continue) return s;
    }
    return Step::Continue;
  }

  Step search() {
    std::size_t best = p_.tasks.size();
    int best_options = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < p_.tasks.size(); ++i) {
      if (!active_[i]) continue;
      const int o = options(i);
      if (o == 0) return Step::Continue;
      const auto& ti = p_.tasks[i];
      if (best == p_.tasks.size() || o < best_options ||
          (o == best_options && ti.static_cost > p_.tasks[best].static_cost)) {
        best = i;
        best_options = o;
      }
    }
    if (best == p_.tasks.size()) return Step::Found;
    if (limits_hit()) return Step::Abort;
    ++nodes_;

    // Detach the chosen task from the relaxation while it is being placed.
    const auto g = static_cast<std::size_t>(p_.tasks[best].group);
    active_[best] = 0;
    --need_[g];
    const auto saved_flow = flow_[g];
    const auto saved_full = full_flow_[g];
    full_flow_[g] = groups_[g].value(ArcSet(t_.arc_count()), active_);
    for (int l = 0; l < opened_; ++l) {
      flow_[g][static_cast<std::size_t>(l)] = groups_[g].value(used_[static_cast<std::size_t>(l)], active_);
    }

    Step s = Step::Continue;
    const Task& task = p_.tasks[best];
    if (!task.compute) {
      s = branch_single(best);
    } else if (p_.coupling == Coupling::PerDemand) {
      s = branch_per_demand(best);
    } else {
      s = branch_per_segment(best);
    }

    if (s != Step::Found) {
      flow_[g] = saved_flow;
      full_flow_[g] = saved_full;
      ++need_[g];
      active_[best] = 1;
    }
    return s;
  }

  const Problem& p_;
  const Topology& t_;
  int W_;
  int route_limit_;
  int worker_;
  int width_;
  Shared& shared_;

  std::vector<ArcSet> used_;
  int opened_ = 0;
  std::vector<char> active_;
  std::vector<Placement> placement_;
  std::vector<std::vector<Reach>> reach_;
  std::vector<GroupFlow> groups_;
  std::vector<std::vector<int>> flow_;
  std::vector<int> full_flow_;
  std::vector<int> need_;
  std::vector<Pending> pending_;
  int depth_ = 0;
  std::uint64_t root_counter_ = 0;
  std::int64_t nodes_ = 0;
};

Problem build_problem(const Instance& inst, const SolveConfig& cfg) {
  const Topology& t = inst.topology;
  Problem p;
  p.topology = &t;
  p.coupling = cfg.coupling;

  auto sp = [&](NodeId a, NodeId b) { return hop_distances(t, a)[static_cast<std::size_t>(b.value)]; };
  auto lone = [&](DemandKind kind, int index, int segment, NodeId s, NodeId d) {
    Task task;
    task.record_kind = kind;
    task.record_index = index;
    task.segment = segment;
    task.src = s;
    task.dst = d;
    task.static_cost = sp(s, d);
    p.tasks.push_back(task);
  };
  for (std::size_t d = 0; d < inst.comm.size(); ++d) {
    lone(DemandKind::Comm, static_cast<int>(d), 0, inst.comm[d].src, inst.comm[d].dst);
  }
  for (std::size_t d = 0; d < inst.comp.size(); ++d) {
    const auto& q = inst.comp[d];
    if (cfg.mode == Mode::Bypass) {
      const auto [a, b] = decompose_bypass(q);
      lone(DemandKind::Comp, static_cast<int>(d), 1, a.src, a.dst);
      lone(DemandKind::Comp, static_cast<int>(d), 2, b.src, b.dst);
    } else {
      Task task;
      task.compute = true;
      task.record_kind = DemandKind::Comp;
      task.record_index = static_cast<int>(d);
      task.q = q;
      task.x_order = rank_computing_nodes(t, q);
      task.static_cost = task.x_order.empty() ? -1 : computing_cost(t, q, task.x_order.front());
      p.tasks.push_back(task);
    }
  }

  const ArcSet empty(t.arc_count());
  for (auto& task : p.tasks) {
    const NodeId sink = task.sink();
    auto it = std::find(p.group_sinks.begin(), p.group_sinks.end(), sink);
    task.group = static_cast<int>(it - p.group_sinks.begin());
    if (it == p.group_sinks.end()) p.group_sinks.push_back(sink);

    Reach r;
    if (!task.compute) {
      r.a = reach_mask(t, task.src, empty, false);
    } else {
      r.a = reach_mask(t, task.q.src1, empty, false);
      r.b = reach_mask(t, task.q.src2, empty, false);
      r.z = reach_mask(t, task.q.dst, empty, true);
    }
    p.full_reach.push_back(r);
  }
  return p;
}

Solution assemble(const Problem& p, const std::vector<Placement>& placements, const SolveConfig& cfg) {
  Solution sol;
  sol.mode = cfg.mode;
  sol.coupling = cfg.coupling;
  std::vector<DemandRecord> records;
  auto record_for = [&](DemandKind kind, int index) -> DemandRecord& {
    for (auto& r : records) {
      if (r.kind == kind && r.index == index) return r;
    }
    records.push_back(DemandRecord{kind, index, std::nullopt, {}});
    return records.back();
  };
  for (std::size_t i = 0; i < p.tasks.size(); ++i) {
    const Task& task = p.tasks[i];
    const Placement& pl = placements[i];
    DemandRecord& rec = record_for(task.record_kind, task.record_index);
    if (!task.compute) {
      if (task.record_kind == DemandKind::Comp) rec.computing_node = task.dst;
      rec.segments.push_back({task.segment, Lightpath{pl.routes[0], pl.lambda[0] + 1}});
      continue;
    }
    rec.computing_node = pl.x;
    for (int seg = 1; seg <= 3; ++seg) {
      const auto s = static_cast<std::size_t>(seg);
      if (pl.present[s]) rec.segments.push_back({seg, Lightpath{pl.routes[s], pl.lambda[s] + 1}});
    }
  }
  for (auto& r : records) {
    std::sort(r.segments.begin(), r.segments.end(),
              [](const SegmentLightpath& a, const SegmentLightpath& b) { return a.segment < b.segment; });
  }
  std::sort(records.begin(), records.end(), [](const DemandRecord& a, const DemandRecord& b) {
    return std::tie(a.kind, a.index) < std::tie(b.kind, b.index);
  });
  sol.demands = std::move(records);
  refresh_metrics(sol);
  return sol;
}

enum class Outcome { Feasible, Infeasible, Aborted };

struct Attempt {
  Outcome outcome = Outcome::Infeasible;
  std::vector<Placement> placements;
  std::int64_t nodes = 0;
};

Attempt attempt(const Problem& p, int wavelengths, int route_limit, const SolveConfig& cfg, Shared& shared) {
  const int width = cfg.deterministic ? 1 : std::max(1, cfg.parallel_width);
  shared.stop = shared.aborted.load();
  Attempt result;
  if (width == 1) {
    Search s(p, wavelengths, route_limit, 0, 1, shared);
    const auto step = s.run();
    result.nodes = s.nodes();
    if (step == Search::Step::Found) {
      result.outcome = Outcome::Feasible;
      result.placements = s.placements();
    } else if (shared.aborted) {
      result.outcome = Outcome::Aborted;
    }
    return result;
  }

  std::vector<std::optional<std::vector<Placement>>> found(static_cast<std::size_t>(width));
  std::vector<std::int64_t> nodes(static_cast<std::size_t>(width), 0);
  {
    std::vector<std::jthread> workers;
    for (int w = 0; w < width; ++w) {
      workers.emplace_back([&, w] {
        Search s(p, wavelengths, route_limit, w, width, shared);
        if (s.run() == Search::Step::Found) {
          found[static_cast<std::size_t>(w)] = s.placements();
          shared.stop = true;
        }
        nodes[static_cast<std::size_t>(w)] = s.nodes();
      });
    }
  }
  for (auto n : nodes) result.nodes += n;
  for (auto& f : found) {
    if (f) {
      result.outcome = Outcome::Feasible;
      result.placements = std::move(*f);
      break;
    }
  }
  if (result.outcome != Outcome::Feasible && shared.aborted) result.outcome = Outcome::Aborted;
  shared.stop = false;
  return result;
}

}  // namespace

int lower_bound(const Instance& i, Mode mode) {
  const Topology& t = i.topology;
  const auto n = static_cast<std::size_t>(t.node_count());
  std::vector<int> terminating(n, 0), originating(n, 0);
  for (const auto& d : i.comm) {
    ++terminating[static_cast<std::size_t>(d.dst.value)];
    ++originating[static_cast<std::size_t>(d.src.value)];
  }
  for (const auto& q : i.comp) {
    terminating[static_cast<std::size_t>(q.dst.value)] += mode == Mode::Bypass ? 2 : 1;
    ++originating[static_cast<std::size_t>(q.src1.value)];
    ++originating[static_cast<std::size_t>(q.src2.value)];
  }
  int bound = i.demand_count() > 0 ? 1 : 0;
  for (std::size_t v = 0; v < n; ++v) {
    const NodeId node{static_cast<int>(v)};
    const int in = t.in_degree(node);
    const int out = t.out_degree(node);
    if (terminating[v] > 0 && in > 0) bound = std::max(bound, (terminating[v] + in - 1) / in);
    if (originating[v] > 0 && out > 0) bound = std::max(bound, (originating[v] + out - 1) / out);
  }
  return bound;
}

Solution solve_exact(const Instance& inst, const SolveConfig& cfg) {
  const auto started = Clock::now();
  inst.check();
  if (inst.topology.node_count() > 64) {
    throw std::invalid_argument("exact solver supports at most 64 nodes");
  }
  const int budget = cfg.budget(inst);

  Solution result;
  result.mode = cfg.mode;
  result.coupling = cfg.coupling;
  auto finish = [&](Solution s, Status status, std::int64_t nodes, int lb) {
    s.status = status;
    s.mode = cfg.mode;
    s.coupling = cfg.coupling;
    s.stats.nodes_expanded = nodes;
    s.stats.lower_bound = lb;
    s.stats.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - started).count();
    refresh_metrics(s);
    return s;
  };

  if (inst.demand_count() == 0) return finish(result, Status::Optimal, 0, 0);

  const Problem problem = build_problem(inst, cfg);
  for (std::size_t i = 0; i < problem.tasks.size(); ++i) {
    const auto& task = problem.tasks[i];
    const auto& r = problem.full_reach[i];
    const bool ok = task.compute ? !task.x_order.empty() : (r.a & bit_of(task.dst)) != 0;
    if (!ok) return finish(result, Status::Infeasible, 0, 0);
  }

  const int lb = lower_bound(inst, cfg.mode);
  std::optional<Solution> incumbent;
  if (cfg.warm_start) {
    auto h = solve_heuristic(inst, cfg);
    if (h.status == Status::Feasible) incumbent = std::move(h);
  }
  const int ub = incumbent ? incumbent->wavelength_count : budget + 1;

  Shared shared;
  shared.node_limit = cfg.node_limit;
  if (cfg.time_limit > 0) {
    shared.deadline = started + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(cfg.time_limit));
  }

  std::int64_t nodes = 0;
  for (int w = lb; w < ub && w <= budget; ++w) {
    for (int limit : {std::max(1, cfg.k_candidates), 0}) {
      auto a = attempt(problem, w, limit, cfg, shared);
      nodes += a.nodes;
      if (a.outcome == Outcome::Feasible) return finish(assemble(problem, a.placements, cfg), Status::Optimal, nodes, lb);
      if (a.outcome == Outcome::Aborted) {
        if (incumbent) return finish(*incumbent, Status::LimitReached, nodes, lb);
        return finish(result, Status::LimitReached, nodes, lb);
      }
    }
  }
  if (incumbent && incumbent->wavelength_count <= budget) {
    return finish(*incumbent, Status::Optimal, nodes + incumbent->stats.nodes_expanded, lb);
  }
  return finish(result, Status::Infeasible, nodes, lb);
}

}  // namespace occin
