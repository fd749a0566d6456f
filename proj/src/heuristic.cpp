#include "occin/heuristic.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "occin/paths.hpp"

namespace occin {

namespace {

struct Candidate {
  std::vector<NodeId> nodes;
  ArcSet arcs;
};

std::vector<Candidate> candidates(const Topology& t, NodeId src, NodeId dst, int k) {
  std::vector<Candidate> out;
  if (src == dst) {
    out.push_back({{src}, ArcSet(t.arc_count())});
    return out;
  }
  for (auto& p : k_shortest_simple_paths(t, src, dst, k)) {
    ArcSet s(t.arc_count());
    for (int a : p.arcs) s.set(a);
    out.push_back({std::move(p.nodes), std::move(s)});
  }
  return out;
}

// Wavelength occupancy, grown on demand up to the budget.
class Spectrum {
 public:
  Spectrum(int arcs, int budget) : arcs_(arcs), budget_(budget) {}
  int budget() const { return budget_; }
  bool fits(int lambda, const ArcSet& route) {
    return !at(lambda).intersects(route);
  }
  void take(int lambda, const ArcSet& route) { at(lambda) |= route; }

 private:
  ArcSet& at(int lambda) {
    while (static_cast<int>(used_.size()) <= lambda) used_.emplace_back(arcs_);
    return used_[static_cast<std::size_t>(lambda)];
  }
  int arcs_;
  int budget_;
  std::vector<ArcSet> used_;
};

Lightpath make_lightpath(const Candidate& c, int lambda) { return Lightpath{c.nodes, lambda + 1}; }

std::optional<std::pair<const Candidate*, int>> first_fit(Spectrum& spec, const std::vector<Candidate>& cands,
                                                          std::int64_t& checks) {
  for (int lambda = 0; lambda < spec.budget(); ++lambda) {
    for (const auto& c : cands) {
      ++checks;
      if (spec.fits(lambda, c.arcs)) return std::make_pair(&c, lambda);
    }
  }
  return std::nullopt;
}

}  // namespace

int computing_cost(const Topology& t, const CompDemand& q, NodeId x) {
  const auto from1 = hop_distances(t, q.src1);
  const auto from2 = hop_distances(t, q.src2);
  const auto to_dst = hop_distances(t, q.dst, true);
  const auto i = static_cast<std::size_t>(x.value);
  if (from1[i] < 0 || from2[i] < 0 || to_dst[i] < 0) return -1;
  return from1[i] + from2[i] + to_dst[i];
}

std::vector<NodeId> rank_computing_nodes(const Topology& t, const CompDemand& q) {
  const auto from1 = hop_distances(t, q.src1);
  const auto from2 = hop_distances(t, q.src2);
  const auto to_dst = hop_distances(t, q.dst, true);

  // The source nearer the destination is preferred; ties go to the lower id.
  const auto d1 = to_dst[static_cast<std::size_t>(q.src1.value)];
  const auto d2 = to_dst[static_cast<std::size_t>(q.src2.value)];
  const bool first_is_near = d1 < d2 || (d1 == d2 && q.src1 < q.src2);
  const NodeId near = first_is_near ? q.src1 : q.src2;
  const NodeId far = first_is_near ? q.src2 : q.src1;

  struct Scored {
    int cost;
    int preference;
    NodeId node;
  };
  std::vector<Scored> scored;
  for (int v = 0; v < t.node_count(); ++v) {
    const NodeId x{v};
    const auto i = static_cast<std::size_t>(v);
    if (x == q.dst || from1[i] < 0 || from2[i] < 0 || to_dst[i] < 0) continue;
    const int pref = x == near ? 0 : x == far ? 1 : 2;
    scored.push_back({from1[i] + from2[i] + to_dst[i], pref, x});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    return std::tie(a.cost, a.preference, a.node) < std::tie(b.cost, b.preference, b.node);
  });
  std::vector<NodeId> out;
  for (const auto& s : scored) out.push_back(s.node);
  return out;
}

NodeId choose_computing_node(const Topology& t, const CompDemand& q) {
  auto ranked = rank_computing_nodes(t, q);
  if (ranked.empty()) {
    throw std::runtime_error("no computing node can reach both sources and destination " +
                             std::to_string(q.dst.external()));
  }
  return ranked.front();
}

Solution solve_heuristic(const Instance& inst, const SolveConfig& cfg) {
  const Topology& t = inst.topology;
  const int k = std::max(1, cfg.k_candidates);
  Solution sol;
  sol.mode = cfg.mode;
  sol.coupling = cfg.coupling;
  sol.status = Status::Feasible;

  struct Job {
    DemandKind kind;
    int index;
    int cost;
    std::optional<NodeId> x;
  };
  std::vector<Job> jobs;
  for (std::size_t d = 0; d < inst.comm.size(); ++d) {
    const auto& c = inst.comm[d];
    const int sp = hop_distances(t, c.src)[static_cast<std::size_t>(c.dst.value)];
    if (sp < 0) {
      sol.status = Status::Infeasible;
      return sol;
    }
    jobs.push_back({DemandKind::Comm, static_cast<int>(d), sp, std::nullopt});
  }
  for (std::size_t d = 0; d < inst.comp.size(); ++d) {
    const auto& q = inst.comp[d];
    if (cfg.mode == Mode::Bypass) {
      const auto to_dst = hop_distances(t, q.dst, true);
      const int a = to_dst[static_cast<std::size_t>(q.src1.value)];
      const int b = to_dst[static_cast<std::size_t>(q.src2.value)];
      if (a < 0 || b < 0) {
        sol.status = Status::Infeasible;
        return sol;
      }
      jobs.push_back({DemandKind::Comp, static_cast<int>(d), a + b, q.dst});
    } else {
      auto ranked = rank_computing_nodes(t, q);
      if (ranked.empty()) {
        sol.status = Status::Infeasible;
        return sol;
      }
      jobs.push_back({DemandKind::Comp, static_cast<int>(d), computing_cost(t, q, ranked.front()), ranked.front()});
    }
  }
  if (cfg.order == DemandOrder::LongestFirst) {
    std::stable_sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return a.cost > b.cost; });
  }

  Spectrum spectrum(t.arc_count(), cfg.budget(inst));
  std::int64_t checks = 0;
  std::vector<DemandRecord> records;

  auto fail = [&] {
    sol.status = Status::Infeasible;
    sol.demands.clear();
    sol.stats.nodes_expanded = checks;
    refresh_metrics(sol);
    return sol;
  };

  for (const auto& job : jobs) {
    DemandRecord rec{job.kind, job.index, std::nullopt, {}};
    if (job.kind == DemandKind::Comm) {
      const auto& c = inst.comm[static_cast<std::size_t>(job.index)];
      const auto cands = candidates(t, c.src, c.dst, k);
      auto hit = first_fit(spectrum, cands, checks);
      if (!hit) return fail();
      spectrum.take(hit->second, hit->first->arcs);
      rec.segments.push_back({0, make_lightpath(*hit->first, hit->second)});
    } else if (cfg.mode == Mode::Bypass) {
      const auto& q = inst.comp[static_cast<std::size_t>(job.index)];
      rec.computing_node = q.dst;
      const auto [first, second] = decompose_bypass(q);
      int seg = 1;
      for (const auto& c : {first, second}) {
        const auto cands = candidates(t, c.src, c.dst, k);
        auto hit = first_fit(spectrum, cands, checks);
        if (!hit) return fail();
        spectrum.take(hit->second, hit->first->arcs);
        rec.segments.push_back({seg++, make_lightpath(*hit->first, hit->second)});
      }
    } else {
      const auto& q = inst.comp[static_cast<std::size_t>(job.index)];
      const NodeId x = *job.x;
      rec.computing_node = x;
      const auto c1 = candidates(t, q.src1, x, k);
      const auto c2 = candidates(t, q.src2, x, k);
      const auto c3 = candidates(t, x, q.dst, k);

      if (cfg.coupling == Coupling::PerDemand) {
        bool placed = false;
        for (int lambda = 0; lambda < spectrum.budget() && !placed; ++lambda) {
          for (const auto& r3 : c3) {
            ++checks;
            if (!spectrum.fits(lambda, r3.arcs)) continue;
            for (const auto& r1 : c1) {
              if (r1.arcs.intersects(r3.arcs) || !spectrum.fits(lambda, r1.arcs)) continue;
              for (const auto& r2 : c2) {
                ++checks;
                if (r2.arcs.intersects(r3.arcs) || r2.arcs.intersects(r1.arcs) || !spectrum.fits(lambda, r2.arcs))
                  continue;
                for (const auto* r : {&r1, &r2, &r3}) spectrum.take(lambda, r->arcs);
                if (x != q.src1) rec.segments.push_back({1, make_lightpath(r1, lambda)});
                if (x != q.src2) rec.segments.push_back({2, make_lightpath(r2, lambda)});
                rec.segments.push_back({3, make_lightpath(r3, lambda)});
                placed = true;
                break;
              }
              if (placed) break;
            }
            if (placed) break;
          }
        }
        if (!placed) return fail();
      } else {
        const std::pair<int, const std::vector<Candidate>*> legs[] = {{1, &c1}, {2, &c2}, {3, &c3}};
        for (const auto& [seg, cands] : legs) {
          if ((seg == 1 && x == q.src1) || (seg == 2 && x == q.src2)) continue;
          auto hit = first_fit(spectrum, *cands, checks);
          if (!hit) return fail();
          spectrum.take(hit->second, hit->first->arcs);
          rec.segments.push_back({seg, make_lightpath(*hit->first, hit->second)});
        }
      }
    }
    records.push_back(std::move(rec));
  }

  std::sort(records.begin(), records.end(), [](const DemandRecord& a, const DemandRecord& b) {
    return std::tie(a.kind, a.index) < std::tie(b.kind, b.index);
  });
  sol.demands = std::move(records);
  sol.stats.nodes_expanded = checks;
  refresh_metrics(sol);
  return sol;
}

}  // namespace occin
