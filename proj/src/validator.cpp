#include "occin/validator.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

namespace occin {

namespace {

std::string kind_name(DemandKind k) { return k == DemandKind::Comm ? "comm" : "comp"; }

class Checker {
 public:
  Checker(const Solution& s, const Instance& i, const SolveConfig& cfg)
      : s_(s), i_(i), t_(i.topology), cfg_(cfg), budget_(cfg.budget(i)) {}

  ValidationReport run() {
    coverage();
    for (const auto& rec : s_.demands) record(rec);
    report_.ok = report_.violations.empty();
    return std::move(report_);
  }

 private:
  void add(std::string rule, std::string detail, std::vector<std::string> entities) {
    report_.violations.push_back({std::move(rule), std::move(detail), std::move(entities)});
  }

  static std::string who(const DemandRecord& r) { return kind_name(r.kind) + " " + std::to_string(r.index + 1); }
  static std::string who(const DemandRecord& r, int segment) {
    return who(r) + " segment " + std::to_string(segment);
  }

  void coverage() {
    std::map<std::pair<DemandKind, int>, int> seen;
    for (const auto& rec : s_.demands) {
      const std::size_t limit = rec.kind == DemandKind::Comm ? i_.comm.size() : i_.comp.size();
      if (rec.index < 0 || static_cast<std::size_t>(rec.index) >= limit) {
        add("R7", "record for a demand that is not in the instance", {who(rec)});
        continue;
      }
      if (++seen[{rec.kind, rec.index}] == 2) add("R7", "demand served more than once", {who(rec)});
    }
    for (std::size_t d = 0; d < i_.comm.size(); ++d) {
      if (!seen.count({DemandKind::Comm, static_cast<int>(d)})) {
        add("R7", "demand not served", {"comm " + std::to_string(d + 1)});
      }
    }
    for (std::size_t d = 0; d < i_.comp.size(); ++d) {
      if (!seen.count({DemandKind::Comp, static_cast<int>(d)})) {
        add("R7", "demand not served", {"comp " + std::to_string(d + 1)});
      }
    }
  }

  bool in_range(NodeId v) const { return v.value >= 0 && v.value < t_.node_count(); }

  // Route shape, wavelength range and occupancy; returns false if the route is unusable.
  bool lightpath(const DemandRecord& rec, const SegmentLightpath& seg) {
    const auto& lp = seg.lightpath;
    const std::string name = who(rec, seg.segment);
    if (lp.wavelength < 1 || lp.wavelength > budget_) {
      add("R8", "wavelength " + std::to_string(lp.wavelength) + " outside 1.." + std::to_string(budget_),
          {name, "lambda " + std::to_string(lp.wavelength)});
    }
    if (lp.route.size() < 2) {
      add("R1", "route has fewer than two nodes", {name});
      return false;
    }
    for (NodeId v : lp.route) {
      if (!in_range(v)) {
        add("R1", "route visits unknown node " + std::to_string(v.external()), {name});
        return false;
      }
    }
    std::vector<NodeId> sorted = lp.route;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      add("R1", "route " + format_route(lp.route) + " repeats a node", {name});
      return false;
    }
    bool ok = true;
    for (std::size_t h = 0; h + 1 < lp.route.size(); ++h) {
      const auto arc = t_.find_arc(lp.route[h], lp.route[h + 1]);
      const std::string link = std::to_string(lp.route[h].external()) + "->" + std::to_string(lp.route[h + 1].external());
      if (!arc) {
        add("R1", "route uses missing link " + link, {name, "link " + link});
        ok = false;
        continue;
      }
      auto [it, fresh] = owner_.emplace(std::make_pair(*arc, lp.wavelength), name);
      if (!fresh) {
        add("R2", "link " + link + " carries lambda " + std::to_string(lp.wavelength) + " twice",
            {it->second, name, "link " + link, "lambda " + std::to_string(lp.wavelength)});
      }
    }
    return ok;
  }

  void endpoints(const DemandRecord& rec, const SegmentLightpath& seg, NodeId src, NodeId dst) {
    const auto& r = seg.lightpath.route;
    if (r.empty()) return;
    if (r.front() != src || r.back() != dst) {
      add("R4",
          "segment " + std::to_string(seg.segment) + " runs " + std::to_string(r.front().external()) + "->" +
              std::to_string(r.back().external()) + ", expected " + std::to_string(src.external()) + "->" +
              std::to_string(dst.external()),
          {who(rec, seg.segment)});
    }
  }

  void expect_segments(const DemandRecord& rec, std::vector<int> want) {
    std::vector<int> have;
    for (const auto& seg : rec.segments) have.push_back(seg.segment);
    std::sort(have.begin(), have.end());
    if (have != want) {
      std::string list;
      for (int k : want) list += (list.empty() ? "" : ",") + std::to_string(k);
      add("R4", "expected segments {" + list + "}", {who(rec)});
    }
  }

  void record(const DemandRecord& rec) {
    for (const auto& seg : rec.segments) lightpath(rec, seg);
    const std::size_t limit = rec.kind == DemandKind::Comm ? i_.comm.size() : i_.comp.size();
    if (rec.index < 0 || static_cast<std::size_t>(rec.index) >= limit) return;

    if (rec.kind == DemandKind::Comm) {
      const auto& d = i_.comm[static_cast<std::size_t>(rec.index)];
      expect_segments(rec, {0});
      for (const auto& seg : rec.segments) {
        if (seg.segment == 0) endpoints(rec, seg, d.src, d.dst);
      }
      return;
    }

    const auto& q = i_.comp[static_cast<std::size_t>(rec.index)];
    if (cfg_.mode == Mode::Bypass) {
      if (rec.computing_node && *rec.computing_node != q.dst) {
        add("R4", "bypass computation happens at the destination", {who(rec)});
      }
      expect_segments(rec, {1, 2});
      for (const auto& seg : rec.segments) {
        if (seg.segment == 1) endpoints(rec, seg, q.src1, q.dst);
        if (seg.segment == 2) endpoints(rec, seg, q.src2, q.dst);
      }
      return;
    }

    if (!rec.computing_node || !in_range(*rec.computing_node)) {
      add("R4", "computing request without a valid computing node", {who(rec)});
      return;
    }
    const NodeId x = *rec.computing_node;
    if (x == q.dst) {
      add("R5", "computing node " + std::to_string(x.external()) + " is the destination",
          {who(rec), "node " + std::to_string(x.external())});
    }
    std::vector<int> want;
    if (x != q.src1) want.push_back(1);
    if (x != q.src2) want.push_back(2);
    want.push_back(3);
    expect_segments(rec, want);
    for (const auto& seg : rec.segments) {
      if (seg.segment == 1) endpoints(rec, seg, q.src1, x);
      if (seg.segment == 2) endpoints(rec, seg, q.src2, x);
      if (seg.segment == 3) endpoints(rec, seg, x, q.dst);
    }
    if (cfg_.coupling == Coupling::PerDemand) {
      for (const auto& seg : rec.segments) {
        if (seg.lightpath.wavelength != rec.segments.front().lightpath.wavelength) {
          add("R6", "segments of one computing request use different wavelengths", {who(rec)});
          break;
        }
      }
    }
  }

  const Solution& s_;
  const Instance& i_;
  const Topology& t_;
  const SolveConfig& cfg_;
  int budget_;
  std::map<std::pair<int, int>, std::string> owner_;
  ValidationReport report_;
};

}  // namespace

bool ValidationReport::has(std::string_view rule) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.rule == rule; });
}

ValidationReport validate(const Solution& s, const Instance& i, const SolveConfig& cfg) {
  return Checker(s, i, cfg).run();
}

std::string report_to_json(const ValidationReport& r) {
  nlohmann::json doc;
  doc["schema"] = "occin.validation/1";
  doc["ok"] = r.ok;
  doc["violations"] = nlohmann::json::array();
  for (const auto& v : r.violations) {
    doc["violations"].push_back({{"rule", v.rule}, {"detail", v.detail}, {"entities", v.entities}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace occin
