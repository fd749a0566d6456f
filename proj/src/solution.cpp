#include "occin/solution.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace occin {

using nlohmann::json;

std::string_view to_string(Mode m) { return m == Mode::Bypass ? "bypass" : "occin"; }
std::string_view to_string(Coupling c) { return c == Coupling::PerDemand ? "demand" : "segment"; }
std::string_view to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Feasible: return "feasible";
    case Status::Infeasible: return "infeasible";
    case Status::LimitReached: return "limit_reached";
  }
  return "unknown";
}

Mode parse_mode(std::string_view s) {
  if (s == "bypass") return Mode::Bypass;
  if (s == "occin") return Mode::Occin;
  throw std::invalid_argument("unknown mode '" + std::string(s) + "' (expected bypass|occin)");
}

Coupling parse_coupling(std::string_view s) {
  if (s == "demand") return Coupling::PerDemand;
  if (s == "segment") return Coupling::PerSegment;
  throw std::invalid_argument("unknown coupling '" + std::string(s) + "' (expected demand|segment)");
}

Status parse_status(std::string_view s) {
  for (auto st : {Status::Optimal, Status::Feasible, Status::Infeasible, Status::LimitReached}) {
    if (to_string(st) == s) return st;
  }
  throw std::invalid_argument("unknown status '" + std::string(s) + "'");
}

SpectralMetrics metrics(const Solution& s) {
  std::set<int> used;
  SpectralMetrics m;
  for (const auto& d : s.demands) {
    for (const auto& seg : d.segments) {
      used.insert(seg.lightpath.wavelength);
      m.wavelength_link_units += seg.lightpath.hops();
    }
  }
  m.wavelength_count = static_cast<int>(used.size());
  return m;
}

void refresh_metrics(Solution& s) {
  const auto m = metrics(s);
  s.wavelength_count = m.wavelength_count;
  s.wavelength_link_units = m.wavelength_link_units;
}

std::string solution_to_json(const Solution& s, const Instance& i, bool with_timing) {
  json doc;
  doc["schema"] = "occin.solution/1";
  doc["mode"] = to_string(s.mode);
  doc["coupling"] = to_string(s.coupling);
  doc["status"] = to_string(s.status);

  json records = json::array();
  for (const auto& d : s.demands) {
    json rec;
    json demand;
    demand["kind"] = d.kind == DemandKind::Comm ? "comm" : "comp";
    demand["index"] = d.index + 1;
    if (d.kind == DemandKind::Comm && d.index >= 0 && static_cast<std::size_t>(d.index) < i.comm.size()) {
      const auto& c = i.comm[static_cast<std::size_t>(d.index)];
      demand["sources"] = {c.src.external()};
      demand["destination"] = c.dst.external();
    } else if (d.kind == DemandKind::Comp && d.index >= 0 && static_cast<std::size_t>(d.index) < i.comp.size()) {
      const auto& q = i.comp[static_cast<std::size_t>(d.index)];
      demand["sources"] = {q.src1.external(), q.src2.external()};
      demand["destination"] = q.dst.external();
    }
    rec["demand"] = demand;
    rec["computing_node"] = d.computing_node ? json(d.computing_node->external()) : json(nullptr);
    json segs = json::array();
    for (const auto& seg : d.segments) {
      json route = json::array();
      for (auto v : seg.lightpath.route) route.push_back(v.external());
      segs.push_back({{"segment", seg.segment}, {"route", route}, {"lambda", seg.lightpath.wavelength}});
    }
    rec["segments"] = segs;
    records.push_back(rec);
  }
  doc["demands"] = records;
  doc["metrics"] = {{"wavelength_count", s.wavelength_count},
                    {"wavelength_link_units", s.wavelength_link_units}};
  json stats = {{"nodes_expanded", s.stats.nodes_expanded}, {"lower_bound", s.stats.lower_bound}};
  if (with_timing) stats["time_ms"] = s.stats.elapsed_ms;
  doc["stats"] = stats;
  return doc.dump(2) + "\n";
}

Solution solution_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("solution document is not valid JSON: ") + e.what());
  }
  try {
    Solution s;
    s.mode = parse_mode(doc.at("mode").get<std::string>());
    s.coupling = parse_coupling(doc.value("coupling", std::string("demand")));
    s.status = parse_status(doc.value("status", std::string("feasible")));
    for (const auto& rec : doc.at("demands")) {
      DemandRecord d;
      const auto& demand = rec.at("demand");
      d.kind = demand.at("kind").get<std::string>() == "comp" ? DemandKind::Comp : DemandKind::Comm;
      d.index = demand.at("index").get<int>() - 1;
      if (rec.contains("computing_node") && !rec["computing_node"].is_null()) {
        d.computing_node = NodeId::from_external(rec["computing_node"].get<int>());
      }
      for (const auto& seg : rec.at("segments")) {
        SegmentLightpath sl;
        sl.segment = seg.value("segment", 0);
        sl.lightpath.wavelength = seg.at("lambda").get<int>();
        for (const auto& v : seg.at("route")) sl.lightpath.route.push_back(NodeId::from_external(v.get<int>()));
        d.segments.push_back(std::move(sl));
      }
      s.demands.push_back(std::move(d));
    }
    if (doc.contains("stats")) {
      const auto& st = doc["stats"];
      s.stats.nodes_expanded = st.value("nodes_expanded", std::int64_t{0});
      s.stats.lower_bound = st.value("lower_bound", 0);
      s.stats.elapsed_ms = st.value("time_ms", 0.0);
    }
    refresh_metrics(s);
    return s;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed solution document: ") + e.what());
  }
}

std::string solution_to_csv(const Solution& s) {
  std::ostringstream os;
  os << "kind,index,computing_node,segment,route,lambda\n";
  for (const auto& d : s.demands) {
    for (const auto& seg : d.segments) {
      os << (d.kind == DemandKind::Comm ? "comm" : "comp") << ',' << d.index + 1 << ',';
      if (d.computing_node) os << d.computing_node->external();
      os << ',' << seg.segment << ',' << format_route(seg.lightpath.route) << ',' << seg.lightpath.wavelength
         << '\n';
    }
  }
  return os.str();
}

}  // namespace occin
