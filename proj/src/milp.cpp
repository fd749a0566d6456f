#include "occin/milp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace occin {

namespace {

std::optional<int> take_number(std::string_view& s, std::string_view tag) {
  if (s.substr(0, tag.size()) != tag) return std::nullopt;
  s.remove_prefix(tag.size());
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p == s.data() || v < 0) return std::nullopt;
  s.remove_prefix(static_cast<std::size_t>(p - s.data()));
  return v;
}

void add_term(std::vector<Term>& terms, int coef, int var) { terms.push_back({coef, var}); }

class Builder {
 public:
  Builder(const Instance& i, Mode mode, Coupling coupling, const EncodeOptions& opt) : i_(i), t_(i.topology) {
    m_.mode = mode;
    m_.coupling = coupling;
    m_.wavelengths = opt.wavelengths > 0 ? opt.wavelengths : i.max_wavelengths;
    if (m_.wavelengths < 1) throw std::invalid_argument("max_wavelengths must be at least 1");
    secondary_ = opt.secondary_objective;

    int id = 1;
    for (std::size_t d = 0; d < i.comm.size(); ++d) {
      m_.demands.push_back({id++, DemandKind::Comm, static_cast<int>(d), 0, false, i.comm[d].src, i.comm[d].dst, {}});
    }
    for (std::size_t d = 0; d < i.comp.size(); ++d) {
      const auto& q = i.comp[d];
      if (mode == Mode::Bypass) {
        const auto [a, b] = decompose_bypass(q);
        m_.demands.push_back({id++, DemandKind::Comp, static_cast<int>(d), 1, false, a.src, a.dst, q});
        m_.demands.push_back({id++, DemandKind::Comp, static_cast<int>(d), 2, false, b.src, b.dst, q});
      } else {
        m_.demands.push_back({id++, DemandKind::Comp, static_cast<int>(d), 0, true, {}, q.dst, q});
      }
    }
  }

  IlpModel build() {
    declare_variables();
    objective();
    for (const auto& d : m_.demands) assignment_rows(d);
    for (const auto& d : m_.demands) {
      if (d.compute) computing_rows(d);
    }
    for (const auto& d : m_.demands) conservation_rows(d);
    clash_rows();
    use_rows();
    symmetry_rows();
    return std::move(m_);
  }

 private:
  int W() const { return m_.wavelengths; }
  int A() const { return t_.arc_count(); }
  int N() const { return t_.node_count(); }

  std::vector<int> segments_of(const ModelDemand& d) const {
    if (d.compute) return {1, 2, 3};
    return {d.segment == 0 ? 0 : d.segment};
  }
  // Segment index as printed in flow names: comm 0, decomposed legs 1/2.
  int flow_segment(const ModelDemand& d, int k) const { return d.compute ? k : d.segment; }
  int assign_segment(const ModelDemand& d, int k) const {
    return d.compute && m_.coupling == Coupling::PerSegment ? k : 0;
  }

  int var(const VarKey& k) const { return *m_.find(k); }
  int f(const ModelDemand& d, int k, int w, int e) const {
    return var({VarKind::Flow, d.id, flow_segment(d, k), w, e, 0});
  }
  int a(const ModelDemand& d, int k, int w) const { return var({VarKind::Assign, d.id, assign_segment(d, k), w, 0, 0}); }
  int z(const ModelDemand& d, int k, int w, int v) const {
    return var({VarKind::Linearize, d.id, assign_segment(d, k), w, 0, v});
  }
  int c(const ModelDemand& d, int v) const { return var({VarKind::CompNode, d.id, 0, 0, 0, v}); }
  int u(int w) const { return var({VarKind::Use, 0, 0, w, 0, 0}); }

  void declare_variables() {
    for (const auto& d : m_.demands) {
      for (int k : segments_of(d)) {
        for (int w = 1; w <= W(); ++w) {
          for (int e = 1; e <= A(); ++e) m_.add_variable({VarKind::Flow, d.id, flow_segment(d, k), w, e, 0});
        }
      }
    }
    for (const auto& d : m_.demands) {
      std::vector<int> ks = {0};
      if (d.compute && m_.coupling == Coupling::PerSegment) ks = {1, 2, 3};
      for (int k : ks) {
        for (int w = 1; w <= W(); ++w) m_.add_variable({VarKind::Assign, d.id, k, w, 0, 0});
      }
    }
    for (int w = 1; w <= W(); ++w) m_.add_variable({VarKind::Use, 0, 0, w, 0, 0});
    for (const auto& d : m_.demands) {
      if (!d.compute) continue;
      for (int v = 1; v <= N(); ++v) m_.add_variable({VarKind::CompNode, d.id, 0, 0, 0, v});
    }
    for (const auto& d : m_.demands) {
      if (!d.compute) continue;
      std::vector<int> ks = {0};
      if (m_.coupling == Coupling::PerSegment) ks = {1, 2, 3};
      for (int k : ks) {
        for (int w = 1; w <= W(); ++w) {
          for (int v = 1; v <= N(); ++v) m_.add_variable({VarKind::Linearize, d.id, k, w, 0, v});
        }
      }
    }
  }

  void objective() {
    int flows = 0;
    for (const auto& k : m_.variables) flows += k.kind == VarKind::Flow;
    const int weight = secondary_ ? flows + 1 : 1;
    for (int w = 1; w <= W(); ++w) add_term(m_.objective, weight, u(w));
    if (!secondary_) return;
    for (std::size_t v = 0; v < m_.variables.size(); ++v) {
      if (m_.variables[v].kind == VarKind::Flow) add_term(m_.objective, 1, static_cast<int>(v));
    }
  }

  void row(std::string name, std::vector<Term> terms, Sense sense, int rhs) {
    m_.constraints.push_back({std::move(name), std::move(terms), sense, rhs});
  }

  std::string tag(const ModelDemand& d, int k) const {
    std::string s = "_d" + std::to_string(d.id);
    if (k > 0) s += "_s" + std::to_string(k);
    return s;
  }

  void assignment_rows(const ModelDemand& d) {
    std::vector<int> ks = {0};
    if (d.compute && m_.coupling == Coupling::PerSegment) ks = {1, 2, 3};
    for (int k : ks) {
      std::vector<Term> terms;
      for (int w = 1; w <= W(); ++w) add_term(terms, 1, a(d, k, w));
      row("assign" + tag(d, k), std::move(terms), Sense::Equal, 1);
    }
  }

  void computing_rows(const ModelDemand& d) {
    const std::string q = "_q" + std::to_string(d.id);
    std::vector<Term> one;
    for (int v = 1; v <= N(); ++v) add_term(one, 1, c(d, v));
    row("one_node" + q, std::move(one), Sense::Equal, 1);
    row("not_dest" + q, {{1, c(d, d.q.dst.external())}}, Sense::Equal, 0);

    std::vector<int> ks = {0};
    if (m_.coupling == Coupling::PerSegment) ks = {1, 2, 3};
    for (int k : ks) {
      for (int w = 1; w <= W(); ++w) {
        for (int v = 1; v <= N(); ++v) {
          std::string s = q;
          if (k > 0) s += "_s" + std::to_string(k);
          s += "_w" + std::to_string(w) + "_v" + std::to_string(v);
          const int zv = z(d, k, w, v);
          row("lin_a" + s, {{1, zv}, {-1, a(d, k, w)}}, Sense::LessEqual, 0);
          row("lin_c" + s, {{1, zv}, {-1, c(d, v)}}, Sense::LessEqual, 0);
          row("lin_ac" + s, {{1, zv}, {-1, a(d, k, w)}, {-1, c(d, v)}}, Sense::GreaterEqual, -1);
        }
      }
    }
  }

  void conservation_rows(const ModelDemand& d) {
    for (int k : segments_of(d)) {
      for (int w = 1; w <= W(); ++w) {
        for (int v = 0; v < N(); ++v) {
          const NodeId node{v};
          std::vector<Term> terms;
          for (int e : t_.out_arcs(node)) add_term(terms, 1, f(d, k, w, e + 1));
          for (int e : t_.in_arcs(node)) add_term(terms, -1, f(d, k, w, e + 1));
          if (!d.compute) {
            if (node == d.src) add_term(terms, -1, a(d, k, w));
            if (node == d.dst) add_term(terms, 1, a(d, k, w));
          } else if (k == 1 || k == 2) {
            const NodeId s = k == 1 ? d.q.src1 : d.q.src2;
            if (node == s) add_term(terms, -1, a(d, k, w));
            add_term(terms, 1, z(d, assign_segment(d, k), w, v + 1));
          } else {
            add_term(terms, -1, z(d, assign_segment(d, k), w, v + 1));
            if (node == d.q.dst) add_term(terms, 1, a(d, k, w));
          }
          row("flow" + tag(d, flow_segment(d, k)) + "_w" + std::to_string(w) + "_v" + std::to_string(v + 1),
              std::move(terms), Sense::Equal, 0);
        }
      }
    }
  }

  void clash_rows() {
    for (int w = 1; w <= W(); ++w) {
      for (int e = 1; e <= A(); ++e) {
        std::vector<Term> terms;
        for (const auto& d : m_.demands) {
          for (int k : segments_of(d)) add_term(terms, 1, f(d, k, w, e));
        }
        row("clash_w" + std::to_string(w) + "_e" + std::to_string(e), std::move(terms), Sense::LessEqual, 1);
      }
    }
  }

  void use_rows() {
    for (const auto& d : m_.demands) {
      for (int k : segments_of(d)) {
        for (int w = 1; w <= W(); ++w) {
          for (int e = 1; e <= A(); ++e) {
            row("use" + tag(d, flow_segment(d, k)) + "_w" + std::to_string(w) + "_e" + std::to_string(e),
                {{1, f(d, k, w, e)}, {-1, u(w)}}, Sense::LessEqual, 0);
          }
        }
      }
    }
  }

  void symmetry_rows() {
    for (int w = 1; w < W(); ++w) {
      row("sym_w" + std::to_string(w), {{1, u(w)}, {-1, u(w + 1)}}, Sense::GreaterEqual, 0);
    }
  }

  const Instance& i_;
  const Topology& t_;
  IlpModel m_;
  bool secondary_ = false;
};

// Unit flow arcs of one segment on one wavelength, walked into a simple route.
std::vector<NodeId> walk(const Topology& t, std::vector<char> arcs, NodeId src, NodeId dst, const std::string& what) {
  std::vector<NodeId> route{src};
  NodeId cur = src;
  while (cur != dst) {
    int next = -1;
    for (int e : t.out_arcs(cur)) {
      if (arcs[static_cast<std::size_t>(e)]) {
        next = e;
        break;
      }
    }
    if (next < 0) throw DecodeError("flow of " + what + " stops at node " + std::to_string(cur.external()));
    arcs[static_cast<std::size_t>(next)] = 0;
    cur = t.arc(next).head;
    auto seen = std::find(route.begin(), route.end(), cur);
    if (seen != route.end()) {
      route.erase(seen + 1, route.end());
    } else {
      route.push_back(cur);
    }
  }
  return route;
}

}  // namespace

std::string VarKey::name() const {
  auto n = [](int v) { return std::to_string(v); };
  const std::string seg = segment > 0 ? "_s" + n(segment) : "";
  switch (kind) {
    case VarKind::Flow:
      return "f_d" + n(demand) + "_s" + n(segment) + "_w" + n(wavelength) + "_e" + n(arc);
    case VarKind::Assign:
      return "a_d" + n(demand) + seg + "_w" + n(wavelength);
    case VarKind::Use:
      return "u_" + n(wavelength);
    case VarKind::CompNode:
      return "c_q" + n(demand) + "_v" + n(node);
    case VarKind::Linearize:
      return "z_q" + n(demand) + seg + "_w" + n(wavelength) + "_v" + n(node);
  }
  return {};
}

std::optional<VarKey> VarKey::parse(std::string_view s) {
  if (s.size() < 3 || s[1] != '_') return std::nullopt;
  VarKey k;
  const char head = s[0];
  s.remove_prefix(2);
  auto num = [&](std::string_view tag) { return take_number(s, tag); };
  auto optional_segment = [&]() -> std::optional<int> {
    if (s.substr(0, 2) != "_s") return 0;
    auto v = num("_s");
    if (!v || *v < 1 || *v > 3) return std::nullopt;
    return v;
  };
  std::optional<int> a, b, c, d;
  switch (head) {
    case 'f':
      k.kind = VarKind::Flow;
      a = num("d");
      b = num("_s");
      c = num("_w");
      d = num("_e");
      if (!a || !b || !c || !d || *b > 3) return std::nullopt;
      k.demand = *a;
      k.segment = *b;
      k.wavelength = *c;
      k.arc = *d;
      break;
    case 'a':
      k.kind = VarKind::Assign;
      a = num("d");
      b = optional_segment();
      c = num("_w");
      if (!a || !b || !c) return std::nullopt;
      k.demand = *a;
      k.segment = *b;
      k.wavelength = *c;
      break;
    case 'u':
      k.kind = VarKind::Use;
      c = num("");
      if (!c) return std::nullopt;
      k.wavelength = *c;
      break;
    case 'c':
      k.kind = VarKind::CompNode;
      a = num("q");
      d = num("_v");
      if (!a || !d) return std::nullopt;
      k.demand = *a;
      k.node = *d;
      break;
    case 'z':
      k.kind = VarKind::Linearize;
      a = num("q");
      b = optional_segment();
      c = num("_w");
      d = num("_v");
      if (!a || !b || !c || !d) return std::nullopt;
      k.demand = *a;
      k.segment = *b;
      k.wavelength = *c;
      k.node = *d;
      break;
    default:
      return std::nullopt;
  }
  if (!s.empty()) return std::nullopt;
  return k;
}

std::optional<int> IlpModel::find(const VarKey& k) const {
  auto it = index_.find(k);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int IlpModel::add_variable(const VarKey& k) {
  auto [it, inserted] = index_.emplace(k, static_cast<int>(variables.size()));
  if (inserted) variables.push_back(k);
  return it->second;
}

IlpModel encode_rwa(const Instance& i, const EncodeOptions& opt) {
  return Builder(i, Mode::Bypass, Coupling::PerDemand, opt).build();
}

IlpModel encode_rwca(const Instance& i, Coupling coupling, const EncodeOptions& opt) {
  return Builder(i, Mode::Occin, coupling, opt).build();
}

IlpModel encode(const Instance& i, const SolveConfig& cfg) {
  EncodeOptions opt;
  opt.wavelengths = cfg.budget(i);
  opt.secondary_objective = cfg.secondary_objective;
  return cfg.mode == Mode::Bypass ? encode_rwa(i, opt) : encode_rwca(i, cfg.coupling, opt);
}

std::string export_lp(const IlpModel& m) {
  std::ostringstream os;
  constexpr std::size_t wrap = 200;
  auto expression = [&](const std::vector<Term>& terms, std::string line) {
    bool first = true;
    for (const auto& t : terms) {
      std::string piece;
      if (!first || t.coef < 0) piece += t.coef < 0 ? " - " : " + ";
      if (first && t.coef >= 0) piece += " ";
      const int mag = std::abs(t.coef);
      if (mag != 1) piece += std::to_string(mag) + " ";
      piece += m.variables[static_cast<std::size_t>(t.var)].name();
      if (line.size() + piece.size() > wrap) {
        os << line << '\n';
        line.clear();
      }
      line += piece;
      first = false;
    }
    if (terms.empty()) line += " 0 " + m.variables.front().name();
    return line;
  };

  os << "\\ occin model: " << (m.mode == Mode::Bypass ? "rwa" : "rwca") << ", coupling "
     << to_string(m.coupling) << ", " << m.wavelengths << " wavelengths\n";
  os << "Minimize\n";
  std::string objective = expression(m.objective, "");
  if (!objective.empty() && objective.front() == ' ') objective.erase(0, 1);
  os << objective << '\n';
  os << "Subject To\n";
  for (const auto& c : m.constraints) {
    std::string line = expression(c.terms, " " + c.name + ":");
    const char* sense = c.sense == Sense::LessEqual ? " <= " : c.sense == Sense::GreaterEqual ? " >= " : " = ";
    os << line << sense << c.rhs << '\n';
  }
  os << "Bounds\n";
  for (const auto& v : m.variables) os << " 0 <= " << v.name() << " <= 1\n";
  os << "Binaries\n";
  std::string line;
  for (const auto& v : m.variables) {
    const std::string name = v.name();
    if (line.size() + name.size() + 1 > wrap) {
      os << line << '\n';
      line.clear();
    }
    line += " " + name;
  }
  if (!line.empty()) os << line << '\n';
  os << "End\n";
  return os.str();
}

Solution decode_solution(const IlpModel& m, const Assignment& values, const Instance& inst) {
  const Topology& t = inst.topology;
  std::vector<int> x(m.variables.size(), 0);
  for (const auto& [key, value] : values) {
    auto idx = m.find(key);
    if (!idx) throw DecodeError("variable " + key.name() + " is not part of the model");
    if (value != 0 && value != 1) throw DecodeError("variable " + key.name() + " is not binary");
    x[static_cast<std::size_t>(*idx)] = value;
  }
  for (const auto& c : m.constraints) {
    long lhs = 0;
    for (const auto& term : c.terms) lhs += static_cast<long>(term.coef) * x[static_cast<std::size_t>(term.var)];
    const bool ok = c.sense == Sense::Equal          ? lhs == c.rhs
                    : c.sense == Sense::LessEqual    ? lhs <= c.rhs
                                                     : lhs >= c.rhs;
    if (!ok) throw DecodeError("constraint " + c.name + " violated");
  }

  auto value = [&](const VarKey& k) { return x[static_cast<std::size_t>(*m.find(k))]; };
  auto chosen_wavelength = [&](int demand, int segment) {
    for (int w = 1; w <= m.wavelengths; ++w) {
      if (value({VarKind::Assign, demand, segment, w, 0, 0})) return w;
    }
    throw DecodeError("demand " + std::to_string(demand) + " has no wavelength");
  };
  auto route_of = [&](int demand, int segment, int w, NodeId src, NodeId dst) {
    std::vector<char> arcs(static_cast<std::size_t>(t.arc_count()), 0);
    for (int e = 0; e < t.arc_count(); ++e) arcs[static_cast<std::size_t>(e)] = value({VarKind::Flow, demand, segment, w, e + 1, 0});
    return walk(t, std::move(arcs), src, dst, "demand " + std::to_string(demand) + " segment " + std::to_string(segment));
  };

  Solution sol;
  sol.mode = m.mode;
  sol.coupling = m.coupling;
  sol.status = Status::Feasible;
  for (const auto& d : m.demands) {
    auto rec_it = std::find_if(sol.demands.begin(), sol.demands.end(),
                               [&](const DemandRecord& r) { return r.kind == d.kind && r.index == d.index; });
    if (rec_it == sol.demands.end()) {
      sol.demands.push_back({d.kind, d.index, std::nullopt, {}});
      rec_it = sol.demands.end() - 1;
    }
    DemandRecord& rec = *rec_it;
    if (!d.compute) {
      const int w = chosen_wavelength(d.id, 0);
      if (d.kind == DemandKind::Comp) rec.computing_node = d.dst;
      rec.segments.push_back({d.segment, Lightpath{route_of(d.id, d.segment, w, d.src, d.dst), w}});
      continue;
    }
    std::optional<NodeId> node;
    for (int v = 1; v <= t.node_count(); ++v) {
      if (value({VarKind::CompNode, d.id, 0, 0, 0, v})) node = NodeId::from_external(v);
    }
    rec.computing_node = node;
    for (int k = 1; k <= 3; ++k) {
      const NodeId from = k == 1 ? d.q.src1 : k == 2 ? d.q.src2 : *node;
      const NodeId to = k == 3 ? d.q.dst : *node;
      if (from == to) continue;
      const int w = chosen_wavelength(d.id, m.coupling == Coupling::PerSegment ? k : 0);
      rec.segments.push_back({k, Lightpath{route_of(d.id, k, w, from, to), w}});
    }
  }
  std::sort(sol.demands.begin(), sol.demands.end(), [](const DemandRecord& a, const DemandRecord& b) {
    return std::tie(a.kind, a.index) < std::tie(b.kind, b.index);
  });
  refresh_metrics(sol);
  return sol;
}

Assignment parse_assignment(std::string_view text) {
  Assignment out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (line.substr(0, 6) == "# Dual") break;
    if (line.empty() || line.front() == '#') continue;

    std::istringstream is{std::string(line)};
    std::string name, value;
    if (!(is >> name >> value)) continue;
    auto key = VarKey::parse(name);
    if (!key) continue;
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
      throw std::runtime_error("line " + std::to_string(line_no) + ": invalid value '" + value + "'");
    }
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-6 || (r != 0.0 && r != 1.0)) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + name + " is not binary");
    }
    out[*key] = static_cast<int>(r);
  }
  if (out.empty()) throw std::runtime_error("assignment contains no variable values");
  return out;
}

Assignment assignment_from_solution(const IlpModel& m, const Solution& s, const Instance& inst) {
  const Topology& t = inst.topology;
  Assignment out;
  auto set = [&](const VarKey& k) {
    if (!m.find(k)) throw std::invalid_argument("solution does not fit the model: " + k.name());
    out[k] = 1;
  };
  auto mark_route = [&](int demand, int segment, const Lightpath& lp) {
    for (std::size_t h = 0; h + 1 < lp.route.size(); ++h) {
      auto arc = t.find_arc(lp.route[h], lp.route[h + 1]);
      if (!arc) throw std::invalid_argument("route uses a missing link");
      set({VarKind::Flow, demand, segment, lp.wavelength, *arc + 1, 0});
    }
  };
  auto record = [&](const ModelDemand& d) -> const DemandRecord& {
    for (const auto& r : s.demands) {
      if (r.kind == d.kind && r.index == d.index) return r;
    }
    throw std::invalid_argument("solution does not serve demand " + std::to_string(d.id));
  };
  auto segment = [](const DemandRecord& r, int k) -> const SegmentLightpath* {
    for (const auto& seg : r.segments) {
      if (seg.segment == k) return &seg;
    }
    return nullptr;
  };

  int top = 0;
  for (const auto& d : m.demands) {
    const DemandRecord& rec = record(d);
    if (!d.compute) {
      const auto* seg = segment(rec, d.segment);
      if (!seg) throw std::invalid_argument("solution lacks a lightpath for demand " + std::to_string(d.id));
      set({VarKind::Assign, d.id, 0, seg->lightpath.wavelength, 0, 0});
      mark_route(d.id, d.segment, seg->lightpath);
      top = std::max(top, seg->lightpath.wavelength);
      continue;
    }
    if (!rec.computing_node) throw std::invalid_argument("computing request without a computing node");
    const int x = rec.computing_node->external();
    set({VarKind::CompNode, d.id, 0, 0, 0, x});
    const auto* last = segment(rec, 3);
    if (!last) throw std::invalid_argument("computing request without a final segment");
    for (int k = 1; k <= 3; ++k) {
      const auto* seg = segment(rec, k);
      const int w = seg ? seg->lightpath.wavelength : last->lightpath.wavelength;
      top = std::max(top, w);
      if (seg) mark_route(d.id, k, seg->lightpath);
      if (m.coupling == Coupling::PerSegment) {
        set({VarKind::Assign, d.id, k, w, 0, 0});
        set({VarKind::Linearize, d.id, k, w, 0, x});
      } else if (k == 3) {
        set({VarKind::Assign, d.id, 0, w, 0, 0});
        set({VarKind::Linearize, d.id, 0, w, 0, x});
      }
    }
  }
  // Symmetry rows need a prefix of wavelengths in use.
  for (int w = 1; w <= top; ++w) set({VarKind::Use, 0, 0, w, 0, 0});
  return out;
}

}  // namespace occin
