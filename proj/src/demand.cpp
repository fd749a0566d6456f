#include "occin/demand.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>

#include "occin/random.hpp"

namespace occin {

namespace {

std::string ext(NodeId v) { return std::to_string(v.external()); }

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

void check_comm(const Topology& t, const CommDemand& d, const std::string& where) {
  if (!t.contains(d.src) || !t.contains(d.dst)) throw DemandError(where + "endpoint outside the topology");
  if (d.src == d.dst) throw DemandError(where + "source equals destination (" + ext(d.src) + ")");
}

void check_comp(const Topology& t, const CompDemand& q, const std::string& where) {
  if (!t.contains(q.src1) || !t.contains(q.src2) || !t.contains(q.dst))
    throw DemandError(where + "endpoint outside the topology");
  if (q.src1 == q.src2 || q.src1 == q.dst || q.src2 == q.dst)
    throw DemandError(where + "computing request endpoints must be pairwise distinct (" + ext(q.src1) + "," +
                      ext(q.src2) + "," + ext(q.dst) + ")");
}

std::vector<CompDemand> pair_up(const std::vector<int>& order, NodeId dst) {
  std::vector<CompDemand> comp;
  for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
    const int a = std::min(order[i], order[i + 1]);
    const int b = std::max(order[i], order[i + 1]);
    comp.push_back(CompDemand{NodeId{a}, NodeId{b}, dst});
  }
  std::sort(comp.begin(), comp.end(), [](const CompDemand& x, const CompDemand& y) {
    return x.src1 < y.src1;
  });
  return comp;
}

void shuffle(std::vector<int>& v, PortableRng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

void check_destination(const Topology& t, NodeId dst) {
  if (!t.contains(dst)) {
    throw DemandError("destination " + ext(dst) + " outside 1.." + std::to_string(t.node_count()));
  }
  if ((t.node_count() - 1) % 2 != 0) {
    throw DemandError("odd number of non-destination nodes (" + std::to_string(t.node_count() - 1) +
                      "); cannot pair them into computing requests");
  }
}

}  // namespace

void Instance::check() const {
  if (max_wavelengths < 1) throw DemandError("max_wavelengths must be >= 1");
  for (std::size_t i = 0; i < comm.size(); ++i) check_comm(topology, comm[i], "comm demand " + std::to_string(i + 1) + ": ");
  for (std::size_t i = 0; i < comp.size(); ++i) check_comp(topology, comp[i], "comp demand " + std::to_string(i + 1) + ": ");
}

int default_wavelength_bound(std::size_t comm_count, std::size_t comp_count) {
  return std::max(1, static_cast<int>(comm_count + 2 * comp_count));
}

Instance make_instance(Topology t, std::vector<CommDemand> comm, std::vector<CompDemand> comp,
                       int max_wavelengths) {
  Instance i{std::move(t), std::move(comm), std::move(comp), max_wavelengths};
  if (i.max_wavelengths == 0) i.max_wavelengths = default_wavelength_bound(i.comm.size(), i.comp.size());
  i.check();
  return i;
}

Instance generate_star_instance(const Topology& t, const GeneratorSpec& spec) {
  check_destination(t, spec.destination);
  std::vector<int> others;
  for (int v = 0; v < t.node_count(); ++v) {
    if (v != spec.destination.value) others.push_back(v);
  }
  PortableRng rng(mix_seed(spec.seed, static_cast<std::uint64_t>(spec.destination.value)));
  shuffle(others, rng);
  return make_instance(t, {}, pair_up(others, spec.destination));
}

Instance generate_star_instance_fixed(const Topology& t, const GeneratorSpec& spec) {
  check_destination(t, spec.destination);
  std::vector<int> all(static_cast<std::size_t>(t.node_count()));
  for (int v = 0; v < t.node_count(); ++v) all[static_cast<std::size_t>(v)] = v;
  PortableRng rng(spec.seed);
  shuffle(all, rng);
  std::erase(all, spec.destination.value);
  return make_instance(t, {}, pair_up(all, spec.destination));
}

std::pair<CommDemand, CommDemand> decompose_bypass(const CompDemand& q) {
  return {CommDemand{q.src1, q.dst}, CommDemand{q.src2, q.dst}};
}

Instance parse_instance(std::string_view text, const Topology& t) {
  std::vector<CommDemand> comm;
  std::vector<CompDemand> comp;
  int wavelengths = 0;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto words = split_words(line);
    if (words.empty()) continue;

    const std::string where = "line " + std::to_string(line_no) + ": ";
    std::vector<int> nums;
    for (std::size_t w = 1; w < words.size(); ++w) {
      auto v = parse_int(words[w]);
      if (!v) throw DemandError(where + "invalid integer '" + std::string(words[w]) + "'", line_no);
      nums.push_back(*v);
    }
    auto node = [&](int one_based) {
      if (one_based < 1 || one_based > t.node_count()) {
        throw DemandError(where + "node " + std::to_string(one_based) + " outside 1.." +
                              std::to_string(t.node_count()),
                          line_no);
      }
      return NodeId::from_external(one_based);
    };

    try {
      if (words[0] == "wavelengths") {
        if (nums.size() != 1 || nums[0] < 1) throw DemandError(where + "expected 'wavelengths <n>' with n >= 1", line_no);
        wavelengths = nums[0];
      } else if (words[0] == "comm") {
        if (nums.size() != 2) throw DemandError(where + "expected 'comm <s> <d>'", line_no);
        CommDemand d{node(nums[0]), node(nums[1])};
        check_comm(t, d, where);
        comm.push_back(d);
      } else if (words[0] == "comp") {
        if (nums.size() != 3) throw DemandError(where + "expected 'comp <s1> <s2> <d>'", line_no);
        CompDemand q{node(nums[0]), node(nums[1]), node(nums[2])};
        check_comp(t, q, where);
        comp.push_back(q);
      } else {
        throw DemandError(where + "unknown record '" + std::string(words[0]) + "'", line_no);
      }
    } catch (const DemandError& e) {
      if (e.line() != 0) throw;
      throw DemandError(e.what(), line_no);
    }
  }
  return make_instance(t, std::move(comm), std::move(comp), wavelengths);
}

std::string serialize_instance(const Instance& i) {
  std::ostringstream os;
  os << "wavelengths " << i.max_wavelengths << '\n';
  for (const auto& d : i.comm) os << "comm " << ext(d.src) << ' ' << ext(d.dst) << '\n';
  for (const auto& q : i.comp) os << "comp " << ext(q.src1) << ' ' << ext(q.src2) << ' ' << ext(q.dst) << '\n';
  return os.str();
}

}  // namespace occin
