#include "doctest.h"

#include <cmath>
#include <map>
#include <set>

#include "occin/demand.hpp"
#include "occin/random.hpp"

using namespace occin;

namespace {
NodeId n(int one_based) { return NodeId::from_external(one_based); }

std::vector<std::pair<int, int>> pairs_of(const Instance& i) {
  std::vector<std::pair<int, int>> out;
  for (const auto& q : i.comp) out.push_back({q.src1.external(), q.src2.external()});
  return out;
}
}  // namespace

TEST_CASE("calibration seed yields the reference pairing") {
  const auto i = generate_star_instance(builtin_cost239(), {n(1), kCalibrationSeed});
  CHECK(pairs_of(i) == std::vector<std::pair<int, int>>{{2, 3}, {4, 10}, {5, 7}, {6, 11}, {8, 9}});
  for (const auto& q : i.comp) CHECK(q.dst == n(1));
  CHECK(i.max_wavelengths == 10);
}

TEST_CASE("star generation covers every other node exactly once") {
  const auto t = builtin_cost239();
  for (int dest = 1; dest <= 11; ++dest) {
    for (std::uint64_t seed : {0ULL, 7ULL, 12345ULL}) {
      for (bool fixed : {false, true}) {
        const GeneratorSpec spec{n(dest), seed};
        const auto i = fixed ? generate_star_instance_fixed(t, spec) : generate_star_instance(t, spec);
        std::set<int> seen;
        for (const auto& q : i.comp) {
          CHECK(q.src1 < q.src2);
          CHECK(q.dst == n(dest));
          seen.insert(q.src1.value);
          seen.insert(q.src2.value);
        }
        CHECK(i.comp.size() == 5);
        CHECK(seen.size() == 10);
        CHECK_FALSE(seen.count(n(dest).value));
        for (std::size_t k = 1; k < i.comp.size(); ++k) CHECK(i.comp[k - 1].src1 < i.comp[k].src1);
      }
    }
  }
}

TEST_CASE("generation is deterministic and seed dependent") {
  const auto t = builtin_cost239();
  CHECK(generate_star_instance(t, {n(4), 7}) == generate_star_instance(t, {n(4), 7}));
  std::set<std::vector<std::pair<int, int>>> distinct;
  for (std::uint64_t s = 0; s < 50; ++s) distinct.insert(pairs_of(generate_star_instance(t, {n(4), s})));
  CHECK(distinct.size() > 30);
}

TEST_CASE("fresh pairings are roughly uniform over perfect matchings") {
  // Four non-destination nodes admit three matchings.
  const std::vector<Edge> e = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
  const auto t = Topology::from_edges(5, e, "ring");
  std::map<std::vector<std::pair<int, int>>, int> counts;
  const int draws = 3000;
  for (int s = 0; s < draws; ++s) counts[pairs_of(generate_star_instance(t, {NodeId{0}, static_cast<std::uint64_t>(s)}))]++;
  CHECK(counts.size() == 3);
  for (const auto& [k, c] : counts) CHECK(std::abs(c - draws / 3) < 150);
}

TEST_CASE("fixed pairing keeps the permutation across destinations") {
  const auto t = builtin_cost239();
  const auto a = generate_star_instance_fixed(t, {n(1), 70});
  CHECK(pairs_of(a) == std::vector<std::pair<int, int>>{{2, 3}, {4, 10}, {5, 7}, {6, 11}, {8, 9}});
}

TEST_CASE("generator errors") {
  const auto t = builtin_cost239();
  CHECK_THROWS_AS(generate_star_instance(t, {n(99), 1}), DemandError);
  const std::vector<Edge> e = {{0, 1}, {1, 2}, {2, 3}};
  const auto p4 = Topology::from_edges(4, e, "p4");
  CHECK_THROWS_AS(generate_star_instance(p4, {NodeId{0}, 1}), DemandError);
  CHECK_THROWS_AS(generate_star_instance_fixed(p4, {NodeId{0}, 1}), DemandError);
  CHECK(generate_star_instance(builtin_toy(), {n(1), 1}).comp.size() == 2);
}

TEST_CASE("bypass decomposition") {
  const auto [a, b] = decompose_bypass({n(2), n(3), n(1)});
  CHECK(a == CommDemand{n(2), n(1)});
  CHECK(b == CommDemand{n(3), n(1)});
}

TEST_CASE("demand file round trip") {
  const auto t = builtin_cost239();
  const auto i = make_instance(t, {{n(1), n(5)}}, {{n(2), n(3), n(1)}}, 4);
  const auto text = serialize_instance(i);
  CHECK(text == "wavelengths 4\ncomm 1 5\ncomp 2 3 1\n");
  CHECK(parse_instance(text, t) == i);
  const auto defaulted = parse_instance("comm 1 5\n# note\ncomp 2 3 1  # trailing\n", t);
  CHECK(defaulted.max_wavelengths == default_wavelength_bound(1, 1));
  CHECK(defaulted.max_wavelengths == 3);
}

TEST_CASE("demand file errors carry line numbers") {
  const auto t = builtin_toy();
  auto line_of = [&](const char* text) {
    try {
      parse_instance(text, t);
    } catch (const DemandError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("comm 1 2\ncomm 4 4\n") == 2);
  CHECK(line_of("comm 1 9\n") == 1);
  CHECK(line_of("\n\ncomp 1 2\n") == 3);
  CHECK(line_of("comm 1 x\n") == 1);
  CHECK(line_of("flow 1 2\n") == 1);
  CHECK(line_of("comp 1 1 2\n") == 1);
  CHECK(line_of("wavelengths 0\n") == 1);
}

TEST_CASE("portable rng") {
  PortableRng a(42), b(42);
  for (int k = 0; k < 100; ++k) CHECK(a.below(7) == b.below(7));
  PortableRng c(1);
  for (int k = 0; k < 1000; ++k) CHECK(c.below(3) < 3);
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
  static_assert(mix_seed(0, 0) == mix_seed(0, 0));
}
