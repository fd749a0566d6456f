#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "occin/topology.hpp"

namespace occin {

class DemandError : public std::runtime_error {
 public:
  explicit DemandError(const std::string& what, int line = 0) : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Point-to-point request for one wavelength of capacity.
struct CommDemand {
  NodeId src;
  NodeId dst;
  friend bool operator==(const CommDemand&, const CommDemand&) = default;
};

/// Two sources whose traffic is combined and delivered to `dst`.
struct CompDemand {
  NodeId src1;
  NodeId src2;
  NodeId dst;
  friend bool operator==(const CompDemand&, const CompDemand&) = default;
};

struct Instance {
  Topology topology;
  std::vector<CommDemand> comm;
  std::vector<CompDemand> comp;
  int max_wavelengths = 1;

  /// Checks endpoints and the wavelength budget; throws DemandError.
  void check() const;
  int demand_count() const { return static_cast<int>(comm.size() + comp.size()); }
  friend bool operator==(const Instance&, const Instance&) = default;
};

Instance make_instance(Topology t, std::vector<CommDemand> comm, std::vector<CompDemand> comp,
                       int max_wavelengths = 0);

/// Number of lightpaths a bypass provisioning needs; always enough wavelengths for it.
int default_wavelength_bound(std::size_t comm_count, std::size_t comp_count);

struct GeneratorSpec {
  NodeId destination;
  std::uint64_t seed = 0;
};

/// Seed whose pairing for COST239 destination 1 is {(2,3),(4,10),(5,7),(6,11),(8,9)}.
inline constexpr std::uint64_t kCalibrationSeed = 1408;

/*
  Pairs every non-destination node into computing requests towards
  `spec.destination`. The pairing is a uniformly random perfect matching drawn
  from a stream seeded by (seed, destination). Sources within a pair are
  ordered by id and pairs by their first source.
*/
Instance generate_star_instance(const Topology& t, const GeneratorSpec& spec);

/*
  Variant that reuses one pairing pattern for every destination: a single
  seeded permutation of all nodes, with the destination removed and the
  remaining nodes paired in order.
*/
Instance generate_star_instance_fixed(const Topology& t, const GeneratorSpec& spec);

/// Optical-bypass view of a computing request: one lightpath from each source.
std::pair<CommDemand, CommDemand> decompose_bypass(const CompDemand& q);

Instance parse_instance(std::string_view text, const Topology& t);
std::string serialize_instance(const Instance& i);

}  // namespace occin
