#pragma once

#include <optional>
#include <stdexcept>

#include "occin/demand.hpp"
#include "occin/solution.hpp"

namespace occin {

struct OracleLimits {
  int max_nodes = 6;
  int max_demands = 4;
  int max_wavelengths = 3;
  int max_route_hops = 5;
};

class OracleRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/*
  Minimum wavelength count by plain enumeration of computing nodes, simple
  routes of at most lim.max_route_hops hops and canonical wavelength labels.
  Returns nullopt when nothing fits in min(cfg.budget(i), lim.max_wavelengths).
  Throws OracleRefusal when the instance exceeds `lim`, or when the hop limit
  could cut off a simple route.
*/
std::optional<int> brute_force_optimum(const Instance& i, const SolveConfig& cfg, const OracleLimits& lim = {});

}  // namespace occin
