#pragma once

#include <string>
#include <vector>

#include "occin/demand.hpp"
#include "occin/solution.hpp"

namespace occin {

/*
  Rule ids:
    R1  route is a simple path of at least two nodes over existing links
    R2  no (link, wavelength) pair carried twice
    R3  one wavelength per lightpath (raised while decoding MILP flows)
    R4  lightpath endpoints and segment set match the demand
    R5  computing node differs from the destination (OCCIN)
    R6  all segments of a computing request share a wavelength (PerDemand)
    R7  every demand served exactly once
    R8  wavelength within [1, budget]
*/
struct Violation {
  std::string rule;
  std::string detail;
  std::vector<std::string> entities;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  bool has(std::string_view rule) const;
};

/// Checks `s` against `i` under cfg.mode, cfg.coupling and cfg.budget(i). Never throws.
ValidationReport validate(const Solution& s, const Instance& i, const SolveConfig& cfg);

/// Schema "occin.validation/1".
std::string report_to_json(const ValidationReport& r);

}  // namespace occin
