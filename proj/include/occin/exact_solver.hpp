#pragma once

#include <string_view>

#include "occin/demand.hpp"
#include "occin/solution.hpp"

namespace occin {

/*
  Cut bound on the wavelength count. A node v that terminates L lightpaths
  (or originates them) over deg(v) incoming (outgoing) arcs needs at least
  ceil(L / deg(v)) wavelengths. Bypass counts both lightpaths of a computing
  request at its destination; OCCIN counts only the computed lightpath.
*/
int lower_bound(const Instance& i, Mode mode);

/*
  Exact minimum-wavelength provisioning.

  Runs a feasibility search for W' = lower_bound .. budget and returns at the
  first feasible W'. Each search is a depth-first branch over demands (most
  constrained first), wavelengths (used ones, then the lowest unused index),
  computing nodes and routes, where routes are grown arc by arc in hop-count
  then lexicographic order. Every arc decision is checked against a max-flow
  relaxation of the remaining demands, so the search is exhaustive over all
  simple routes. A first pass limited to `k_candidates` routes per segment
  runs before the exhaustive pass.
*/
Solution solve_exact(const Instance& i, const SolveConfig& cfg);

/// Decodes an external MILP solver's variable assignment for the exported model and validates it.
Solution solve_via_ilp(const Instance& i, const SolveConfig& cfg, std::string_view assignment_text);

}  // namespace occin
