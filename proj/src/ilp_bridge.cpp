#include <stdexcept>

#include "occin/exact_solver.hpp"
#include "occin/milp.hpp"
#include "occin/validator.hpp"

namespace occin {

Solution solve_via_ilp(const Instance& i, const SolveConfig& cfg, std::string_view assignment_text) {
  const IlpModel model = encode(i, cfg);
  const Assignment values = parse_assignment(assignment_text);
  Solution s = decode_solution(model, values, i);
  const auto report = validate(s, i, cfg);
  if (!report.ok) {
    const auto& v = report.violations.front();
    throw std::runtime_error("decoded solution violates " + v.rule + ": " + v.detail);
  }
  const int lb = lower_bound(i, cfg.mode);
  s.status = s.wavelength_count == lb ? Status::Optimal : Status::Feasible;
  s.stats.lower_bound = lb;
  return s;
}

}  // namespace occin
