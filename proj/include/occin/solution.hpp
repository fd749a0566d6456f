#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "occin/demand.hpp"
#include "occin/topology.hpp"

namespace occin {

/// Bypass: computation at the destination's electrical layer. Occin: at an in-network node.
enum class Mode { Bypass, Occin };

/// Whether the segments of a computing request must share one wavelength.
enum class Coupling { PerDemand, PerSegment };

enum class Status { Optimal, Feasible, Infeasible, LimitReached };

enum class DemandOrder { LongestFirst, InputOrder };

struct SolveConfig {
  Mode mode = Mode::Occin;
  Coupling coupling = Coupling::PerDemand;
  int max_wavelengths = 0;       // 0: take the instance's budget
  std::int64_t node_limit = 0;   // search nodes, 0 = unlimited
  double time_limit = 0.0;       // seconds, 0 = unlimited
  bool deterministic = true;
  int parallel_width = 1;
  int k_candidates = 8;
  DemandOrder order = DemandOrder::LongestFirst;
  bool secondary_objective = false;  // LP export: minimise total flow after wavelengths
  bool warm_start = true;            // exact solver: seed the upper bound with the heuristic

  int budget(const Instance& i) const { return max_wavelengths > 0 ? max_wavelengths : i.max_wavelengths; }
};

std::string_view to_string(Mode m);
std::string_view to_string(Coupling c);
std::string_view to_string(Status s);
Mode parse_mode(std::string_view s);
Coupling parse_coupling(std::string_view s);
Status parse_status(std::string_view s);

struct Lightpath {
  std::vector<NodeId> route;
  int wavelength = 1;  // 1-based

  int hops() const { return route.empty() ? 0 : static_cast<int>(route.size()) - 1; }
  friend bool operator==(const Lightpath&, const Lightpath&) = default;
};

/// Segment 0 carries a communication demand; 1: src1->x, 2: src2->x, 3: x->dst.
struct SegmentLightpath {
  int segment = 0;
  Lightpath lightpath;
  friend bool operator==(const SegmentLightpath&, const SegmentLightpath&) = default;
};

enum class DemandKind { Comm, Comp };

struct DemandRecord {
  DemandKind kind = DemandKind::Comm;
  int index = 0;  // position in Instance::comm or Instance::comp
  std::optional<NodeId> computing_node;
  std::vector<SegmentLightpath> segments;
  friend bool operator==(const DemandRecord&, const DemandRecord&) = default;
};

struct SolverStats {
  std::int64_t nodes_expanded = 0;
  double elapsed_ms = 0.0;
  int lower_bound = 0;
  friend bool operator==(const SolverStats&, const SolverStats&) = default;
};

struct Solution {
  Mode mode = Mode::Occin;
  Coupling coupling = Coupling::PerDemand;
  Status status = Status::Infeasible;
  std::vector<DemandRecord> demands;
  int wavelength_count = 0;
  int wavelength_link_units = 0;
  SolverStats stats;

  friend bool operator==(const Solution&, const Solution&) = default;
};

struct SpectralMetrics {
  int wavelength_count = 0;
  int wavelength_link_units = 0;
  friend bool operator==(const SpectralMetrics&, const SpectralMetrics&) = default;
};

/// Distinct wavelengths used and total wavelength-link units.
SpectralMetrics metrics(const Solution& s);

/// Recomputes the metric fields from the lightpaths.
void refresh_metrics(Solution& s);

/// Returns a Solution document (schema "occin.solution/1"). Timing is omitted when `with_timing` is false.
std::string solution_to_json(const Solution& s, const Instance& i, bool with_timing = true);
Solution solution_from_json(std::string_view text);

/// One row per lightpath: kind,index,computing_node,segment,route,lambda.
std::string solution_to_csv(const Solution& s);

}  // namespace occin
