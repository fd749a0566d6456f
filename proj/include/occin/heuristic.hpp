#pragma once

#include <vector>

#include "occin/demand.hpp"
#include "occin/solution.hpp"

namespace occin {

/// Hop cost of serving `q` through `x`: SP(src1,x) + SP(src2,x) + SP(x,dst); -1 if any leg is unreachable.
int computing_cost(const Topology& t, const CompDemand& q, NodeId x);

/*
  All admissible computing nodes (reachable, not the destination), best first:
  lowest three-leg hop cost, then the source closer to the destination, then
  the other source, then remaining nodes by id.
*/
std::vector<NodeId> rank_computing_nodes(const Topology& t, const CompDemand& q);

/// Head of `rank_computing_nodes`; throws if no node can reach both sources and the destination.
NodeId choose_computing_node(const Topology& t, const CompDemand& q);

/// First-fit over k-shortest candidates. Never claims optimality.
Solution solve_heuristic(const Instance& i, const SolveConfig& cfg);

}  // namespace occin
