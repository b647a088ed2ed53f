#ifndef MATCHGAP_EMD_HPP
#define MATCHGAP_EMD_HPP

#include <cstdint>
#include <vector>

#include "matchgap/graph.hpp"
#include "matchgap/params.hpp"

namespace matchgap {

// Discrete optimal-transport instance: rational masses on source and
// sink atoms, and a non-negative rational cost per unit of mass moved
// between each (source, sink) pair.  Total supply must equal total
// demand.
struct TransportProblem {
  std::vector<Rat> supply;
  std::vector<Rat> demand;
  std::vector<std::vector<Rat>> cost;  // cost[i][j]
};

struct TransportMove {
  std::int32_t from = 0;
  std::int32_t to = 0;
  Rat mass;
};

struct TransportPlan {
  Rat total_cost;  // exact optimum
  std::vector<TransportMove> moves;
};

// Exact minimum-cost transport: the problem is rescaled to integer
// masses and integer costs (throws kOverflowScale if either scale
// escapes 64 bits) and solved with successive shortest augmenting
// paths, so the returned cost is the exact rational optimum.
TransportPlan solve_transport(const TransportProblem& problem);

// The earth-mover instance of a balanced bipartite graph: uniform mass
// 1/t on each part (t vertices a side), moving one unit of mass across
// an edge costs 1/2 and across any other pair costs 1.  part[v] gives
// each vertex's side; throws kUnbalancedParts when the sides differ in
// size or an edge fails to cross.
TransportProblem matching_transport_problem(
    const Graph& g, const std::vector<std::uint8_t>& part);

// earth-mover distance of that instance.  With mu the maximum matching
// of the graph, the exact identity
//
//   emd == (2*t - mu) / (2*t)
//
// holds: scaling masses by t and costs by 2 makes the optimum the
// integer 2*t - mu, one unit saved per matched edge.
Rat matching_emd(const Graph& g, const std::vector<std::uint8_t>& part);

// Inverts the identity: mu = 2*t*(1 - emd).  Throws kFormatError if
// the value is not an integer in [0, t].
std::int64_t matching_size_from_emd(const Rat& emd, std::int64_t part_size);

// An estimate of the distance within eps translates to an estimate of
// the matching size within 2*t*eps (additive, both directions).
Rat matching_error_bound(const Rat& emd_error, std::int64_t part_size);

// Reference oracle: DP over sink subsets for unit-mass assignment
// problems (square cost matrix, at most 20 atoms a side).
std::int64_t assignment_min_cost(
    const std::vector<std::vector<std::int64_t>>& cost);

}  // namespace matchgap

#endif  // MATCHGAP_EMD_HPP
