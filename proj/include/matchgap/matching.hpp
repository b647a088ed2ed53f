#ifndef MATCHGAP_MATCHING_HPP
#define MATCHGAP_MATCHING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "matchgap/construction.hpp"
#include "matchgap/graph.hpp"

namespace matchgap {

struct MatchingResult {
  std::int64_t size = 0;
  std::vector<std::int32_t> mate;  // -1 when unmatched
};

// Maximum bipartite matching (Hopcroft-Karp).  part[v] gives the side of
// each vertex; throws kUnbalancedParts if an edge fails to cross sides.
MatchingResult hopcroft_karp(const Graph& g,
                             const std::vector<std::uint8_t>& part);

// Minimum vertex cover extracted from a maximum matching via the
// alternating-reachability argument (Koenig): with Z the set of vertices
// reachable from unmatched left vertices along alternating paths, the
// cover is (left \ Z) union (right intersect Z).
std::vector<std::int32_t> koenig_cover(const Graph& g,
                                       const std::vector<std::uint8_t>& part,
                                       const MatchingResult& matching);

bool is_vertex_cover(const Graph& g, const std::vector<std::uint8_t>& in_cover);

// Exhaustive maximum matching by branch-and-bound over edges; general
// graphs, n <= 64.  Reference oracle for the fast implementations.
std::int64_t brute_force_matching_size(const Graph& g);

// --- case certification -------------------------------------------------

struct BlockMatchingReport {
  std::string block;
  int level = 0;
  std::int64_t x_size = 0;
  std::int64_t y_size = 0;
  std::int64_t matched = 0;
  bool perfect = false;
};

// Result of checking one sampled instance against its promised case.
//   YES: separated <=> mu == n_L/2 (maximum matching is perfect).
//   NO:  separated <=> the blocking witness covers every edge and
//        2 |cover| <= n_L - N_1 (so mu <= n_L/2 - N_1/2, integer-safe).
struct GapReport {
  Case instance_case = Case::kYes;
  std::int64_t n = 0;     // vertices incl. padding
  std::int64_t half = 0;  // n_L / 2
  std::int64_t mu = 0;    // maximum matching of the sampled graph
  std::int64_t cover_size = -1;
  bool cover_valid = false;
  std::int64_t certified_max = -1;  // upper bound on mu from the witness
  std::int64_t gap_floor = -1;      // n_L/2 - N_1/2 decision threshold
  bool separated = false;
  std::vector<BlockMatchingReport> blocks;
};

GapReport certify_gap(const Instance& instance, const Graph& sampled);

}  // namespace matchgap

#endif  // MATCHGAP_MATCHING_HPP
