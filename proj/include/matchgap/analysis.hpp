#ifndef MATCHGAP_ANALYSIS_HPP
#define MATCHGAP_ANALYSIS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "matchgap/construction.hpp"
#include "matchgap/oracle.hpp"

namespace matchgap {

// One discovered edge of the queried subgraph, directed at discovery
// time (see orient).
struct DirectedEdge {
  std::int32_t from = 0;
  std::int32_t to = 0;
  std::int64_t step = 0;   // transcript step of the discovery
  bool real = false;       // carries real multiplicity (not phantom-only)
  int internal_level = 0;  // instrumentation channel; 0 when not provided
  bool both_seen = false;  // both endpoints already had edges at discovery
};

// The directed discovery graph of a transcript: every pair whose first
// answer was nonzero appears exactly once, with exactly one direction.
struct DirectedTranscriptGraph {
  std::int32_t n = 0;
  std::uint64_t seed = 0;
  QueryModel model = QueryModel::kStrengthened;
  std::vector<DirectedEdge> edges;             // in discovery order
  std::vector<std::vector<std::int32_t>> out;  // per vertex: edge ids out
  std::vector<std::int32_t> indegree;
  std::vector<std::int64_t> first_seen;  // discovery step; -1 if isolated
  std::vector<std::uint8_t> spoiler;     // endpoint of a both-seen edge
};

// Directs each discovered edge from the endpoint that already had
// discovered edges towards the singleton; when both or neither had any,
// a coin keyed on (transcript seed, pair) decides, so re-orienting a
// replayed transcript gives identical directions.  `internal_levels` is
// the oracle's instrumentation channel, parallel to the transcript
// entries; pass nullptr when unavailable (levels then read 0 and no
// edge counts as inner).
DirectedTranscriptGraph orient(
    const Transcript& transcript,
    const std::vector<int>* internal_levels = nullptr);

// Vertices reachable from v along edge directions by paths of at most
// floor(10 * ln n) edges, v included.  level = 0 walks every edge;
// level = l >= 2 walks only inner edges, those whose internal level
// lies in [1, l).  Sorted ascending.
std::vector<std::int32_t> shallow_subgraph(const DirectedTranscriptGraph& g,
                                           std::int32_t v, int level = 0);

struct Classification {
  int level = 0;                            // 0 = top variant
  double vertex_threshold = 0.0;            // n^(delta - 2*sigma)
  double neighbor_threshold = 0.0;          // n^sigma / 3
  std::vector<std::uint8_t> spoiler;        // per vertex
  std::vector<std::uint8_t> spoiled;        // per vertex
  std::vector<std::int32_t> spoiled_edges;  // ids into g.edges
};

// Applies the three definitions: spoilers come straight from the
// orientation; a vertex is spoiled when its shallow subgraph contains a
// spoiler or at least n^(delta - 2*sigma) vertices; a directed edge
// (u, v) is spoiled when u sits in an outermost A_r set and either v is
// spoiled or u has at least n^sigma / 3 spoiled neighbors in the
// queried subgraph.  level = 0 is the top variant (sigma = sigma_L,
// every edge walkable); level = l in [2, L] uses sigma_{l-1}, restricts
// shallow subgraphs to inner edges below l, and reads A_r labels at
// level l.  Spoiled edges need the instance for those labels; with
// nullptr they are skipped (empty list).
Classification classify(const DirectedTranscriptGraph& g,
                        const ParamSet& params, int level = 0,
                        const Instance* instance = nullptr);

struct DiscoveryStats {
  std::int64_t queries = 0;
  std::int64_t edges_found = 0;        // distinct discovered pairs
  std::int64_t inner_edges_found = 0;  // internal level < L
  std::int64_t real_edges_found = 0;
  std::int32_t max_indegree = 0;
  std::int64_t depth_cap = 0;  // floor(10 * ln n)
  // (shallow size, vertex count) over non-isolated vertices, ascending.
  std::vector<std::pair<std::int64_t, std::int64_t>> shallow_size_histogram;
};

DiscoveryStats discovery_stats(
    const Transcript& transcript, const ParamSet& params,
    const std::vector<int>* internal_levels = nullptr);

}  // namespace matchgap

#endif  // MATCHGAP_ANALYSIS_HPP
