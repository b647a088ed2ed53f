#ifndef MATCHGAP_SAMPLER_HPP
#define MATCHGAP_SAMPLER_HPP

#include <cstdint>
#include <vector>

#include "matchgap/construction.hpp"
#include "matchgap/graph.hpp"

namespace matchgap {

// Draws the full real multigraph of an instance: every gadget pair (x, y)
// receives Binomial(m, q) parallel edges, where m is the gadget's slot
// count and q the per-slot survival probability of the gadget's level.
// Pure function of (instance.params, instance.case, instance.seed): any
// subset of pairs re-drawn by the query oracle matches bit for bit.
MultiGraph sample_real(const Instance& instance);

struct MultiplicityStats {
  std::int64_t pairs_with_edges = 0;
  std::int64_t total_multiplicity = 0;
  std::int64_t max_multiplicity = 0;
  std::vector<std::int64_t> histogram;  // histogram[k]: pairs with k edges
};

MultiplicityStats multiplicity_stats(const MultiGraph& mg);

}  // namespace matchgap

#endif  // MATCHGAP_SAMPLER_HPP
