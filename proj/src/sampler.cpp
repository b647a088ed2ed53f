#include "matchgap/sampler.hpp"

#include <algorithm>

#include "matchgap/rng.hpp"

namespace matchgap {

MultiGraph sample_real(const Instance& instance) {
  MultiGraph mg;
  mg.n = instance.n;
  for (const Gadget& gadget : instance.gadgets) {
    const double q = instance.params.slot_prob(gadget.level);
    const rng::BinomialSpec spec =
        rng::BinomialSpec::make(static_cast<rng::u64>(gadget.slots), q);
    const auto& xs = instance.sets[static_cast<std::size_t>(gadget.x_set)].vertices;
    const auto& ys = instance.sets[static_cast<std::size_t>(gadget.y_set)].vertices;
    for (const std::int32_t x : xs) {
      for (const std::int32_t y : ys) {
        rng::Stream stream(instance.seed,
                           rng::pair_key(static_cast<rng::u32>(x),
                                         static_cast<rng::u32>(y)),
                           rng::Tag::kRealEdges);
        const std::int64_t count =
            static_cast<std::int64_t>(rng::binomial_draw(stream, spec));
        if (count > 0) {
          mg.edges.push_back(MultiEdge{std::min(x, y), std::max(x, y), count});
        }
      }
    }
  }
  std::sort(mg.edges.begin(), mg.edges.end(),
            [](const MultiEdge& a, const MultiEdge& b) {
              return a.u != b.u ? a.u < b.u : a.v < b.v;
            });
  return mg;
}

MultiplicityStats multiplicity_stats(const MultiGraph& mg) {
  MultiplicityStats stats;
  for (const MultiEdge& e : mg.edges) {
    if (e.count <= 0) continue;
    ++stats.pairs_with_edges;
    stats.total_multiplicity += e.count;
    stats.max_multiplicity = std::max(stats.max_multiplicity, e.count);
  }
  stats.histogram.assign(static_cast<std::size_t>(stats.max_multiplicity) + 1, 0);
  for (const MultiEdge& e : mg.edges) {
    if (e.count > 0) {
      ++stats.histogram[static_cast<std::size_t>(e.count)];
    }
  }
  return stats;
}

}  // namespace matchgap
