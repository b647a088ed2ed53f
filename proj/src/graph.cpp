#include "matchgap/graph.hpp"

#include <algorithm>

namespace matchgap {

void Graph::sort_adjacency() {
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

bool Graph::has_edge(std::int32_t u, std::int32_t v) const {
  const auto& list = adj[static_cast<std::size_t>(u)];
  return std::binary_search(list.begin(), list.end(), v);
}

Graph project_simple(const MultiGraph& mg) {
  Graph g(mg.n);
  for (const MultiEdge& e : mg.edges) {
    if (e.count > 0) {
      g.add_edge(e.u, e.v);
    }
  }
  return g;
}

}  // namespace matchgap
