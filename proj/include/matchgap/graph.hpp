#ifndef MATCHGAP_GRAPH_HPP
#define MATCHGAP_GRAPH_HPP

#include <cstdint>
#include <vector>

namespace matchgap {

// Undirected simple graph on vertex ids [0, n).
struct Graph {
  std::int32_t n = 0;
  std::vector<std::vector<std::int32_t>> adj;

  explicit Graph(std::int32_t vertices = 0)
      : n(vertices), adj(static_cast<std::size_t>(vertices)) {}

  void add_edge(std::int32_t u, std::int32_t v) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& list : adj) twice += list.size();
    return twice / 2;
  }

  // Sorts adjacency lists so has_edge can binary search.
  void sort_adjacency();
  bool has_edge(std::int32_t u, std::int32_t v) const;  // needs sort_adjacency
};

// Sampled multigraph: sorted unique pairs with multiplicities.
struct MultiEdge {
  std::int32_t u = 0;
  std::int32_t v = 0;
  std::int64_t count = 0;
};

struct MultiGraph {
  std::int32_t n = 0;
  std::vector<MultiEdge> edges;  // sorted by (u, v), u < v

  std::int64_t total_multiplicity() const {
    std::int64_t total = 0;
    for (const MultiEdge& e : edges) total += e.count;
    return total;
  }
};

Graph project_simple(const MultiGraph& mg);

}  // namespace matchgap

#endif  // MATCHGAP_GRAPH_HPP
