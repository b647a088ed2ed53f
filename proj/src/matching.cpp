#include "matchgap/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <sstream>

namespace matchgap {

namespace {

constexpr std::int32_t kUnvisited = std::numeric_limits<std::int32_t>::max();

void require_bipartite(const Graph& g, const std::vector<std::uint8_t>& part) {
  if (part.size() != static_cast<std::size_t>(g.n)) {
    throw Error(Errc::kUnbalancedParts, "part vector size mismatch");
  }
  for (std::int32_t u = 0; u < g.n; ++u) {
    for (std::int32_t w : g.adj[static_cast<std::size_t>(u)]) {
      if (part[static_cast<std::size_t>(u)] == part[static_cast<std::size_t>(w)]) {
        std::ostringstream os;
        os << "edge (" << u << ", " << w << ") does not cross the bipartition";
        throw Error(Errc::kUnbalancedParts, os.str());
      }
    }
  }
}

}  // namespace

MatchingResult hopcroft_karp(const Graph& g,
                             const std::vector<std::uint8_t>& part) {
  require_bipartite(g, part);
  MatchingResult result;
  result.mate.assign(static_cast<std::size_t>(g.n), -1);
  auto& mate = result.mate;

  std::vector<std::int32_t> left;
  for (std::int32_t v = 0; v < g.n; ++v) {
    if (part[static_cast<std::size_t>(v)] == 0) left.push_back(v);
  }
  std::vector<std::int32_t> dist(static_cast<std::size_t>(g.n), kUnvisited);

  auto bfs = [&]() -> bool {
    std::queue<std::int32_t> queue;
    for (std::int32_t u : left) {
      if (mate[static_cast<std::size_t>(u)] == -1) {
        dist[static_cast<std::size_t>(u)] = 0;
        queue.push(u);
      } else {
        dist[static_cast<std::size_t>(u)] = kUnvisited;
      }
    }
    bool reachable = false;
    while (!queue.empty()) {
      const std::int32_t u = queue.front();
      queue.pop();
      for (std::int32_t w : g.adj[static_cast<std::size_t>(u)]) {
        const std::int32_t m = mate[static_cast<std::size_t>(w)];
        if (m == -1) {
          reachable = true;
        } else if (dist[static_cast<std::size_t>(m)] == kUnvisited) {
          dist[static_cast<std::size_t>(m)] =
              dist[static_cast<std::size_t>(u)] + 1;
          queue.push(m);
        }
      }
    }
    return reachable;
  };

  auto dfs = [&](auto&& self, std::int32_t u) -> bool {
    for (std::int32_t w : g.adj[static_cast<std::size_t>(u)]) {
      const std::int32_t m = mate[static_cast<std::size_t>(w)];
      if (m == -1 || (dist[static_cast<std::size_t>(m)] ==
                          dist[static_cast<std::size_t>(u)] + 1 &&
                      self(self, m))) {
        mate[static_cast<std::size_t>(u)] = w;
        mate[static_cast<std::size_t>(w)] = u;
        return true;
      }
    }
    dist[static_cast<std::size_t>(u)] = kUnvisited;
    return false;
  };

  while (bfs()) {
    for (std::int32_t u : left) {
      if (mate[static_cast<std::size_t>(u)] == -1 && dfs(dfs, u)) {
        ++result.size;
      }
    }
  }
  return result;
}

std::vector<std::int32_t> koenig_cover(const Graph& g,
                                       const std::vector<std::uint8_t>& part,
                                       const MatchingResult& matching) {
  const auto& mate = matching.mate;
  std::vector<std::uint8_t> seen_left(static_cast<std::size_t>(g.n), 0);
  std::vector<std::uint8_t> seen_right(static_cast<std::size_t>(g.n), 0);
  std::queue<std::int32_t> queue;
  for (std::int32_t v = 0; v < g.n; ++v) {
    if (part[static_cast<std::size_t>(v)] == 0 &&
        mate[static_cast<std::size_t>(v)] == -1) {
      seen_left[static_cast<std::size_t>(v)] = 1;
      queue.push(v);
    }
  }
  while (!queue.empty()) {
    const std::int32_t u = queue.front();
    queue.pop();
    for (std::int32_t w : g.adj[static_cast<std::size_t>(u)]) {
      if (mate[static_cast<std::size_t>(u)] == w ||
          seen_right[static_cast<std::size_t>(w)]) {
        continue;
      }
      seen_right[static_cast<std::size_t>(w)] = 1;
      const std::int32_t m = mate[static_cast<std::size_t>(w)];
      if (m != -1 && !seen_left[static_cast<std::size_t>(m)]) {
        seen_left[static_cast<std::size_t>(m)] = 1;
        queue.push(m);
      }
    }
  }
  // Cover = (left not reached) union (right reached).  Every unmatched
  // left vertex is a search root, so "not reached" lefts are all matched.
  std::vector<std::int32_t> cover;
  for (std::int32_t v = 0; v < g.n; ++v) {
    const bool is_left = part[static_cast<std::size_t>(v)] == 0;
    if (is_left ? !seen_left[static_cast<std::size_t>(v)]
                : seen_right[static_cast<std::size_t>(v)] != 0) {
      cover.push_back(v);
    }
  }
  return cover;
}

bool is_vertex_cover(const Graph& g, const std::vector<std::uint8_t>& in_cover) {
  for (std::int32_t u = 0; u < g.n; ++u) {
    for (std::int32_t w : g.adj[static_cast<std::size_t>(u)]) {
      if (!in_cover[static_cast<std::size_t>(u)] &&
          !in_cover[static_cast<std::size_t>(w)]) {
        return false;
      }
    }
  }
  return true;
}

namespace {

std::int64_t brute_rec(const std::vector<std::uint64_t>& nbr,
                       std::uint64_t alive) {
  // Matching a degree-1 vertex to its only neighbor is always optimal;
  // peel those off before branching.
  while (true) {
    std::int32_t forced = -1;
    std::uint64_t forced_nbrs = 0;
    for (std::uint64_t bits = alive; bits != 0; bits &= bits - 1) {
      const int v = std::countr_zero(bits);
      const std::uint64_t reach = nbr[static_cast<std::size_t>(v)] & alive;
      if (reach != 0 && (reach & (reach - 1)) == 0) {
        forced = v;
        forced_nbrs = reach;
        break;
      }
    }
    if (forced == -1) break;
    alive &= ~(std::uint64_t{1} << forced);
    alive &= ~forced_nbrs;
    return 1 + brute_rec(nbr, alive);
  }
  std::int32_t pick = -1;
  for (std::uint64_t bits = alive; bits != 0; bits &= bits - 1) {
    const int v = std::countr_zero(bits);
    if ((nbr[static_cast<std::size_t>(v)] & alive) != 0) {
      pick = v;
      break;
    }
  }
  if (pick == -1) return 0;
  // Either pick stays unmatched...
  std::uint64_t without = alive & ~(std::uint64_t{1} << pick);
  std::int64_t best = brute_rec(nbr, without);
  // ... or it matches one of its neighbors.
  for (std::uint64_t bits = nbr[static_cast<std::size_t>(pick)] & alive;
       bits != 0; bits &= bits - 1) {
    const int w = std::countr_zero(bits);
    best = std::max(best, 1 + brute_rec(nbr, without & ~(std::uint64_t{1} << w)));
  }
  return best;
}

}  // namespace

std::int64_t brute_force_matching_size(const Graph& g) {
  if (g.n > 64) {
    throw Error(Errc::kInvalidParam,
                "exhaustive matching oracle only supports n <= 64");
  }
  std::vector<std::uint64_t> nbr(static_cast<std::size_t>(g.n), 0);
  for (std::int32_t u = 0; u < g.n; ++u) {
    for (std::int32_t w : g.adj[static_cast<std::size_t>(u)]) {
      nbr[static_cast<std::size_t>(u)] |= std::uint64_t{1} << w;
    }
  }
  const std::uint64_t alive =
      g.n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << g.n) - 1);
  return brute_rec(nbr, alive);
}

namespace {

std::string set_label(const Instance& inst, std::int32_t set_idx) {
  const VertexSet& vs = inst.sets[static_cast<std::size_t>(set_idx)];
  std::ostringstream os;
  os << set_kind_letter(vs.kind) << static_cast<int>(vs.side);
  if (vs.kind != SetKind::kS) {
    os << "." << vs.layer;
  }
  return os.str();
}

BlockMatchingReport block_matching(const Instance& inst, const Graph& sampled,
                                   const RootBlock& block) {
  const auto& xs = inst.sets[static_cast<std::size_t>(block.x_set)].vertices;
  const auto& ys = inst.sets[static_cast<std::size_t>(block.y_set)].vertices;
  std::vector<std::int32_t> local(static_cast<std::size_t>(inst.n), -1);
  Graph sub(static_cast<std::int32_t>(xs.size() + ys.size()));
  std::vector<std::uint8_t> part(static_cast<std::size_t>(sub.n), 0);
  std::int32_t next = 0;
  for (std::int32_t v : xs) local[static_cast<std::size_t>(v)] = next++;
  for (std::int32_t v : ys) {
    local[static_cast<std::size_t>(v)] = next;
    part[static_cast<std::size_t>(next)] = 1;
    ++next;
  }
  std::vector<std::uint8_t> in_y(static_cast<std::size_t>(inst.n), 0);
  for (std::int32_t v : ys) in_y[static_cast<std::size_t>(v)] = 1;
  for (std::int32_t u : xs) {
    for (std::int32_t w : sampled.adj[static_cast<std::size_t>(u)]) {
      if (in_y[static_cast<std::size_t>(w)]) {
        sub.add_edge(local[static_cast<std::size_t>(u)],
                     local[static_cast<std::size_t>(w)]);
      }
    }
  }
  const MatchingResult m = hopcroft_karp(sub, part);
  BlockMatchingReport rep;
  rep.block = std::string(block_kind_name(block.block)) + "(" +
              set_label(inst, block.x_set) + "," + set_label(inst, block.y_set) + ")";
  rep.level = inst.sets[static_cast<std::size_t>(block.x_set)].level;
  rep.x_size = static_cast<std::int64_t>(xs.size());
  rep.y_size = static_cast<std::int64_t>(ys.size());
  rep.matched = m.size;
  rep.perfect = xs.size() == ys.size() &&
                m.size == static_cast<std::int64_t>(xs.size());
  return rep;
}

}  // namespace

GapReport certify_gap(const Instance& instance, const Graph& sampled) {
  if (sampled.n != instance.n) {
    throw Error(Errc::kInvalidParam, "sampled graph size mismatch");
  }
  GapReport rep;
  rep.instance_case = instance.instance_case;
  rep.n = instance.n;
  const std::int64_t n_top = instance.params.level_size_at(instance.params.levels);
  const std::int64_t n_sets = instance.params.set_size_at(1);
  rep.half = n_top / 2;
  rep.gap_floor = (n_top - n_sets) / 2;
  const MatchingResult m = hopcroft_karp(sampled, instance.part);
  rep.mu = m.size;
  if (instance.instance_case == Case::kYes) {
    for (const RootBlock& block : root_blocks(instance)) {
      rep.blocks.push_back(block_matching(instance, sampled, block));
    }
    rep.separated = rep.mu == rep.half;
  } else {
    const CoverWitness witness = vertex_cover_witness(instance);
    rep.cover_size = static_cast<std::int64_t>(witness.cover.size());
    rep.cover_valid = is_vertex_cover(sampled, witness.in_cover);
    rep.certified_max = rep.cover_size;
    rep.separated = rep.cover_valid && 2 * rep.cover_size <= n_top - n_sets;
  }
  return rep;
}

}  // namespace matchgap
