#include "matchgap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>
#include <vector>

#include "matchgap/errors.hpp"
#include "matchgap/rng.hpp"

namespace matchgap {

namespace {

std::int64_t depth_cap_for(std::int32_t n) {
  if (n < 2) return 0;
  return static_cast<std::int64_t>(
      std::floor(10.0 * std::log(static_cast<double>(n))));
}

bool walkable(const DirectedEdge& e, int level) {
  if (level == 0) return true;
  return e.internal_level >= 1 && e.internal_level < level;
}

}  // namespace

DirectedTranscriptGraph orient(const Transcript& transcript,
                               const std::vector<int>* internal_levels) {
  if (internal_levels != nullptr &&
      internal_levels->size() != transcript.entries.size()) {
    throw Error(Errc::kInvalidParam,
                "internal level channel does not match the transcript");
  }
  DirectedTranscriptGraph g;
  g.n = transcript.n;
  g.seed = transcript.seed;
  g.model = transcript.model;
  const auto size = static_cast<std::size_t>(transcript.n);
  g.out.assign(size, {});
  g.indegree.assign(size, 0);
  g.first_seen.assign(size, -1);
  g.spoiler.assign(size, 0);

  std::vector<std::int32_t> degree(size, 0);
  std::unordered_set<std::uint64_t> discovered;
  for (std::size_t i = 0; i < transcript.entries.size(); ++i) {
    const TranscriptEntry& entry = transcript.entries[i];
    const std::int64_t observed = transcript.model == QueryModel::kSimple
                                      ? (entry.real >= 1 ? 1 : 0)
                                      : entry.pseudo;
    if (observed < 1) continue;
    const std::uint64_t key =
        rng::pair_key(static_cast<rng::u32>(entry.u),
                      static_cast<rng::u32>(entry.v));
    if (!discovered.insert(key).second) continue;

    const auto iu = static_cast<std::size_t>(entry.u);
    const auto iv = static_cast<std::size_t>(entry.v);
    const bool u_seen = degree[iu] > 0;
    const bool v_seen = degree[iv] > 0;
    bool from_u;
    if (u_seen != v_seen) {
      from_u = u_seen;  // out of the discovered part, into the singleton
    } else {
      rng::Stream coin(transcript.seed, key, rng::Tag::kEdgeDirection);
      from_u = (coin.next_u64() & 1) == 0;
    }

    DirectedEdge edge;
    edge.from = from_u ? entry.u : entry.v;
    edge.to = from_u ? entry.v : entry.u;
    edge.step = entry.step;
    edge.real = entry.real >= 1;
    edge.internal_level =
        internal_levels != nullptr ? (*internal_levels)[i] : 0;
    edge.both_seen = u_seen && v_seen;
    if (edge.both_seen) {
      g.spoiler[iu] = 1;
      g.spoiler[iv] = 1;
    }
    if (g.first_seen[iu] < 0) g.first_seen[iu] = entry.step;
    if (g.first_seen[iv] < 0) g.first_seen[iv] = entry.step;
    ++degree[iu];
    ++degree[iv];

    const auto id = static_cast<std::int32_t>(g.edges.size());
    g.out[static_cast<std::size_t>(edge.from)].push_back(id);
    ++g.indegree[static_cast<std::size_t>(edge.to)];
    g.edges.push_back(edge);
  }
  return g;
}

std::vector<std::int32_t> shallow_subgraph(const DirectedTranscriptGraph& g,
                                           std::int32_t v, int level) {
  if (v < 0 || v >= g.n) {
    throw Error(Errc::kVertexOutOfRange, "shallow subgraph root out of range");
  }
  const std::int64_t cap = depth_cap_for(g.n);
  std::vector<char> visited(static_cast<std::size_t>(g.n), 0);
  visited[static_cast<std::size_t>(v)] = 1;
  std::vector<std::int32_t> frontier{v};
  std::vector<std::int32_t> result{v};
  std::vector<std::int32_t> next;
  for (std::int64_t depth = 0; depth < cap && !frontier.empty(); ++depth) {
    next.clear();
    for (std::int32_t u : frontier) {
      for (std::int32_t id : g.out[static_cast<std::size_t>(u)]) {
        const DirectedEdge& e = g.edges[static_cast<std::size_t>(id)];
        if (!walkable(e, level)) continue;
        if (visited[static_cast<std::size_t>(e.to)]) continue;
        visited[static_cast<std::size_t>(e.to)] = 1;
        next.push_back(e.to);
        result.push_back(e.to);
      }
    }
    frontier.swap(next);
  }
  std::sort(result.begin(), result.end());
  return result;
}

Classification classify(const DirectedTranscriptGraph& g,
                        const ParamSet& params, int level,
                        const Instance* instance) {
  if (level != 0 && (level < 2 || level > params.levels)) {
    throw Error(Errc::kOutOfRangeLevel,
                "classification level must be 0 (top) or in [2, L]");
  }
  const double sigma =
      level == 0 ? params.sigma_at(params.levels) : params.sigma_at(level - 1);
  const double n = static_cast<double>(g.n);

  Classification out;
  out.level = level;
  out.vertex_threshold = std::pow(n, params.delta - 2.0 * sigma);
  out.neighbor_threshold = std::pow(n, sigma) / 3.0;
  out.spoiler = g.spoiler;
  out.spoiled.assign(static_cast<std::size_t>(g.n), 0);

  for (std::int32_t v = 0; v < g.n; ++v) {
    const auto shallow = shallow_subgraph(g, v, level);
    bool spoiled = static_cast<double>(shallow.size()) >= out.vertex_threshold;
    if (!spoiled) {
      for (std::int32_t w : shallow) {
        if (g.spoiler[static_cast<std::size_t>(w)]) {
          spoiled = true;
          break;
        }
      }
    }
    out.spoiled[static_cast<std::size_t>(v)] = spoiled ? 1 : 0;
  }

  if (instance == nullptr) return out;
  if (instance->n != g.n) {
    throw Error(Errc::kInvalidParam,
                "instance does not match the transcript graph");
  }
  const int label_level = level == 0 ? params.levels : level;

  // Distinct undirected neighbors, for the spoiled-neighbor count.
  std::vector<std::vector<std::int32_t>> neighbors(
      static_cast<std::size_t>(g.n));
  for (const DirectedEdge& e : g.edges) {
    neighbors[static_cast<std::size_t>(e.from)].push_back(e.to);
    neighbors[static_cast<std::size_t>(e.to)].push_back(e.from);
  }
  std::vector<std::int64_t> spoiled_neighbors(static_cast<std::size_t>(g.n), 0);
  for (std::int32_t v = 0; v < g.n; ++v) {
    for (std::int32_t w : neighbors[static_cast<std::size_t>(v)]) {
      if (out.spoiled[static_cast<std::size_t>(w)]) {
        ++spoiled_neighbors[static_cast<std::size_t>(v)];
      }
    }
  }
  for (std::size_t id = 0; id < g.edges.size(); ++id) {
    const DirectedEdge& e = g.edges[id];
    const Frame& tail = instance->frame(e.from, label_level);
    if (tail.kind != SetKind::kA || tail.layer != params.layers) continue;
    const bool head_spoiled = out.spoiled[static_cast<std::size_t>(e.to)] != 0;
    const bool many_spoiled =
        static_cast<double>(
            spoiled_neighbors[static_cast<std::size_t>(e.from)]) >=
        out.neighbor_threshold;
    if (head_spoiled || many_spoiled) {
      out.spoiled_edges.push_back(static_cast<std::int32_t>(id));
    }
  }
  return out;
}

DiscoveryStats discovery_stats(const Transcript& transcript,
                               const ParamSet& params,
                               const std::vector<int>* internal_levels) {
  const DirectedTranscriptGraph g = orient(transcript, internal_levels);
  DiscoveryStats stats;
  stats.queries = static_cast<std::int64_t>(transcript.entries.size());
  stats.edges_found = static_cast<std::int64_t>(g.edges.size());
  for (const DirectedEdge& e : g.edges) {
    if (e.internal_level >= 1 && e.internal_level < params.levels) {
      ++stats.inner_edges_found;
    }
    if (e.real) ++stats.real_edges_found;
  }
  for (std::int32_t v = 0; v < g.n; ++v) {
    stats.max_indegree =
        std::max(stats.max_indegree, g.indegree[static_cast<std::size_t>(v)]);
  }
  stats.depth_cap = depth_cap_for(g.n);
  std::map<std::int64_t, std::int64_t> histogram;
  for (std::int32_t v = 0; v < g.n; ++v) {
    if (g.first_seen[static_cast<std::size_t>(v)] < 0) continue;
    const auto shallow = shallow_subgraph(g, v, 0);
    ++histogram[static_cast<std::int64_t>(shallow.size())];
  }
  stats.shallow_size_histogram.assign(histogram.begin(), histogram.end());
  return stats;
}

}  // namespace matchgap
