#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <queue>
#include <set>
#include <vector>

#include "doctest.h"
#include "matchgap/analysis.hpp"
#include "matchgap/construction.hpp"
#include "matchgap/errors.hpp"
#include "matchgap/oracle.hpp"
#include "matchgap/params.hpp"
#include "matchgap/rng.hpp"

using namespace matchgap;

namespace {

Transcript make_transcript(std::int32_t n, std::uint64_t seed,
                           std::vector<std::array<std::int64_t, 4>> rows) {
  Transcript t;
  t.model = QueryModel::kStrengthened;
  t.seed = seed;
  t.n = n;
  t.budget = static_cast<std::int64_t>(rows.size());
  std::int64_t step = 0;
  for (const auto& row : rows) {
    t.entries.push_back(TranscriptEntry{++step,
                                        static_cast<std::int32_t>(row[0]),
                                        static_cast<std::int32_t>(row[1]),
                                        /*pseudo=*/row[2], /*real=*/row[3]});
  }
  return t;
}

// Independent reference: BFS over out-edges with an explicit hop cap.
std::vector<std::int32_t> reference_reach(const DirectedTranscriptGraph& g,
                                          std::int32_t root,
                                          std::int64_t max_hops,
                                          int level) {
  std::set<std::int32_t> seen = {root};
  std::queue<std::pair<std::int32_t, std::int64_t>> frontier;
  frontier.push({root, 0});
  while (!frontier.empty()) {
    const auto [v, hops] = frontier.front();
    frontier.pop();
    if (hops == max_hops) continue;
    for (std::int32_t eid : g.out[static_cast<std::size_t>(v)]) {
      const DirectedEdge& e = g.edges[static_cast<std::size_t>(eid)];
      if (level > 0 && !(e.internal_level >= 1 && e.internal_level < level))
        continue;
      if (seen.insert(e.to).second) frontier.push({e.to, hops + 1});
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("orientation: discovered endpoints point at singletons") {
  // 1-2 discovered, then 2-3: vertex 2 already has an edge, 3 does not,
  // so the second edge must run 2 -> 3.  Then 4-5 (fresh pair), then
  // 3-5: both already have edges -> both become spoilers.
  const Transcript t = make_transcript(
      6, 99, {{1, 2, 1, 1}, {2, 3, 2, 0}, {4, 5, 1, 1}, {3, 5, 1, 0}});
  const DirectedTranscriptGraph g = orient(t);
  REQUIRE(g.edges.size() == 4);
  CHECK(g.edges[1].from == 2);
  CHECK(g.edges[1].to == 3);
  CHECK(g.edges[1].real == false);  // phantom-only answer
  CHECK(g.edges[0].real == true);
  CHECK(!g.edges[0].both_seen);
  CHECK(!g.edges[1].both_seen);
  CHECK(g.edges[3].both_seen);

  // Spoilers: exactly the endpoints of the both-seen edge.
  CHECK(g.spoiler[3]);
  CHECK(g.spoiler[5]);
  CHECK(!g.spoiler[0]);
  CHECK(!g.spoiler[1]);
  CHECK(!g.spoiler[2]);
  CHECK(!g.spoiler[4]);

  // first_seen records the discovery step; vertex 0 never appears.
  CHECK(g.first_seen[0] == -1);
  CHECK(g.first_seen[1] == 1);
  CHECK(g.first_seen[2] == 1);
  CHECK(g.first_seen[3] == 2);

  // Out-lists and indegrees recount the edges.
  std::int64_t out_total = 0;
  std::int64_t in_total = 0;
  for (const auto& lst : g.out)
    out_total += static_cast<std::int64_t>(lst.size());
  for (std::int32_t d : g.indegree) in_total += d;
  CHECK(out_total == 4);
  CHECK(in_total == 4);
}

TEST_CASE("orientation: zero answers and repeats do not discover") {
  const Transcript t = make_transcript(4, 1,
                                       {{0, 1, 0, 0},
                                        {0, 1, 0, 0},
                                        {1, 2, 3, 1},
                                        {2, 1, 3, 1},   // repeat, swapped
                                        {0, 3, 0, 0}});
  const DirectedTranscriptGraph g = orient(t);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].step == 3);
  CHECK(g.first_seen[0] == -1);  // vertex 0 only ever got zero answers
  CHECK(g.first_seen[3] == -1);
}

TEST_CASE("orientation coin is a pure function of (seed, pair)") {
  const Transcript t = make_transcript(4, 7, {{0, 1, 1, 1}});
  const DirectedTranscriptGraph a = orient(t);
  const DirectedTranscriptGraph b = orient(t);
  CHECK(a.edges[0].from == b.edges[0].from);
  // Different seeds must eventually flip the coin: scan a few seeds and
  // require both directions to occur.
  bool saw_forward = false, saw_backward = false;
  for (std::uint64_t seed = 0; seed < 64 && !(saw_forward && saw_backward);
       ++seed) {
    const Transcript probe = make_transcript(4, seed, {{0, 1, 1, 1}});
    const DirectedTranscriptGraph g = orient(probe);
    (g.edges[0].from == 0 ? saw_forward : saw_backward) = true;
  }
  CHECK(saw_forward);
  CHECK(saw_backward);
}

TEST_CASE("simple model discovers on the edge bit, not the pseudo count") {
  Transcript t = make_transcript(4, 3, {{0, 1, 2, 0}, {1, 2, 1, 1}});
  t.model = QueryModel::kSimple;
  const DirectedTranscriptGraph g = orient(t);
  // pseudo=2/real=0 is invisible in the simple model.
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].real);
  CHECK(g.first_seen[0] == -1);
}

TEST_CASE("internal level channel rides along and gates inner walks") {
  Transcript t = make_transcript(
      6, 5, {{0, 1, 1, 1}, {1, 2, 1, 0}, {2, 3, 1, 0}, {3, 4, 1, 0}});
  const std::vector<int> levels = {1, 1, 2, 1};
  const DirectedTranscriptGraph g = orient(t, &levels);
  REQUIRE(g.edges.size() == 4);
  CHECK(g.edges[0].internal_level == 1);
  CHECK(g.edges[2].internal_level == 2);
  // Without the channel every level reads 0.
  const DirectedTranscriptGraph bare = orient(t);
  CHECK(bare.edges[2].internal_level == 0);

  const std::vector<int> bad = {1, 1};
  CHECK_THROWS_AS((void)orient(t, &bad), Error);
}

TEST_CASE("shallow subgraph equals reference BFS under the depth cap") {
  // Random transcript over 60 vertices; cap = floor(10 ln 60) = 40.
  std::vector<std::array<std::int64_t, 4>> rows;
  rng::Stream s(8, 0, rng::Tag::kSchedule);
  for (int i = 0; i < 300; ++i) {
    const auto u = static_cast<std::int64_t>(s.next_below(60));
    auto v = static_cast<std::int64_t>(s.next_below(59));
    if (v >= u) ++v;
    rows.push_back({u, v, static_cast<std::int64_t>(s.next_below(3)), 0});
  }
  const Transcript t = make_transcript(60, 1234, rows);
  std::vector<int> levels(t.entries.size(), 0);
  for (std::size_t i = 0; i < levels.size(); ++i)
    levels[i] = t.entries[i].pseudo > 0 ? 1 + static_cast<int>(i % 2) : 0;
  const DirectedTranscriptGraph g = orient(t, &levels);

  const std::int64_t cap =
      static_cast<std::int64_t>(std::floor(10.0 * std::log(60.0)));
  for (std::int32_t v = 0; v < 60; v += 7) {
    CHECK(shallow_subgraph(g, v) == reference_reach(g, v, cap, 0));
    CHECK(shallow_subgraph(g, v, 2) == reference_reach(g, v, cap, 2));
  }
  CHECK_THROWS_AS((void)shallow_subgraph(g, -1), Error);
  CHECK_THROWS_AS((void)shallow_subgraph(g, 60), Error);
}

TEST_CASE("depth cap truncates a long directed path at floor(10 ln n)") {
  // Path queries 0-1, 1-2, ..., 58-59 on n = 60.  Every edge after the
  // first attaches a fresh singleton, so edges i -> i+1 for i >= 1 are
  // forced; only the first edge's direction is coin-decided.
  std::vector<std::array<std::int64_t, 4>> rows;
  for (std::int64_t v = 0; v + 1 < 60; ++v) rows.push_back({v, v + 1, 1, 1});
  const Transcript t = make_transcript(60, 11, rows);
  const DirectedTranscriptGraph g = orient(t);

  // From vertex 2 the reachable set is exactly {2, ..., 2 + cap} with
  // cap = floor(10 ln 60) = 40: one more or one fewer hop changes the
  // size, so this pins the cap value.
  const auto from_two = shallow_subgraph(g, 2);
  REQUIRE(from_two.size() == 41);
  CHECK(from_two.front() == 2);
  CHECK(from_two.back() == 42);
  // The path continues to vertex 59, so the walk really was truncated.
  CHECK(std::find(from_two.begin(), from_two.end(), 59) == from_two.end());
  for (std::int32_t v : {0, 1, 2, 10, 59}) {
    CHECK(shallow_subgraph(g, v) == reference_reach(g, v, 40, 0));
  }
}

TEST_CASE("classification thresholds and spoiled sets (synthetic)") {
  const ParamSet p = desk_preset("micro-L1").params;  // n=162, delta=1
  // Forward chain 1 -> 2 -> ... -> 19 (first edge coin-oriented, all
  // later edges forced).  Shallow sizes then step down along the chain,
  // crossing the volume threshold n^(delta - 2 sigma) = 162^0.5 ~ 12.73
  // between vertices 7 (13 reachable) and 8 (12 reachable).
  std::vector<std::array<std::int64_t, 4>> rows;
  for (std::int64_t v = 0; v + 1 < 20; ++v) rows.push_back({v, v + 1, 1, 1});
  // Detached pair + a both-seen edge to spawn spoilers elsewhere.
  rows.push_back({40, 41, 1, 1});
  rows.push_back({42, 43, 1, 1});
  rows.push_back({41, 43, 1, 1});
  const Transcript t = make_transcript(162, 6, rows);
  const DirectedTranscriptGraph g = orient(t);
  const Classification cls = classify(g, p);

  CHECK(cls.level == 0);
  CHECK(cls.vertex_threshold == doctest::Approx(std::pow(162.0, 0.5)));
  CHECK(cls.neighbor_threshold ==
        doctest::Approx(std::pow(162.0, 0.25) / 3.0));

  CHECK(cls.spoiled[1]);    // sees >= 19 vertices
  CHECK(cls.spoiled[7]);    // sees 13 >= 12.73
  CHECK(!cls.spoiled[8]);   // sees 12 < 12.73
  CHECK(!cls.spoiled[19]);  // chain tail sees only itself
  // Spoilers spoil their own shallow subgraph.
  CHECK(cls.spoiler[41]);
  CHECK(cls.spoiler[43]);
  CHECK(cls.spoiled[41]);
  CHECK(cls.spoiled[43]);
  // Isolated vertices are clean.
  CHECK(!cls.spoiled[100]);

  // Level argument: only 0 or [2, L] is legal; micro has L = 1.
  CHECK_THROWS_AS((void)classify(g, p, 1), Error);
  CHECK_THROWS_AS((void)classify(g, p, 2), Error);

  // Without instance labels no edge can be classified spoiled.
  CHECK(cls.spoiled_edges.empty());
}

TEST_CASE("spoiled edges need outer-layer labels from the instance") {
  const ParamSet p = desk_preset("micro-L1").params;
  const Instance inst = build_instance(p, Case::kNo, 9);
  Oracle oracle(inst, QueryModel::kStrengthened, 2000);
  rng::Stream pick(3, 0, rng::Tag::kSchedule);
  for (int q = 0; q < 2000; ++q) {
    const auto u = static_cast<std::int32_t>(pick.next_below(162));
    auto v = static_cast<std::int32_t>(pick.next_below(161));
    if (v >= u) ++v;
    (void)oracle.query(u, v);
  }
  const DirectedTranscriptGraph g =
      orient(oracle.transcript(), &oracle.internal_levels());
  const Classification cls = classify(g, p, 0, &inst);

  // Every reported spoiled edge starts in an outermost A set and either
  // aims at a spoiled head or leaves a tail crowded by spoiled
  // neighbors; recount both conditions from scratch.
  std::set<std::int32_t> reported(cls.spoiled_edges.begin(),
                                  cls.spoiled_edges.end());
  for (std::int32_t eid = 0;
       eid < static_cast<std::int32_t>(g.edges.size()); ++eid) {
    const DirectedEdge& e = g.edges[static_cast<std::size_t>(eid)];
    const Frame& tail = inst.frame(e.from, 1);
    std::set<std::int32_t> spoiled_neighbors;
    for (const DirectedEdge& other : g.edges) {
      const std::int32_t nb = other.from == e.from ? other.to
                              : other.to == e.from ? other.from
                                                   : -1;
      if (nb >= 0 && cls.spoiled[static_cast<std::size_t>(nb)])
        spoiled_neighbors.insert(nb);
    }
    const bool expect =
        tail.kind == SetKind::kA && tail.layer == p.layers &&
        (cls.spoiled[static_cast<std::size_t>(e.to)] ||
         static_cast<double>(spoiled_neighbors.size()) >=
             cls.neighbor_threshold);
    CHECK(reported.count(eid) == (expect ? 1U : 0U));
  }

  // A mismatched instance is rejected.
  const ParamSet tiny = desk_preset("tiny-L1").params;
  const Instance wrong = build_instance(tiny, Case::kNo, 9);
  CHECK_THROWS_AS((void)classify(g, p, 0, &wrong), Error);
}

TEST_CASE("discovery stats recount the transcript") {
  const ParamSet p = desk_preset("micro-L1").params;
  const Instance inst = build_instance(p, Case::kNo, 12);
  Oracle oracle(inst, QueryModel::kStrengthened, 162);
  rng::Stream pick(4, 0, rng::Tag::kSchedule);
  for (int q = 0; q < 162; ++q) {
    const auto u = static_cast<std::int32_t>(pick.next_below(162));
    auto v = static_cast<std::int32_t>(pick.next_below(161));
    if (v >= u) ++v;
    (void)oracle.query(u, v);
  }
  const DiscoveryStats stats =
      discovery_stats(oracle.transcript(), p, &oracle.internal_levels());
  const DirectedTranscriptGraph g =
      orient(oracle.transcript(), &oracle.internal_levels());

  CHECK(stats.queries == 162);
  CHECK(stats.edges_found == static_cast<std::int64_t>(g.edges.size()));
  CHECK(stats.depth_cap ==
        static_cast<std::int64_t>(std::floor(10.0 * std::log(162.0))));

  std::int64_t real = 0;
  std::int64_t inner = 0;
  std::int32_t max_in = 0;
  for (const DirectedEdge& e : g.edges) {
    if (e.real) ++real;
    if (e.internal_level >= 1 && e.internal_level < p.levels) ++inner;
  }
  for (std::int32_t d : g.indegree) max_in = std::max(max_in, d);
  CHECK(stats.real_edges_found == real);
  CHECK(stats.inner_edges_found == inner);
  CHECK(stats.inner_edges_found == 0);  // L = 1: nothing below the top
  CHECK(stats.max_indegree == max_in);

  std::int64_t histogram_total = 0;
  for (const auto& [size, count] : stats.shallow_size_histogram) {
    CHECK(size >= 1);
    CHECK(count >= 1);
    histogram_total += count;
  }
  std::int64_t non_isolated = 0;
  for (std::int64_t f : g.first_seen) non_isolated += f >= 0 ? 1 : 0;
  CHECK(histogram_total == non_isolated);
}

TEST_CASE("two-level probe yields inner edges below the top level") {
  const ParamSet p = desk_preset("tiny-L2").params;
  const Instance inst = build_instance(p, Case::kNo, 2);
  const auto n = static_cast<std::int32_t>(p.n());
  Oracle oracle(inst, QueryModel::kStrengthened, 4000);
  rng::Stream pick(5, 0, rng::Tag::kSchedule);
  for (int q = 0; q < 4000; ++q) {
    const auto u = static_cast<std::int32_t>(
        pick.next_below(static_cast<std::uint64_t>(n)));
    auto v = static_cast<std::int32_t>(
        pick.next_below(static_cast<std::uint64_t>(n - 1)));
    if (v >= u) ++v;
    (void)oracle.query(u, v);
  }
  const DiscoveryStats stats =
      discovery_stats(oracle.transcript(), p, &oracle.internal_levels());
  CHECK(stats.edges_found > 0);
  CHECK(stats.inner_edges_found > 0);
  CHECK(stats.inner_edges_found < stats.edges_found);

  // classify at level 2 restricts walks to inner edges and is legal
  // for L = 2.
  const DirectedTranscriptGraph g =
      orient(oracle.transcript(), &oracle.internal_levels());
  const Classification cls = classify(g, p, 2, &inst);
  CHECK(cls.level == 2);
  CHECK(cls.vertex_threshold ==
        doctest::Approx(std::pow(static_cast<double>(n),
                                 p.delta - 2.0 * p.sigma_at(1))));
  CHECK_THROWS_AS((void)classify(g, p, 3), Error);
}

}  // TEST_SUITE
