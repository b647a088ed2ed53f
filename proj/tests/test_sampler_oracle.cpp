#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "doctest.h"
#include "matchgap/construction.hpp"
#include "matchgap/graph.hpp"
#include "matchgap/oracle.hpp"
#include "matchgap/params.hpp"
#include "matchgap/sampler.hpp"

using namespace matchgap;

TEST_SUITE("sampler-oracle") {

TEST_CASE("sampler and oracle draw bit-identical real counts") {
  const ParamSet p = desk_preset("micro-L1").params;
  for (Case c : {Case::kYes, Case::kNo}) {
    CAPTURE(case_name(c));
    const Instance inst = build_instance(p, c, 17);
    const MultiGraph mg = sample_real(inst);
    std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> sampled;
    for (const MultiEdge& e : mg.edges) sampled[{e.u, e.v}] = e.count;

    const std::int64_t pairs =
        static_cast<std::int64_t>(inst.n) * (inst.n - 1) / 2;
    Oracle oracle(inst, QueryModel::kStrengthened, pairs);
    std::int64_t mismatches = 0;
    for (std::int32_t u = 0; u < inst.n; ++u) {
      for (std::int32_t v = u + 1; v < inst.n; ++v) {
        const Answer a = oracle.query(u, v);
        const auto it = sampled.find({u, v});
        const std::int64_t want = it == sampled.end() ? 0 : it->second;
        mismatches += a.real != want;
        if (a.real > 0) {
          // Real edges appear only on gadget pairs.
          CHECK(inst.pair_law(u, v).has_value());
        }
        CHECK(a.pseudo >= a.real);
      }
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("simple model observes exactly the real-edge indicator") {
  const ParamSet p = desk_preset("micro-L1").params;
  const Instance inst = build_instance(p, Case::kNo, 23);
  const std::int64_t pairs =
      static_cast<std::int64_t>(inst.n) * (inst.n - 1) / 2;
  Oracle simple(inst, QueryModel::kSimple, pairs);
  Oracle strong(inst, QueryModel::kStrengthened, pairs);
  for (std::int32_t u = 0; u < inst.n; ++u) {
    for (std::int32_t v = u + 1; v < inst.n; ++v) {
      const Answer a = simple.query(u, v);
      const Answer b = strong.query(u, v);
      CHECK(a.real == b.real);
      CHECK(a.pseudo == b.pseudo);
      CHECK(a.observed(QueryModel::kSimple) == (a.real >= 1 ? 1 : 0));
      CHECK(b.observed(QueryModel::kStrengthened) == b.pseudo);
    }
  }
}

TEST_CASE("marginal pseudo law: mean tracks ground/n on ground-only pairs") {
  const ParamSet p = desk_preset("micro-L1").params;
  const Instance inst = build_instance(p, Case::kNo, 31);
  const std::int64_t pairs =
      static_cast<std::int64_t>(inst.n) * (inst.n - 1) / 2;
  Oracle oracle(inst, QueryModel::kStrengthened, pairs);
  double sum = 0.0, sum_ground = 0.0;
  std::int64_t count_ground = 0;
  for (std::int32_t u = 0; u < inst.n; ++u) {
    for (std::int32_t v = u + 1; v < inst.n; ++v) {
      const Answer a = oracle.query(u, v);
      sum += static_cast<double>(a.pseudo);
      if (!inst.pair_law(u, v).has_value()) {
        sum_ground += static_cast<double>(a.pseudo);
        ++count_ground;
      }
    }
  }
  const double want = static_cast<double>(p.ground) / static_cast<double>(p.n());
  // Var(pseudo) ~ want; the all-pairs mean has sigma ~ sqrt(want/pairs).
  const double sigma = std::sqrt(want / static_cast<double>(pairs));
  CHECK(std::abs(sum / static_cast<double>(pairs) - want) < 6.0 * sigma);
  CHECK(std::abs(sum_ground / static_cast<double>(count_ground) - want) <
        7.0 * sigma);
}

TEST_CASE("budget: every call pays, repeats cached, exhaustion throws") {
  const ParamSet p = desk_preset("micro-L1").params;
  const Instance inst = build_instance(p, Case::kNo, 1);
  Oracle oracle(inst, QueryModel::kStrengthened, 5);
  const Answer first = oracle.query(3, 4);
  const Answer swapped = oracle.query(4, 3);  // same unordered pair
  CHECK(first.pseudo == swapped.pseudo);
  CHECK(first.real == swapped.real);
  CHECK(oracle.steps() == 2);  // the repeat still consumed budget
  (void)oracle.query(5, 6);
  (void)oracle.query(5, 7);
  (void)oracle.query(5, 8);
  CHECK(oracle.remaining() == 0);
  CHECK_THROWS_AS((void)oracle.query(9, 10), BudgetExhausted);
  try {
    (void)oracle.query(9, 10);
  } catch (const BudgetExhausted& e) {
    CHECK(e.steps_taken() == 5);
  }
  // The transcript logs the five paid queries, repeats included.
  CHECK(oracle.transcript().entries.size() == 5);
  CHECK(oracle.transcript().entries[1].u == 4);
  CHECK(oracle.transcript().entries[1].pseudo == first.pseudo);
  CHECK(oracle.transcript().budget == 5);
  CHECK(oracle.transcript().n == inst.n);
}

TEST_CASE("query argument validation") {
  const ParamSet p = desk_preset("micro-L1").params;
  const Instance inst = build_instance(p, Case::kNo, 1);
  Oracle oracle(inst, QueryModel::kStrengthened, 10);
  CHECK_THROWS_AS((void)oracle.query(0, 0), Error);
  CHECK_THROWS_AS((void)oracle.query(-1, 3), Error);
  CHECK_THROWS_AS((void)oracle.query(0, inst.n), Error);
  CHECK(oracle.steps() == 0);  // rejected calls are free
}

TEST_CASE("answers are independent of query order and oracle identity") {
  const ParamSet p = desk_preset("tiny-L1").params;
  const Instance inst_a = build_instance(p, Case::kNo, 77);
  const Instance inst_b = build_instance(p, Case::kNo, 77);
  Oracle forward(inst_a, QueryModel::kStrengthened, 1000);
  Oracle backward(inst_b, QueryModel::kStrengthened, 1000);
  std::vector<std::pair<std::int32_t, std::int32_t>> queries;
  for (std::int32_t u = 0; u < 40; ++u) queries.push_back({u, u + 40});
  for (const auto& [u, v] : queries) (void)forward.query(u, v);
  for (auto it = queries.rbegin(); it != queries.rend(); ++it)
    (void)backward.query(it->first, it->second);
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const TranscriptEntry& f = forward.transcript().entries[i];
    const TranscriptEntry& b =
        backward.transcript().entries[queries.size() - 1 - i];
    CHECK(f.u == b.u);
    CHECK(f.v == b.v);
    CHECK(f.pseudo == b.pseudo);
    CHECK(f.real == b.real);
  }
}

TEST_CASE("internal level channel: single level collapses to the edge bit") {
  const ParamSet p = desk_preset("micro-L1").params;
  const Instance inst = build_instance(p, Case::kNo, 5);
  Oracle oracle(inst, QueryModel::kStrengthened, 2000);
  for (std::int32_t u = 0; u < 40; ++u)
    for (std::int32_t v = 40; v < 90; ++v) (void)oracle.query(u, v);
  const auto& levels = oracle.internal_levels();
  const auto& entries = oracle.transcript().entries;
  REQUIRE(levels.size() == entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CHECK(levels[i] == (entries[i].pseudo > 0 ? 1 : 0));
  }
}

TEST_CASE("internal level channel: two levels split the pseudo slots") {
  const ParamSet p = desk_preset("tiny-L2").params;
  const Instance inst = build_instance(p, Case::kNo, 5);
  Oracle oracle(inst, QueryModel::kStrengthened, 9600);
  std::int64_t level1 = 0, level2 = 0;
  for (std::int64_t q = 0; q < 9600; ++q) {
    const std::int32_t u = static_cast<std::int32_t>(q % 9600);
    const std::int32_t v = static_cast<std::int32_t>((q * 37 + 1) % 9600);
    if (u == v) continue;
    const Answer a = oracle.query(u, v);
    const int level = oracle.internal_levels().back();
    if (a.pseudo == 0) {
      CHECK(level == 0);
    } else {
      CHECK(level >= 1);
      CHECK(level <= 2);
      level1 += level == 1;
      level2 += level == 2;
    }
  }
  // rho_1/rho_2 = 0.96 of surviving slots refine to level 1.
  CHECK(level1 > 0);
  CHECK(level2 > 0);
  CHECK(level1 > 5 * level2);
}

TEST_CASE("multiplicity stats summarize the sampled multigraph") {
  const ParamSet p = desk_preset("micro-L1").params;
  const Instance inst = build_instance(p, Case::kNo, 2);
  const MultiGraph mg = sample_real(inst);
  const MultiplicityStats stats = multiplicity_stats(mg);
  CHECK(stats.pairs_with_edges == static_cast<std::int64_t>(mg.edges.size()));
  CHECK(stats.total_multiplicity == mg.total_multiplicity());
  std::int64_t from_hist = 0, weighted = 0;
  for (std::size_t k = 0; k < stats.histogram.size(); ++k) {
    if (k > 0) from_hist += stats.histogram[k];
    weighted += static_cast<std::int64_t>(k) * stats.histogram[k];
  }
  CHECK(from_hist == stats.pairs_with_edges);
  CHECK(weighted == stats.total_multiplicity);
  CHECK(stats.max_multiplicity ==
        static_cast<std::int64_t>(stats.histogram.size()) - 1);
}

}  // TEST_SUITE
