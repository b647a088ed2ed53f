#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"
#include "matchgap/construction.hpp"
#include "matchgap/estimators.hpp"
#include "matchgap/graph.hpp"
#include "matchgap/matching.hpp"
#include "matchgap/oracle.hpp"
#include "matchgap/params.hpp"
#include "matchgap/sampler.hpp"

using namespace matchgap;

// The estimator interface must not leak the instance: sessions expose
// only size, budget state, and observed answers.
template <typename T>
concept ExposesInstance = requires(T t) { t.instance(); };
static_assert(!ExposesInstance<QuerySession>);
static_assert(ExposesInstance<Oracle>);

namespace {

std::int64_t all_pairs(std::int32_t n) {
  return static_cast<std::int64_t>(n) * (n - 1) / 2;
}

}  // namespace

TEST_SUITE("estimators") {

TEST_CASE("name mapping") {
  CHECK(estimator_from_name("full-scan") == EstimatorKind::kFullScan);
  CHECK(estimator_from_name("induced-subgraph") ==
        EstimatorKind::kInducedSubgraph);
  CHECK(estimator_from_name("random-pairs") == EstimatorKind::kRandomPairs);
  CHECK_THROWS_AS((void)estimator_from_name("psychic"), Error);
  for (EstimatorKind kind :
       {EstimatorKind::kFullScan, EstimatorKind::kInducedSubgraph,
        EstimatorKind::kRandomPairs}) {
    CHECK(estimator_from_name(estimator_name(kind)) == kind);
  }
}

TEST_CASE("full scan with full budget recovers mu exactly (simple model)") {
  const ParamSet p = desk_preset("micro-L1").params;
  for (Case c : {Case::kYes, Case::kNo}) {
    CAPTURE(case_name(c));
    const Instance inst = build_instance(p, c, 3);
    const std::int64_t budget = all_pairs(inst.n);
    Oracle oracle(inst, QueryModel::kSimple, budget);
    QuerySession session(oracle);
    EstimatorSpec spec;
    spec.kind = EstimatorKind::kFullScan;
    spec.budget = budget;
    const EstimateResult result = run_estimator(spec, session);

    const Graph g = project_simple(sample_real(inst));
    const std::int64_t mu = hopcroft_karp(g, inst.part).size;
    CHECK(result.estimate == static_cast<double>(mu));
    CHECK(result.queries_used == budget);
    CHECK(!result.truncated);
    CHECK(result.observed_edges ==
          static_cast<std::int64_t>(g.edge_count()));
  }
}

TEST_CASE("full scan truncates gracefully at the budget") {
  const ParamSet p = desk_preset("micro-L1").params;
  const Instance inst = build_instance(p, Case::kNo, 3);
  Oracle oracle(inst, QueryModel::kSimple, 500);
  QuerySession session(oracle);
  EstimatorSpec spec;
  spec.kind = EstimatorKind::kFullScan;
  spec.budget = 500;
  const EstimateResult result = run_estimator(spec, session);
  CHECK(result.queries_used == 500);
  CHECK(result.truncated);
  CHECK(oracle.steps() == 500);
}

TEST_CASE("budget zero estimates zero; negative budget rejected") {
  const ParamSet p = desk_preset("micro-L1").params;
  const Instance inst = build_instance(p, Case::kNo, 4);
  for (EstimatorKind kind :
       {EstimatorKind::kFullScan, EstimatorKind::kInducedSubgraph,
        EstimatorKind::kRandomPairs}) {
    CAPTURE(estimator_name(kind));
    Oracle oracle(inst, QueryModel::kStrengthened, 10);
    QuerySession session(oracle);
    EstimatorSpec spec;
    spec.kind = kind;
    spec.budget = 0;
    const EstimateResult result = run_estimator(spec, session);
    CHECK(result.estimate == 0.0);
    CHECK(result.queries_used == 0);

    spec.budget = -1;
    CHECK_THROWS_AS((void)run_estimator(spec, session), Error);
  }
}

TEST_CASE("induced subgraph: sample size from the budget, never beyond") {
  const ParamSet p = desk_preset("micro-L1").params;
  const Instance inst = build_instance(p, Case::kNo, 5);

  auto run = [&](std::int64_t budget, std::int32_t sample) {
    Oracle oracle(inst, QueryModel::kStrengthened, budget);
    QuerySession session(oracle);
    EstimatorSpec spec;
    spec.kind = EstimatorKind::kInducedSubgraph;
    spec.budget = budget;
    spec.sample_vertices = sample;
    spec.seed = 99;
    return run_estimator(spec, session);
  };

  // Largest k with k(k-1)/2 <= 45 is 10; with 44 it is 9.
  CHECK(run(45, 0).queries_used == 45);
  CHECK(run(44, 0).queries_used == 36);
  // Explicit k wins when it fits.
  CHECK(run(45, 5).queries_used == 10);
  const EstimateResult r = run(45, 0);
  CHECK(r.estimate <= static_cast<double>(inst.n) / 2.0);
  CHECK(!r.truncated);
}

TEST_CASE("random pairs spend exactly the budget") {
  const ParamSet p = desk_preset("micro-L1").params;
  const Instance inst = build_instance(p, Case::kNo, 6);
  Oracle oracle(inst, QueryModel::kStrengthened, 200);
  QuerySession session(oracle);
  EstimatorSpec spec;
  spec.kind = EstimatorKind::kRandomPairs;
  spec.budget = 200;
  spec.seed = 7;
  const EstimateResult result = run_estimator(spec, session);
  CHECK(result.queries_used == 200);
  CHECK(oracle.steps() == 200);
  CHECK(result.estimate >= 0.0);
  CHECK(result.estimate <= static_cast<double>(inst.n) / 2.0);

  // Deterministic in (spec.seed); a different seed probes other pairs.
  Oracle oracle2(inst, QueryModel::kStrengthened, 200);
  QuerySession session2(oracle2);
  const EstimateResult again = run_estimator(spec, session2);
  CHECK(again.estimate == result.estimate);
  CHECK(again.observed_edges == result.observed_edges);
}

TEST_CASE("wilson interval: frozen reference values") {
  const auto [lo0, hi0] = wilson_interval(0, 0);
  CHECK(lo0 == 0.0);
  CHECK(hi0 == 1.0);
  const auto [lo1, hi1] = wilson_interval(50, 100);
  CHECK(lo1 == doctest::Approx(0.403831530365996).epsilon(1e-12));
  CHECK(hi1 == doctest::Approx(0.596168469634004).epsilon(1e-12));
  const auto [lo2, hi2] = wilson_interval(100, 100);
  CHECK(lo2 == doctest::Approx(0.963006501793014).epsilon(1e-12));
  CHECK(hi2 == 1.0);
  const auto [lo3, hi3] = wilson_interval(0, 100);
  CHECK(lo3 == 0.0);
  CHECK(hi3 == doctest::Approx(0.036993498206986).epsilon(1e-12));
  const auto [lo4, hi4] = wilson_interval(10, 1000);
  CHECK(lo4 == doctest::Approx(0.005440754445529).epsilon(1e-12));
  CHECK(hi4 == doctest::Approx(0.018309468870315).epsilon(1e-12));
}

TEST_CASE("distinguishing experiment: full information recovers exact mu") {
  const ParamSet p = desk_preset("micro-L1").params;
  EstimatorSpec spec;
  spec.kind = EstimatorKind::kFullScan;
  spec.budget = all_pairs(static_cast<std::int32_t>(p.n()));
  const ExperimentReport report = distinguishing_experiment(
      p, spec, 40, QueryModel::kSimple, 2024, 4);
  CHECK(report.trials == 40);
  CHECK(report.records.size() == 40);
  CHECK(report.threshold ==
        doctest::Approx(0.5 * static_cast<double>(p.n()) -
                        0.25 * static_cast<double>(p.set_size_at(1))));

  std::int64_t correct = 0;
  for (const TrialRecord& r : report.records) {
    // Full scan at full budget reproduces the exact matching size of
    // the trial's sampled graph.
    const Instance inst = build_instance(p, r.actual, r.instance_seed);
    const Graph g = project_simple(sample_real(inst));
    const std::int64_t mu = hopcroft_karp(g, inst.part).size;
    CHECK(r.estimate == static_cast<double>(mu));
    CHECK(r.queries_used == spec.budget);
    CHECK(!r.truncated);
    CHECK(r.decided_yes ==
          (r.estimate >= report.threshold));
    CHECK(r.correct == (r.decided_yes == (r.actual == Case::kYes)));
    // The designed gap puts every NO sample below the threshold.
    if (r.actual == Case::kNo) CHECK(r.correct);
    correct += r.correct ? 1 : 0;
  }
  CHECK(report.correct == correct);
  CHECK(report.success_rate ==
        doctest::Approx(static_cast<double>(correct) / 40.0));
  // At this miniature size YES samples sit below the threshold too
  // (the sparse links rarely materialize at s = 0.05), so the wins are
  // exactly the certified NO trials - and the whole run is bit-for-bit
  // reproducible for the fixed seed.
  std::int64_t no_trials = 0;
  for (const TrialRecord& r : report.records)
    no_trials += r.actual == Case::kNo ? 1 : 0;
  CHECK(report.correct >= no_trials);
  CHECK(report.correct == 24);
}

TEST_CASE("experiment is thread-count invariant and budget-capped") {
  const ParamSet p = desk_preset("micro-L1").params;
  EstimatorSpec spec;
  spec.kind = EstimatorKind::kRandomPairs;
  spec.budget = p.query_budget();
  spec.seed = 5;
  const ExperimentReport serial =
      distinguishing_experiment(p, spec, 30, QueryModel::kStrengthened, 11, 1);
  const ExperimentReport parallel =
      distinguishing_experiment(p, spec, 30, QueryModel::kStrengthened, 11, 8);
  REQUIRE(serial.records.size() == parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    CHECK(serial.records[i].estimate == parallel.records[i].estimate);
    CHECK(serial.records[i].actual == parallel.records[i].actual);
    CHECK(serial.records[i].instance_seed == parallel.records[i].instance_seed);
    CHECK(serial.records[i].queries_used <= spec.budget);
  }
  CHECK(serial.correct == parallel.correct);

  // Case coin is fair-ish over the fixed seed sequence.
  std::int64_t yes = 0;
  for (const TrialRecord& r : serial.records) yes += r.actual == Case::kYes;
  CHECK(yes > 0);
  CHECK(yes < 30);
}

TEST_CASE("experiment argument validation") {
  const ParamSet p = desk_preset("micro-L1").params;
  EstimatorSpec spec;
  spec.budget = 10;
  CHECK_THROWS_AS((void)distinguishing_experiment(
                      p, spec, 0, QueryModel::kSimple, 1, 1),
                  Error);
  ParamSet broken = p;
  broken.zeta = Rat(1, 3);
  CHECK_THROWS_AS((void)distinguishing_experiment(
                      broken, spec, 5, QueryModel::kSimple, 1, 1),
                  Error);
}

}  // TEST_SUITE
