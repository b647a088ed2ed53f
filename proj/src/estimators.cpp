#include "matchgap/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <tuple>
#include <thread>
#include <vector>

#include "matchgap/construction.hpp"
#include "matchgap/errors.hpp"
#include "matchgap/graph.hpp"
#include "matchgap/matching.hpp"
#include "matchgap/rng.hpp"

namespace matchgap {

namespace {

// Maximum matching of a discovered graph whose sides are unknown: when a
// BFS 2-coloring succeeds the graph is bipartite and Hopcroft-Karp is
// exact; otherwise (possible only when phantom multiplicities join
// same-side pairs) fall back to a greedy maximal matching, a 1/2
// approximation.
std::int64_t offline_matching(const Graph& g) {
  std::vector<std::uint8_t> color(static_cast<std::size_t>(g.n), 2);
  bool bipartite = true;
  std::vector<std::int32_t> stack;
  for (std::int32_t s = 0; s < g.n && bipartite; ++s) {
    if (color[static_cast<std::size_t>(s)] != 2) continue;
    color[static_cast<std::size_t>(s)] = 0;
    stack.assign(1, s);
    while (!stack.empty() && bipartite) {
      const std::int32_t u = stack.back();
      stack.pop_back();
      for (std::int32_t v : g.adj[static_cast<std::size_t>(u)]) {
        if (color[static_cast<std::size_t>(v)] == 2) {
          color[static_cast<std::size_t>(v)] =
              color[static_cast<std::size_t>(u)] ^ 1;
          stack.push_back(v);
        } else if (color[static_cast<std::size_t>(v)] ==
                   color[static_cast<std::size_t>(u)]) {
          bipartite = false;
          break;
        }
      }
    }
  }
  if (bipartite) return hopcroft_karp(g, color).size;
  std::vector<char> used(static_cast<std::size_t>(g.n), 0);
  std::int64_t size = 0;
  for (std::int32_t u = 0; u < g.n; ++u) {
    if (used[static_cast<std::size_t>(u)]) continue;
    for (std::int32_t v : g.adj[static_cast<std::size_t>(u)]) {
      if (!used[static_cast<std::size_t>(v)] && v != u) {
        used[static_cast<std::size_t>(u)] = 1;
        used[static_cast<std::size_t>(v)] = 1;
        ++size;
        break;
      }
    }
  }
  return size;
}

EstimateResult full_scan(const EstimatorSpec& spec, QuerySession& session) {
  EstimateResult out;
  const std::int32_t n = session.n();
  Graph discovered(n);
  auto scan = [&]() {
    for (std::int32_t u = 0; u < n; ++u) {
      for (std::int32_t v = u + 1; v < n; ++v) {
        if (out.queries_used >= spec.budget) return false;
        const std::int64_t seen = session.observe(u, v);
        ++out.queries_used;
        if (seen >= 1) {
          discovered.add_edge(u, v);
          ++out.observed_edges;
        }
      }
    }
    return true;
  };
  bool complete = false;
  try {
    complete = scan();
  } catch (const BudgetExhausted&) {
  }
  out.truncated = !complete;
  discovered.sort_adjacency();
  out.estimate = static_cast<double>(offline_matching(discovered));
  return out;
}

EstimateResult induced_subgraph(const EstimatorSpec& spec,
                                QuerySession& session) {
  EstimateResult out;
  const std::int32_t n = session.n();
  std::int64_t k = spec.sample_vertices;
  if (k <= 0) {
    // Largest sample whose pair count fits the budget.
    k = static_cast<std::int64_t>(
        std::floor((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(
                                              spec.budget))) / 2.0));
    while (k > 1 && k * (k - 1) / 2 > spec.budget) --k;
  }
  k = std::min<std::int64_t>(k, n);
  if (k < 2) return out;

  std::vector<std::int32_t> ids(static_cast<std::size_t>(n));
  for (std::int32_t v = 0; v < n; ++v) ids[static_cast<std::size_t>(v)] = v;
  rng::Stream pick(spec.seed, 0, rng::Tag::kEstimator);
  rng::shuffle(ids, pick);
  ids.resize(static_cast<std::size_t>(k));

  std::vector<char> used(static_cast<std::size_t>(k), 0);
  std::int64_t matched = 0;
  auto scan = [&]() {
    for (std::int64_t i = 0; i < k; ++i) {
      for (std::int64_t j = i + 1; j < k; ++j) {
        if (out.queries_used >= spec.budget) return false;
        const std::int64_t seen =
            session.observe(ids[static_cast<std::size_t>(i)],
                            ids[static_cast<std::size_t>(j)]);
        ++out.queries_used;
        if (seen >= 1) {
          ++out.observed_edges;
          if (!used[static_cast<std::size_t>(i)] &&
              !used[static_cast<std::size_t>(j)]) {
            used[static_cast<std::size_t>(i)] = 1;
            used[static_cast<std::size_t>(j)] = 1;
            ++matched;
          }
        }
      }
    }
    return true;
  };
  bool complete = false;
  try {
    complete = scan();
  } catch (const BudgetExhausted&) {
  }
  out.truncated = !complete;
  out.estimate =
      std::min(static_cast<double>(n) / 2.0,
               static_cast<double>(matched) * static_cast<double>(n) /
                   static_cast<double>(k));
  return out;
}

EstimateResult random_pairs(const EstimatorSpec& spec, QuerySession& session) {
  EstimateResult out;
  const std::int32_t n = session.n();
  if (n < 2) return out;
  rng::Stream pick(spec.seed, 1, rng::Tag::kEstimator);
  try {
    while (out.queries_used < spec.budget) {
      const auto u = static_cast<std::int32_t>(
          pick.next_below(static_cast<rng::u64>(n)));
      auto v = static_cast<std::int32_t>(
          pick.next_below(static_cast<rng::u64>(n) - 1));
      if (v >= u) ++v;
      const std::int64_t seen = session.observe(u, v);
      ++out.queries_used;
      if (seen >= 1) ++out.observed_edges;
    }
  } catch (const BudgetExhausted&) {
    out.truncated = true;
  }
  if (out.queries_used == 0) return out;
  // Trivial bound mu <= |E|, scaled up from the probed fraction and
  // capped at the perfect-matching size.  A deliberately crude control.
  const double total_pairs =
      static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
  const double edge_rate = static_cast<double>(out.observed_edges) /
                           static_cast<double>(out.queries_used);
  out.estimate =
      std::min(static_cast<double>(n) / 2.0, edge_rate * total_pairs);
  return out;
}

}  // namespace

const char* estimator_name(EstimatorKind kind) noexcept {
  switch (kind) {
    case EstimatorKind::kFullScan: return "full-scan";
    case EstimatorKind::kInducedSubgraph: return "induced-subgraph";
    case EstimatorKind::kRandomPairs: return "random-pairs";
  }
  return "unknown";
}

EstimatorKind estimator_from_name(const std::string& name) {
  if (name == "full-scan") return EstimatorKind::kFullScan;
  if (name == "induced-subgraph") return EstimatorKind::kInducedSubgraph;
  if (name == "random-pairs") return EstimatorKind::kRandomPairs;
  throw Error(Errc::kUnknownEstimator, "no estimator named '" + name + "'");
}

EstimateResult run_estimator(const EstimatorSpec& spec, QuerySession& session) {
  if (spec.budget < 0) {
    throw Error(Errc::kInvalidParam, "estimator budget must be >= 0");
  }
  switch (spec.kind) {
    case EstimatorKind::kFullScan: return full_scan(spec, session);
    case EstimatorKind::kInducedSubgraph: return induced_subgraph(spec, session);
    case EstimatorKind::kRandomPairs: return random_pairs(spec, session);
  }
  throw Error(Errc::kUnknownEstimator, "unhandled estimator kind");
}

std::pair<double, double> wilson_interval(std::int64_t successes,
                                          std::int64_t trials) {
  if (trials <= 0) return {0.0, 1.0};
  constexpr double kZ = 1.959963984540054;  // 97.5th normal percentile
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / t;
  const double z2 = kZ * kZ;
  const double denom = 1.0 + z2 / t;
  const double center = (p + z2 / (2.0 * t)) / denom;
  const double half =
      kZ * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t)) / denom;
  // At the boundaries center and half agree algebraically; pin the
  // endpoints rather than leave sqrt rounding noise.
  const double lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

ExperimentReport distinguishing_experiment(const ParamSet& params,
                                           const EstimatorSpec& spec,
                                           std::int64_t trials,
                                           QueryModel model,
                                           std::uint64_t seed, int jobs) {
  if (trials < 1) {
    throw Error(Errc::kInvalidParam, "experiment needs at least one trial");
  }
  {
    const auto violations = validate(params);
    if (has_errors(violations)) {
      throw Error(Errc::kInvalidParam,
                  "experiment parameters invalid: " +
                      violation_summary(violations));
    }
  }
  jobs = std::max(1, jobs);

  ExperimentReport report;
  report.trials = trials;
  report.threshold = 0.5 * static_cast<double>(params.n()) -
                     0.25 * static_cast<double>(params.set_size_at(1));
  report.records.assign(static_cast<std::size_t>(trials), TrialRecord{});

  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(jobs));
  auto worker = [&](int w) {
    try {
      for (std::int64_t i = w; i < trials; i += jobs) {
        rng::Stream coin(seed, static_cast<rng::u64>(i), rng::Tag::kTrialCase);
        const Case actual =
            (coin.next_u64() & 1) == 0 ? Case::kYes : Case::kNo;
        rng::Stream seeder(seed, static_cast<rng::u64>(i),
                           rng::Tag::kTrialSeed);
        const std::uint64_t instance_seed = seeder.next_u64();

        Instance instance = build_instance(params, actual, instance_seed);
        Oracle oracle(instance, model, spec.budget);
        QuerySession session(oracle);
        EstimatorSpec per_trial = spec;
        per_trial.seed = rng::mix(spec.seed, static_cast<rng::u64>(i));
        const EstimateResult result = run_estimator(per_trial, session);

        TrialRecord rec;
        rec.index = i;
        rec.actual = actual;
        rec.instance_seed = instance_seed;
        rec.estimate = result.estimate;
        rec.decided_yes = result.estimate >= report.threshold;
        rec.correct = rec.decided_yes == (actual == Case::kYes);
        rec.queries_used = result.queries_used;
        rec.truncated = result.truncated;
        report.records[static_cast<std::size_t>(i)] = rec;
      }
    } catch (...) {
      failures[static_cast<std::size_t>(w)] = std::current_exception();
    }
  };

  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  for (const TrialRecord& rec : report.records) {
    if (rec.correct) ++report.correct;
  }
  report.success_rate =
      static_cast<double>(report.correct) / static_cast<double>(trials);
  std::tie(report.wilson_lo, report.wilson_hi) =
      wilson_interval(report.correct, trials);
  return report;
}

}  // namespace matchgap
