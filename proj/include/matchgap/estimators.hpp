#ifndef MATCHGAP_ESTIMATORS_HPP
#define MATCHGAP_ESTIMATORS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "matchgap/oracle.hpp"

namespace matchgap {

// The estimator-facing view of an oracle: vertex count, budget state,
// and the observed answer under the session's query model.  The
// underlying instance - and with it the hidden case - is unreachable
// through this interface.
class QuerySession {
 public:
  explicit QuerySession(Oracle& oracle) : oracle_(oracle) {}

  std::int32_t n() const { return oracle_.transcript().n; }
  QueryModel model() const { return oracle_.model(); }
  std::int64_t budget() const { return oracle_.budget(); }
  std::int64_t steps() const { return oracle_.steps(); }
  std::int64_t remaining() const { return oracle_.remaining(); }

  // Observed multiplicity: the edge bit in the simple model, the pseudo
  // count in the strengthened model.
  std::int64_t observe(std::int32_t u, std::int32_t v) {
    return oracle_.query(u, v).observed(oracle_.model());
  }

 private:
  Oracle& oracle_;
};

enum class EstimatorKind : std::uint8_t {
  kFullScan,         // query every pair, solve the matching offline
  kInducedSubgraph,  // query a k-vertex sample, greedy-match, scale by n/k
  kRandomPairs,      // uniform pair probes; crude edge-count bound
};

const char* estimator_name(EstimatorKind kind) noexcept;
EstimatorKind estimator_from_name(const std::string& name);

struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::kFullScan;
  std::int64_t budget = 0;           // max queries; 0 degenerates to estimate 0
  std::int32_t sample_vertices = 0;  // induced-subgraph k; 0 = largest k
                                     // with k*(k-1)/2 <= budget
  std::uint64_t seed = 0;            // estimator-side randomness
};

struct EstimateResult {
  double estimate = 0.0;  // estimated maximum matching size
  std::int64_t queries_used = 0;
  bool truncated = false;  // ran out of budget before finishing its plan
  std::int64_t observed_edges = 0;  // distinct pairs seen with observed >= 1
};

// Runs one estimator against a fresh session.  Budget exhaustion is not
// an error: the estimate computed from the answers so far is returned
// with truncated = true.
EstimateResult run_estimator(const EstimatorSpec& spec, QuerySession& session);

struct TrialRecord {
  std::int64_t index = 0;
  Case actual = Case::kYes;
  std::uint64_t instance_seed = 0;
  double estimate = 0.0;
  bool decided_yes = false;
  bool correct = false;
  std::int64_t queries_used = 0;
  bool truncated = false;
};

struct ExperimentReport {
  std::int64_t trials = 0;
  std::int64_t correct = 0;
  double success_rate = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 1.0;
  double threshold = 0.0;  // decide YES iff estimate >= threshold
  std::vector<TrialRecord> records;
};

// Coin-flip trials of the YES/NO distinguishing game: each trial draws a
// fair case, builds an instance on a per-trial seed, runs the blinded
// estimator through a budget-capped oracle, and decides YES iff the
// estimate reaches n_L/2 - N_1/4 (the midpoint of the designed gap).
// Reports the success rate with a 95% Wilson score interval.  `jobs`
// worker threads split the trials; the per-trial records depend only on
// (params, spec, model, seed), never on the thread count.
ExperimentReport distinguishing_experiment(const ParamSet& params,
                                           const EstimatorSpec& spec,
                                           std::int64_t trials,
                                           QueryModel model,
                                           std::uint64_t seed, int jobs = 1);

// 95% Wilson score interval for `successes` out of `trials`.
std::pair<double, double> wilson_interval(std::int64_t successes,
                                          std::int64_t trials);

}  // namespace matchgap

#endif  // MATCHGAP_ESTIMATORS_HPP
