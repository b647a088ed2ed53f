#ifndef MATCHGAP_ORACLE_HPP
#define MATCHGAP_ORACLE_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "matchgap/construction.hpp"

namespace matchgap {

enum class QueryModel : std::uint8_t { kSimple, kStrengthened };

const char* query_model_name(QueryModel model) noexcept;
QueryModel query_model_from_name(const std::string& name);

// Full answer to one pair query.  The simple model exposes only the edge
// bit; the strengthened model exposes the pseudo multiplicity.
struct Answer {
  std::int64_t pseudo = 0;  // real + phantom multiplicity
  std::int64_t real = 0;    // multiplicity in the real multigraph

  std::int64_t observed(QueryModel model) const {
    return model == QueryModel::kSimple ? (real >= 1 ? 1 : 0) : pseudo;
  }
};

struct TranscriptEntry {
  std::int64_t step = 0;  // 1-based query index
  std::int32_t u = 0;
  std::int32_t v = 0;
  std::int64_t pseudo = 0;
  std::int64_t real = 0;
};

struct Transcript {
  QueryModel model = QueryModel::kStrengthened;
  std::uint64_t seed = 0;
  std::int32_t n = 0;
  std::int64_t budget = 0;
  std::vector<TranscriptEntry> entries;
};

// Budgeted adaptive pair-query oracle over one instance.
//
// Every pseudo answer decomposes the pair's ground slots: the real edges
// (Binomial over the gadget slots), phantom hits on the remaining gadget
// slots, and phantom hits on the non-gadget ground slots; the marginal
// pseudo count is Binomial(ground, 1/n) on every pair.  All draws are
// keyed by (instance seed, pair, stream tag), so asking twice - or asking
// in a different order, or comparing with sample_real - can never
// disagree.
class Oracle {
 public:
  Oracle(const Instance& instance, QueryModel model, std::int64_t budget);

  // Costs one unit of budget per call (repeats included); throws
  // BudgetExhausted once the budget is spent.
  Answer query(std::int32_t u, std::int32_t v);

  std::int64_t steps() const { return steps_; }
  std::int64_t remaining() const { return budget_ - steps_; }
  std::int64_t budget() const { return budget_; }
  QueryModel model() const { return model_; }
  const Instance& instance() const { return instance_; }

  const Transcript& transcript() const { return transcript_; }

  // Instrumentation channel (not part of the query interface): the
  // refinement level of each answered pair, defined as the lowest level
  // among its pseudo slots; 0 when the pair has no pseudo edge.  Parallel
  // to transcript().entries.
  const std::vector<int>& internal_levels() const { return internal_levels_; }

 private:
  struct Cached {
    Answer answer;
    int level = 0;
  };
  Cached resolve(std::int32_t u, std::int32_t v);

  const Instance& instance_;
  QueryModel model_;
  std::int64_t budget_ = 0;
  std::int64_t steps_ = 0;
  Transcript transcript_;
  std::vector<int> internal_levels_;
  std::unordered_map<std::uint64_t, Cached> cache_;
};

}  // namespace matchgap

#endif  // MATCHGAP_ORACLE_HPP
