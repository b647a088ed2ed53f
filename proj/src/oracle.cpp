#include "matchgap/oracle.hpp"

#include <algorithm>
#include <string>

#include "matchgap/rng.hpp"

namespace matchgap {

const char* query_model_name(QueryModel model) noexcept {
  return model == QueryModel::kSimple ? "simple" : "strengthened";
}

QueryModel query_model_from_name(const std::string& name) {
  if (name == "simple") return QueryModel::kSimple;
  if (name == "strengthened") return QueryModel::kStrengthened;
  throw Error(Errc::kInvalidParam,
              "query model must be 'simple' or 'strengthened', got '" + name + "'");
}

Oracle::Oracle(const Instance& instance, QueryModel model, std::int64_t budget)
    : instance_(instance), model_(model), budget_(budget) {
  if (budget < 0) {
    throw Error(Errc::kInvalidParam, "query budget must be >= 0");
  }
  if (instance.params.ground < 1) {
    throw Error(Errc::kInvalidParam,
                "instance parameters carry no ground slot count");
  }
  transcript_.model = model;
  transcript_.seed = instance.seed;
  transcript_.n = instance.n;
  transcript_.budget = budget;
}

Oracle::Cached Oracle::resolve(std::int32_t u, std::int32_t v) {
  const ParamSet& p = instance_.params;
  const std::int64_t n = p.n();
  const std::int64_t ground = p.ground;
  const int levels = p.levels;
  const std::uint64_t pk =
      rng::pair_key(static_cast<rng::u32>(u), static_cast<rng::u32>(v));
  const double inv_n = 1.0 / static_cast<double>(n);

  const auto law = instance_.pair_law(u, v);
  std::int64_t real = 0;
  std::int64_t extra = 0;
  std::int64_t ground_hits = 0;
  int law_level = levels;  // level the real slots are conditioned on
  std::int64_t gadget_slots = 0;
  if (law.has_value()) {
    law_level = law->level;
    gadget_slots = law->slots;
    const double q = p.slot_prob(law->level);
    {
      rng::Stream stream(instance_.seed, pk, rng::Tag::kRealEdges);
      real = static_cast<std::int64_t>(rng::binomial_draw(
          stream, rng::BinomialSpec::make(static_cast<rng::u64>(gadget_slots), q)));
    }
    // Slots that did not realize a real edge may still carry a phantom:
    // conditioned on failing at rate q, a slot is phantom with
    // probability (1/n - q) / (1 - q), which restores the Binomial(1/n)
    // marginal.  At the top level q == 1/n and nothing is added.
    const double p_extra =
        law->level == levels ? 0.0 : (inv_n - q) / (1.0 - q);
    {
      rng::Stream stream(instance_.seed, pk, rng::Tag::kPseudoExtra);
      extra = static_cast<std::int64_t>(rng::binomial_draw(
          stream, rng::BinomialSpec::make(
                      static_cast<rng::u64>(gadget_slots - real), p_extra)));
    }
  }
  {
    rng::Stream stream(instance_.seed, pk, rng::Tag::kGroundPseudo);
    ground_hits = static_cast<std::int64_t>(rng::binomial_draw(
        stream, rng::BinomialSpec::make(
                    static_cast<rng::u64>(ground - gadget_slots), inv_n)));
  }

  Cached out;
  out.answer.real = real;
  out.answer.pseudo = real + extra + ground_hits;

  // Refinement level of the pair: the lowest level among its pseudo
  // slots.  Real slots of a level-l gadget sit at level <= l with
  // P(<= j) = rho_j / rho_l; phantom slots follow the unconditional
  // ladder P(= j) proportional to rho_j - rho_{j-1}.
  if (out.answer.pseudo > 0) {
    if (levels == 1) {
      out.level = 1;
    } else {
      rng::Stream stream(instance_.seed, pk, rng::Tag::kPseudoLevels);
      int best = levels + 1;
      const double rho_top = p.rho_at(levels);
      for (std::int64_t s = 0; s < real; ++s) {
        const double draw = stream.next_unit() * p.rho_at(law_level);
        for (int j = 1; j <= law_level; ++j) {
          if (draw < p.rho_at(j)) {
            best = std::min(best, j);
            break;
          }
        }
      }
      const double extra_mass = rho_top - p.rho_at(law_level);
      for (std::int64_t s = 0; s < extra; ++s) {
        const double draw =
            p.rho_at(law_level) + stream.next_unit() * extra_mass;
        for (int j = law_level + 1; j <= levels; ++j) {
          if (draw < p.rho_at(j)) {
            best = std::min(best, j);
            break;
          }
        }
      }
      for (std::int64_t s = 0; s < ground_hits; ++s) {
        const double draw = stream.next_unit() * rho_top;
        for (int j = 1; j <= levels; ++j) {
          if (draw < p.rho_at(j)) {
            best = std::min(best, j);
            break;
          }
        }
      }
      // Rounding at the top of a scan can leave a slot unassigned; pin
      // such slots to the deepest level.
      out.level = best <= levels ? best : levels;
    }
  }
  return out;
}

Answer Oracle::query(std::int32_t u, std::int32_t v) {
  if (u < 0 || u >= instance_.n || v < 0 || v >= instance_.n) {
    throw Error(Errc::kVertexOutOfRange,
                "query (" + std::to_string(u) + ", " + std::to_string(v) +
                    ") outside [0, " + std::to_string(instance_.n) + ")");
  }
  if (u == v) {
    throw Error(Errc::kSelfLoopQuery, "pair queries need two distinct vertices");
  }
  if (steps_ >= budget_) {
    throw BudgetExhausted(static_cast<std::size_t>(steps_));
  }
  const std::uint64_t pk =
      rng::pair_key(static_cast<rng::u32>(u), static_cast<rng::u32>(v));
  auto it = cache_.find(pk);
  if (it == cache_.end()) {
    it = cache_.emplace(pk, resolve(u, v)).first;
  }
  ++steps_;
  transcript_.entries.push_back(TranscriptEntry{
      steps_, u, v, it->second.answer.pseudo, it->second.answer.real});
  internal_levels_.push_back(it->second.level);
  return it->second.answer;
}

}  // namespace matchgap
