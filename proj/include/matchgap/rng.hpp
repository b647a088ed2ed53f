#ifndef MATCHGAP_RNG_HPP
#define MATCHGAP_RNG_HPP

#include <array>
#include <cstdint>
#include <vector>

namespace matchgap::rng {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Purpose label for a pseudorandom stream.  Every random decision in the
// library is a pure function of (master seed, context id, tag, draw index),
// so generation order never matters and any draw can be replayed in
// isolation.  Tags must stay stable across versions: regenerating an
// instance or an answer with the same seed must give identical bytes.
enum class Tag : u32 {
  // Per-pair sampling streams (context id = pair_key).
  kRealEdges = 1,     // real multigraph slot counts
  kPseudoExtra = 2,   // pseudo slots on gadget pairs beyond the real ones
  kGroundPseudo = 3,  // pseudo slots on non-gadget (ground-only) pairs
  kPseudoLevels = 4,  // per-slot internal level refinement
  kEdgeDirection = 5, // tie-break coin when directing a discovered edge

  // Construction streams (context id = node id).
  kTopShuffle = 16,   // global placement of vertex ids
  kPartOrder = 17,    // per-node ordering of each side before slicing

  // Harness streams (context id = trial / schedule index).
  kTrialCase = 32,    // YES/NO coin for a distinguishing-experiment trial
  kTrialSeed = 33,    // per-trial instance seed
  kSchedule = 34,     // random query schedules
  kEstimator = 35,    // estimator-internal randomness
};

// One 128-bit block of Philox4x32-10 output.  Counter-based: the four
// counter words are (block index, tag, context lo, context hi) and the key
// is the 64-bit master seed, so distinct (seed, context, tag, block)
// combinations yield independent 128-bit outputs.
std::array<u32, 4> philox4x32(u64 seed, u64 ctx, u32 tag, u32 block);

// Cheap-to-construct view of one stream; hands out uniform draws.
class Stream {
 public:
  Stream(u64 seed, u64 ctx, Tag tag)
      : seed_(seed), ctx_(ctx), tag_(static_cast<u32>(tag)) {}

  u64 next_u64();
  // Uniform double in [0, 1) with 53 random bits.
  double next_unit();
  // Uniform integer in [0, bound), unbiased (rejection sampling); bound > 0.
  u64 next_below(u64 bound);

 private:
  u64 seed_;
  u64 ctx_;
  u32 tag_;
  u32 block_ = 0;
  std::array<u32, 4> buf_{};
  int halves_left_ = 0;
};

// Canonical 64-bit id for an unordered vertex pair.  Vertex ids are
// capped at 2^20 (see params), so packing min into the high bits is
// collision-free.
constexpr u64 pair_key(u32 u, u32 v) {
  const u32 lo = u < v ? u : v;
  const u32 hi = u < v ? v : u;
  return (static_cast<u64>(lo) << 21) | hi;
}

// splitmix64-style mixer used to derive child node ids from a parent id
// and a block/slice code.
u64 mix(u64 a, u64 b);

// In-place Fisher-Yates shuffle driven by a stream.
template <typename T>
void shuffle(std::vector<T>& items, Stream& stream) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(stream.next_below(i));
    std::swap(items[i - 1], items[j]);
  }
}

// Precomputed Binomial(m, q) inversion table head.  The sampler and the
// query oracle both build their specs through make() so that the same
// (m, q) always produces bit-identical draws from the same uniform.
struct BinomialSpec {
  u64 m = 0;
  double q = 0.0;
  double p0 = 1.0;   // (1-q)^m
  double odds = 0.0; // q / (1-q)

  static BinomialSpec make(u64 m, double q);
};

// Exact inversion sampling: consumes exactly one uniform from the stream.
u64 binomial_draw(Stream& stream, const BinomialSpec& spec);

inline u64 binomial_draw(Stream& stream, u64 m, double q) {
  return binomial_draw(stream, BinomialSpec::make(m, q));
}

}  // namespace matchgap::rng

#endif  // MATCHGAP_RNG_HPP
