#include "matchgap/rng.hpp"

#include <cmath>

namespace matchgap::rng {

namespace {

// Philox4x32 round and key-schedule constants (Salmon et al., "Parallel
// random numbers: as easy as 1, 2, 3").
constexpr u32 kPhiloxW32A = 0x9E3779B9u;
constexpr u32 kPhiloxW32B = 0xBB67AE85u;
constexpr u32 kPhiloxM4x32A = 0xD2511F53u;
constexpr u32 kPhiloxM4x32B = 0xCD9E8D57u;

inline void mul_hi_lo(u32 a, u32 b, u32& hi, u32& lo) {
  const u64 prod = static_cast<u64>(a) * static_cast<u64>(b);
  hi = static_cast<u32>(prod >> 32);
  lo = static_cast<u32>(prod);
}

inline std::array<u32, 4> philox_round(const std::array<u32, 4>& ctr,
                                       const std::array<u32, 2>& key) {
  u32 hi0 = 0, lo0 = 0, hi1 = 0, lo1 = 0;
  mul_hi_lo(kPhiloxM4x32A, ctr[0], hi0, lo0);
  mul_hi_lo(kPhiloxM4x32B, ctr[2], hi1, lo1);
  return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

std::array<u32, 4> philox4x32(u64 seed, u64 ctx, u32 tag, u32 block) {
  std::array<u32, 4> ctr = {block, tag, static_cast<u32>(ctx),
                            static_cast<u32>(ctx >> 32)};
  std::array<u32, 2> key = {static_cast<u32>(seed),
                            static_cast<u32>(seed >> 32)};
  for (int round = 0; round < 10; ++round) {
    ctr = philox_round(ctr, key);
    key[0] += kPhiloxW32A;
    key[1] += kPhiloxW32B;
  }
  return ctr;
}

u64 Stream::next_u64() {
  if (halves_left_ == 0) {
    buf_ = philox4x32(seed_, ctx_, tag_, block_++);
    halves_left_ = 2;
  }
  const int half = 2 - halves_left_;
  --halves_left_;
  return (static_cast<u64>(buf_[2 * half + 1]) << 32) | buf_[2 * half];
}

double Stream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

u64 Stream::next_below(u64 bound) {
  // Rejection sampling over the largest multiple of bound below 2^64.
  const u64 limit = bound * ((~u64{0}) / bound);
  u64 draw = next_u64();
  while (draw >= limit) {
    draw = next_u64();
  }
  return draw % bound;
}

u64 mix(u64 a, u64 b) {
  u64 x = a + 0x9E3779B97F4A7C15ull * (b + 1);
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

BinomialSpec BinomialSpec::make(u64 m, double q) {
  BinomialSpec spec;
  spec.m = m;
  spec.q = q;
  if (m == 0 || q <= 0.0) {
    spec.p0 = 1.0;
    spec.odds = 0.0;
    return spec;
  }
  if (q >= 1.0) {
    spec.q = 1.0;
    spec.p0 = 0.0;
    spec.odds = 0.0;
    return spec;
  }
  spec.p0 = std::exp(static_cast<double>(m) * std::log1p(-q));
  spec.odds = q / (1.0 - q);
  return spec;
}

u64 binomial_draw(Stream& stream, const BinomialSpec& spec) {
  // Inversion: walk the CDF from k = 0 using
  // pmf(k+1) = pmf(k) * (m-k)/(k+1) * q/(1-q).  Expected work is O(1 + mq),
  // and exactly one uniform is consumed, which keeps draws reproducible
  // per (pair, tag) no matter who asks first.
  const double u = stream.next_unit();
  if (spec.m == 0 || spec.q <= 0.0) {
    return 0;
  }
  if (spec.q >= 1.0) {
    return spec.m;
  }
  double pmf = spec.p0;
  double cdf = pmf;
  u64 k = 0;
  while (u >= cdf && k < spec.m) {
    pmf *= static_cast<double>(spec.m - k) / static_cast<double>(k + 1) *
           spec.odds;
    cdf += pmf;
    ++k;
    if (pmf == 0.0) {
      break;  // underflow tail: cdf has converged
    }
  }
  return k;
}

}  // namespace matchgap::rng
