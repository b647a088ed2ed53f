#ifndef MATCHGAP_PARAMS_HPP
#define MATCHGAP_PARAMS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "matchgap/errors.hpp"

namespace matchgap {

// Exact rational; the size chain and the structural fractions (zeta, xi,
// gamma) are kept exact so integrality and counting identities can be
// checked without float slack at any scale.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Instances are materialized only up to these bounds; presets beyond them
// stay symbolic (exact sizes, but no sampling / construction).
inline constexpr std::int64_t kMaxBuildVertices = std::int64_t{1} << 20;
inline constexpr std::int64_t kMaxPairSlots = std::int64_t{1} << 40;

enum class Severity { kWarning, kError };

struct Violation {
  std::string code;
  Severity severity = Severity::kError;
  std::string message;
};

bool has_errors(const std::vector<Violation>& violations);
std::string violation_summary(const std::vector<Violation>& violations);

// Full parameterization of one layered two-case input distribution.
//
// Levels are 1-based: level L is the outermost frame, level 1 the leaf
// gadget frame.  Per-level vectors are indexed [ell-1].
struct ParamSet {
  std::string name;           // preset name, empty for hand-built sets
  double delta = 1.0;         // query-budget exponent: budget = floor(n^(2-delta))
  int levels = 1;             // L
  std::int64_t layers = 1;    // r: chain length per side at every level

  Rat zeta = Rat(1, 16);      // dummy-set fraction; 1/zeta children per block
  Rat xi = Rat(1, 16);        // top-layer shaving fraction (level 1 only)
  Rat gamma = Rat(1, 256);    // dummy-edge weight fraction

  std::vector<double> sigma;  // nominal density exponents, ascending, in (0,1)
  std::vector<double> dense;  // d_ell: dense-gadget expected degree scale
  double sparse = 0.0;        // s: sparse-gadget degree scale (ln^2 n at scale)
  std::vector<double> rho_level;  // rho_ell, nondecreasing, rho_level[L-1] == rho
  double rho = 0.0;           // ground pseudo-slot rate: ground = rho * n
  std::int64_t ground = -1;   // pseudo slots per vertex pair; -1 = not materializable

  std::vector<Rat> set_size;    // N_ell (exact)
  std::vector<Rat> level_size;  // n_ell (exact)
  std::int64_t padding = 0;     // isolated vertices appended after level L
  double epsilon = 0.05;        // advantage target for distinguishing runs

  // --- exact size accessors -------------------------------------------------
  Rat n_exact() const;                   // n_L + padding
  Rat set_size_exact(int ell) const;     // N_ell
  Rat level_size_exact(int ell) const;   // n_ell

  // --- int64 accessors (throw kOverflowScale / kNonIntegralSize) -----------
  std::int64_t n() const;
  std::int64_t set_size_at(int ell) const;
  std::int64_t level_size_at(int ell) const;
  std::int64_t dummy_size_at(int ell) const;  // zeta * N_ell
  std::int64_t slices() const;                // 1 / zeta

  // --- per-level scalars (1-based ell; throw kOutOfRangeLevel) -------------
  double sigma_at(int ell) const;
  double dense_at(int ell) const;
  double rho_at(int ell) const;

  // Probability that one ground pseudo slot survives to level <= ell:
  // rho_ell / (rho n).  At ell == L this is exactly 1/n.
  double slot_prob(int ell) const;

  // Labelled ground slots m carried by a level-ell gadget of pair density p,
  // so that m * slot_prob(ell) == p up to the documented rounding.
  std::int64_t pair_slots(int ell, double density) const;

  // True when the instance fits the materialization bounds.
  bool buildable() const;

  std::int64_t query_budget() const;  // query_budget_for(n(), delta)
};

// A preset plus the notes produced while deriving it (rounding applied,
// convention ambiguities, ...).  Notes use the same Violation shape with
// kWarning severity.
struct Preset {
  ParamSet params;
  std::vector<Violation> notes;
};

// Which published value of xi to use: the matching-gap argument uses
// 1/r^4, the parameter table lists 1/r^2.
enum class XiConvention { kBody, kTable };

// Asymptotic-regime parameter chain for a given budget exponent delta.
// Requires delta in (0, 4] with 4/delta integral.  Sizes are exact but far
// beyond the materialization bounds for delta in {1, 2}.
Preset theoretical_preset(double delta, XiConvention xi = XiConvention::kBody);

// Small fully-materializable parameter sets for experiments and tests.
Preset desk_preset(const std::string& name);
std::vector<std::string> desk_preset_names();

// Structural / integrality / density / counting checks.  Float-based
// checks (density ranges, slot capacities) are skipped with an
// overflow_scale warning when the preset is not materializable.
std::vector<Violation> validate(const ParamSet& params);

// Exponent gap function over levels 0..L:
//   g(ell) = (L - ell + 2) delta - 5 sum_{i=ell}^{L} sigma_i / sigma_{i+1}
//                                - 5 sum_{i=ell}^{L-1} sigma_i
// with sigma_0 = 0 and sigma_{L+1} = 1.
double g_eval(const ParamSet& params, int ell);

// floor(n^(2-delta)) with a guard for powers that are integers up to
// floating-point slack.
std::int64_t query_budget_for(std::int64_t n, double delta);

}  // namespace matchgap

#endif  // MATCHGAP_PARAMS_HPP
