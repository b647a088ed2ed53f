#include "matchgap/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "matchgap/densities.hpp"

namespace matchgap {

namespace {

constexpr std::int64_t kInt64Max = std::numeric_limits<std::int64_t>::max();

bool rat_is_integer(const Rat& x) { return denominator(x) == 1; }

std::int64_t rat_to_int64(const Rat& x, const char* what) {
  if (!rat_is_integer(x)) {
    throw Error(Errc::kNonIntegralSize,
                std::string(what) + " is not an integer: " + x.str());
  }
  if (numerator(x) < 0 || numerator(x) > BigInt(kInt64Max)) {
    throw Error(Errc::kOverflowScale,
                std::string(what) + " does not fit in 64 bits: " + x.str());
  }
  return numerator(x).convert_to<std::int64_t>();
}

std::int64_t round_half_up(double x) {
  return static_cast<std::int64_t>(std::floor(x + 0.5));
}

void check_level(int ell, int levels, const char* what) {
  if (ell < 1 || ell > levels) {
    std::ostringstream os;
    os << what << ": level " << ell << " outside [1, " << levels << "]";
    throw Error(Errc::kOutOfRangeLevel, os.str());
  }
}

// Fills the exact size chain from (layers, zeta, xi, N_1):
//   n_1 = (4r + 2) N_1 - 2 xi N_1 + 2 r zeta N_1
//   N_ell = n_{ell-1} / (2 zeta),  n_ell = (4r + 4 r zeta + 2) N_ell
void fill_size_chain(ParamSet& p, const Rat& n1_sets) {
  p.set_size.assign(static_cast<std::size_t>(p.levels), Rat(0));
  p.level_size.assign(static_cast<std::size_t>(p.levels), Rat(0));
  const Rat r(p.layers);
  p.set_size[0] = n1_sets;
  p.level_size[0] =
      (4 * r + 2) * n1_sets - 2 * p.xi * n1_sets + 2 * r * p.zeta * n1_sets;
  for (int ell = 2; ell <= p.levels; ++ell) {
    const Rat n_prev = p.level_size[static_cast<std::size_t>(ell - 2)];
    const Rat n_set = n_prev / (2 * p.zeta);
    p.set_size[static_cast<std::size_t>(ell - 1)] = n_set;
    p.level_size[static_cast<std::size_t>(ell - 1)] =
        (4 * r + 4 * r * p.zeta + 2) * n_set;
  }
}

ParamSet make_desk(std::string name, int levels, std::int64_t layers, Rat zeta,
                   Rat xi, Rat gamma, std::int64_t n1_sets,
                   std::vector<double> sigma, std::vector<double> dense,
                   double sparse, std::int64_t ground,
                   std::vector<double> rho_level = {}) {
  ParamSet p;
  p.name = std::move(name);
  p.delta = 1.0;
  p.levels = levels;
  p.layers = layers;
  p.zeta = std::move(zeta);
  p.xi = std::move(xi);
  p.gamma = std::move(gamma);
  p.sigma = std::move(sigma);
  p.dense = std::move(dense);
  p.sparse = sparse;
  fill_size_chain(p, Rat(n1_sets));
  p.ground = ground;
  p.rho = static_cast<double>(ground) / static_cast<double>(p.n());
  if (rho_level.empty()) {
    p.rho_level.assign(static_cast<std::size_t>(levels), p.rho);
  } else {
    p.rho_level = std::move(rho_level);
    p.rho_level.back() = p.rho;
  }
  p.epsilon = 0.05;
  return p;
}

}  // namespace

bool has_errors(const std::vector<Violation>& violations) {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) {
                       return v.severity == Severity::kError;
                     });
}

std::string violation_summary(const std::vector<Violation>& violations) {
  std::ostringstream os;
  for (const Violation& v : violations) {
    os << (v.severity == Severity::kError ? "error" : "warning") << " ["
       << v.code << "] " << v.message << "\n";
  }
  return os.str();
}

// --- ParamSet accessors -----------------------------------------------------

Rat ParamSet::n_exact() const {
  if (level_size.empty()) {
    throw Error(Errc::kInvalidParam, "size chain not initialized");
  }
  return level_size.back() + Rat(padding);
}

Rat ParamSet::set_size_exact(int ell) const {
  check_level(ell, levels, "set_size");
  return set_size[static_cast<std::size_t>(ell - 1)];
}

Rat ParamSet::level_size_exact(int ell) const {
  check_level(ell, levels, "level_size");
  return level_size[static_cast<std::size_t>(ell - 1)];
}

std::int64_t ParamSet::n() const { return rat_to_int64(n_exact(), "n"); }

std::int64_t ParamSet::set_size_at(int ell) const {
  return rat_to_int64(set_size_exact(ell), "set size");
}

std::int64_t ParamSet::level_size_at(int ell) const {
  return rat_to_int64(level_size_exact(ell), "level size");
}

std::int64_t ParamSet::dummy_size_at(int ell) const {
  return rat_to_int64(zeta * set_size_exact(ell), "dummy set size");
}

std::int64_t ParamSet::slices() const {
  return rat_to_int64(Rat(1) / zeta, "slice count");
}

double ParamSet::sigma_at(int ell) const {
  check_level(ell, levels, "sigma");
  return sigma[static_cast<std::size_t>(ell - 1)];
}

double ParamSet::dense_at(int ell) const {
  check_level(ell, levels, "dense scale");
  return dense[static_cast<std::size_t>(ell - 1)];
}

double ParamSet::rho_at(int ell) const {
  check_level(ell, levels, "rho");
  return rho_level[static_cast<std::size_t>(ell - 1)];
}

double ParamSet::slot_prob(int ell) const {
  check_level(ell, levels, "slot probability");
  if (ell == levels) {
    return 1.0 / static_cast<double>(n());
  }
  return rho_at(ell) / static_cast<double>(ground);
}

std::int64_t ParamSet::pair_slots(int ell, double density) const {
  check_level(ell, levels, "pair slots");
  if (density < 0.0) {
    throw Error(Errc::kInvalidParam, "negative gadget density");
  }
  if (ell == levels) {
    return round_half_up(density * static_cast<double>(n()));
  }
  return round_half_up(density * static_cast<double>(ground) / rho_at(ell));
}

bool ParamSet::buildable() const {
  if (level_size.empty()) {
    return false;
  }
  const Rat total = n_exact();
  return rat_is_integer(total) && total >= 2 &&
         total <= Rat(kMaxBuildVertices);
}

std::int64_t ParamSet::query_budget() const {
  return query_budget_for(n(), delta);
}

// --- derived quantities -----------------------------------------------------

double g_eval(const ParamSet& params, int ell) {
  const int levels = params.levels;
  if (ell < 0 || ell > levels) {
    std::ostringstream os;
    os << "g is defined on levels 0.." << levels << ", got " << ell;
    throw Error(Errc::kOutOfRangeLevel, os.str());
  }
  auto sigma = [&](int i) -> double {
    if (i == 0) return 0.0;
    if (i == levels + 1) return 1.0;
    return params.sigma_at(i);
  };
  double ratio_sum = 0.0;
  for (int i = ell; i <= levels; ++i) {
    ratio_sum += sigma(i) / sigma(i + 1);
  }
  double level_sum = 0.0;
  for (int i = ell; i <= levels - 1; ++i) {
    level_sum += sigma(i);
  }
  return (levels - ell + 2) * params.delta - 5.0 * ratio_sum -
         5.0 * level_sum;
}

std::int64_t query_budget_for(std::int64_t n, double delta) {
  if (n < 1) {
    throw Error(Errc::kInvalidParam, "budget needs n >= 1");
  }
  if (!(delta > 0.0) || delta > 2.0) {
    throw Error(Errc::kInvalidParam, "budget exponent delta must be in (0, 2]");
  }
  const long double value =
      std::pow(static_cast<long double>(n), 2.0L - static_cast<long double>(delta));
  const long double nearest = std::round(value);
  long double effective = value;
  if (std::abs(value - nearest) <=
      1e-6L * std::max<long double>(1.0L, std::abs(nearest))) {
    // Powers that are integers up to float slack (e.g. 100^1.5) must not
    // be floored one short.
    effective = nearest;
  }
  if (effective > static_cast<long double>(kInt64Max)) {
    throw Error(Errc::kOverflowScale, "query budget exceeds 64 bits");
  }
  return static_cast<std::int64_t>(std::floor(effective));
}

// --- presets -----------------------------------------------------------------

Preset theoretical_preset(double delta, XiConvention xi) {
  Preset preset;
  ParamSet& p = preset.params;
  if (!(delta > 0.0) || delta > 4.0) {
    throw Error(Errc::kInvalidParam, "delta must be in (0, 4]");
  }
  const double levels_raw = 4.0 / delta;
  const double levels_round = std::round(levels_raw);
  if (std::abs(levels_raw - levels_round) > 1e-9 || levels_round < 1.0) {
    throw Error(Errc::kInvalidParam,
                "delta must divide 4 so the level count 4/delta is integral");
  }
  p.levels = static_cast<int>(levels_round);
  p.delta = delta;
  p.name = "theoretical";

  // r = (10/delta)^(L+1), rounded up when fractional.
  const long double layers_raw =
      std::pow(10.0L / static_cast<long double>(delta),
               static_cast<long double>(p.levels + 1));
  if (layers_raw > static_cast<long double>(kInt64Max)) {
    throw Error(Errc::kOverflowScale, "layer count r exceeds 64 bits");
  }
  const long double layers_ceil = std::ceil(layers_raw - 1e-9L);
  p.layers = static_cast<std::int64_t>(layers_ceil);
  if (layers_ceil - layers_raw > 1e-9L) {
    std::ostringstream os;
    os << "layer count (10/delta)^(L+1) = " << static_cast<double>(layers_raw)
       << " rounded up to " << p.layers;
    preset.notes.push_back(
        {"rounded_parameter", Severity::kWarning, os.str()});
  }

  const BigInt r(p.layers);
  p.zeta = Rat(1, r * r);
  p.gamma = Rat(1, r * r * r * r);
  if (xi == XiConvention::kBody) {
    p.xi = p.gamma;
  } else {
    p.xi = p.zeta;
  }
  preset.notes.push_back(
      {"ambiguous_xi", Severity::kWarning,
       std::string("published xi differs between the gap argument (1/r^4) and "
                    "the parameter table (1/r^2); using ") +
           (xi == XiConvention::kBody ? "1/r^4" : "1/r^2")});

  // N_1 = r^4: the least power of r making xi N_1, zeta N_ell and the
  // whole chain integral for either xi convention.
  fill_size_chain(p, Rat(r * r * r * r));

  const long double n_approx = p.n_exact().convert_to<long double>();
  const long double log_n = std::log(n_approx);
  p.sigma.resize(static_cast<std::size_t>(p.levels));
  p.dense.resize(static_cast<std::size_t>(p.levels));
  p.rho_level.resize(static_cast<std::size_t>(p.levels));
  for (int ell = 1; ell <= p.levels; ++ell) {
    const double sig = std::pow(delta / 10.0, p.levels + 1 - ell);
    p.sigma[static_cast<std::size_t>(ell - 1)] = sig;
    p.dense[static_cast<std::size_t>(ell - 1)] =
        static_cast<double>(std::exp(sig * log_n));
    p.rho_level[static_cast<std::size_t>(ell - 1)] =
        static_cast<double>(2.0L * std::exp((sig - 1.0L) * log_n));
  }
  p.sparse = static_cast<double>(log_n * log_n);
  p.rho = p.rho_level.back();
  p.epsilon = std::pow(delta / 10.0, 300.0 / (delta * delta));
  p.padding = 0;
  if (p.buildable()) {
    p.ground = round_half_up(static_cast<double>(
        static_cast<long double>(p.rho) * p.n_exact().convert_to<long double>()));
    p.rho = static_cast<double>(p.ground) / static_cast<double>(p.n());
    p.rho_level.back() = p.rho;
  } else {
    p.ground = -1;
  }
  return preset;
}

Preset desk_preset(const std::string& name) {
  Preset preset;
  if (name == "tiny-L1") {
    // Smallest fully-checkable instance: n = 640, every capacity bound
    // met with margin, and the gadget slot counts of the mirror classes
    // used by the distribution tests are exactly representable.
    preset.params =
        make_desk("tiny-L1", /*levels=*/1, /*layers=*/2, Rat(1, 32),
                  Rat(1, 16), Rat(1, 256), /*n1_sets=*/64,
                  /*sigma=*/{0.25}, /*dense=*/{1.6}, /*sparse=*/0.1,
                  /*ground=*/448);
  } else if (name == "tiny-L2") {
    // Two-level recursion exercised end to end: n = 9600 with a strict
    // pseudo-slot level split (rho_1 < rho_2).
    preset.params =
        make_desk("tiny-L2", /*levels=*/2, /*layers=*/1, Rat(1, 16),
                  Rat(1, 16), Rat(1, 256), /*n1_sets=*/32,
                  /*sigma=*/{0.125, 0.25}, /*dense=*/{1.6, 16.0},
                  /*sparse=*/0.1, /*ground=*/7680,
                  /*rho_level=*/{0.768, 0.8});
  } else if (name == "micro-L1") {
    // Tiny n = 162 instance for exhaustive cross-checks against
    // brute-force oracles.
    preset.params =
        make_desk("micro-L1", /*levels=*/1, /*layers=*/2, Rat(1, 16),
                  Rat(1, 16), Rat(1, 256), /*n1_sets=*/16,
                  /*sigma=*/{0.25}, /*dense=*/{0.8}, /*sparse=*/0.05,
                  /*ground=*/130);
  } else if (name == "er-L1") {
    // Degree scales above the bipartite coupon-collector threshold
    // (sparse = 60 >= ln^2 2048), so YES samples reach a perfect matching
    // with overwhelming probability, while xi + layers*zeta = 3/8 < 1/2
    // keeps the NO-side deficiency above half a set with room to spare.
    // dense = 184 keeps the closing-gadget density non-negative
    // (xi*dense >= (1-xi)*sparse) and every density at or below rho = 1.
    preset.params =
        make_desk("er-L1", /*levels=*/1, /*layers=*/1, Rat(1, 8), Rat(1, 4),
                  Rat(1, 256), /*n1_sets=*/2048,
                  /*sigma=*/{0.25}, /*dense=*/{184.0}, /*sparse=*/60.0,
                  /*ground=*/11776);
  } else if (name == "scale-L1") {
    // Base point of the size-doubling family: ground = n/8 slots, so the
    // slot density rho = 0.125 plays the role of 2 n^(sigma-1) at this size.
    preset.params =
        make_desk("scale-L1", /*levels=*/1, /*layers=*/2, Rat(1, 16),
                  Rat(1, 4), Rat(1, 256), /*n1_sets=*/64,
                  /*sigma=*/{0.25}, /*dense=*/{0.4}, /*sparse=*/0.04,
                  /*ground=*/78);
  } else if (name == "scale-L1-x2") {
    // Doubled sizes: n 624 -> 1248 and ground scaled by 2^sigma
    // (78 * 2^0.25 rounds to 93), keeping rho proportional to n^(sigma-1).
    preset.params =
        make_desk("scale-L1-x2", /*levels=*/1, /*layers=*/2, Rat(1, 16),
                  Rat(1, 4), Rat(1, 256), /*n1_sets=*/128,
                  /*sigma=*/{0.25}, /*dense=*/{0.4}, /*sparse=*/0.04,
                  /*ground=*/93);
  } else {
    throw Error(Errc::kUnknownPreset, "no desk preset named '" + name + "'");
  }
  return preset;
}

std::vector<std::string> desk_preset_names() {
  return {"tiny-L1", "tiny-L2", "micro-L1", "er-L1", "scale-L1", "scale-L1-x2"};
}

// --- validation ---------------------------------------------------------------

namespace {

void push(std::vector<Violation>& out, const char* code, Severity sev,
          const std::string& message) {
  out.push_back({code, sev, message});
}

std::string dstr(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

std::vector<Violation> validate(const ParamSet& p) {
  std::vector<Violation> out;
  const auto levels = static_cast<std::size_t>(std::max(p.levels, 0));

  // Shape first; bail out if the vectors cannot be indexed safely.
  if (p.levels < 1) {
    push(out, "shape", Severity::kError, "level count must be >= 1");
  }
  if (p.layers < 1) {
    push(out, "shape", Severity::kError, "layer count r must be >= 1");
  }
  if (!(p.delta > 0.0) || p.delta > 4.0) {
    push(out, "shape", Severity::kError, "delta must be in (0, 4]");
  }
  if (p.sigma.size() != levels || p.dense.size() != levels ||
      p.rho_level.size() != levels || p.set_size.size() != levels ||
      p.level_size.size() != levels) {
    push(out, "shape", Severity::kError,
         "per-level vectors must all have length L");
  }
  if (p.padding < 0) {
    push(out, "shape", Severity::kError, "padding must be >= 0");
  }
  if (!(p.epsilon > 0.0) || p.epsilon >= 1.0) {
    push(out, "shape", Severity::kError, "epsilon must be in (0, 1)");
  }
  if (has_errors(out)) {
    return out;
  }

  // Structural fractions.
  if (!(p.zeta > 0 && p.zeta < 1)) {
    push(out, "fraction_range", Severity::kError, "zeta must be in (0, 1)");
  }
  if (!(p.xi > 0 && p.xi < 1)) {
    push(out, "fraction_range", Severity::kError, "xi must be in (0, 1)");
  }
  if (!(p.gamma > 0 && p.gamma < 1)) {
    push(out, "fraction_range", Severity::kError, "gamma must be in (0, 1)");
  }
  if (p.zeta > 0 && !rat_is_integer(Rat(1) / p.zeta)) {
    push(out, "slice_count", Severity::kError,
         "1/zeta must be an integer (blocks split into 1/zeta slices)");
  }
  if (Rat(4 * p.layers) * p.zeta > Rat(1, 2)) {
    push(out, "dummy_capacity", Severity::kError,
         "4 r zeta = " + Rat(Rat(4 * p.layers) * p.zeta).str() +
             " exceeds 1/2: dummy sets cannot absorb the layer load");
  }

  // Sigma ladder.
  for (std::size_t i = 0; i < levels; ++i) {
    if (!(p.sigma[i] > 0.0 && p.sigma[i] < 1.0)) {
      push(out, "sigma_order", Severity::kError,
           "sigma must lie in (0, 1) at every level");
      break;
    }
    if (i > 0 && !(p.sigma[i] > p.sigma[i - 1])) {
      push(out, "sigma_order", Severity::kError,
           "sigma must increase strictly with the level");
      break;
    }
  }

  // Rho ladder.
  for (std::size_t i = 0; i < levels; ++i) {
    if (!(p.rho_level[i] > 0.0) || !std::isfinite(p.rho_level[i])) {
      push(out, "rho_monotone", Severity::kError,
           "rho_ell must be positive and finite");
      break;
    }
    if (i > 0 && p.rho_level[i] < p.rho_level[i - 1]) {
      push(out, "rho_monotone", Severity::kError,
           "rho_ell must be nondecreasing in the level");
      break;
    }
  }
  if (!(p.rho > 0.0) || p.rho_level.back() != p.rho) {
    push(out, "rho_top", Severity::kError,
         "rho must equal rho_L (the top refinement rate)");
  }

  // Exact size chain.
  const Rat r(p.layers);
  const Rat n1_expect = (4 * r + 2) * p.set_size[0] -
                        2 * p.xi * p.set_size[0] +
                        2 * r * p.zeta * p.set_size[0];
  if (p.level_size[0] != n1_expect) {
    push(out, "size_chain", Severity::kError,
         "n_1 must equal (4r + 2 - 2 xi + 2 r zeta) N_1; expected " +
             n1_expect.str() + ", got " + p.level_size[0].str());
  }
  for (int ell = 2; ell <= p.levels; ++ell) {
    const Rat& n_prev = p.level_size[static_cast<std::size_t>(ell - 2)];
    const Rat& n_set = p.set_size[static_cast<std::size_t>(ell - 1)];
    const Rat& n_here = p.level_size[static_cast<std::size_t>(ell - 1)];
    if (n_set != n_prev / (2 * p.zeta)) {
      push(out, "size_chain", Severity::kError,
           "N_" + std::to_string(ell) + " must equal n_" +
               std::to_string(ell - 1) + " / (2 zeta)");
    }
    if (n_here != (4 * r + 4 * r * p.zeta + 2) * n_set) {
      push(out, "size_chain", Severity::kError,
           "n_" + std::to_string(ell) +
               " must equal (4r + 4 r zeta + 2) N_" + std::to_string(ell));
    }
    if (!rat_is_integer(n_set * p.zeta)) {
      push(out, "integrality", Severity::kError,
           "zeta N_" + std::to_string(ell) + " must be integral");
    }
    if (!rat_is_integer(n_set / (Rat(1) / p.zeta))) {
      push(out, "integrality", Severity::kError,
           "1/zeta must divide N_" + std::to_string(ell) +
               " so blocks slice evenly");
    }
  }
  if (!rat_is_integer(p.set_size[0]) || p.set_size[0] < 1) {
    push(out, "integrality", Severity::kError, "N_1 must be a positive integer");
  }
  if (!rat_is_integer(p.zeta * p.set_size[0])) {
    push(out, "integrality", Severity::kError, "zeta N_1 must be integral");
  }
  if (!rat_is_integer(p.xi * p.set_size[0])) {
    push(out, "integrality", Severity::kError, "xi N_1 must be integral");
  }
  if (p.zeta * p.set_size[0] < 1) {
    push(out, "integrality", Severity::kError,
         "dummy sets need at least one vertex (zeta N_1 >= 1)");
  }
  for (std::size_t i = 0; i < levels; ++i) {
    if (rat_is_integer(p.level_size[i]) &&
        !rat_is_integer(p.level_size[i] / 2)) {
      push(out, "even_size", Severity::kError,
           "n_" + std::to_string(i + 1) + " must be even (balanced sides)");
    }
  }

  const bool buildable = p.buildable();

  // Certified cover margin, exact: defc_1 = (1 - xi - r zeta) N_1,
  // defc_ell = defc_{ell-1} / zeta - r n_{ell-1}; the blocking witness
  // certifies mu <= n_L/2 - defc_L, so defc_L >= N_1/2 keeps the two
  // cases n_L * (something) apart.  Informational for presets meant only
  // for YES-side statistics.
  if (buildable && !has_errors(out)) {
    Rat defc = (Rat(1) - p.xi - r * p.zeta) * p.set_size[0];
    for (int ell = 2; ell <= p.levels; ++ell) {
      defc = defc / p.zeta - r * p.level_size[static_cast<std::size_t>(ell - 2)];
    }
    if (defc < p.set_size[0] / 2) {
      push(out, "cover_margin", Severity::kWarning,
           "certified matching deficiency " + defc.str() +
               " falls below N_1/2 = " + Rat(p.set_size[0] / 2).str() +
               "; the NO case is not certified for this set");
    }
  }

  if (!buildable) {
    push(out, "overflow_scale", Severity::kWarning,
         "n = " + p.n_exact().str() +
             " exceeds the materialization bound 2^20; density and slot "
             "capacity checks skipped");
    return out;
  }

  // Float-scale checks (materializable sets only).
  if (p.ground < 1) {
    push(out, "ground_slots", Severity::kError,
         "ground slot count rho n must be a positive integer");
    return out;
  }
  const double n_d = static_cast<double>(p.n());
  if (std::abs(p.rho - static_cast<double>(p.ground) / n_d) > 1e-12) {
    push(out, "rho_ground", Severity::kError,
         "rho must equal ground / n exactly");
  }
  if (!(p.sparse > 0.0)) {
    push(out, "scale_positive", Severity::kError,
         "sparse degree scale must be positive");
  }
  for (int ell = 1; ell <= p.levels; ++ell) {
    if (!(p.dense_at(ell) > 0.0)) {
      push(out, "scale_positive", Severity::kError,
           "dense degree scale must be positive at every level");
    }
  }
  if (has_errors(out)) {
    return out;
  }

  // Every gadget density must be a probability and fit under the
  // per-level slot budget (equivalently: pair slot count m <= ground).
  struct NamedDensity {
    const char* what;
    int level;
    double value;
  };
  std::vector<NamedDensity> densities;
  densities.push_back({"dense", 1, density_dense(p, 1)});
  densities.push_back({"dense top (YES)", 1, density_dense_top_yes(p)});
  densities.push_back({"dense top (NO)", 1, density_dense_top_no(p)});
  densities.push_back({"sparse", 1, density_sparse(p)});
  densities.push_back({"top crossing (YES)", 1, density_cross_top_yes(p)});
  densities.push_back({"top closing (YES)", 1, density_closing_top_yes(p)});
  densities.push_back({"top closing (NO)", 1, density_closing_top_no(p)});
  densities.push_back({"dummy", 1, density_dummy(p, 1)});
  densities.push_back({"dummy layer", 1, density_dummy_layer(p, 1, 1)});
  for (std::int64_t i = 1; i <= p.layers; ++i) {
    densities.push_back({"dummy pair", 1, density_dummy_self(p, 1, i)});
  }
  for (int ell = 2; ell <= p.levels; ++ell) {
    densities.push_back({"dense", ell, density_dense(p, ell)});
    densities.push_back({"dummy", ell, density_dummy(p, ell)});
    densities.push_back({"dummy layer", ell, density_dummy_layer(p, ell, 1)});
    for (std::int64_t i = 1; i <= p.layers; ++i) {
      densities.push_back({"dummy pair", ell, density_dummy_self(p, ell, i)});
    }
  }
  for (const NamedDensity& d : densities) {
    if (!(d.value >= 0.0) || d.value > 1.0) {
      push(out, "density_range", Severity::kError,
           std::string(d.what) + " density at level " +
               std::to_string(d.level) + " is " + dstr(d.value) +
               ", outside [0, 1]");
    } else if (d.value > p.rho_at(d.level)) {
      push(out, "slot_capacity", Severity::kError,
           std::string(d.what) + " density " + dstr(d.value) + " at level " +
               std::to_string(d.level) + " exceeds rho_" +
               std::to_string(d.level) + " = " + dstr(p.rho_at(d.level)) +
               ": gadget slots would exceed the ground slots");
    }
  }

  if (p.delta <= 2.0 && p.query_budget() < 1) {
    push(out, "budget", Severity::kError, "query budget floor(n^(2-delta)) < 1");
  }
  return out;
}

}  // namespace matchgap
