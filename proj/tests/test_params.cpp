#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"
#include "matchgap/params.hpp"

using namespace matchgap;

namespace {

// Level-1 matching deficiency of the NO construction: the count of
// left-side vertices no cover-side set can absorb.
Rat deficiency_level1(const ParamSet& p) {
  return (Rat(1) - p.xi - p.layers * p.zeta) * p.set_size_exact(1);
}

// Deficiency carried to the top of the recursion.
Rat deficiency_top(const ParamSet& p) {
  Rat d = deficiency_level1(p);
  for (int ell = 2; ell <= p.levels; ++ell) {
    d = d / p.zeta - p.layers * p.level_size_exact(ell - 1);
  }
  return d;
}

}  // namespace

TEST_SUITE("params") {

TEST_CASE("desk presets: frozen size chain") {
  struct Row {
    const char* name;
    std::int64_t n, ground, budget, set1;
    int levels;
    std::int64_t layers;
  };
  const Row rows[] = {
      {"tiny-L1", 640, 448, 640, 64, 1, 2},
      {"tiny-L2", 9600, 7680, 9600, 32, 2, 1},
      {"micro-L1", 162, 130, 162, 16, 1, 2},
      {"er-L1", 11776, 11776, 11776, 2048, 1, 1},
      {"scale-L1", 624, 78, 624, 64, 1, 2},
      {"scale-L1-x2", 1248, 93, 1248, 128, 1, 2},
  };
  for (const Row& row : rows) {
    CAPTURE(row.name);
    const ParamSet p = desk_preset(row.name).params;
    CHECK(p.n() == row.n);
    CHECK(p.ground == row.ground);
    CHECK(p.query_budget() == row.budget);
    CHECK(p.set_size_at(1) == row.set1);
    CHECK(p.levels == row.levels);
    CHECK(p.layers == row.layers);
    CHECK(p.delta == 1.0);
    CHECK(p.rho == doctest::Approx(static_cast<double>(row.ground) /
                                   static_cast<double>(row.n)));
  }
  CHECK(desk_preset_names().size() == 6);
  CHECK_THROWS_AS((void)desk_preset("nope"), Error);
}

TEST_CASE("desk presets: level-2 chain on tiny-L2") {
  const ParamSet p = desk_preset("tiny-L2").params;
  // n_1 = (4r - 2 xi + 2 r zeta + 2) N_1 = 6 * 32 = 192,
  // N_2 = n_1 / (2 zeta) = 192 * 8 = 1536,
  // n_2 = (4r + 4 r zeta + 2) N_2 = 6.25 * 1536 = 9600.
  CHECK(p.level_size_at(1) == 192);
  CHECK(p.set_size_at(2) == 1536);
  CHECK(p.level_size_at(2) == 9600);
  CHECK(p.dummy_size_at(1) == 2);
  CHECK(p.dummy_size_at(2) == 96);
  CHECK(p.slices() == 16);
  CHECK(p.rho_level.size() == 2);
  CHECK(p.rho_level[0] == doctest::Approx(0.768));
  CHECK(p.rho_level[1] == doctest::Approx(0.8));
}

TEST_CASE("desk presets: deficiency stays above half a set") {
  // The NO-side witness has size n/2 - D; the decision bound
  // mu <= n/2 - N_1/2 therefore needs D >= N_1 / 2 on every preset.
  for (const std::string& name : desk_preset_names()) {
    CAPTURE(name);
    const ParamSet p = desk_preset(name).params;
    const Rat d = deficiency_top(p);
    CHECK(d >= p.set_size_exact(1) / 2);
  }
  CHECK(deficiency_top(desk_preset("tiny-L1").params) == 56);
  CHECK(deficiency_top(desk_preset("tiny-L2").params) == 256);
  CHECK(deficiency_top(desk_preset("micro-L1").params) == 13);
  CHECK(deficiency_top(desk_preset("er-L1").params) == 1280);
  CHECK(deficiency_top(desk_preset("scale-L1").params) == 40);
  CHECK(deficiency_top(desk_preset("scale-L1-x2").params) == 80);
}

TEST_CASE("desk presets validate cleanly") {
  for (const std::string& name : desk_preset_names()) {
    CAPTURE(name);
    const ParamSet p = desk_preset(name).params;
    const auto violations = validate(p);
    CHECK(!has_errors(violations));
    CHECK(p.buildable());
  }
}

TEST_CASE("validation rejects broken parameter sets") {
  ParamSet p = desk_preset("tiny-L1").params;

  SUBCASE("dummy sets too small for the layer load") {
    p.zeta = Rat(1, 4);  // 4 r zeta = 2 > 1/2
    const auto violations = validate(p);
    CHECK(has_errors(violations));
    CHECK(violation_summary(violations).find("dummy_capacity") !=
          std::string::npos);
  }
  SUBCASE("negative closing density") {
    p.sparse = 40.0;  // xi d < (1 - xi) s
    CHECK(has_errors(validate(p)));
  }
  SUBCASE("rho level profile must be nondecreasing") {
    p.rho_level = {0.9};
    // Single level: back() is forced to rho by construction; misaligning
    // it must be flagged.
    const auto violations = validate(p);
    CHECK(has_errors(violations));
  }
  SUBCASE("non-integral set sizes throw at the accessor") {
    p.set_size[0] = Rat(13, 2);
    CHECK_THROWS_AS((void)p.set_size_at(1), Error);
  }
}

TEST_CASE("slot accounting: pair_slots inverts slot_prob") {
  for (const std::string& name : desk_preset_names()) {
    CAPTURE(name);
    const ParamSet p = desk_preset(name).params;
    for (int ell = 1; ell <= p.levels; ++ell) {
      // At the top level one slot survives with probability exactly 1/n.
      if (ell == p.levels) {
        CHECK(p.slot_prob(ell) == doctest::Approx(1.0 / static_cast<double>(p.n()))
                                      .epsilon(1e-12));
      }
      const double density = 0.37 * p.rho_at(ell);
      const std::int64_t m = p.pair_slots(ell, density);
      CHECK(std::abs(static_cast<double>(m) * p.slot_prob(ell) - density) <=
            0.5 * p.slot_prob(ell) + 1e-12);  // round-half-up on the product
      CHECK(m <= p.ground);
      CHECK_THROWS_AS((void)p.pair_slots(ell, -0.1), Error);
    }
  }
}

TEST_CASE("theoretical preset: delta = 4 materializes with a known caveat") {
  const Preset preset = theoretical_preset(4.0);
  const ParamSet& p = preset.params;
  CHECK(p.levels == 1);
  CHECK(p.layers == 7);  // ceil((10/4)^2)
  CHECK(p.zeta == Rat(1, 49));
  CHECK(p.gamma == Rat(1, 2401));
  CHECK(p.set_size_at(1) == 2401);
  CHECK(p.n() == 72714);
  CHECK(p.buildable());
  // Outside the budget-exponent domain (0, 2] the layer count shrinks
  // to r = 7, below the r >= 8 needed for the dummy sets to absorb the
  // layer load; the validator flags exactly that and nothing else.
  const auto violations = validate(p);
  CHECK(has_errors(violations));
  for (const Violation& v : violations) {
    if (v.severity == Severity::kError) CHECK(v.code == "dummy_capacity");
  }
}

TEST_CASE("theoretical preset: delta in {1,2} stays symbolic but valid") {
  for (double delta : {1.0, 2.0}) {
    CAPTURE(delta);
    const Preset preset = theoretical_preset(delta);
    const ParamSet& p = preset.params;
    CHECK(p.levels == static_cast<int>(4.0 / delta));
    CHECK(!p.buildable());
    const auto violations = validate(p);
    CHECK(!has_errors(violations));
    // The only expected warning class: scale overflow (skipped float checks).
    for (const Violation& v : violations) {
      CAPTURE(v.code);
      CHECK(v.code == "overflow_scale");
    }
    // sigma_ell = (delta/10)^(L+1-ell), ascending.
    const int levels = p.levels;
    for (int ell = 1; ell <= levels; ++ell) {
      CHECK(p.sigma_at(ell) ==
            doctest::Approx(std::pow(delta / 10.0, levels + 1 - ell)));
    }
  }
  const ParamSet d1 = theoretical_preset(1.0).params;
  CHECK(d1.layers == 100000);  // ceil((10/1)^5)
  const ParamSet d2 = theoretical_preset(2.0).params;
  CHECK(d2.layers == 125);  // ceil(5^3)
  CHECK(d2.zeta == Rat(1, 125 * 125));
}

TEST_CASE("xi conventions differ exactly as published") {
  const ParamSet body = theoretical_preset(2.0, XiConvention::kBody).params;
  const ParamSet table = theoretical_preset(2.0, XiConvention::kTable).params;
  CHECK(body.xi == body.gamma);
  CHECK(table.xi == table.zeta);
  CHECK(body.xi != table.xi);
}

TEST_CASE("g-function recurrence and frozen endpoints") {
  const ParamSet d1 = theoretical_preset(1.0).params;
  const ParamSet d2 = theoretical_preset(2.0).params;
  CHECK(g_eval(d2, 1) == doctest::Approx(3.8).epsilon(1e-12));
  CHECK(g_eval(d2, 0) == doctest::Approx(5.8).epsilon(1e-12));
  CHECK(g_eval(d1, 1) > 2.0);
  for (const ParamSet* p : {&d1, &d2}) {
    const double delta = p->delta;
    for (int ell = 1; ell <= p->levels; ++ell) {
      const double sig_prev = ell >= 2 ? p->sigma_at(ell - 1) : 0.0;
      const double sig = p->sigma_at(ell);
      const double lhs = g_eval(*p, ell - 1);
      const double rhs = g_eval(*p, ell) + delta - 5.0 * sig_prev / sig -
                         5.0 * sig_prev;
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("query_budget_for: frozen values and integer-power guard") {
  CHECK(query_budget_for(100, 1.0) == 100);
  CHECK(query_budget_for(100, 0.5) == 1000);
  CHECK(query_budget_for(2, 2.0) == 1);
  CHECK(query_budget_for(1000000, 1.0) == 1000000);
  // 1000^(4/3) = 10^4 exactly; naive pow would land on 9999.999...
  CHECK(query_budget_for(1000, 2.0 / 3.0) == 10000);
}

}  // TEST_SUITE
