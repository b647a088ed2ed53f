#include <cstdint>
#include <vector>

#include "doctest.h"
#include "matchgap/construction.hpp"
#include "matchgap/emd.hpp"
#include "matchgap/graph.hpp"
#include "matchgap/matching.hpp"
#include "matchgap/params.hpp"
#include "matchgap/rng.hpp"
#include "matchgap/sampler.hpp"

using namespace matchgap;

namespace {

struct RandomBipartite {
  Graph g;
  std::vector<std::uint8_t> part;
};

RandomBipartite random_balanced(std::int32_t t, double p, std::uint64_t seed) {
  RandomBipartite out{Graph(2 * t), {}};
  out.part.assign(static_cast<std::size_t>(2 * t), 0);
  for (std::int32_t v = t; v < 2 * t; ++v)
    out.part[static_cast<std::size_t>(v)] = 1;
  rng::Stream coins(seed, 1, rng::Tag::kEstimator);
  for (std::int32_t u = 0; u < t; ++u)
    for (std::int32_t v = t; v < 2 * t; ++v)
      if (coins.next_unit() < p) out.g.add_edge(u, v);
  return out;
}

}  // namespace

TEST_SUITE("emd") {

TEST_CASE("hand-checked transport optimum with fractional masses") {
  // Two sources (1/3, 2/3), two sinks (1/2, 1/2).
  // Costs: c00=1/7, c01=2, c10=1/7... pick asymmetric values:
  //   moving plan: source0 -> sink0 (1/3), source1 -> sink0 (1/6),
  //   source1 -> sink1 (1/2) given c = [[1/7, 3], [2, 1/5]].
  TransportProblem problem;
  problem.supply = {Rat(1, 3), Rat(2, 3)};
  problem.demand = {Rat(1, 2), Rat(1, 2)};
  problem.cost = {{Rat(1, 7), Rat(3)}, {Rat(2), Rat(1, 5)}};
  const TransportPlan plan = solve_transport(problem);
  // Optimal: 1/3 at 1/7, 1/6 at 2, 1/2 at 1/5 = 1/21 + 1/3 + 1/10
  CHECK(plan.total_cost == Rat(1, 21) + Rat(1, 3) + Rat(1, 10));
  // Moves carry exactly the supply.
  Rat moved = 0;
  for (const TransportMove& mv : plan.moves) moved += mv.mass;
  CHECK(moved == Rat(1));
}

TEST_CASE("transport validation") {
  TransportProblem problem;
  problem.supply = {Rat(1, 2), Rat(1, 2)};
  problem.demand = {Rat(1)};
  problem.cost = {{Rat(1)}, {Rat(1)}};
  CHECK_NOTHROW((void)solve_transport(problem));

  SUBCASE("unbalanced totals") {
    problem.demand = {Rat(2)};
    CHECK_THROWS_AS((void)solve_transport(problem), Error);
  }
  SUBCASE("negative mass") {
    problem.supply = {Rat(-1, 2), Rat(3, 2)};
    CHECK_THROWS_AS((void)solve_transport(problem), Error);
  }
  SUBCASE("cost shape mismatch") {
    problem.cost = {{Rat(1)}};
    CHECK_THROWS_AS((void)solve_transport(problem), Error);
  }
  SUBCASE("scale overflow guard") {
    problem.supply = {Rat(1, std::int64_t{1} << 41),
                      Rat(1) - Rat(1, std::int64_t{1} << 41)};
    CHECK_THROWS_AS((void)solve_transport(problem), Error);
  }
}

TEST_CASE("matching reduction: identity emd = (2t - mu) / (2t)") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::int32_t t = 2 + static_cast<std::int32_t>(seed % 9);
    const double p = 0.1 + 0.08 * static_cast<double>(seed % 10);
    RandomBipartite rb = random_balanced(t, p, seed);
    const std::int64_t mu = hopcroft_karp(rb.g, rb.part).size;
    const Rat emd = matching_emd(rb.g, rb.part);
    CHECK(emd == Rat(2 * t - mu, 2 * t));
    CHECK(matching_size_from_emd(emd, t) == mu);
    ++checked;
  }
  CHECK(checked == 40);
}

TEST_CASE("matching reduction endpoints: complete and empty") {
  RandomBipartite complete = random_balanced(4, 1.1, 0);
  CHECK(matching_emd(complete.g, complete.part) == Rat(1, 2));
  RandomBipartite empty = random_balanced(4, -0.1, 0);
  CHECK(matching_emd(empty.g, empty.part) == Rat(1));
}

TEST_CASE("matching reduction on generated instances") {
  const ParamSet p = desk_preset("micro-L1").params;
  for (Case c : {Case::kYes, Case::kNo}) {
    const Instance inst = build_instance(p, c, 37);
    const Graph g = project_simple(sample_real(inst));
    const std::int64_t t = inst.n / 2;
    const std::int64_t mu = hopcroft_karp(g, inst.part).size;
    const Rat emd = matching_emd(g, inst.part);
    CHECK(emd == Rat(2 * t - mu, 2 * t));
    CHECK(matching_size_from_emd(emd, t) == mu);
  }
}

TEST_CASE("matching problem shape requirements") {
  Graph g(4);
  g.add_edge(0, 2);
  SUBCASE("unequal parts") {
    CHECK_THROWS_AS((void)matching_transport_problem(g, {0, 0, 0, 1}), Error);
  }
  SUBCASE("edge inside a part") {
    Graph bad(4);
    bad.add_edge(0, 1);
    CHECK_THROWS_AS((void)matching_transport_problem(bad, {0, 0, 1, 1}),
                    Error);
  }
  SUBCASE("well-formed") {
    const TransportProblem problem =
        matching_transport_problem(g, {0, 1, 1, 0});
    CHECK(problem.supply.size() == 2);
    CHECK(problem.demand.size() == 2);
    CHECK(problem.supply[0] == Rat(1, 2));
    // Edge pairs cost 1/2, the rest 1.
    int half = 0, whole = 0;
    for (const auto& row : problem.cost)
      for (const Rat& cell : row) {
        half += cell == Rat(1, 2);
        whole += cell == Rat(1);
      }
    CHECK(half == 1);
    CHECK(whole == 3);
  }
}

TEST_CASE("inverse map rejects non-integral or out-of-range sizes") {
  CHECK_THROWS_AS((void)matching_size_from_emd(Rat(1, 3), 5), Error);
  CHECK_THROWS_AS((void)matching_size_from_emd(Rat(2), 5), Error);
  CHECK_THROWS_AS((void)matching_size_from_emd(Rat(1, 4), 5), Error);
  CHECK(matching_size_from_emd(Rat(1, 2), 5) == 5);    // perfect matching
  CHECK(matching_size_from_emd(Rat(9, 10), 5) == 1);
}

TEST_CASE("error transfer: matching error = 2t * distance error") {
  CHECK(matching_error_bound(Rat(1, 100), 10) == Rat(1, 5));
  CHECK(matching_error_bound(Rat(-1, 100), 10) == Rat(1, 5));
  CHECK(matching_error_bound(Rat(0), 99) == Rat(0));
}

TEST_CASE("min-cost flow equals the assignment DP oracle") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t atoms = 2 + seed % 7;
    rng::Stream costs(seed, 2, rng::Tag::kEstimator);
    std::vector<std::vector<std::int64_t>> cost(
        atoms, std::vector<std::int64_t>(atoms));
    TransportProblem problem;
    problem.supply.assign(atoms, Rat(1, static_cast<std::int64_t>(atoms)));
    problem.demand = problem.supply;
    problem.cost.assign(atoms, std::vector<Rat>(atoms));
    for (std::size_t i = 0; i < atoms; ++i) {
      for (std::size_t j = 0; j < atoms; ++j) {
        cost[i][j] = static_cast<std::int64_t>(costs.next_below(50));
        problem.cost[i][j] = Rat(cost[i][j]);
      }
    }
    // Unit-mass assignment: optimum = (DP optimum) / atoms.
    const TransportPlan plan = solve_transport(problem);
    CHECK(plan.total_cost ==
          Rat(assignment_min_cost(cost), static_cast<std::int64_t>(atoms)));
  }
}

}  // TEST_SUITE
