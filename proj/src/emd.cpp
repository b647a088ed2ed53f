#include "matchgap/emd.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "matchgap/errors.hpp"

namespace matchgap {

namespace {

constexpr std::int64_t kMaxScaled = std::int64_t{1} << 40;

std::int64_t scaled_to_int64(const Rat& value, const BigInt& scale,
                             const char* what) {
  Rat scaled = value * Rat(scale);
  if (denominator(scaled) != 1) {
    throw Error(Errc::kInternal,
                std::string(what) + " failed to clear its denominator");
  }
  if (numerator(scaled) < 0 || numerator(scaled) > BigInt(kMaxScaled)) {
    throw Error(Errc::kOverflowScale,
                std::string(what) + " overflows the integer rescaling");
  }
  return numerator(scaled).convert_to<std::int64_t>();
}

// Minimum-cost flow with non-negative arc costs: successive shortest
// augmenting paths under Johnson potentials.
class MinCostFlow {
 public:
  explicit MinCostFlow(int nodes) : head_(static_cast<std::size_t>(nodes)) {}

  int add_arc(int from, int to, std::int64_t cap, std::int64_t cost) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back(Arc{to, cap, cost});
    head_[static_cast<std::size_t>(from)].push_back(id);
    arcs_.push_back(Arc{from, 0, -cost});
    head_[static_cast<std::size_t>(to)].push_back(id + 1);
    return id;
  }

  std::int64_t flow_on(int arc_id) const {
    return arcs_[static_cast<std::size_t>(arc_id) + 1].cap;
  }

  // Pushes up to `want` units from s to t; returns the amount routed.
  std::int64_t run(int s, int t, std::int64_t want) {
    const std::size_t n = head_.size();
    std::vector<std::int64_t> potential(n, 0);
    std::vector<std::int64_t> dist(n);
    std::vector<int> parent_arc(n);
    std::int64_t routed = 0;
    while (routed < want) {
      constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
      std::fill(dist.begin(), dist.end(), kInf);
      std::fill(parent_arc.begin(), parent_arc.end(), -1);
      using Item = std::pair<std::int64_t, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
      dist[static_cast<std::size_t>(s)] = 0;
      queue.emplace(0, s);
      while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[static_cast<std::size_t>(u)]) continue;
        for (int id : head_[static_cast<std::size_t>(u)]) {
          const Arc& a = arcs_[static_cast<std::size_t>(id)];
          if (a.cap <= 0) continue;
          const std::int64_t nd =
              d + a.cost + potential[static_cast<std::size_t>(u)] -
              potential[static_cast<std::size_t>(a.to)];
          if (nd < dist[static_cast<std::size_t>(a.to)]) {
            dist[static_cast<std::size_t>(a.to)] = nd;
            parent_arc[static_cast<std::size_t>(a.to)] = id;
            queue.emplace(nd, a.to);
          }
        }
      }
      if (dist[static_cast<std::size_t>(t)] == kInf) break;
      for (std::size_t v = 0; v < n; ++v) {
        if (dist[v] < kInf) potential[v] += dist[v];
      }
      std::int64_t push = want - routed;
      for (int v = t; v != s;) {
        const Arc& a = arcs_[static_cast<std::size_t>(parent_arc[
            static_cast<std::size_t>(v)])];
        push = std::min(push, a.cap);
        v = arcs_[static_cast<std::size_t>(
                      parent_arc[static_cast<std::size_t>(v)] ^ 1)].to;
      }
      for (int v = t; v != s;) {
        const int id = parent_arc[static_cast<std::size_t>(v)];
        arcs_[static_cast<std::size_t>(id)].cap -= push;
        arcs_[static_cast<std::size_t>(id) ^ 1].cap += push;
        v = arcs_[static_cast<std::size_t>(id) ^ 1].to;
      }
      routed += push;
    }
    return routed;
  }

 private:
  struct Arc {
    int to;
    std::int64_t cap;
    std::int64_t cost;
  };
  std::vector<Arc> arcs_;  // arc 2k+1 is the reverse of arc 2k
  std::vector<std::vector<int>> head_;
};

BigInt denominator_lcm(BigInt acc, const Rat& value) {
  using boost::multiprecision::gcd;
  const BigInt den = denominator(value);
  return acc / gcd(acc, den) * den;
}

}  // namespace

TransportPlan solve_transport(const TransportProblem& problem) {
  const std::size_t ns = problem.supply.size();
  const std::size_t nd = problem.demand.size();
  if (ns == 0 || nd == 0 || problem.cost.size() != ns) {
    throw Error(Errc::kInvalidParam, "transport problem shape mismatch");
  }
  for (const auto& row : problem.cost) {
    if (row.size() != nd) {
      throw Error(Errc::kInvalidParam, "transport cost row shape mismatch");
    }
    for (const Rat& c : row) {
      if (c < 0) throw Error(Errc::kInvalidParam, "negative transport cost");
    }
  }
  Rat total_supply = 0;
  Rat total_demand = 0;
  BigInt mass_scale = 1;
  for (const Rat& s : problem.supply) {
    if (s < 0) throw Error(Errc::kInvalidParam, "negative supply mass");
    total_supply += s;
    mass_scale = denominator_lcm(mass_scale, s);
  }
  for (const Rat& d : problem.demand) {
    if (d < 0) throw Error(Errc::kInvalidParam, "negative demand mass");
    total_demand += d;
    mass_scale = denominator_lcm(mass_scale, d);
  }
  if (total_supply != total_demand) {
    throw Error(Errc::kInvalidParam, "total supply must equal total demand");
  }
  BigInt cost_scale = 1;
  for (const auto& row : problem.cost) {
    for (const Rat& c : row) cost_scale = denominator_lcm(cost_scale, c);
  }

  // Nodes: 0 = source, 1..ns supplies, ns+1..ns+nd demands, last = sink.
  const int source = 0;
  const int sink = static_cast<int>(ns + nd) + 1;
  MinCostFlow flow(sink + 1);
  std::int64_t want = 0;
  for (std::size_t i = 0; i < ns; ++i) {
    const std::int64_t cap =
        scaled_to_int64(problem.supply[i], mass_scale, "supply");
    want += cap;
    flow.add_arc(source, static_cast<int>(i) + 1, cap, 0);
  }
  for (std::size_t j = 0; j < nd; ++j) {
    const std::int64_t cap =
        scaled_to_int64(problem.demand[j], mass_scale, "demand");
    flow.add_arc(static_cast<int>(ns + j) + 1, sink, cap, 0);
  }
  std::vector<std::vector<int>> move_arcs(ns, std::vector<int>(nd));
  std::vector<std::vector<std::int64_t>> scaled_cost(
      ns, std::vector<std::int64_t>(nd));
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nd; ++j) {
      scaled_cost[i][j] =
          scaled_to_int64(problem.cost[i][j], cost_scale, "cost");
      move_arcs[i][j] =
          flow.add_arc(static_cast<int>(i) + 1, static_cast<int>(ns + j) + 1,
                       std::numeric_limits<std::int64_t>::max() / 4,
                       scaled_cost[i][j]);
    }
  }
  const std::int64_t routed = flow.run(source, sink, want);
  if (routed != want) {
    throw Error(Errc::kInternal, "transport network failed to route supply");
  }

  TransportPlan plan;
  plan.total_cost = 0;
  const Rat unit = Rat(1) / Rat(mass_scale);
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nd; ++j) {
      const std::int64_t moved = flow.flow_on(move_arcs[i][j]);
      if (moved == 0) continue;
      plan.moves.push_back(TransportMove{static_cast<std::int32_t>(i),
                                         static_cast<std::int32_t>(j),
                                         Rat(moved) * unit});
      plan.total_cost += Rat(moved) * unit * problem.cost[i][j];
    }
  }
  return plan;
}

TransportProblem matching_transport_problem(
    const Graph& g, const std::vector<std::uint8_t>& part) {
  if (part.size() != static_cast<std::size_t>(g.n)) {
    throw Error(Errc::kInvalidParam, "part labels must cover every vertex");
  }
  std::vector<std::int32_t> left;
  std::vector<std::int32_t> right;
  std::vector<std::int32_t> index(part.size(), -1);
  for (std::int32_t v = 0; v < g.n; ++v) {
    auto& side = part[static_cast<std::size_t>(v)] == 0 ? left : right;
    index[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(side.size());
    side.push_back(v);
  }
  if (left.size() != right.size() || left.empty()) {
    throw Error(Errc::kUnbalancedParts,
                "earth-mover instance needs equal non-empty parts");
  }
  const std::int64_t t = static_cast<std::int64_t>(left.size());
  TransportProblem problem;
  problem.supply.assign(left.size(), Rat(1, t));
  problem.demand.assign(right.size(), Rat(1, t));
  problem.cost.assign(left.size(), std::vector<Rat>(right.size(), Rat(1)));
  for (std::int32_t u : left) {
    for (std::int32_t v : g.adj[static_cast<std::size_t>(u)]) {
      if (part[static_cast<std::size_t>(v)] == 0) {
        throw Error(Errc::kUnbalancedParts, "edge inside one part");
      }
      problem.cost[static_cast<std::size_t>(index[static_cast<std::size_t>(u)])]
                  [static_cast<std::size_t>(index[static_cast<std::size_t>(v)])] =
          Rat(1, 2);
    }
  }
  return problem;
}

Rat matching_emd(const Graph& g, const std::vector<std::uint8_t>& part) {
  return solve_transport(matching_transport_problem(g, part)).total_cost;
}

std::int64_t matching_size_from_emd(const Rat& emd, std::int64_t part_size) {
  const Rat mu = Rat(2 * part_size) * (Rat(1) - emd);
  if (denominator(mu) != 1 || mu < 0 || mu > Rat(part_size)) {
    throw Error(Errc::kFormatError,
                "distance " + emd.str() + " is not of the form (2t-mu)/(2t)");
  }
  return numerator(mu).convert_to<std::int64_t>();
}

Rat matching_error_bound(const Rat& emd_error, std::int64_t part_size) {
  Rat bound = Rat(2 * part_size) * emd_error;
  if (bound < 0) bound = -bound;
  return bound;
}

std::int64_t assignment_min_cost(
    const std::vector<std::vector<std::int64_t>>& cost) {
  const std::size_t n = cost.size();
  if (n == 0 || n > 20) {
    throw Error(Errc::kInvalidParam,
                "assignment oracle handles 1..20 atoms a side");
  }
  for (const auto& row : cost) {
    if (row.size() != n) {
      throw Error(Errc::kInvalidParam, "assignment cost matrix must be square");
    }
  }
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 2;
  std::vector<std::int64_t> dp(std::size_t{1} << n, kInf);
  dp[0] = 0;
  for (std::size_t mask = 0; mask + 1 < dp.size(); ++mask) {
    if (dp[mask] >= kInf) continue;
    const std::size_t i = static_cast<std::size_t>(std::popcount(mask));
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (std::size_t{1} << j)) continue;
      const std::size_t next = mask | (std::size_t{1} << j);
      dp[next] = std::min(dp[next], dp[mask] + cost[i][j]);
    }
  }
  return dp.back();
}

}  // namespace matchgap
