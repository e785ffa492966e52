#include "rftt/line_solver.h"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace rftt {

HalflineResult halfline_dp(const std::vector<Rational>& distances,
                           const std::vector<Turnover>& turnovers,
                           Turnover bound) {
  if (distances.size() != turnovers.size()) {
    throw InputError("distance and turnover lists differ in length");
  }
  for (std::size_t i = 0; i < distances.size(); ++i) {
    if (turnovers[i] <= 0) {
      throw InputError("nonpositive turnover " + std::to_string(turnovers[i]));
    }
    if (i > 0 && distances[i] < distances[i - 1]) {
      throw InputError("distances are not sorted");
    }
  }
  HalflineResult out;
  // Walking outward from the far end, keep a vertex only if its turnover
  // beats every farther one.
  Turnover best = 0;
  for (std::size_t i = distances.size(); i-- > 0;) {
    if (best == 0 || turnovers[i] < best) {
      out.kept.push_back(i);
      best = turnovers[i];
    }
  }
  std::reverse(out.kept.begin(), out.kept.end());
  const std::size_t n = out.kept.size();
  if (n == 0) {
    out.reach = {0};
    return out;
  }
  const Turnover top = turnovers[out.kept.back()];
  if (top > bound) {
    throw SizeGuardError("largest turnover " + std::to_string(top) + " exceeds the line bound " +
                         std::to_string(bound));
  }
  const auto kmax = static_cast<std::size_t>(top);
  auto d = [&](std::size_t i) -> const Rational& { return distances[out.kept[i - 1]]; };
  auto t = [&](std::size_t i) { return static_cast<std::size_t>(turnovers[out.kept[i - 1]]); };

  // choice[i][k]: 0 = vertex i idle in the block, else day of its first visit.
  out.phi.assign(n + 1, std::vector<Rational>(kmax + 1, Rational(0)));
  std::vector<std::vector<std::size_t>> choice(n + 1, std::vector<std::size_t>(kmax + 1, 0));
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t k = 1; k <= kmax; ++k) {
      std::optional<Rational> best_cost;
      if (k + 1 <= t(i)) {
        best_cost = out.phi[i - 1][k];
      }
      for (std::size_t l = 1; l <= std::min(t(i), k); ++l) {
        Rational c = out.phi[i - 1][l - 1] + d(i) + out.phi[i][k - l];
        if (!best_cost || c < *best_cost) {
          best_cost = c;
          choice[i][k] = l;
        }
      }
      out.phi[i][k] = *best_cost;
    }
  }

  std::optional<Rational> best_value;
  std::size_t best_l = 1;
  for (std::size_t l = 1; l <= kmax; ++l) {
    Rational v = (out.phi[n - 1][l - 1] + d(n)) / Rational(static_cast<std::int64_t>(l));
    if (!best_value || v < *best_value) {
      best_value = v;
      best_l = l;
    }
  }
  out.one_way = *best_value;
  out.value = Rational(2) * out.one_way;
  out.period = static_cast<std::int64_t>(best_l);

  // Unroll the block structure into the reach of each day (in kept ranks).
  std::vector<std::size_t> rank(best_l, 0);
  rank[best_l - 1] = n;
  struct Block {
    std::size_t i, start, k;
  };
  std::vector<Block> todo{{n - 1, 0, best_l - 1}};
  while (!todo.empty()) {
    Block b = todo.back();
    todo.pop_back();
    if (b.i == 0 || b.k == 0) {
      continue;
    }
    const std::size_t l = choice[b.i][b.k];
    if (l == 0) {
      todo.push_back({b.i - 1, b.start, b.k});
      continue;
    }
    rank[b.start + l - 1] = b.i;
    todo.push_back({b.i - 1, b.start, l - 1});
    todo.push_back({b.i, b.start + l, b.k - l});
  }
  for (std::size_t r : rank) {
    if (r == 0) {
      out.reach.push_back(0);
      continue;
    }
    const Rational& far = d(r);
    std::size_t count = 0;
    while (count < distances.size() && distances[count] <= far) {
      ++count;
    }
    out.reach.push_back(std::max(count, out.kept[r - 1] + 1));
  }
  return out;
}

namespace {

struct Side {
  std::vector<Index> vertices;
  std::vector<Rational> distances;
  std::vector<Turnover> turnovers;
};

} // namespace

Solution solve_minavg_line(const Instance& instance, Turnover bound) {
  const auto start = std::chrono::steady_clock::now();
  validate(instance);
  if (!is_line(classify(instance))) {
    throw InputError("line-dp needs a path instance");
  }
  const RootedTree tree = root_tree(instance);
  std::vector<Side> sides;
  for (Index first : tree.children[tree.root]) {
    Side s;
    Rational dist(0);
    std::optional<Index> v = first;
    while (v) {
      dist += tree.parent_weight[*v];
      s.vertices.push_back(*v);
      s.distances.push_back(dist);
      s.turnovers.push_back(instance.turnover(*v));
      v = tree.children[*v].empty() ? std::nullopt : std::optional<Index>(tree.children[*v][0]);
    }
    sides.push_back(std::move(s));
  }
  std::vector<HalflineResult> dp;
  std::int64_t period = 1;
  Rational value(0);
  for (const Side& s : sides) {
    dp.push_back(halfline_dp(s.distances, s.turnovers, bound));
    period = std::lcm(period, dp.back().period);
    value += dp.back().value;
  }

  Solution sol;
  sol.report.algorithm = "line-dp";
  sol.report.objective = Objective::min_avg;
  sol.report.diagnostics["sides"] = static_cast<std::int64_t>(sides.size());
  for (std::size_t i = 0; i < dp.size(); ++i) {
    sol.report.diagnostics["side" + std::to_string(i) + "_period"] = dp[i].period;
  }
  if (period > line_period_cap) {
    sol.schedule.period = 0;
    sol.report.avg = value;
    sol.report.diagnostics["value_only"] = 1;
    sol.report.lower_bound = value;
    return sol;
  }
  sol.schedule.period = period;
  for (std::int64_t day = 1; day <= period; ++day) {
    std::vector<VertexId> visits;
    for (std::size_t i = 0; i < sides.size(); ++i) {
      const auto& r = dp[i].reach;
      const std::size_t reach = r[static_cast<std::size_t>((day - 1) % dp[i].period)];
      for (std::size_t p = 0; p < reach; ++p) {
        visits.push_back(instance.id_of(sides[i].vertices[p]));
      }
    }
    sol.schedule.days.push_back(std::move(visits));
  }
  fill_costs(instance, metric_closure(instance), sol);
  // The DP is exact, so its value is also the bound.
  sol.report.lower_bound = value;
  sol.report.diagnostics["period"] = period;
  sol.report.runtime_ms =
    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return sol;
}

} // namespace rftt
