#include "rftt/general_solver.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <numeric>
#include <set>

namespace rftt {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

constexpr std::size_t exact_class_limit = 12;

Tour class_tour(const std::vector<Index>& clients, const DistanceMatrix& dist, Index depot) {
  if (clients.size() <= exact_class_limit) {
    return tsp_exact(clients, dist, depot);
  }
  return tsp_double_tree(clients, dist, depot);
}

// Appends a round trip to a day list, separated from earlier trips by a
// depot stop.
void append_trip(const Instance& instance, std::vector<VertexId>& day,
                 const std::vector<Index>& trip) {
  if (trip.empty()) {
    return;
  }
  if (!day.empty()) {
    day.push_back(instance.depot());
  }
  for (Index v : trip) {
    day.push_back(instance.id_of(v));
  }
}

Rational max_reach(const Instance& instance, const DistanceMatrix& dist) {
  Rational reach(0);
  for (Index c : instance.clients()) {
    reach = max(reach, dist(instance.depot_index(), c));
  }
  return reach;
}

// max over clients of 2 d(s, j) / tau_j: every client needs at least that
// much per day on average.
Rational general_avg_bound(const Instance& instance, const DistanceMatrix& dist) {
  Rational lb(0);
  for (Index c : instance.clients()) {
    lb = max(lb, Rational(2) * dist(instance.depot_index(), c) / Rational(instance.turnover(c)));
  }
  return lb;
}

std::int64_t rounded_period(const Instance& rounded) {
  return std::max<Turnover>(1, rounded.max_turnover());
}

struct ClassTours {
  std::map<Turnover, Tour> tours;
  std::map<Turnover, std::vector<Tour>> pieces;
  std::int64_t splits = 0;
  std::int64_t split_violations = 0; // pieces above the split bound
};

ClassTours build_class_tours(const ClassPartition& part, const std::vector<Turnover>& moduli,
                             const DistanceMatrix& dist, Index depot, Objective objective) {
  ClassTours out;
  for (Turnover m : moduli) {
    Tour t = class_tour(part.classes.at(m), dist, depot);
    if (objective == Objective::min_max) {
      out.pieces[m] = split_tour(t, m, dist, depot);
      ++out.splits;
      const Rational bound = split_bound(t, m, dist, depot);
      for (const Tour& piece : out.pieces[m]) {
        if (piece.cost > bound) {
          ++out.split_violations;
        }
      }
    }
    out.tours[m] = std::move(t);
  }
  return out;
}

void append_class_day(const Instance& instance, const ClassTours& ct, Objective objective,
                      std::int64_t day, std::vector<VertexId>& out) {
  for (const auto& [m, tour] : ct.tours) {
    if (objective == Objective::min_avg) {
      if (day % m == 0) {
        append_trip(instance, out, tour.order);
      }
    } else {
      append_trip(instance, out, ct.pieces.at(m)[static_cast<std::size_t>((day - 1) % m)].order);
    }
  }
}

} // namespace

bool is_pow2(Turnover t) { return t > 0 && std::has_single_bit(static_cast<std::uint64_t>(t)); }

Turnover round_down_pow2(Turnover t) {
  if (t <= 0) {
    throw InputError("nonpositive turnover " + std::to_string(t));
  }
  return static_cast<Turnover>(std::bit_floor(static_cast<std::uint64_t>(t)));
}

int floor_log2(std::int64_t t) {
  return std::bit_width(static_cast<std::uint64_t>(t)) - 1;
}

int ceil_log2(std::int64_t n) {
  if (n <= 1) {
    return 0;
  }
  return std::bit_width(static_cast<std::uint64_t>(n - 1));
}

Instance round_pow2(const Instance& instance) {
  std::vector<Turnover> t = instance.turnovers();
  for (Index c : instance.clients()) {
    t[c] = round_down_pow2(t[c]);
  }
  return instance.with_turnovers(t);
}

ClassPartition partition_classes(const Instance& rounded) {
  ClassPartition out;
  for (Index c : rounded.clients()) {
    out.classes[rounded.turnover(c)].push_back(c);
  }
  for (const auto& [m, vs] : out.classes) {
    out.saturated[m] = static_cast<std::int64_t>(vs.size()) >= m;
  }
  return out;
}

Solution solve_per_class(const Instance& instance, Objective objective) {
  const auto start = Clock::now();
  validate(instance);
  const Instance rounded = round_pow2(instance);
  const DistanceMatrix dist = metric_closure(instance);
  const ClassPartition part = partition_classes(rounded);
  std::vector<Turnover> moduli;
  for (const auto& [m, vs] : part.classes) {
    moduli.push_back(m);
  }
  const ClassTours ct = build_class_tours(part, moduli, dist, instance.depot_index(), objective);

  Solution sol;
  sol.schedule.period = rounded_period(rounded);
  for (std::int64_t d = 1; d <= sol.schedule.period; ++d) {
    std::vector<VertexId> day;
    append_class_day(instance, ct, objective, d, day);
    sol.schedule.days.push_back(std::move(day));
  }
  sol.report.algorithm = "classes";
  sol.report.objective = objective;
  fill_costs(instance, dist, sol);
  sol.report.lower_bound = objective == Objective::min_avg
                             ? general_avg_bound(instance, dist)
                             : Rational(2) * max_reach(instance, dist);
  sol.report.diagnostics["period"] = sol.schedule.period;
  sol.report.diagnostics["class_count"] = static_cast<std::int64_t>(moduli.size());
  sol.report.diagnostics["splits"] = ct.splits;
  sol.report.diagnostics["split_violations"] = ct.split_violations;
  sol.report.runtime_ms = elapsed_ms(start);
  return sol;
}

UnsaturatedPacking pack_unsaturated(const Instance& rounded, const std::vector<Index>& clients) {
  UnsaturatedPacking out;
  const std::int64_t n = static_cast<std::int64_t>(rounded.client_count());
  if (clients.empty()) {
    return out;
  }
  const int k = ceil_log2(n);
  const Turnover top = Turnover{1} << k;
  if (n == 1) {
    out.sets[1];
  }
  for (Turnover i = 2; i <= top; i *= 2) {
    out.sets[i];
  }
  std::vector<Index> overflow;
  for (Index c : clients) {
    const Turnover t = rounded.turnover(c);
    auto it = out.sets.find(t);
    if (it != out.sets.end() && static_cast<Turnover>(it->second.size()) < t) {
      it->second.push_back(c);
    } else {
      overflow.push_back(c);
    }
  }
  for (Index c : overflow) {
    const Turnover t = rounded.turnover(c);
    bool placed = false;
    for (auto& [i, members] : out.sets) {
      if (i <= t && static_cast<Turnover>(members.size()) < i) {
        members.push_back(c);
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw std::logic_error("unsaturated packing ran out of room");
    }
  }
  std::erase_if(out.sets, [](const auto& kv) { return kv.second.empty(); });
  return out;
}

Solution solve_minmax_logn(const Instance& instance) {
  const auto start = Clock::now();
  validate(instance);
  const Instance rounded = round_pow2(instance);
  const DistanceMatrix dist = metric_closure(instance);
  const ClassPartition part = partition_classes(rounded);

  std::vector<Turnover> saturated;
  std::vector<Index> unsaturated;
  for (const auto& [m, vs] : part.classes) {
    if (part.saturated.at(m)) {
      saturated.push_back(m);
    } else {
      unsaturated.insert(unsaturated.end(), vs.begin(), vs.end());
    }
  }
  std::sort(unsaturated.begin(), unsaturated.end());
  const ClassTours ct =
    build_class_tours(part, saturated, dist, instance.depot_index(), Objective::min_max);
  const UnsaturatedPacking packing = pack_unsaturated(rounded, unsaturated);

  Solution sol;
  sol.schedule.period = rounded_period(rounded);
  std::int64_t most_w = 0;
  for (std::int64_t d = 1; d <= sol.schedule.period; ++d) {
    std::vector<VertexId> day;
    append_class_day(instance, ct, Objective::min_max, d, day);
    std::int64_t w = 0;
    for (const auto& [i, members] : packing.sets) {
      const auto r = static_cast<std::size_t>(d % i);
      if (r < members.size()) {
        append_trip(instance, day, {members[r]});
        ++w;
      }
    }
    most_w = std::max(most_w, w);
    sol.schedule.days.push_back(std::move(day));
  }
  sol.report.algorithm = "logn-minmax";
  sol.report.objective = Objective::min_max;
  fill_costs(instance, dist, sol);
  sol.report.lower_bound = Rational(2) * max_reach(instance, dist);
  sol.report.diagnostics["period"] = sol.schedule.period;
  sol.report.diagnostics["saturated_classes"] = static_cast<std::int64_t>(saturated.size());
  sol.report.diagnostics["unsaturated_clients"] = static_cast<std::int64_t>(unsaturated.size());
  sol.report.diagnostics["max_unsaturated_per_day"] = most_w;
  sol.report.diagnostics["splits"] = ct.splits;
  sol.report.diagnostics["split_violations"] = ct.split_violations;
  std::int64_t bad_sets = 0;
  for (const auto& [i, members] : packing.sets) {
    bad_sets += static_cast<std::int64_t>(members.size()) > i;
    for (Index c : members) {
      bad_sets += rounded.turnover(c) < i;
    }
  }
  sol.report.diagnostics["packing_violations"] = bad_sets;
  sol.report.runtime_ms = elapsed_ms(start);
  return sol;
}

SyncSolution synchronized_solution(const Instance& rounded, const DistanceMatrix& dist) {
  SyncSolution out;
  out.period = rounded_period(rounded);
  const int top = floor_log2(out.period);
  for (int j = 0; j <= top; ++j) {
    std::vector<Index> members;
    for (Index c : rounded.clients()) {
      if (rounded.turnover(c) <= (Turnover{1} << j)) {
        members.push_back(c);
      }
    }
    out.levels.push_back(tsp_double_tree(members, dist, rounded.depot_index()));
  }
  return out;
}

namespace {

std::size_t level_of_day(std::int64_t day, std::size_t levels) {
  const auto v = static_cast<std::size_t>(std::countr_zero(static_cast<std::uint64_t>(day)));
  return std::min(v, levels - 1);
}

} // namespace

Schedule to_schedule(const Instance& instance, const SyncSolution& sync) {
  Schedule s;
  s.period = sync.period;
  for (std::int64_t d = 1; d <= sync.period; ++d) {
    std::vector<VertexId> day;
    for (Index v : sync.levels[level_of_day(d, sync.levels.size())].order) {
      day.push_back(instance.id_of(v));
    }
    s.days.push_back(std::move(day));
  }
  return s;
}

Solution solve_minavg_sync(const Instance& instance) {
  const auto start = Clock::now();
  validate(instance);
  const Instance rounded = round_pow2(instance);
  const DistanceMatrix dist = metric_closure(instance);
  const SyncSolution sync = synchronized_solution(rounded, dist);

  Solution sol;
  sol.schedule = to_schedule(instance, sync);
  sol.report.algorithm = "sync";
  sol.report.objective = Objective::min_avg;
  fill_costs(instance, dist, sol);
  sol.report.lower_bound = general_avg_bound(instance, dist);
  sol.report.diagnostics["period"] = sync.period;
  sol.report.diagnostics["levels"] = static_cast<std::int64_t>(sync.levels.size());
  sol.report.runtime_ms = elapsed_ms(start);
  return sol;
}

namespace {

struct TreeView {
  std::vector<std::optional<Index>> parent;
  std::vector<std::vector<Index>> children;
  std::vector<Index> preorder;
  std::vector<std::size_t> level;
};

TreeView view_tree(const std::vector<std::pair<Index, Index>>& edges, Index root) {
  Index n = root + 1;
  for (const auto& [u, v] : edges) {
    n = std::max({n, u + 1, v + 1});
  }
  std::vector<std::vector<Index>> adj(n);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  TreeView t;
  t.parent.assign(n, std::nullopt);
  t.children.assign(n, {});
  t.level.assign(n, 0);
  std::vector<bool> seen(n, false);
  std::vector<Index> stack{root};
  seen[root] = true;
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    t.preorder.push_back(v);
    std::vector<Index> next;
    for (Index w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        t.parent[w] = v;
        t.level[w] = t.level[v] + 1;
        t.children[v].push_back(w);
        next.push_back(w);
      }
    }
    std::sort(t.children[v].begin(), t.children[v].end());
    std::sort(next.rbegin(), next.rend());
    stack.insert(stack.end(), next.begin(), next.end());
  }
  if (t.preorder.size() != edges.size() + 1) {
    throw InputError("edge set is not a tree");
  }
  return t;
}

} // namespace

std::vector<std::pair<Index, Index>> tree_pairing(
  const std::vector<std::pair<Index, Index>>& tree_edges,
  const std::vector<Index>& subset,
  Index root) {
  const TreeView t = view_tree(tree_edges, root);
  std::vector<bool> wanted(t.parent.size(), false);
  for (Index v : subset) {
    wanted.at(v) = true;
  }
  std::vector<std::optional<Index>> carry(t.parent.size());
  std::vector<std::pair<Index, Index>> pairs;
  for (auto it = t.preorder.rbegin(); it != t.preorder.rend(); ++it) {
    const Index v = *it;
    std::vector<Index> pool;
    if (wanted[v]) {
      pool.push_back(v);
    }
    for (Index c : t.children[v]) {
      if (carry[c]) {
        pool.push_back(*carry[c]);
      }
    }
    std::size_t i = 0;
    for (; i + 1 < pool.size(); i += 2) {
      pairs.emplace_back(pool[i], pool[i + 1]);
    }
    if (i < pool.size()) {
      carry[v] = pool[i];
    }
  }
  return pairs;
}

NonDecreasingTree build_nondecreasing_tree(const std::vector<std::pair<Index, Index>>& tree_edges,
                                           const Instance& instance,
                                           const DistanceMatrix& dist) {
  const Index root = instance.depot_index();
  const TreeView t = view_tree(tree_edges, root);
  const std::size_t n = t.parent.size();
  std::vector<Rational> depth(n, Rational(0));
  for (Index v : t.preorder) {
    if (t.parent[v]) {
      depth[v] = depth[*t.parent[v]] + dist(*t.parent[v], v);
    }
  }
  auto path_length = [&](Index a, Index b) {
    Index x = a;
    Index y = b;
    while (x != y) {
      if (t.level[x] >= t.level[y]) {
        x = *t.parent[x];
      } else {
        y = *t.parent[y];
      }
    }
    return depth[a] + depth[b] - Rational(2) * depth[x];
  };
  // Depot first: it has the lowest turnover of all.
  auto lower = [&](Index a, Index b) {
    if (a == root || b == root) {
      return a == root;
    }
    const Turnover ta = instance.turnover(a);
    const Turnover tb = instance.turnover(b);
    return ta != tb ? ta < tb : a < b;
  };

  NonDecreasingTree out;
  std::vector<Index> pool = t.preorder;
  std::sort(pool.begin(), pool.end());
  while (pool.size() > 1) {
    ++out.rounds;
    const auto pairs = tree_pairing(tree_edges, pool, root);
    for (auto [a, b] : pairs) {
      if (!lower(a, b)) {
        std::swap(a, b);
      }
      out.arcs.emplace_back(a, b);
      out.cost += path_length(a, b);
      std::erase(pool, b);
    }
  }
  return out;
}

Schedule to_schedule(const Instance& instance, const NonDecreasingSolution& solution) {
  Schedule s;
  s.period = solution.period;
  for (const auto& arcs : solution.day_arcs) {
    std::map<Index, std::vector<Index>> kids;
    for (const auto& [a, b] : arcs) {
      kids[a].push_back(b);
    }
    std::vector<VertexId> day;
    std::function<void(Index)> walk = [&](Index v) {
      if (v != instance.depot_index()) {
        day.push_back(instance.id_of(v));
      }
      auto it = kids.find(v);
      if (it != kids.end()) {
        for (Index c : it->second) {
          walk(c);
        }
      }
    };
    walk(instance.depot_index());
    s.days.push_back(std::move(day));
  }
  return s;
}

NonDecreasingSolution sync_to_nondecreasing(const Instance& instance, const SyncSolution& sync,
                                            const DistanceMatrix& dist) {
  (void)dist;
  for (Index c : instance.clients()) {
    if (!is_pow2(instance.turnover(c))) {
      throw InputError("synchronized conversion needs power-of-two turnovers");
    }
  }
  // Level i contributes a depot-rooted path through its own class, in the
  // order of T_i.
  std::vector<std::vector<std::pair<Index, Index>>> paths;
  for (std::size_t i = 0; i < sync.levels.size(); ++i) {
    std::vector<std::pair<Index, Index>> path;
    Index prev = instance.depot_index();
    for (Index v : sync.levels[i].order) {
      if (instance.turnover(v) == (Turnover{1} << i)) {
        path.emplace_back(prev, v);
        prev = v;
      }
    }
    paths.push_back(std::move(path));
  }
  NonDecreasingSolution out;
  out.period = sync.period;
  for (std::int64_t d = 1; d <= sync.period; ++d) {
    std::vector<std::pair<Index, Index>> arcs;
    const std::size_t j = level_of_day(d, sync.levels.size());
    for (std::size_t i = 0; i <= j; ++i) {
      arcs.insert(arcs.end(), paths[i].begin(), paths[i].end());
    }
    out.day_arcs.push_back(std::move(arcs));
  }
  return out;
}

Schedule nondecreasing_to_sync(const Instance& instance, const NonDecreasingSolution& solution,
                               const DistanceMatrix& dist) {
  (void)dist;
  const Index depot = instance.depot_index();
  Turnover top = 1;
  for (Index c : instance.clients()) {
    if (!is_pow2(instance.turnover(c))) {
      throw InputError("synchronized conversion needs power-of-two turnovers");
    }
    top = std::max(top, instance.turnover(c));
  }
  if (static_cast<std::int64_t>(solution.day_arcs.size()) != solution.period) {
    throw InputError("day count does not match the period");
  }
  const std::int64_t period = std::lcm(solution.period, top);
  if (period > max_expanded_period) {
    throw SizeGuardError("converted period " + std::to_string(period) + " is too long");
  }
  // Parent arcs of every day, repeated over the extended period.
  std::vector<std::map<Index, Index>> parent(static_cast<std::size_t>(period));
  for (std::int64_t d = 0; d < period; ++d) {
    for (const auto& [a, b] : solution.day_arcs[static_cast<std::size_t>(d % solution.period)]) {
      parent[static_cast<std::size_t>(d)][b] = a;
    }
  }
  std::vector<std::set<std::pair<Index, Index>>> marked(parent.size());
  std::vector<std::vector<std::pair<Index, Index>>> moved(parent.size());
  for (Turnover level = 1; level <= top; level *= 2) {
    for (std::int64_t d = 1; d <= period; ++d) {
      auto& par = parent[static_cast<std::size_t>(d - 1)];
      const std::int64_t k = (d + level - 1) / level * level;
      for (const auto& entry : par) {
        const Index v = entry.first;
        if (instance.turnover(v) != level) {
          continue;
        }
        Index x = v;
        while (x != depot) {
          auto it = par.find(x);
          if (it == par.end()) {
            break;
          }
          const std::pair<Index, Index> arc{it->second, x};
          if (marked[static_cast<std::size_t>(d - 1)].insert(arc).second) {
            moved[static_cast<std::size_t>(k - 1)].push_back(arc);
          }
          x = it->second;
        }
      }
    }
  }
  Schedule s;
  s.period = period;
  for (std::int64_t k = 1; k <= period; ++k) {
    const auto& arcs = moved[static_cast<std::size_t>(k - 1)];
    std::map<Index, std::vector<Index>> adj;
    for (const auto& [a, b] : arcs) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<bool> seen(instance.size(), false);
    std::vector<VertexId> day;
    std::function<void(Index)> walk = [&](Index v) {
      seen[v] = true;
      if (v != depot && k % instance.turnover(v) == 0) {
        day.push_back(instance.id_of(v));
      }
      for (Index w : adj[v]) {
        if (!seen[w]) {
          walk(w);
        }
      }
    };
    walk(depot);
    for (Index c : instance.clients()) {
      if (!seen[c] && k % instance.turnover(c) == 0) {
        day.push_back(instance.id_of(c));
      }
    }
    s.days.push_back(std::move(day));
  }
  return s;
}

bool is_synchronized(const Instance& instance, const Schedule& schedule) {
  for (std::int64_t d = 1; d <= schedule.period; ++d) {
    std::vector<VertexId> got;
    for (VertexId id : schedule.days[static_cast<std::size_t>(d - 1)]) {
      if (id != instance.depot()) {
        got.push_back(id);
      }
    }
    std::vector<VertexId> want;
    for (Index c : instance.clients()) {
      const Turnover t = instance.turnover(c);
      if (!is_pow2(t)) {
        return false;
      }
      if (d % t == 0) {
        want.push_back(instance.id_of(c));
      }
    }
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    if (got != want) {
      return false;
    }
  }
  return true;
}

} // namespace rftt
