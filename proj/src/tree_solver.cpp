#include "rftt/tree_solver.h"

#include <algorithm>
#include <chrono>
#include <set>

#include "rftt/general_solver.h"

namespace rftt {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct EulerStep {
  Index child; // edge id
  bool down;
};

std::vector<EulerStep> euler_sequence(const RootedTree& tree) {
  std::vector<EulerStep> seq;
  // Explicit stack of (vertex, next child position).
  std::vector<std::pair<Index, std::size_t>> stack{{tree.root, 0}};
  while (!stack.empty()) {
    auto& [v, pos] = stack.back();
    if (pos < tree.children[v].size()) {
      Index c = tree.children[v][pos++];
      seq.push_back({c, true});
      stack.emplace_back(c, 0);
    } else {
      if (v != tree.root) {
        seq.push_back({v, false});
      }
      stack.pop_back();
    }
  }
  return seq;
}

class Recursion {
public:
  Recursion(const Instance& instance, const TTWeightedTree& tt, CongruenceAssignment& out)
    : instance_(instance), tt_(tt), out_(out), seq_(euler_sequence(tt.tree)) {}

  void run() {
    out_.class_of.assign(instance_.size(), std::nullopt);
    call(0, seq_.size(), 0, 1, Rational(0));
  }

private:
  const Rational& weight(Index edge) const { return tt_.tree.parent_weight[edge]; }

  void call(std::size_t lo, std::size_t hi, std::int64_t a, std::int64_t m,
            const Rational& ancestor_f_cost) {
    // Nothing carries tt-weight or turnover above the largest modulus.
    if (lo >= hi || m > out_.max_modulus) {
      return;
    }
    ++out_.call_count;
    const ClassKey key{a, m};

    std::vector<Index> f;
    Rational f_cost(0);
    Rational seq_weight(0);  // sum over steps with q >= m of m * c / q
    Rational above(0);       // sum over steps with q > m of c / q
    for (std::size_t i = lo; i < hi; ++i) {
      const Index e = seq_[i].child;
      const Turnover q = tt_.q[e];
      if (q == m && std::find(f.begin(), f.end(), e) == f.end()) {
        f.push_back(e);
        f_cost += weight(e);
      }
      if (q >= m) {
        seq_weight += Rational(m) * weight(e) / Rational(q);
      }
      if (q > m) {
        above += weight(e) / Rational(q);
      }
    }
    if (!f.empty()) {
      std::sort(f.begin(), f.end());
      out_.f[key] = f;
    }

    std::vector<Index> g;
    auto consider = [&](Index v) {
      if (v == tt_.tree.root || out_.class_of[v] || instance_.turnover(v) != m) {
        return;
      }
      out_.class_of[v] = key;
      g.push_back(v);
    };
    for (std::size_t i = lo; i < hi; ++i) {
      const Index e = seq_[i].child;
      const Index p = *tt_.tree.parent[e];
      if (seq_[i].down) {
        consider(p);
        consider(e);
      } else {
        consider(e);
        consider(p);
      }
    }
    if (!g.empty()) {
      out_.g[key].insert(out_.g[key].end(), g.begin(), g.end());
    }

    if (seq_weight + ancestor_f_cost > out_.lower_bound) {
      ++out_.cost_violations;
    }

    // Largest k in [1, n] with prefix (over positions before k) <= half.
    const Rational half = above / Rational(2);
    std::size_t k = lo;
    Rational prefix(0);
    for (std::size_t i = lo; i < hi; ++i) {
      if (prefix <= half) {
        k = i;
      } else {
        break;
      }
      const Index e = seq_[i].child;
      if (tt_.q[e] > m) {
        prefix += weight(e) / Rational(tt_.q[e]);
      }
    }
    rescue_split_ends(lo, k, hi, a, m);
    const Rational next_cost = ancestor_f_cost + f_cost;
    call(lo, k, a, 2 * m, next_cost);
    call(k + 1, hi, a + m, 2 * m, next_cost);
  }

  Index start_of(std::size_t i) const {
    const Index e = seq_[i].child;
    return seq_[i].down ? *tt_.tree.parent[e] : e;
  }
  Index end_of(std::size_t i) const {
    const Index e = seq_[i].child;
    return seq_[i].down ? e : *tt_.tree.parent[e];
  }

  bool touches(std::size_t lo, std::size_t hi, Index v) const {
    for (std::size_t i = lo; i < hi; ++i) {
      if (start_of(i) == v || end_of(i) == v) {
        return true;
      }
    }
    return false;
  }

  // Dropping the split edge loses its outer endpoint when that edge opens
  // or closes the walk. Such a vertex goes to the side left empty, on its
  // own modulus; the day tours reach it by its root path.
  void rescue_split_ends(std::size_t lo, std::size_t k, std::size_t hi, std::int64_t a,
                         std::int64_t m) {
    auto rescue = [&](Index v, std::int64_t residue) {
      if (v == tt_.tree.root || out_.class_of[v] || touches(lo, k, v) || touches(k + 1, hi, v)) {
        return;
      }
      const ClassKey key{residue, instance_.turnover(v)};
      out_.class_of[v] = key;
      out_.g[key].push_back(v);
      ++out_.rescued;
    };
    if (k == lo) {
      rescue(start_of(k), a);
    }
    if (k + 1 == hi) {
      rescue(end_of(k), a + m);
    }
  }

  const Instance& instance_;
  const TTWeightedTree& tt_;
  CongruenceAssignment& out_;
  std::vector<EulerStep> seq_;
};

std::vector<Index> root_path_edges(const TTWeightedTree& tt, Index v) {
  std::vector<Index> out;
  while (tt.tree.parent[v]) {
    out.push_back(v);
    v = *tt.tree.parent[v];
  }
  return out;
}

} // namespace

TTWeightedTree tt_weights(const Instance& instance) {
  validate(instance);
  TTWeightedTree tt;
  tt.tree = root_tree(instance);
  const std::size_t n = instance.size();
  tt.q.assign(n, 0);
  tt.effective.assign(n, 0);
  tt.depth.assign(n, Rational(0));
  for (auto it = tt.tree.preorder.rbegin(); it != tt.tree.preorder.rend(); ++it) {
    const Index v = *it;
    if (v == tt.tree.root) {
      continue;
    }
    Turnover m = instance.turnover(v);
    for (Index c : tt.tree.children[v]) {
      m = std::min(m, tt.q[c]);
    }
    tt.q[v] = m;
    tt.effective[v] = m;
  }
  for (Index v : tt.tree.preorder) {
    if (tt.tree.parent[v]) {
      tt.depth[v] = tt.depth[*tt.tree.parent[v]] + tt.tree.parent_weight[v];
    }
  }
  return tt;
}

Rational tree_lower_bound(const TTWeightedTree& tt) {
  Rational sum(0);
  for (Index v = 0; v < tt.q.size(); ++v) {
    if (tt.tree.parent[v]) {
      sum += tt.tree.parent_weight[v] / Rational(tt.q[v]);
    }
  }
  return Rational(2) * sum;
}

CongruenceAssignment recurse_tree_schedule(const Instance& instance) {
  const NormalizeResult norm = normalize(instance);
  if (!is_tree(norm.topology)) {
    throw InputError("recurse_tree_schedule needs a tree instance");
  }
  for (Index c : norm.instance.clients()) {
    if (!is_pow2(norm.instance.turnover(c))) {
      throw InputError("turnover " + std::to_string(norm.instance.turnover(c)) + " of vertex " +
                       std::to_string(norm.instance.id_of(c)) + " is not a power of two");
    }
  }
  const TTWeightedTree tt = tt_weights(norm.instance);
  CongruenceAssignment out;
  out.max_modulus = std::max<Turnover>(1, norm.instance.max_turnover());
  out.lower_bound = tree_lower_bound(tt);
  Recursion(norm.instance, tt, out).run();
  return out;
}

std::vector<Index> day_clients(const CongruenceAssignment& assignment, std::int64_t day) {
  std::vector<Index> out;
  for (const auto& [key, vs] : assignment.g) {
    if (day % key.modulus == key.residue) {
      out.insert(out.end(), vs.begin(), vs.end());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<bool> class_tree(const CongruenceAssignment& assignment, const TTWeightedTree& tt,
                             ClassKey key) {
  std::vector<bool> in(tt.q.size(), false);
  auto top = assignment.f.find(key);
  if (top == assignment.f.end()) {
    return in;
  }
  Index best = top->second.front();
  for (Index e : top->second) {
    const Index p = *tt.tree.parent[e];
    const Index pb = *tt.tree.parent[best];
    if (tt.depth[p] < tt.depth[pb]) {
      best = e;
    }
  }
  for (Index e : root_path_edges(tt, *tt.tree.parent[best])) {
    in[e] = true;
  }
  for (const auto& [k, edges] : assignment.f) {
    if (k.modulus <= key.modulus && key.residue % k.modulus == k.residue) {
      for (Index e : edges) {
        in[e] = true;
      }
    }
  }
  return in;
}

DayEdgeSet day_edge_set(const CongruenceAssignment& assignment, const TTWeightedTree& tt,
                        std::int64_t day) {
  DayEdgeSet out;
  std::optional<ClassKey> widest;
  for (const auto& [key, edges] : assignment.f) {
    if (day % key.modulus == key.residue && (!widest || key.modulus > widest->modulus)) {
      widest = key;
    }
  }
  out.edges.assign(tt.q.size(), false);
  if (widest) {
    out.edges = class_tree(assignment, tt, *widest);
  }
  // Vertices reachable from the root through chosen edges.
  std::vector<bool> reached(tt.q.size(), false);
  for (Index v : tt.tree.preorder) {
    reached[v] = !tt.tree.parent[v] || (out.edges[v] && reached[*tt.tree.parent[v]]);
  }
  for (Index v : day_clients(assignment, day)) {
    if (reached[v]) {
      continue;
    }
    ++out.fallback_paths;
    for (Index e : root_path_edges(tt, v)) {
      out.edges[e] = true;
    }
    for (Index u : tt.tree.preorder) {
      reached[u] = !tt.tree.parent[u] || (out.edges[u] && reached[*tt.tree.parent[u]]);
    }
  }
  return out;
}

Tour assemble_day_tour(const CongruenceAssignment& assignment, const TTWeightedTree& tt,
                       std::int64_t day, const DistanceMatrix& dist) {
  const DayEdgeSet edges = day_edge_set(assignment, tt, day);
  std::vector<bool> wanted(tt.q.size(), false);
  for (Index v : day_clients(assignment, day)) {
    wanted[v] = true;
  }
  // Preorder of the root component of the day's edge set, shortcut to the
  // assigned vertices.
  Tour t;
  std::vector<bool> reached(tt.q.size(), false);
  for (Index v : tt.tree.preorder) {
    reached[v] = !tt.tree.parent[v] || (edges.edges[v] && reached[*tt.tree.parent[v]]);
    if (reached[v] && wanted[v]) {
      t.order.push_back(v);
    }
  }
  t.cost = route_cost(dist, tt.tree.root, t.order);
  return t;
}

namespace {

std::vector<VertexId> to_ids(const Instance& instance, const std::vector<Index>& order) {
  std::vector<VertexId> ids;
  ids.reserve(order.size());
  for (Index v : order) {
    ids.push_back(instance.id_of(v));
  }
  return ids;
}

} // namespace

Solution solve_minavg_tree(const Instance& instance) {
  const auto start = Clock::now();
  const NormalizeResult norm = normalize(instance);
  if (!is_tree(norm.topology)) {
    throw InputError("tree2 needs a tree instance");
  }
  const Instance rounded = round_pow2(norm.instance);
  const TTWeightedTree tt = tt_weights(rounded);
  const DistanceMatrix dist = metric_closure(instance);
  const std::int64_t period = std::max<Turnover>(1, rounded.max_turnover());

  Solution sol;
  sol.schedule.period = period;
  for (std::int64_t d = 1; d <= period; ++d) {
    std::vector<Index> order;
    for (Index v : tt.tree.preorder) {
      if (v != tt.tree.root && d % rounded.turnover(v) == 0) {
        order.push_back(v);
      }
    }
    sol.schedule.days.push_back(to_ids(instance, order));
  }
  CompactSchedule compact;
  std::map<Turnover, std::vector<VertexId>> by_modulus;
  for (Index v : tt.tree.preorder) {
    if (v != tt.tree.root) {
      by_modulus[rounded.turnover(v)].push_back(instance.id_of(v));
    }
  }
  for (auto& [m, vs] : by_modulus) {
    compact.classes.push_back({0, m, std::move(vs)});
  }
  sol.compact = std::move(compact);

  sol.report.algorithm = "tree2";
  sol.report.objective = Objective::min_avg;
  fill_costs(instance, dist, sol);
  sol.report.lower_bound = tree_lower_bound(tt_weights(instance));
  sol.report.diagnostics["period"] = period;
  sol.report.runtime_ms = elapsed_ms(start);
  return sol;
}

Solution solve_minmax_tree(const Instance& instance) {
  const auto start = Clock::now();
  const NormalizeResult norm = normalize(instance);
  if (!is_tree(norm.topology)) {
    throw InputError("tree6 needs a tree instance");
  }
  const Instance rounded = round_pow2(norm.instance);
  const CongruenceAssignment assignment = recurse_tree_schedule(rounded);
  const TTWeightedTree tt = tt_weights(rounded);
  const DistanceMatrix dist = metric_closure(instance);
  const std::int64_t period = std::max<Turnover>(1, rounded.max_turnover());

  Solution sol;
  sol.schedule.period = period;
  std::int64_t fallback = 0;
  for (std::int64_t d = 1; d <= period; ++d) {
    fallback += day_edge_set(assignment, tt, d).fallback_paths;
    const Tour t = assemble_day_tour(assignment, tt, d, dist);
    sol.schedule.days.push_back(to_ids(instance, t.order));
  }
  CompactSchedule compact;
  for (const auto& [key, vs] : assignment.g) {
    compact.classes.push_back({key.residue, key.modulus, to_ids(instance, vs)});
  }
  sol.compact = std::move(compact);

  sol.report.algorithm = "tree6";
  sol.report.objective = Objective::min_max;
  fill_costs(instance, dist, sol);
  Rational reach(0);
  for (Index c : instance.clients()) {
    reach = max(reach, dist(instance.depot_index(), c));
  }
  sol.report.lower_bound = max(tree_lower_bound(tt_weights(instance)), Rational(2) * reach);
  sol.report.diagnostics["period"] = period;
  sol.report.diagnostics["call_count"] = assignment.call_count;
  sol.report.diagnostics["edge_count"] = static_cast<std::int64_t>(instance.edges().size());
  sol.report.diagnostics["cost_violations"] = assignment.cost_violations;
  sol.report.diagnostics["fallback_paths"] = fallback;
  sol.report.diagnostics["rescued"] = assignment.rescued;
  sol.report.runtime_ms = elapsed_ms(start);
  return sol;
}

} // namespace rftt
