#include "rftt/oracle.h"

#include <algorithm>
#include <bit>
#include <limits>
#include <optional>

#include "rftt/routing.h"

namespace rftt {

namespace {

using i128 = __int128;

// Reachable part of the configuration graph in compressed row form.
struct ConfigGraph {
  std::vector<std::int64_t> first; // edges of state s: [first[s], first[s + 1])
  std::vector<std::int32_t> target;
  std::vector<std::uint32_t> mask;

  std::size_t states() const { return first.size() - 1; }
  std::size_t edges() const { return target.size(); }
};

// Slack r_j is stored as digit r_j - 1 in mixed radix tau_j.
// one_per_day limits visit sets to at most one client.
ConfigGraph build_graph(const std::vector<std::int64_t>& taus, bool one_per_day) {
  const std::size_t k = taus.size();
  std::int64_t space = 1;
  std::vector<std::int64_t> stride(k);
  for (std::size_t j = 0; j < k; ++j) {
    stride[j] = space;
    if (taus[j] > oracle_state_limit || space * taus[j] > oracle_state_limit) {
      throw SizeGuardError("configuration space exceeds " + std::to_string(oracle_state_limit) +
                           " states");
    }
    space *= taus[j];
  }
  std::int64_t fresh = 0;
  for (std::size_t j = 0; j < k; ++j) {
    fresh += stride[j] * (taus[j] - 1);
  }

  std::vector<std::int32_t> id(static_cast<std::size_t>(space), -1);
  std::vector<std::int64_t> code{fresh};
  id[static_cast<std::size_t>(fresh)] = 0;
  ConfigGraph g;
  g.first.push_back(0);
  std::vector<std::int64_t> digit(k);
  for (std::size_t s = 0; s < code.size(); ++s) {
    std::int64_t c = code[s];
    std::uint32_t forced = 0;
    std::int64_t base = 0;
    for (std::size_t j = 0; j < k; ++j) {
      digit[j] = c % taus[j];
      c /= taus[j];
      if (digit[j] == 0) {
        forced |= std::uint32_t{1} << j;
        base += stride[j] * (taus[j] - 1);
      } else {
        base += stride[j] * (digit[j] - 1);
      }
    }
    const std::uint32_t all = k == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << k) - 1);
    const std::uint32_t free = all & ~forced;
    auto add = [&](std::uint32_t visit) {
      std::int64_t next = base;
      for (std::size_t j = 0; j < k; ++j) {
        if ((visit & ~forced) & (std::uint32_t{1} << j)) {
          next += stride[j] * (taus[j] - digit[j]);
        }
      }
      std::int32_t& t = id[static_cast<std::size_t>(next)];
      if (t < 0) {
        t = static_cast<std::int32_t>(code.size());
        code.push_back(next);
      }
      g.target.push_back(t);
      g.mask.push_back(visit);
    };
    if (one_per_day) {
      const int n_forced = std::popcount(forced);
      if (n_forced == 1) {
        add(forced);
      } else if (n_forced == 0) {
        add(0);
        for (std::size_t j = 0; j < k; ++j) {
          add(std::uint32_t{1} << j);
        }
      }
    } else {
      // Every superset of the forced set.
      std::uint32_t sub = free;
      while (true) {
        add(forced | sub);
        if (sub == 0) {
          break;
        }
        sub = (sub - 1) & free;
      }
    }
    if (static_cast<std::int64_t>(g.target.size()) > oracle_edge_limit) {
      throw SizeGuardError("configuration graph exceeds " + std::to_string(oracle_edge_limit) +
                           " transitions");
    }
    g.first.push_back(static_cast<std::int64_t>(g.target.size()));
  }
  return g;
}

// Greatest set of states that can stay inside `allowed` edges forever.
std::vector<bool> surviving(const ConfigGraph& g, const std::vector<bool>& allowed) {
  const std::size_t n = g.states();
  std::vector<std::int64_t> out_count(n, 0);
  std::vector<std::int64_t> rfirst(n + 1, 0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::int64_t e = g.first[s]; e < g.first[s + 1]; ++e) {
      if (allowed[static_cast<std::size_t>(e)]) {
        ++out_count[s];
        ++rfirst[static_cast<std::size_t>(g.target[static_cast<std::size_t>(e)]) + 1];
      }
    }
  }
  for (std::size_t s = 0; s < n; ++s) {
    rfirst[s + 1] += rfirst[s];
  }
  std::vector<std::int32_t> source(static_cast<std::size_t>(rfirst[n]));
  std::vector<std::int64_t> fill(rfirst.begin(), rfirst.end() - 1);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::int64_t e = g.first[s]; e < g.first[s + 1]; ++e) {
      if (allowed[static_cast<std::size_t>(e)]) {
        const auto t = static_cast<std::size_t>(g.target[static_cast<std::size_t>(e)]);
        source[static_cast<std::size_t>(fill[t]++)] = static_cast<std::int32_t>(s);
      }
    }
  }
  std::vector<bool> alive(n, true);
  std::vector<std::size_t> dead;
  for (std::size_t s = 0; s < n; ++s) {
    if (out_count[s] == 0) {
      alive[s] = false;
      dead.push_back(s);
    }
  }
  while (!dead.empty()) {
    const std::size_t t = dead.back();
    dead.pop_back();
    for (std::int64_t i = rfirst[t]; i < rfirst[t + 1]; ++i) {
      const auto s = static_cast<std::size_t>(source[static_cast<std::size_t>(i)]);
      if (alive[s] && --out_count[s] == 0) {
        alive[s] = false;
        dead.push_back(s);
      }
    }
  }
  return alive;
}

// From the fresh state, follow the first surviving allowed edge until a
// state repeats; returns the edge ids of the cycle.
std::vector<std::int64_t> witness_cycle(const ConfigGraph& g, const std::vector<bool>& allowed,
                                        const std::vector<bool>& alive) {
  std::vector<std::int64_t> seen_at(g.states(), -1);
  std::vector<std::int64_t> path;
  std::size_t s = 0;
  while (seen_at[s] < 0) {
    seen_at[s] = static_cast<std::int64_t>(path.size());
    std::optional<std::int64_t> pick;
    for (std::int64_t e = g.first[s]; e < g.first[s + 1]; ++e) {
      const auto t = static_cast<std::size_t>(g.target[static_cast<std::size_t>(e)]);
      if (allowed[static_cast<std::size_t>(e)] && alive[t]) {
        pick = e;
        break;
      }
    }
    path.push_back(*pick);
    s = static_cast<std::size_t>(g.target[static_cast<std::size_t>(*pick)]);
  }
  return {path.begin() + seen_at[s], path.end()};
}

struct Prepared {
  std::vector<Index> clients;
  std::vector<std::int64_t> taus;
  SubsetTsp tsp;
};

Prepared prepare(const Instance& instance) {
  validate(instance);
  std::vector<Index> clients = instance.clients();
  if (clients.size() > oracle_client_limit) {
    throw SizeGuardError("oracle limited to " + std::to_string(oracle_client_limit) +
                         " clients, got " + std::to_string(clients.size()));
  }
  std::vector<std::int64_t> taus;
  for (Index c : clients) {
    taus.push_back(instance.turnover(c));
  }
  std::vector<Index> positions{instance.depot_index()};
  positions.insert(positions.end(), clients.begin(), clients.end());
  return {clients, taus, SubsetTsp(scaled_submatrix(metric_closure(instance), positions))};
}

Schedule cycle_schedule(const Instance& instance, const Prepared& p, const ConfigGraph& g,
                        const std::vector<std::int64_t>& cycle) {
  Schedule s;
  s.period = static_cast<std::int64_t>(cycle.size());
  for (std::int64_t e : cycle) {
    std::vector<VertexId> day;
    for (std::size_t pos : p.tsp.order(g.mask[static_cast<std::size_t>(e)])) {
      day.push_back(instance.id_of(p.clients[pos - 1]));
    }
    s.days.push_back(std::move(day));
  }
  return s;
}

// Exact rational a / b with b > 0, kept in 128 bits.
struct Frac {
  i128 num;
  i128 den;
};

bool less(const Frac& a, const Frac& b) { return a.num * b.den < b.num * a.den; }
bool equal(const Frac& a, const Frac& b) { return a.num * b.den == b.num * a.den; }

// Policy iteration for the minimum cycle mean (Howard's algorithm).
// eta[s] is the mean of the cycle the policy reaches from s; the bias h[s]
// is stored as h[s] * eta_den[s] so every quantity stays integral.
class Howard {
public:
  Howard(const ConfigGraph& g, const std::vector<std::int64_t>& cost) : g_(g), cost_(cost) {}

  std::vector<std::int64_t> solve() {
    const std::size_t n = g_.states();
    policy_.assign(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
      std::int64_t best = g_.first[s];
      for (std::int64_t e = g_.first[s]; e < g_.first[s + 1]; ++e) {
        if (c(e) < c(best)) {
          best = e;
        }
      }
      policy_[s] = best;
    }
    for (int round = 0;; ++round) {
      if (round > 100000) {
        throw std::logic_error("policy iteration did not settle");
      }
      evaluate();
      if (!improve()) {
        break;
      }
    }
    // Cycle of the state with the smallest mean.
    std::size_t best = 0;
    for (std::size_t s = 1; s < n; ++s) {
      if (less(eta_[s], eta_[best])) {
        best = s;
      }
    }
    std::size_t s = best;
    std::vector<bool> seen(n, false);
    while (!seen[s]) {
      seen[s] = true;
      s = next(s);
    }
    std::vector<std::int64_t> cycle;
    const std::size_t start = s;
    do {
      cycle.push_back(policy_[s]);
      s = next(s);
    } while (s != start);
    return cycle;
  }

private:
  std::int64_t c(std::int64_t e) const { return cost_[static_cast<std::size_t>(e)]; }
  std::size_t next(std::size_t s) const {
    return static_cast<std::size_t>(g_.target[static_cast<std::size_t>(policy_[s])]);
  }

  void evaluate() {
    const std::size_t n = g_.states();
    eta_.assign(n, {0, 1});
    h_.assign(n, 0);
    std::vector<int> color(n, 0); // 0 new, 1 on stack, 2 done
    std::vector<std::size_t> stack;
    for (std::size_t root = 0; root < n; ++root) {
      if (color[root]) {
        continue;
      }
      stack.clear();
      std::size_t s = root;
      while (color[s] == 0) {
        color[s] = 1;
        stack.push_back(s);
        s = next(s);
      }
      if (color[s] == 1) {
        // New cycle starting at s.
        i128 sum = 0;
        i128 len = 0;
        std::size_t u = s;
        do {
          sum += c(policy_[u]);
          ++len;
          u = next(u);
        } while (u != s);
        const Frac mean{sum, len};
        // Bias 0 at s, then backwards along the cycle.
        std::vector<std::size_t> cyc;
        u = s;
        do {
          cyc.push_back(u);
          u = next(u);
        } while (u != s);
        eta_[s] = mean;
        h_[s] = 0;
        color[s] = 2;
        for (std::size_t i = cyc.size(); i-- > 1;) {
          const std::size_t v = cyc[i];
          const std::size_t w = next(v);
          eta_[v] = mean;
          h_[v] = c(policy_[v]) * mean.den - mean.num + h_[w];
          color[v] = 2;
        }
      }
      while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        if (color[v] == 2) {
          continue;
        }
        const std::size_t w = next(v);
        eta_[v] = eta_[w];
        h_[v] = c(policy_[v]) * eta_[v].den - eta_[v].num + h_[w];
        color[v] = 2;
      }
    }
  }

  bool improve() {
    bool changed = false;
    const std::size_t n = g_.states();
    for (std::size_t s = 0; s < n; ++s) {
      std::int64_t best = policy_[s];
      Frac best_eta = eta_[s];
      for (std::int64_t e = g_.first[s]; e < g_.first[s + 1]; ++e) {
        const auto t = static_cast<std::size_t>(g_.target[static_cast<std::size_t>(e)]);
        if (less(eta_[t], best_eta)) {
          best_eta = eta_[t];
          best = e;
        }
      }
      if (best != policy_[s]) {
        policy_[s] = best;
        changed = true;
      }
    }
    if (changed) {
      return true;
    }
    for (std::size_t s = 0; s < n; ++s) {
      // Bias through the current choice, as a fraction over eta_[s].den.
      Frac current{h_[s], eta_[s].den};
      std::int64_t best = policy_[s];
      for (std::int64_t e = g_.first[s]; e < g_.first[s + 1]; ++e) {
        const auto t = static_cast<std::size_t>(g_.target[static_cast<std::size_t>(e)]);
        if (!equal(eta_[t], eta_[s])) {
          continue;
        }
        const Frac via{c(e) * eta_[t].den - eta_[t].num + h_[t], eta_[t].den};
        if (less(via, current)) {
          current = via;
          best = e;
        }
      }
      if (best != policy_[s]) {
        policy_[s] = best;
        changed = true;
      }
    }
    return changed;
  }

  const ConfigGraph& g_;
  const std::vector<std::int64_t>& cost_;
  std::vector<std::int64_t> policy_;
  std::vector<Frac> eta_;
  std::vector<i128> h_;
};

std::vector<std::int64_t> edge_costs(const ConfigGraph& g, const SubsetTsp& tsp) {
  std::vector<std::int64_t> cost(g.edges());
  for (std::size_t e = 0; e < g.edges(); ++e) {
    cost[e] = tsp.cost(g.mask[e]);
  }
  return cost;
}

} // namespace

OracleResult exact_minavg(const Instance& instance) {
  const Prepared p = prepare(instance);
  const ConfigGraph g = build_graph(p.taus, false);
  const std::vector<std::int64_t> cost = edge_costs(g, p.tsp);
  const std::vector<std::int64_t> cycle = Howard(g, cost).solve();
  OracleResult out;
  std::int64_t sum = 0;
  for (std::int64_t e : cycle) {
    sum += cost[static_cast<std::size_t>(e)];
  }
  out.value = Rational(sum, p.tsp.matrix().scale * static_cast<std::int64_t>(cycle.size()));
  out.schedule = cycle_schedule(instance, p, g, cycle);
  out.states = static_cast<std::int64_t>(g.states());
  out.edges = static_cast<std::int64_t>(g.edges());
  return out;
}

OracleResult exact_minmax(const Instance& instance) {
  const Prepared p = prepare(instance);
  const ConfigGraph g = build_graph(p.taus, false);
  const std::vector<std::int64_t> cost = edge_costs(g, p.tsp);
  std::vector<std::int64_t> levels = cost;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  auto allowed_at = [&](std::int64_t limit) {
    std::vector<bool> allowed(g.edges());
    for (std::size_t e = 0; e < g.edges(); ++e) {
      allowed[e] = cost[e] <= limit;
    }
    return allowed;
  };
  // The largest level keeps every edge, and the full graph always has a
  // cycle (visit everyone daily).
  std::size_t lo = 0;
  std::size_t hi = levels.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (surviving(g, allowed_at(levels[mid]))[0]) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const std::vector<bool> allowed = allowed_at(levels[lo]);
  const std::vector<bool> alive = surviving(g, allowed);
  const std::vector<std::int64_t> cycle = witness_cycle(g, allowed, alive);
  OracleResult out;
  out.value = Rational(levels[lo], p.tsp.matrix().scale);
  out.schedule = cycle_schedule(instance, p, g, cycle);
  out.states = static_cast<std::int64_t>(g.states());
  out.edges = static_cast<std::int64_t>(g.edges());
  return out;
}

PinwheelResult pinwheel_feasible(const std::vector<std::int64_t>& periods) {
  if (periods.empty()) {
    throw InputError("empty period list");
  }
  for (std::int64_t p : periods) {
    if (p < 1) {
      throw InputError("period " + std::to_string(p) + " is not positive");
    }
  }
  if (periods.size() > 31) {
    throw SizeGuardError("too many periods");
  }
  const ConfigGraph g = build_graph(periods, true);
  const std::vector<bool> allowed(g.edges(), true);
  const std::vector<bool> alive = surviving(g, allowed);
  PinwheelResult out;
  out.states = static_cast<std::int64_t>(g.states());
  out.feasible = alive[0];
  if (!out.feasible) {
    return out;
  }
  for (std::int64_t e : witness_cycle(g, allowed, alive)) {
    const std::uint32_t m = g.mask[static_cast<std::size_t>(e)];
    out.witness.push_back(m == 0 ? -1 : std::countr_zero(m));
  }
  return out;
}

} // namespace rftt
