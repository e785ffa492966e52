#include "rftt/routing.h"

#include <algorithm>
#include <limits>

#include "rftt/schedule.h"

namespace rftt {

namespace {

std::vector<Index> distinct_clients(const std::vector<Index>& clients, Index depot) {
  std::vector<Index> out;
  for (Index c : clients) {
    if (c != depot && std::find(out.begin(), out.end(), c) == out.end()) {
      out.push_back(c);
    }
  }
  return out;
}

} // namespace

ScaledMatrix scaled_submatrix(const DistanceMatrix& dist, const std::vector<Index>& vertices) {
  ScaledMatrix m;
  m.vertices = vertices;
  const std::size_t n = vertices.size();
  std::vector<Rational> values;
  values.reserve(n * n);
  for (Index a : vertices) {
    for (Index b : vertices) {
      values.push_back(dist(a, b));
    }
  }
  try {
    m.scale = common_denominator(values.data(), values.data() + values.size());
    // Tours sum at most n + 1 entries; keep a wide margin below int64.
    const Rational limit(std::numeric_limits<std::int64_t>::max() / 64 /
                         static_cast<std::int64_t>(n + 1));
    m.d.reserve(n * n);
    for (const auto& v : values) {
      Rational scaled = v * Rational(m.scale);
      if (scaled > limit) {
        throw std::overflow_error("scaled distance too large");
      }
      m.d.push_back(scaled.num_i64());
    }
  } catch (const std::overflow_error&) {
    throw SizeGuardError("distances cannot be scaled to 64-bit integers");
  }
  return m;
}

SubsetTsp::SubsetTsp(ScaledMatrix matrix) : m_(std::move(matrix)), k_(m_.vertices.size() - 1) {
  if (k_ > tsp_exact_limit) {
    throw SizeGuardError("exact TSP limited to " + std::to_string(tsp_exact_limit) +
                         " clients, got " + std::to_string(k_));
  }
  const std::uint32_t full = std::uint32_t{1} << k_;
  constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max();
  best_.assign(full, 0);
  if (k_ == 0) {
    return;
  }
  dp_.assign(static_cast<std::size_t>(full) * k_, inf);
  parent_.assign(static_cast<std::size_t>(full) * k_, 0xff);
  for (std::size_t j = 0; j < k_; ++j) {
    dp(std::uint32_t{1} << j, j) = m_(0, j + 1);
  }
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    std::int64_t best = inf;
    for (std::size_t j = 0; j < k_; ++j) {
      if (!(mask & (std::uint32_t{1} << j))) {
        continue;
      }
      const std::int64_t here = dp(mask, j);
      if (here == inf) {
        continue;
      }
      best = std::min(best, here + m_(j + 1, 0));
      for (std::size_t t = 0; t < k_; ++t) {
        const std::uint32_t bit = std::uint32_t{1} << t;
        if (mask & bit) {
          continue;
        }
        const std::int64_t cand = here + m_(j + 1, t + 1);
        if (cand < dp(mask | bit, t)) {
          dp(mask | bit, t) = cand;
          parent_[static_cast<std::size_t>(mask | bit) * k_ + t] = static_cast<std::uint8_t>(j);
        }
      }
    }
    best_[mask] = best;
  }
}

std::int64_t SubsetTsp::cost(std::uint32_t mask) const { return best_[mask]; }

std::vector<std::size_t> SubsetTsp::order(std::uint32_t mask) const {
  std::vector<std::size_t> out;
  if (mask == 0) {
    return out;
  }
  std::size_t last = k_;
  for (std::size_t j = 0; j < k_; ++j) {
    if ((mask & (std::uint32_t{1} << j)) && dp(mask, j) + m_(j + 1, 0) == best_[mask]) {
      last = j;
      break;
    }
  }
  while (mask != 0) {
    out.push_back(last + 1);
    const std::uint8_t p = parent_[static_cast<std::size_t>(mask) * k_ + last];
    mask &= ~(std::uint32_t{1} << last);
    last = p;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Tour tsp_exact(const std::vector<Index>& clients, const DistanceMatrix& dist, Index depot) {
  std::vector<Index> vs{depot};
  for (Index c : distinct_clients(clients, depot)) {
    vs.push_back(c);
  }
  if (vs.size() - 1 > tsp_exact_limit) {
    throw SizeGuardError("exact TSP limited to " + std::to_string(tsp_exact_limit) + " clients");
  }
  SubsetTsp solver(scaled_submatrix(dist, vs));
  const std::uint32_t full = (std::uint32_t{1} << (vs.size() - 1)) - 1;
  Tour t;
  for (std::size_t pos : solver.order(full)) {
    t.order.push_back(vs[pos]);
  }
  t.cost = route_cost(dist, depot, t.order);
  return t;
}

SpanningTree minimum_spanning_tree(const std::vector<Index>& vertices, const DistanceMatrix& dist) {
  SpanningTree tree;
  tree.cost = Rational(0);
  const std::size_t n = vertices.size();
  if (n == 0) {
    return tree;
  }
  std::vector<bool> in(n, false);
  std::vector<std::optional<Rational>> key(n);
  std::vector<std::size_t> from(n, 0);
  key[0] = Rational(0);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in[i] && key[i] && (pick == n || *key[i] < *key[pick])) {
        pick = i;
      }
    }
    in[pick] = true;
    if (step > 0) {
      tree.edges.emplace_back(vertices[from[pick]], vertices[pick]);
      tree.cost += *key[pick];
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (in[i]) {
        continue;
      }
      const Rational& w = dist(vertices[pick], vertices[i]);
      if (!key[i] || w < *key[i]) {
        key[i] = w;
        from[i] = pick;
      }
    }
  }
  return tree;
}

Tour tsp_double_tree(const std::vector<Index>& clients, const DistanceMatrix& dist, Index depot) {
  std::vector<Index> vs{depot};
  for (Index c : distinct_clients(clients, depot)) {
    vs.push_back(c);
  }
  const SpanningTree mst = minimum_spanning_tree(vs, dist);
  // Children keep the order in which Prim attached them.
  std::vector<std::pair<Index, std::vector<Index>>> kids;
  auto children_of = [&](Index v) -> std::vector<Index>& {
    for (auto& [p, c] : kids) {
      if (p == v) {
        return c;
      }
    }
    kids.emplace_back(v, std::vector<Index>{});
    return kids.back().second;
  };
  for (const auto& [p, c] : mst.edges) {
    children_of(p).push_back(c);
  }
  Tour t;
  std::vector<Index> stack{depot};
  while (!stack.empty()) {
    Index v = stack.back();
    stack.pop_back();
    if (v != depot) {
      t.order.push_back(v);
    }
    const auto& c = children_of(v);
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      stack.push_back(*it);
    }
  }
  t.cost = route_cost(dist, depot, t.order);
  return t;
}

Rational split_bound(const Tour& tour, std::int64_t k, const DistanceMatrix& dist, Index depot) {
  Rational dmax(0);
  for (Index v : tour.order) {
    dmax = max(dmax, dist(depot, v));
  }
  return tour.cost / Rational(k) + Rational(2) * dmax;
}

std::vector<Tour> split_tour(const Tour& tour, std::int64_t k, const DistanceMatrix& dist,
                             Index depot) {
  if (k < 1) {
    throw InputError("split_tour needs k >= 1");
  }
  std::vector<Tour> out(static_cast<std::size_t>(k));
  for (auto& t : out) {
    t.cost = Rational(0);
  }
  if (k == 1) {
    out[0] = tour;
    return out;
  }
  std::vector<Index> stops;
  for (Index v : tour.order) {
    if (v != depot) {
      stops.push_back(v);
    }
  }
  if (static_cast<std::int64_t>(stops.size()) <= k) {
    for (std::size_t i = 0; i < stops.size(); ++i) {
      out[i].order = {stops[i]};
      out[i].cost = route_cost(dist, depot, out[i].order);
    }
    return out;
  }
  // Stop at tour position P goes to piece ceil(P * k / L) - 1 (P = 0 -> 0),
  // so each piece spans less than L / k of the original tour.
  Rational along(0);
  Index at = depot;
  for (Index v : tour.order) {
    along += dist(at, v);
    at = v;
    if (v == depot) {
      continue;
    }
    std::size_t piece = 0;
    if (!along.is_zero() && !tour.cost.is_zero()) {
      Rational x = along * Rational(k) / tour.cost;
      // ceil(x) - 1 for positive x
      Rational fl(x.num_i64() / x.den_i64());
      std::int64_t c = x.is_integer() ? x.num_i64() : fl.num_i64() + 1;
      piece = static_cast<std::size_t>(std::clamp<std::int64_t>(c - 1, 0, k - 1));
    }
    out[piece].order.push_back(v);
  }
  for (auto& t : out) {
    t.cost = route_cost(dist, depot, t.order);
  }
  return out;
}

} // namespace rftt
