#include "rftt/generators.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace rftt {

namespace {

// Rejection sampling keeps the stream identical across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) {
      return static_cast<std::int64_t>(engine_());
    }
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

private:
  std::mt19937_64 engine_;
};

std::int64_t param(const GenSpec& spec, const std::string& key, std::int64_t fallback) {
  auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

std::vector<Vertex> depot_and_clients(std::int64_t n) {
  std::vector<Vertex> vs{{0, std::nullopt}};
  for (std::int64_t c = 1; c <= n; ++c) {
    vs.push_back({c, 1});
  }
  return vs;
}

std::string spec_name(const GenSpec& spec) {
  std::string name = spec.family;
  for (const auto& [k, v] : spec.params) {
    name += "-" + k + std::to_string(v);
  }
  return name + "-s" + std::to_string(spec.seed);
}

} // namespace

Instance gen_random(const GenSpec& spec) {
  const std::int64_t n = param(spec, "n", 8);
  const std::int64_t max_w = param(spec, "max_weight", 10);
  const std::int64_t max_t = param(spec, "max_turnover", 8);
  if (n < 1 || max_w < 1 || max_t < 1) {
    throw InputError("random generators need n, max_weight and max_turnover >= 1");
  }
  if (n > 100000) {
    throw SizeGuardError("n = " + std::to_string(n) + " is too large");
  }
  Rng rng(spec.seed);
  std::vector<Vertex> vs = depot_and_clients(n);
  for (std::int64_t c = 1; c <= n; ++c) {
    vs[static_cast<std::size_t>(c)].turnover = rng.uniform(1, max_t);
  }
  std::vector<Edge> edges;
  auto weight = [&] { return Rational(rng.uniform(1, max_w)); };
  const std::string& f = spec.family;
  if (f == "random_star") {
    for (std::int64_t c = 1; c <= n; ++c) {
      edges.push_back({0, c, weight()});
    }
  } else if (f == "random_line") {
    std::vector<std::int64_t> path(static_cast<std::size_t>(n));
    std::iota(path.begin(), path.end(), 1);
    const auto at = rng.uniform(0, n);
    path.insert(path.begin() + at, 0);
    for (std::size_t i = 1; i < path.size(); ++i) {
      edges.push_back({path[i - 1], path[i], weight()});
    }
  } else if (f == "random_tree" || f == "random_general") {
    std::set<std::pair<std::int64_t, std::int64_t>> used;
    for (std::int64_t c = 1; c <= n; ++c) {
      const std::int64_t p = rng.uniform(0, c - 1);
      edges.push_back({p, c, weight()});
      used.emplace(p, c);
    }
    if (f == "random_general") {
      const std::int64_t extra = param(spec, "extra", std::max<std::int64_t>(1, n / 2));
      const std::int64_t possible = n * (n + 1) / 2 - n;
      const std::int64_t target = std::min(extra, possible);
      std::int64_t added = 0;
      while (added < target) {
        std::int64_t a = rng.uniform(0, n);
        std::int64_t b = rng.uniform(0, n);
        if (a == b) {
          continue;
        }
        if (a > b) {
          std::swap(a, b);
        }
        if (used.emplace(a, b).second) {
          edges.push_back({a, b, weight()});
          ++added;
        }
      }
    }
  } else {
    throw InputError("unknown random family '" + f + "'");
  }
  return Instance(spec_name(spec), std::move(vs), 0, std::move(edges));
}

Instance gen_pinwheel(const std::vector<std::int64_t>& periods, PinwheelShape shape) {
  if (periods.empty()) {
    throw InputError("empty period list");
  }
  for (std::int64_t p : periods) {
    if (p < 1) {
      throw InputError("period " + std::to_string(p) + " is not positive");
    }
  }
  const auto k = static_cast<std::int64_t>(periods.size());
  std::string name = shape == PinwheelShape::star ? "pinwheel-star" : "pinwheel-sp";
  for (std::int64_t p : periods) {
    name += "-" + std::to_string(p);
  }
  std::vector<Vertex> vs{{0, std::nullopt}};
  std::vector<Edge> edges;
  if (shape == PinwheelShape::star) {
    for (std::int64_t j = 0; j < k; ++j) {
      vs.push_back({j + 1, periods[static_cast<std::size_t>(j)]});
      edges.push_back({0, j + 1, Rational(1)});
    }
    return Instance(name, std::move(vs), 0, std::move(edges));
  }
  // s = 0, w1 = 1, w = 2, w2 = 3, then the two job copies.
  vs.push_back({1, 1});
  vs.push_back({2, 1});
  vs.push_back({3, 1});
  for (int side = 0; side < 2; ++side) {
    const std::int64_t hub = side == 0 ? 1 : 3;
    for (std::int64_t j = 0; j < k; ++j) {
      const std::int64_t id = 4 + side * k + j;
      vs.push_back({id, periods[static_cast<std::size_t>(j)]});
      edges.push_back({0, id, Rational(1)});
      edges.push_back({hub, id, Rational(1)});
    }
  }
  edges.push_back({1, 2, Rational(1)});
  edges.push_back({3, 2, Rational(1)});
  return Instance(name, std::move(vs), 0, std::move(edges));
}

Instance gen_partition_star(const std::vector<std::int64_t>& integers, std::int64_t m) {
  if (m < 1) {
    throw InputError("m must be positive");
  }
  if (static_cast<std::int64_t>(integers.size()) != 3 * m) {
    throw InputError("expected " + std::to_string(3 * m) + " integers, got " +
                     std::to_string(integers.size()));
  }
  const std::int64_t sum = std::accumulate(integers.begin(), integers.end(), std::int64_t{0});
  if (sum % m != 0) {
    throw InputError("sum " + std::to_string(sum) + " is not divisible by m");
  }
  const std::int64_t b = sum / m;
  std::vector<Vertex> vs{{0, std::nullopt}};
  std::vector<Edge> edges;
  std::string name = "partition-star-m" + std::to_string(m);
  for (std::size_t i = 0; i < integers.size(); ++i) {
    const std::int64_t a = integers[i];
    if (!(4 * a > b && 2 * a < b)) {
      throw InputError("integer " + std::to_string(a) + " is outside (B/4, B/2) for B = " +
                       std::to_string(b));
    }
    const auto id = static_cast<std::int64_t>(i) + 1;
    vs.push_back({id, m});
    edges.push_back({0, id, Rational(a)});
    name += "-" + std::to_string(a);
  }
  return Instance(name, std::move(vs), 0, std::move(edges));
}

std::vector<std::int64_t> gi_sequence(int i) {
  std::vector<std::int64_t> a{1};
  for (int level = 0; level < i; ++level) {
    const std::int64_t half = static_cast<std::int64_t>(a.size());
    std::vector<std::int64_t> next;
    for (std::int64_t k = 0; k < half; ++k) {
      next.push_back(a[static_cast<std::size_t>(k)]);
      next.push_back(half + k + 1);
    }
    a = std::move(next);
  }
  return a;
}

Instance gen_gi(int i) {
  if (i < 0 || i > gi_max) {
    throw SizeGuardError("G_i needs 0 <= i <= " + std::to_string(gi_max));
  }
  const auto a = gi_sequence(i);
  std::vector<Vertex> vs{{0, std::nullopt}};
  std::vector<Edge> edges;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const auto id = static_cast<std::int64_t>(j) + 1;
    vs.push_back({id, std::int64_t{1} << (a[j] - 1)});
    edges.push_back({id == 1 ? 0 : id - 1, id, Rational(id == 1 ? 0 : 1)});
  }
  return Instance("G" + std::to_string(i), std::move(vs), 0, std::move(edges));
}

namespace {

struct Layers {
  std::vector<std::int64_t> size;
  std::vector<std::int64_t> offset; // id of copy 0
};

Layers hi_layers(int i) {
  if (i < 1 || i > hi_max) {
    throw SizeGuardError("H_i needs 1 <= i <= " + std::to_string(hi_max));
  }
  Layers l;
  std::int64_t next = 0;
  for (std::int64_t a : gi_sequence(i)) {
    l.size.push_back(std::int64_t{1} << (a - 1));
    l.offset.push_back(next);
    next += l.size.back();
  }
  return l;
}

} // namespace

Instance gen_hi(int i) {
  const Layers l = hi_layers(i);
  std::vector<Vertex> vs;
  std::vector<Edge> edges;
  for (std::size_t j = 0; j < l.size.size(); ++j) {
    for (std::int64_t r = 0; r < l.size[j]; ++r) {
      const std::int64_t id = l.offset[j] + r;
      vs.push_back({id, j == 0 ? std::nullopt : std::optional<Turnover>(l.size[j])});
    }
    if (j == 0) {
      continue;
    }
    const std::int64_t p = l.size[j - 1];
    const std::int64_t q = l.size[j];
    const std::int64_t g = std::min(p, q);
    for (std::int64_t r = 0; r < p; ++r) {
      for (std::int64_t s = r % g; s < q; s += g) {
        edges.push_back({l.offset[j - 1] + r, l.offset[j] + s, Rational(1)});
      }
    }
  }
  return Instance("H" + std::to_string(i), std::move(vs), 0, std::move(edges));
}

Schedule hi_rotating_schedule(int i) {
  const Layers l = hi_layers(i);
  Schedule s;
  s.period = *std::max_element(l.size.begin(), l.size.end());
  for (std::int64_t d = 1; d <= s.period; ++d) {
    std::vector<VertexId> day;
    for (std::size_t j = 1; j < l.size.size(); ++j) {
      day.push_back(l.offset[j] + d % l.size[j]);
    }
    s.days.push_back(std::move(day));
  }
  return s;
}

Instance generate(const GenSpec& spec) {
  const std::string& f = spec.family;
  if (f.rfind("random_", 0) == 0) {
    return gen_random(spec);
  }
  if (f == "pinwheel_star" || f == "pinwheel_sp") {
    return gen_pinwheel(spec.values,
                        f == "pinwheel_star" ? PinwheelShape::star : PinwheelShape::series_parallel);
  }
  if (f == "partition_star") {
    return gen_partition_star(spec.values, param(spec, "m", 0));
  }
  if (f == "gi") {
    return gen_gi(static_cast<int>(param(spec, "i", -1)));
  }
  if (f == "hi") {
    return gen_hi(static_cast<int>(param(spec, "i", -1)));
  }
  throw InputError("unknown generator family '" + f + "'");
}

} // namespace rftt
