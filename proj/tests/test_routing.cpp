#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "helpers.h"
#include "rftt/generators.h"
#include "rftt/routing.h"
#include "rftt/schedule.h"

using namespace rftt;

namespace {

// Brute force over permutations, independent of the Held-Karp table.
Rational brute_tsp(std::vector<Index> clients, const DistanceMatrix& d, Index depot) {
  std::sort(clients.begin(), clients.end());
  std::optional<Rational> best;
  do {
    const Rational c = route_cost(d, depot, clients);
    if (!best || c < *best) {
      best = c;
    }
  } while (std::next_permutation(clients.begin(), clients.end()));
  return best.value_or(Rational(0));
}

} // namespace

TEST_CASE("exact and double-tree tours on small cases") {
  const Instance s = test::unit_star({1, 1, 1});
  const DistanceMatrix d = metric_closure(s);
  CHECK(tsp_exact({1, 2, 3}, d, 0).cost == Rational(6));
  CHECK(tsp_double_tree({1, 2, 3}, d, 0).cost == Rational(6));

  const Instance one = test::star({3}, {1});
  const DistanceMatrix d1 = metric_closure(one);
  CHECK(tsp_exact({1}, d1, 0).cost == Rational(6));
  CHECK(tsp_double_tree({1}, d1, 0).cost == Rational(6));

  const Tour empty = tsp_exact({}, d, 0);
  CHECK(empty.order.empty());
  CHECK(empty.cost == Rational(0));
}

TEST_CASE("exact tours match brute force; double tree within twice") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    GenSpec spec{"random_general", {{"n", 7}, {"extra", 6}, {"max_weight", 20}}, {}, seed};
    const Instance inst = gen_random(spec);
    const DistanceMatrix d = metric_closure(inst);
    const std::vector<Index> clients = inst.clients();
    const Tour exact = tsp_exact(clients, d, inst.depot_index());
    const Tour approx = tsp_double_tree(clients, d, inst.depot_index());
    CHECK(exact.cost == brute_tsp(clients, d, inst.depot_index()));
    CHECK(exact.cost == route_cost(d, inst.depot_index(), exact.order));
    CHECK(approx.cost == route_cost(d, inst.depot_index(), approx.order));
    CHECK(exact.cost <= approx.cost);
    CHECK(approx.cost <= Rational(2) * exact.cost);
  }
}

TEST_CASE("subset table agrees with single tours") {
  GenSpec spec{"random_general", {{"n", 6}}, {}, 4};
  const Instance inst = gen_random(spec);
  const DistanceMatrix d = metric_closure(inst);
  std::vector<Index> positions{inst.depot_index()};
  for (Index c : inst.clients()) {
    positions.push_back(c);
  }
  const SubsetTsp table(scaled_submatrix(d, positions));
  for (std::uint32_t mask = 0; mask < (1u << 6); ++mask) {
    std::vector<Index> subset;
    for (std::size_t j = 0; j < 6; ++j) {
      if (mask & (1u << j)) {
        subset.push_back(positions[j + 1]);
      }
    }
    CHECK(Rational(table.cost(mask), table.matrix().scale) ==
          tsp_exact(subset, d, inst.depot_index()).cost);
  }
}

TEST_CASE("minimum spanning tree") {
  const Instance s = test::star({1, 2, 3}, {1, 1, 1});
  const SpanningTree t = minimum_spanning_tree({0, 1, 2, 3}, metric_closure(s));
  CHECK(t.cost == Rational(6));
  CHECK(t.edges.size() == 3);
}

TEST_CASE("tour splitting") {
  // s-a-b with unit edges: tour (s, a, b, s) costs 4; on a star it costs 4 too.
  const Instance s = test::unit_star({1, 1});
  const DistanceMatrix d = metric_closure(s);
  const Tour t{{1, 2}, Rational(4)};
  const auto halves = split_tour(t, 2, d, 0);
  REQUIRE(halves.size() == 2);
  CHECK(halves[0].order == std::vector<Index>{1});
  CHECK(halves[1].order == std::vector<Index>{2});
  for (const Tour& h : halves) {
    CHECK(h.cost <= split_bound(t, 2, d, 0));
  }

  const auto same = split_tour(t, 1, d, 0);
  REQUIRE(same.size() == 1);
  CHECK(same[0].order == t.order);

  const auto many = split_tour(t, 4, d, 0);
  REQUIRE(many.size() == 4);
  CHECK(many[0].order == std::vector<Index>{1});
  CHECK(many[1].order == std::vector<Index>{2});
  CHECK(many[2].order.empty());
  CHECK(many[3].order.empty());
}

TEST_CASE("tour splitting partitions the stops within the bound") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenSpec spec{"random_general", {{"n", 12}, {"max_weight", 50}}, {}, seed};
    const Instance inst = gen_random(spec);
    const DistanceMatrix d = metric_closure(inst);
    const Tour t = tsp_double_tree(inst.clients(), d, inst.depot_index());
    for (std::int64_t k = 1; k <= 14; ++k) {
      const auto pieces = split_tour(t, k, d, inst.depot_index());
      REQUIRE(static_cast<std::int64_t>(pieces.size()) == k);
      std::vector<Index> joined;
      for (const Tour& p : pieces) {
        CHECK(p.cost <= split_bound(t, k, d, inst.depot_index()));
        CHECK(p.cost == route_cost(d, inst.depot_index(), p.order));
        joined.insert(joined.end(), p.order.begin(), p.order.end());
      }
      CHECK(joined == t.order);
    }
  }
}
