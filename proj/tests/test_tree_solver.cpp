#include "doctest.h"

#include <bit>

#include "helpers.h"
#include "rftt/generators.h"
#include "rftt/oracle.h"
#include "rftt/tree_solver.h"

using namespace rftt;

TEST_CASE("tt-weights and the lower bound") {
  const TTWeightedTree chain = tt_weights(test::chain({1, 1}, {1, 2}));
  CHECK(chain.q[1] == 1);
  CHECK(chain.q[2] == 2);
  CHECK(tree_lower_bound(chain) == Rational(3));

  CHECK(tree_lower_bound(tt_weights(test::unit_star({2, 3}))) == Rational(5, 3));
  CHECK(tree_lower_bound(tt_weights(test::star({5}, {10}))) == Rational(1));

  // Edge above a subtree holding turnovers {4, 2, 8}.
  Instance t("t", {{0, std::nullopt}, {1, 4}, {2, 2}, {3, 8}}, 0,
             {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {1, 3, Rational(1)}});
  CHECK(tt_weights(t).q[1] == 2);
}

TEST_CASE("recursion on the two-edge chain") {
  const Instance c = test::chain({1, 1}, {1, 2});
  const CongruenceAssignment a = recurse_tree_schedule(c);
  const ClassKey every{0, 1}, even{0, 2}, odd{1, 2};
  CHECK(a.g.at(every) == std::vector<Index>{1});
  CHECK(a.f.at(every) == std::vector<Index>{1});
  CHECK(a.g.at(even) == std::vector<Index>{2});
  CHECK(a.f.at(even) == std::vector<Index>{2});
  CHECK_FALSE(a.g.contains(odd));
  CHECK(a.cost_violations == 0);

  const TTWeightedTree tt = tt_weights(c);
  const DistanceMatrix d = metric_closure(c);
  const Tour even_day = assemble_day_tour(a, tt, 2, d);
  CHECK(even_day.order == std::vector<Index>{1, 2});
  CHECK(even_day.cost == Rational(4));
  const Tour odd_day = assemble_day_tour(a, tt, 1, d);
  CHECK(odd_day.order == std::vector<Index>{1});
  CHECK(odd_day.cost == Rational(2));
}

TEST_CASE("recursion with all turnovers one") {
  const CongruenceAssignment a = recurse_tree_schedule(test::unit_star({1, 1, 1}));
  REQUIRE(a.g.size() == 1);
  CHECK(a.g.begin()->first == ClassKey{0, 1});
  CHECK(a.g.begin()->second.size() == 3);
}

TEST_CASE("idle day gives an idle tour") {
  const Instance c = test::unit_star({4});
  const CongruenceAssignment a = recurse_tree_schedule(c);
  const TTWeightedTree tt = tt_weights(c);
  std::int64_t idle = 0;
  for (std::int64_t d = 1; d <= 4; ++d) {
    idle += assemble_day_tour(a, tt, d, metric_closure(c)).order.empty();
  }
  CHECK(idle == 3);
  CHECK_THROWS_AS(recurse_tree_schedule(test::unit_star({3})), InputError);
}

TEST_CASE("tree MIN-AVG examples") {
  const Solution a = solve_minavg_tree(test::unit_star({2, 3}));
  CHECK(a.report.avg == Rational(2));
  CHECK(a.report.avg <= Rational(2) * Rational(5, 3));

  const Solution b = solve_minavg_tree(test::unit_star({2, 4}));
  CHECK(b.schedule.period == 4);
  CHECK(b.report.avg == Rational(3, 2));
  CHECK(*b.report.lower_bound == Rational(3, 2));

  const Solution c = solve_minavg_tree(test::star({1}, {3}));
  CHECK(c.report.avg == Rational(1));
  CHECK_THROWS_AS(solve_minavg_tree(gen_random({"random_general", {{"n", 6}}, {}, 1})), InputError);
}

TEST_CASE("tree MIN-MAX examples") {
  const Solution a = solve_minmax_tree(test::chain({1, 1}, {1, 2}));
  CHECK(a.report.max == Rational(4));
  CHECK(*a.report.lower_bound == Rational(4));
  CHECK(exact_minmax(test::chain({1, 1}, {1, 2})).value == Rational(4));

  const Solution b = solve_minmax_tree(test::unit_star({1, 1}));
  CHECK(b.report.max == Rational(4));
}

TEST_CASE("tree solvers on random trees") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    CAPTURE(seed);
    GenSpec spec{"random_tree", {{"n", 25}, {"max_turnover", 64}, {"max_weight", 100}}, {}, seed};
    const Instance inst = gen_random(spec);
    const Rational lb = tree_lower_bound(tt_weights(inst));

    const Solution avg = solve_minavg_tree(inst);
    CHECK(verify(inst, avg.schedule).feasible);
    CHECK(avg.report.avg <= Rational(2) * lb);

    const Solution mm = solve_minmax_tree(inst);
    CHECK(verify(inst, mm.schedule).feasible);
    CHECK(mm.report.max <= Rational(6) * *mm.report.lower_bound);
    CHECK(mm.report.diagnostics.at("call_count") <= 2 * mm.report.diagnostics.at("edge_count"));
    CHECK(mm.report.diagnostics.at("cost_violations") == 0);
  }
}

TEST_CASE("every vertex lands in one class of its own modulus") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GenSpec spec{"random_tree", {{"n", 20}, {"max_turnover", 16}}, {}, seed};
    const Instance norm = normalize(gen_random(spec)).instance;
    std::vector<Turnover> t = norm.turnovers();
    for (Index c : norm.clients()) {
      t[c] = Turnover{1} << (std::bit_width(static_cast<std::uint64_t>(t[c])) - 1);
    }
    const Instance rounded = norm.with_turnovers(t);
    const CongruenceAssignment a = recurse_tree_schedule(rounded);
    std::map<Index, int> seen;
    for (const auto& [key, vs] : a.g) {
      CHECK(std::has_single_bit(static_cast<std::uint64_t>(key.modulus)));
      for (Index v : vs) {
        ++seen[v];
        CHECK(rounded.turnover(v) == key.modulus);
      }
    }
    for (Index c : rounded.clients()) {
      CHECK(seen[c] == 1);
    }
  }
}

TEST_CASE("class trees are connected to the root") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenSpec spec{"random_tree", {{"n", 20}, {"max_turnover", 1}}, {}, seed};
    Instance inst = gen_random(spec);
    std::vector<Turnover> t = inst.turnovers();
    for (Index c : inst.clients()) {
      t[c] = Turnover{1} << (c % 4);
    }
    const Instance rounded = normalize(inst.with_turnovers(t)).instance;
    const CongruenceAssignment a = recurse_tree_schedule(rounded);
    const TTWeightedTree tt = tt_weights(rounded);
    for (const auto& [key, edges] : a.f) {
      const std::vector<bool> in = class_tree(a, tt, key);
      for (Index v = 0; v < in.size(); ++v) {
        if (in[v]) {
          // The parent edge of a chosen edge is chosen too, up to the root.
          const Index p = *tt.tree.parent[v];
          CHECK((p == tt.tree.root || in[p]));
        }
      }
    }
  }
}
