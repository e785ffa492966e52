#include "doctest.h"

#include "rftt/generators.h"
#include "rftt/instance_io.h"
#include "rftt/routing.h"

using namespace rftt;

namespace {

std::vector<Turnover> client_turnovers(const Instance& inst) {
  std::vector<Turnover> out;
  for (Index c : inst.clients()) {
    out.push_back(inst.turnover(c));
  }
  return out;
}

} // namespace

TEST_CASE("random generators are deterministic and valid") {
  for (const char* family : {"random_tree", "random_star", "random_line", "random_general"}) {
    CAPTURE(family);
    for (std::uint64_t seed : {1u, 2u, 99u}) {
      GenSpec spec{family, {{"n", 9}, {"max_weight", 100}, {"max_turnover", 64}}, {}, seed};
      const Instance a = gen_random(spec);
      CHECK(dump_instance(a) == dump_instance(gen_random(spec)));
      CHECK_NOTHROW(normalize(a));
      CHECK(a.client_count() == 9);
      for (const Edge& e : a.edges()) {
        CHECK(e.weight >= Rational(1));
        CHECK(e.weight <= Rational(100));
      }
      for (Turnover t : client_turnovers(a)) {
        CHECK(t >= 1);
        CHECK(t <= 64);
      }
    }
  }
  GenSpec one{"random_tree", {{"n", 1}}, {}, 3};
  const Instance single = gen_random(one);
  REQUIRE(single.edges().size() == 1);
  CHECK(single.edges()[0].u == 0);
  CHECK(classify(gen_random({"random_star", {{"n", 5}}, {}, 1})) == Topology::star);
  CHECK(is_line(classify(gen_random({"random_line", {{"n", 5}}, {}, 1}))));
  CHECK(classify(gen_random({"random_general", {{"n", 8}}, {}, 7})) == Topology::general);
  CHECK_THROWS_AS(gen_random({"random_tree", {{"n", 0}}, {}, 1}), InputError);
}

TEST_CASE("pinwheel reductions") {
  const Instance s = gen_pinwheel({2, 4, 4}, PinwheelShape::star);
  CHECK(classify(s) == Topology::star);
  CHECK(client_turnovers(s) == std::vector<Turnover>{2, 4, 4});

  const Instance sp = gen_pinwheel({2, 4, 4}, PinwheelShape::series_parallel);
  CHECK(sp.size() == 10);
  CHECK(sp.edges().size() == 14);
  CHECK_NOTHROW(validate(sp));
  CHECK_THROWS_AS(gen_pinwheel({}, PinwheelShape::star), InputError);
}

TEST_CASE("partition star") {
  const Instance p = gen_partition_star({5, 5, 6, 5, 5, 6}, 2);
  CHECK(p.client_count() == 6);
  CHECK(p.edges()[2].weight == Rational(6));
  CHECK(client_turnovers(p) == std::vector<Turnover>(6, 2));
  CHECK_THROWS_AS(gen_partition_star({1, 1, 1, 1, 1, 7}, 2), InputError);
  CHECK_THROWS_AS(gen_partition_star({5, 5, 6}, 2), InputError);
}

TEST_CASE("G_i turnover sequences") {
  CHECK(gi_sequence(1) == std::vector<std::int64_t>{1, 2});
  CHECK(gi_sequence(2) == std::vector<std::int64_t>{1, 3, 2, 4});
  CHECK(gi_sequence(3) == std::vector<std::int64_t>{1, 5, 3, 6, 2, 7, 4, 8});
  CHECK(client_turnovers(gen_gi(1)) == std::vector<Turnover>{1, 2});
  CHECK(client_turnovers(gen_gi(2)) == std::vector<Turnover>{1, 4, 2, 8});
  CHECK(client_turnovers(gen_gi(3)) == std::vector<Turnover>{1, 16, 4, 32, 2, 64, 8, 128});
  CHECK_THROWS_AS(gen_gi(-1), SizeGuardError);
  CHECK_THROWS_AS(gen_gi(gi_max + 1), SizeGuardError);
}

TEST_CASE("G_i spanning tree costs 2^i - 1") {
  for (int i = 0; i <= 5; ++i) {
    const Instance g = gen_gi(i);
    std::vector<Index> all;
    for (Index v = 0; v < g.size(); ++v) {
      all.push_back(v);
    }
    const SpanningTree mst = minimum_spanning_tree(all, metric_closure(g));
    CHECK(mst.cost == Rational((std::int64_t{1} << i) - 1));
  }
}

TEST_CASE("H_i layered graphs") {
  const Instance h1 = gen_hi(1);
  CHECK(h1.size() == 3);
  CHECK(h1.edges().size() == 2);
  const Instance h2 = gen_hi(2);
  CHECK(h2.size() == 15);
  CHECK(h2.edges().size() == 16);
  CHECK_THROWS_AS(gen_hi(0), SizeGuardError);
  CHECK_THROWS_AS(gen_hi(hi_max + 1), SizeGuardError);
}

TEST_CASE("H_i rotating days lie on depot-rooted paths") {
  for (int i = 1; i <= 3; ++i) {
    const Instance h = gen_hi(i);
    const Schedule s = hi_rotating_schedule(i);
    const std::int64_t edges_per_day = (std::int64_t{1} << i) - 1;
    for (const auto& day : s.days) {
      // Consecutive stops (depot first) must be adjacent in H_i.
      VertexId prev = h.depot();
      for (VertexId v : day) {
        bool adjacent = false;
        for (const Arc& a : h.adjacency()[h.index_of(prev)]) {
          adjacent = adjacent || h.id_of(a.to) == v;
        }
        CHECK(adjacent);
        prev = v;
      }
      CHECK(static_cast<std::int64_t>(day.size()) == edges_per_day);
    }
    CHECK(verify(h, s).feasible);
  }
  const Evaluation ev = evaluate(gen_hi(2), hi_rotating_schedule(2));
  CHECK(ev.avg == Rational(6));
  CHECK(ev.max == Rational(6));
}

TEST_CASE("generate dispatches by family") {
  CHECK(generate({"gi", {{"i", 2}}, {}, 0}).name() == "G2");
  CHECK(generate({"pinwheel_sp", {}, {2, 4, 4}, 0}).size() == 10);
  CHECK(generate({"partition_star", {{"m", 2}}, {5, 5, 6, 5, 5, 6}, 0}).client_count() == 6);
  CHECK_THROWS_AS(generate({"nope", {}, {}, 0}), InputError);
}
