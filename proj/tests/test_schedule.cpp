#include "doctest.h"

#include <random>

#include "helpers.h"
#include "rftt/schedule.h"

using namespace rftt;

TEST_CASE("verify on the unit star") {
  const Instance s = test::unit_star({2, 2});
  CHECK(verify(s, Schedule{2, {{1, 2}, {}}}).feasible);

  const FeasibilityReport r = verify(s, Schedule{2, {{1}, {}}});
  CHECK_FALSE(r.feasible);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].vertex == 2);
  CHECK(r.violations[0].kind == ViolationKind::never_visited);
  CHECK(r.violations[0].description().find("never visited") != std::string::npos);

  const FeasibilityReport g = verify(test::unit_star({1}), Schedule{2, {{1}, {}}});
  CHECK_FALSE(g.feasible);
  REQUIRE(g.violations.size() == 1);
  CHECK(g.violations[0].kind == ViolationKind::gap);
  CHECK(g.violations[0].gap == 2);
}

TEST_CASE("verify rejects malformed schedules") {
  const Instance s = test::unit_star({2});
  CHECK_THROWS_AS(verify(s, Schedule{2, {{1}}}), InputError);
  CHECK_THROWS_AS(verify(s, Schedule{1, {{9}}}), InputError);
  CHECK_THROWS_AS(verify(s, Schedule{0, {}}), InputError);
  CHECK_THROWS_AS(verify(s, CompactSchedule{{{2, 2, {1}}}}), InputError);
}

TEST_CASE("evaluate") {
  const Instance s = test::unit_star({2, 2});
  const Evaluation ev = evaluate(s, Schedule{2, {{1, 2}, {}}});
  CHECK(ev.per_day == std::vector<Rational>{Rational(4), Rational(0)});
  CHECK(ev.avg == Rational(2));
  CHECK(ev.max == Rational(4));

  const Instance lone("d", {{0, std::nullopt}}, 0, {});
  const Evaluation zero = evaluate(lone, Schedule{1, {{}}});
  CHECK(zero.avg == Rational(0));
  CHECK(zero.max == Rational(0));

  // A depot stop inside a day splits it into two round trips.
  const Evaluation two = evaluate(s, Schedule{1, {{1, 0, 2}}});
  CHECK(two.avg == Rational(4));
}

TEST_CASE("compact schedules expand consistently") {
  const Instance s = test::unit_star({2, 4, 4});
  const CompactSchedule c{{{0, 2, {1}}, {1, 4, {2}}, {3, 4, {3}}}};
  CHECK(period_of(c) == 4);
  const Schedule e = expand(c);
  REQUIRE(e.days.size() == 4);
  CHECK(e.days[0] == std::vector<VertexId>{2});
  CHECK(e.days[1] == std::vector<VertexId>{1});
  CHECK(e.days[2] == std::vector<VertexId>{3});
  CHECK(e.days[3] == std::vector<VertexId>{1});
  CHECK(verify(s, c).feasible == verify(s, e).feasible);
  CHECK(verify(s, c).feasible);
}

TEST_CASE("circular gaps agree with the sliding window condition") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t period = 1 + static_cast<std::int64_t>(rng() % 12);
    const Turnover tau = 1 + static_cast<Turnover>(rng() % 6);
    const Instance s = test::unit_star({tau});
    Schedule sch{period, {}};
    for (std::int64_t d = 0; d < period; ++d) {
      sch.days.push_back(rng() % 3 == 0 ? std::vector<VertexId>{1} : std::vector<VertexId>{});
    }
    // Brute force: every window of tau consecutive days, wrapping around.
    bool windows = true;
    for (std::int64_t t = 0; t < period; ++t) {
      bool hit = false;
      for (std::int64_t k = t; k < t + tau; ++k) {
        hit = hit || !sch.days[static_cast<std::size_t>(k % period)].empty();
      }
      windows = windows && hit;
    }
    CHECK(verify(s, sch).feasible == windows);
  }
}

TEST_CASE("evaluation is rotation invariant") {
  const Instance s = test::star({1, 2, 3}, {3, 3, 3});
  Schedule a{3, {{1}, {2, 3}, {1, 3}}};
  Schedule b{3, {{2, 3}, {1, 3}, {1}}};
  CHECK(evaluate(s, a).avg == evaluate(s, b).avg);
  CHECK(evaluate(s, a).max == evaluate(s, b).max);
}

TEST_CASE("schedule files round-trip") {
  const Schedule s{2, {{1, 2}, {}}};
  const AnySchedule back = parse_schedule(schedule_to_json(s).dump());
  REQUIRE(std::holds_alternative<Schedule>(back));
  CHECK(std::get<Schedule>(back).days == s.days);

  const CompactSchedule c{{{0, 2, {1}}}};
  const AnySchedule cb = parse_schedule(schedule_to_json(c).dump());
  REQUIRE(std::holds_alternative<CompactSchedule>(cb));
  CHECK(std::get<CompactSchedule>(cb).classes[0].modulus == 2);
  CHECK_THROWS_AS(parse_schedule("[1,2"), InputError);
}
