#include "doctest.h"

#include "helpers.h"
#include "rftt/generators.h"
#include "rftt/oracle.h"

using namespace rftt;

namespace {

// Independent pinwheel check: one job per day over a given period, by
// trying every assignment of jobs to days.
// Cyclic backtracking over every length up to the product of the periods,
// which bounds the number of countdown states.
bool cyclic_search(const std::vector<std::int64_t>& p, std::vector<int>& day, std::size_t t) {
  const std::int64_t len = static_cast<std::int64_t>(day.size());
  if (t == day.size()) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      for (std::int64_t s = 0; s < len; ++s) {
        bool hit = false;
        for (std::int64_t u = s; u < s + p[j]; ++u) {
          hit = hit || day[static_cast<std::size_t>(u % len)] == static_cast<int>(j);
        }
        if (!hit) {
          return false;
        }
      }
    }
    return true;
  }
  for (std::size_t c = 0; c < p.size(); ++c) {
    day[t] = static_cast<int>(c);
    bool ok = true;
    for (std::size_t j = 0; j < p.size() && ok; ++j) {
      const std::int64_t end = static_cast<std::int64_t>(t) + 1;
      if (end < p[j]) {
        continue;
      }
      bool hit = false;
      for (std::int64_t u = end - p[j]; u < end; ++u) {
        hit = hit || day[static_cast<std::size_t>(u)] == static_cast<int>(j);
      }
      ok = hit;
    }
    if (ok && cyclic_search(p, day, t + 1)) {
      return true;
    }
  }
  return false;
}

bool pinwheel_by_enumeration(const std::vector<std::int64_t>& p) {
  std::int64_t bound = 1;
  for (std::int64_t x : p) {
    bound *= x;
  }
  for (std::int64_t len = 1; len <= bound; ++len) {
    std::vector<int> day(static_cast<std::size_t>(len), -1);
    if (cyclic_search(p, day, 0)) {
      return true;
    }
  }
  return false;
}

} // namespace

TEST_CASE("exact MIN-AVG examples") {
  const OracleResult a = exact_minavg(test::unit_star({2, 2}));
  CHECK(a.value == Rational(2));
  CHECK(verify(test::unit_star({2, 2}), a.schedule).feasible);
  CHECK(evaluate(test::unit_star({2, 2}), a.schedule).avg == a.value);

  CHECK(exact_minavg(test::unit_star({1})).value == Rational(2));

  const Instance sp = gen_pinwheel({2, 4, 4}, PinwheelShape::series_parallel);
  const OracleResult b = exact_minavg(sp);
  CHECK(b.value == Rational(6));
  CHECK(verify(sp, b.schedule).feasible);
  CHECK(evaluate(sp, b.schedule).avg == Rational(6));

  CHECK(exact_minavg(Instance("d", {{0, std::nullopt}}, 0, {})).value == Rational(0));
}

TEST_CASE("exact MIN-MAX examples") {
  const Instance a = gen_pinwheel({2, 4, 4}, PinwheelShape::star);
  const OracleResult ra = exact_minmax(a);
  CHECK(ra.value == Rational(2));
  CHECK(verify(a, ra.schedule).feasible);
  CHECK(evaluate(a, ra.schedule).max == Rational(2));

  CHECK(exact_minmax(gen_pinwheel({2, 3, 6}, PinwheelShape::star)).value == Rational(4));

  const Instance p = gen_partition_star({5, 5, 6, 5, 5, 6}, 2);
  const OracleResult rp = exact_minmax(p);
  CHECK(rp.value == Rational(32));
  CHECK(evaluate(p, rp.schedule).max == Rational(32));
  CHECK(exact_minmax(gen_partition_star({5, 5, 5, 7, 5, 5}, 2)).value == Rational(34));
}

TEST_CASE("oracle witnesses are optimal against brute-force cycles") {
  // Every cyclic plan of period up to 4 on a 2-leaf star; the oracle must
  // not be beaten by any of them.
  const Instance s = test::star({1, 3}, {2, 3});
  const Rational best_avg = exact_minavg(s).value;
  const Rational best_max = exact_minmax(s).value;
  for (std::int64_t period = 1; period <= 6; ++period) {
    std::int64_t plans = 1;
    for (std::int64_t d = 0; d < period; ++d) {
      plans *= 4;
    }
    for (std::int64_t code = 0; code < plans; ++code) {
      Schedule sch{period, {}};
      std::int64_t c = code;
      for (std::int64_t d = 0; d < period; ++d) {
        std::vector<VertexId> day;
        if (c & 1) {
          day.push_back(1);
        }
        if (c & 2) {
          day.push_back(2);
        }
        c /= 4;
        sch.days.push_back(day);
      }
      if (verify(s, sch).feasible) {
        const Evaluation ev = evaluate(s, sch);
        CHECK(best_avg <= ev.avg);
        CHECK(best_max <= ev.max);
      }
    }
  }
}

TEST_CASE("size guards") {
  CHECK_THROWS_AS(exact_minavg(test::unit_star(std::vector<Turnover>(13, 1))), SizeGuardError);
  CHECK_THROWS_AS(exact_minavg(test::unit_star({200, 200, 200})), SizeGuardError);
  CHECK_THROWS_AS(pinwheel_feasible({1000, 1000, 1000}), SizeGuardError);
}

TEST_CASE("pinwheel decisions") {
  const PinwheelResult a = pinwheel_feasible({2, 4, 4});
  CHECK(a.feasible);
  CHECK_FALSE(pinwheel_feasible({2, 3, 6}).feasible);
  const PinwheelResult b = pinwheel_feasible({4, 4, 4, 4});
  CHECK(b.feasible);
  CHECK(b.witness.size() == 4);
  CHECK_THROWS_AS(pinwheel_feasible({}), InputError);
}

TEST_CASE("pinwheel agrees with enumeration") {
  const std::vector<std::vector<std::int64_t>> lists{
    {2, 2}, {2, 3}, {3, 3, 3}, {2, 4, 4}, {2, 3, 6}, {2, 4, 5}, {3, 3, 4}, {2, 5, 5}, {3, 4, 5}};
  for (const auto& p : lists) {
    CAPTURE(p.size());
    const PinwheelResult r = pinwheel_feasible(p);
    CHECK(r.feasible == pinwheel_by_enumeration(p));
    if (r.feasible) {
      const std::int64_t n = static_cast<std::int64_t>(r.witness.size());
      for (std::size_t j = 0; j < p.size(); ++j) {
        for (std::int64_t t = 0; t < n; ++t) {
          bool hit = false;
          for (std::int64_t s = t; s < t + p[j]; ++s) {
            hit = hit || r.witness[static_cast<std::size_t>(s % n)] == static_cast<int>(j);
          }
          CHECK(hit);
        }
      }
    }
  }
}

TEST_CASE("low density period lists are schedulable") {
  for (std::int64_t a = 2; a <= 8; ++a) {
    for (std::int64_t b = a; b <= 8; ++b) {
      for (std::int64_t c = b; c <= 8; ++c) {
        if (2 * (a * b + b * c + a * c) <= a * b * c) {
          CHECK(pinwheel_feasible({a, b, c}).feasible);
        }
      }
    }
  }
}
