#include "doctest.h"

#include "rftt/bench.h"

using namespace rftt;

namespace {

const char* small_suite = R"({
  "entries": [
    {"generator": {"family": "random_tree", "n": 6, "max_turnover": 8},
     "count": 10, "seed": 1, "algorithms": ["tree2", "tree6"]},
    {"generator": {"family": "random_star", "n": 4, "max_turnover": 4},
     "seeds": [3, 4], "algorithms": ["classes", "oracle", "line-dp"], "oracle": true}
  ]
})";

} // namespace

TEST_CASE("suite rows and verdicts") {
  const Suite suite = parse_suite(small_suite);
  const std::vector<BenchRow> rows = run_suite(suite);
  std::size_t tree_rows = 0;
  for (const BenchRow& r : rows) {
    if (r.algorithm == "tree2" || r.algorithm == "tree6") {
      ++tree_rows;
      CHECK(r.status == "ok");
      REQUIRE(r.feasible);
      CHECK(*r.feasible);
    }
    if (r.oracle && r.cost) {
      CHECK(*r.cost >= *r.oracle);
      CHECK(*r.ratio() >= Rational(1));
    }
    if (r.algorithm == "line-dp") {
      CHECK(r.status.rfind("precondition", 0) == 0);
    }
  }
  CHECK(tree_rows == 20);
}

TEST_CASE("suite output is deterministic") {
  const Suite suite = parse_suite(small_suite);
  const std::string a = to_csv(run_suite(suite));
  const std::string b = to_csv(run_suite(suite));
  CHECK(a == b);
  CHECK(a.rfind(csv_header(), 0) == 0);
}

TEST_CASE("csv quoting") {
  BenchRow r;
  r.instance = "a,\"b\"";
  r.algorithm = "tree2";
  r.topology = "tree";
  r.status = "ok";
  r.cost = Rational(3, 2);
  const std::string csv = to_csv({r});
  CHECK(csv.find("\"a,\"\"b\"\"\"") != std::string::npos);
  CHECK(csv.find(",3,2,") != std::string::npos);
}

TEST_CASE("suite errors") {
  CHECK_THROWS_AS(parse_suite("{}"), InputError);
  CHECK_THROWS_AS(parse_suite(R"({"entries": [{"generator": {"family": "gi", "i": 1}, "algorithms": ["magic"]}]})"),
                  InputError);
  CHECK_THROWS_AS(run_algorithm(Instance("d", {{0, std::nullopt}}, 0, {}), "tree2", Objective::min_max),
                  InputError);
}
