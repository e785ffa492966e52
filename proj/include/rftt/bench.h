#ifndef RFTT_BENCH_H
#define RFTT_BENCH_H

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rftt/generators.h"
#include "rftt/solve_report.h"

namespace rftt {

// Known names: tree2, tree6, line-dp, classes, logn-minmax, sync, oracle.
const std::vector<std::string>& algorithm_names();
std::vector<Objective> default_objectives(const std::string& algorithm);

// Runs one algorithm. Throws InputError when the instance or objective does
// not fit the algorithm and SizeGuardError when it is too large for it.
Solution run_algorithm(const Instance& instance, const std::string& algorithm,
                       Objective objective);

struct BenchRow {
  std::string instance;
  std::int64_t n = 0;
  std::string topology;
  std::string algorithm;
  Objective objective = Objective::min_avg;
  std::string status = "ok";
  std::optional<Rational> cost;
  std::optional<Rational> lower_bound;
  std::optional<Rational> oracle;
  std::optional<bool> feasible;
  std::optional<double> runtime_ms;

  // cost / max(lower bound, oracle), when both sides exist.
  std::optional<Rational> ratio() const;
};

struct SuiteEntry {
  GenSpec generator;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> algorithms;
  std::vector<Objective> objectives; // empty: each algorithm's own
  bool oracle = false;               // fill the oracle column where it fits
};

struct Suite {
  std::vector<SuiteEntry> entries;
  bool timing = false; // runtime column left empty otherwise, for stable output
};

Suite suite_from_json(const nlohmann::json& j);
Suite parse_suite(const std::string& text);

// Rows in suite order. A schedule failing verification is a hard error
// (std::logic_error); precondition failures become status rows.
std::vector<BenchRow> run_suite(const Suite& suite);

std::string csv_header();
std::string to_csv(const std::vector<BenchRow>& rows);

} // namespace rftt

#endif
