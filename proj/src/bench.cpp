#include "rftt/bench.h"

#include <chrono>
#include <sstream>

#include "rftt/general_solver.h"
#include "rftt/instance_io.h"
#include "rftt/line_solver.h"
#include "rftt/oracle.h"
#include "rftt/tree_solver.h"

namespace rftt {

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"tree2", "tree6",  "line-dp", "classes",
                                              "logn-minmax", "sync", "oracle"};
  return names;
}

std::vector<Objective> default_objectives(const std::string& algorithm) {
  if (algorithm == "tree2" || algorithm == "line-dp" || algorithm == "sync") {
    return {Objective::min_avg};
  }
  if (algorithm == "tree6" || algorithm == "logn-minmax") {
    return {Objective::min_max};
  }
  if (algorithm == "classes" || algorithm == "oracle") {
    return {Objective::min_avg, Objective::min_max};
  }
  throw InputError("unknown algorithm '" + algorithm + "'");
}

namespace {

void require(Objective got, Objective want, const std::string& algorithm) {
  if (got != want) {
    throw InputError(algorithm + " does not handle " + std::string(to_string(got)));
  }
}

Solution oracle_solution(const Instance& instance, Objective objective) {
  const auto start = std::chrono::steady_clock::now();
  const OracleResult r =
    objective == Objective::min_avg ? exact_minavg(instance) : exact_minmax(instance);
  Solution sol;
  sol.schedule = r.schedule;
  sol.report.algorithm = "oracle";
  sol.report.objective = objective;
  fill_costs(instance, metric_closure(instance), sol);
  sol.report.lower_bound = r.value;
  sol.report.diagnostics["states"] = r.states;
  sol.report.diagnostics["transitions"] = r.edges;
  sol.report.runtime_ms =
    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return sol;
}

} // namespace

Solution run_algorithm(const Instance& instance, const std::string& algorithm,
                       Objective objective) {
  if (algorithm == "tree2") {
    require(objective, Objective::min_avg, algorithm);
    return solve_minavg_tree(instance);
  }
  if (algorithm == "tree6") {
    require(objective, Objective::min_max, algorithm);
    return solve_minmax_tree(instance);
  }
  if (algorithm == "line-dp") {
    require(objective, Objective::min_avg, algorithm);
    return solve_minavg_line(instance);
  }
  if (algorithm == "classes") {
    return solve_per_class(instance, objective);
  }
  if (algorithm == "logn-minmax") {
    require(objective, Objective::min_max, algorithm);
    return solve_minmax_logn(instance);
  }
  if (algorithm == "sync") {
    require(objective, Objective::min_avg, algorithm);
    return solve_minavg_sync(instance);
  }
  if (algorithm == "oracle") {
    return oracle_solution(instance, objective);
  }
  throw InputError("unknown algorithm '" + algorithm + "'");
}

std::optional<Rational> BenchRow::ratio() const {
  if (!cost) {
    return std::nullopt;
  }
  std::optional<Rational> base = lower_bound;
  if (oracle) {
    base = base ? max(*base, *oracle) : *oracle;
  }
  if (!base || base->is_zero()) {
    return std::nullopt;
  }
  return *cost / *base;
}

Suite suite_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array()) {
    throw InputError("suite needs an 'entries' array");
  }
  Suite suite;
  suite.timing = j.value("timing", false);
  for (const auto& e : j["entries"]) {
    SuiteEntry entry;
    if (!e.contains("generator") || !e["generator"].is_object()) {
      throw InputError("suite entry needs a 'generator' object");
    }
    for (const auto& [key, value] : e["generator"].items()) {
      if (key == "family") {
        entry.generator.family = value.get<std::string>();
      } else if (key == "periods" || key == "ints") {
        for (const auto& v : value) {
          entry.generator.values.push_back(json_int(v, key));
        }
      } else {
        entry.generator.params[key] = json_int(value, key);
      }
    }
    if (entry.generator.family.empty()) {
      throw InputError("generator needs a 'family'");
    }
    if (e.contains("seeds")) {
      for (const auto& s : e["seeds"]) {
        entry.seeds.push_back(static_cast<std::uint64_t>(json_int(s, "seed")));
      }
    } else {
      const std::int64_t count = e.contains("count") ? json_int(e["count"], "count") : 1;
      const std::int64_t first = e.contains("seed") ? json_int(e["seed"], "seed") : 0;
      for (std::int64_t s = 0; s < count; ++s) {
        entry.seeds.push_back(static_cast<std::uint64_t>(first + s));
      }
    }
    if (!e.contains("algorithms") || !e["algorithms"].is_array()) {
      throw InputError("suite entry needs an 'algorithms' array");
    }
    for (const auto& a : e["algorithms"]) {
      entry.algorithms.push_back(a.get<std::string>());
      default_objectives(entry.algorithms.back());
    }
    if (e.contains("objectives")) {
      for (const auto& o : e["objectives"]) {
        entry.objectives.push_back(objective_from_string(o.get<std::string>()));
      }
    }
    entry.oracle = e.value("oracle", false);
    suite.entries.push_back(std::move(entry));
  }
  return suite;
}

Suite parse_suite(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("suite is not valid JSON: ") + e.what());
  }
  try {
    return suite_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed suite: ") + e.what());
  }
}

namespace {

std::optional<Rational> try_oracle(const Instance& instance, Objective objective) {
  try {
    return objective == Objective::min_avg ? exact_minavg(instance).value
                                           : exact_minmax(instance).value;
  } catch (const SizeGuardError&) {
    return std::nullopt;
  }
}

} // namespace

std::vector<BenchRow> run_suite(const Suite& suite) {
  std::vector<BenchRow> rows;
  for (const SuiteEntry& entry : suite.entries) {
    for (std::uint64_t seed : entry.seeds) {
      GenSpec spec = entry.generator;
      spec.seed = seed;
      const Instance instance = generate(spec);
      validate(instance);
      const Topology topology = classify(instance);
      std::map<Objective, std::optional<Rational>> oracle;
      for (const std::string& algorithm : entry.algorithms) {
        const std::vector<Objective> objectives =
          entry.objectives.empty() ? default_objectives(algorithm) : entry.objectives;
        for (Objective objective : objectives) {
          BenchRow row;
          row.instance = instance.name();
          row.n = static_cast<std::int64_t>(instance.client_count());
          row.topology = std::string(to_string(topology));
          row.algorithm = algorithm;
          row.objective = objective;
          if (entry.oracle) {
            if (!oracle.contains(objective)) {
              oracle[objective] = try_oracle(instance, objective);
            }
            row.oracle = oracle[objective];
          }
          try {
            const Solution sol = run_algorithm(instance, algorithm, objective);
            row.lower_bound = sol.report.lower_bound;
            if (sol.report.diagnostics.contains("value_only")) {
              row.status = "value-only";
              row.cost = sol.report.cost();
            } else {
              const FeasibilityReport fr = verify(instance, sol.schedule);
              if (!fr.feasible) {
                throw std::logic_error(algorithm + " produced an infeasible schedule on " +
                                       instance.name() + ": " +
                                       fr.violations.front().description());
              }
              row.feasible = true;
              row.cost = sol.report.cost();
            }
            if (suite.timing) {
              row.runtime_ms = sol.report.runtime_ms;
            }
          } catch (const SizeGuardError& e) {
            row.status = std::string("size-guard: ") + e.what();
          } catch (const InputError& e) {
            row.status = std::string("precondition: ") + e.what();
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  return out + "\"";
}

void put_rational(std::ostringstream& os, const std::optional<Rational>& r) {
  if (r) {
    os << ',' << r->num_str() << ',' << r->den_str();
  } else {
    os << ",,";
  }
}

} // namespace

std::string csv_header() {
  return "instance,n,topology,algorithm,objective,status,cost_num,cost_den,lb_num,lb_den,"
         "oracle_num,oracle_den,ratio,feasible,runtime_ms\r\n";
}

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << csv_header();
  for (const BenchRow& r : rows) {
    os << csv_field(r.instance) << ',' << r.n << ',' << r.topology << ',' << r.algorithm << ','
       << to_string(r.objective) << ',' << csv_field(r.status);
    put_rational(os, r.cost);
    put_rational(os, r.lower_bound);
    put_rational(os, r.oracle);
    const auto ratio = r.ratio();
    os << ',' << (ratio ? ratio->to_decimal(6) : "");
    os << ',' << (r.feasible ? (*r.feasible ? "true" : "false") : "");
    os << ',';
    if (r.runtime_ms) {
      os << Rational(static_cast<std::int64_t>(*r.runtime_ms * 1000), 1000).to_decimal(3);
    }
    os << "\r\n";
  }
  return os.str();
}

} // namespace rftt
