#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rftt/bench.h"
#include "rftt/generators.h"
#include "rftt/instance_io.h"
#include "rftt/oracle.h"
#include "rftt/schedule.h"

namespace {

enum Exit { ok = 0, negative = 1, input_error = 2, size_guard = 3 };

std::vector<std::int64_t> parse_list(const std::string& text, const std::string& what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) {
        throw std::invalid_argument(item);
      }
    } catch (const std::exception&) {
      throw rftt::InputError("bad " + what + " entry '" + item + "'");
    }
  }
  if (out.empty()) {
    throw rftt::InputError("empty " + what + " list");
  }
  return out;
}

void print_report(const rftt::SolveReport& r) {
  std::cout << "algorithm " << r.algorithm << '\n'
            << "objective " << rftt::to_string(r.objective) << '\n'
            << "avg " << r.avg << " (" << r.avg.to_decimal(6) << ")\n"
            << "max " << r.max << " (" << r.max.to_decimal(6) << ")\n";
  if (r.lower_bound) {
    std::cout << "lower_bound " << *r.lower_bound << '\n';
  }
  for (const auto& [k, v] : r.diagnostics) {
    std::cout << k << ' ' << v << '\n';
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Replenishment scheduling with fixed turnover times"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance");
  std::string family;
  std::optional<std::int64_t> n, i, m, max_weight, max_turnover, extra;
  std::string periods, ints, shape = "star", out_path;
  std::uint64_t seed = 0;
  gen->add_option("family", family,
                  "random_tree|random_star|random_line|random_general|pinwheel|partition_star|gi|hi")
    ->required();
  gen->add_option("--n", n);
  gen->add_option("--i", i);
  gen->add_option("--m", m);
  gen->add_option("--max-weight", max_weight);
  gen->add_option("--max-turnover", max_turnover);
  gen->add_option("--extra", extra);
  gen->add_option("--periods", periods);
  gen->add_option("--ints", ints);
  gen->add_option("--shape", shape)->check(CLI::IsMember({"star", "sp"}));
  gen->add_option("--seed", seed);
  gen->add_option("-o,--output", out_path)->required();

  // solve
  auto* solve = app.add_subcommand("solve", "solve an instance");
  std::string objective, algo, inst_path, sched_path;
  solve->add_option("--objective", objective, "default: the algorithm's first objective")
    ->check(CLI::IsMember({"min-avg", "min-max"}));
  solve->add_option("--algo", algo)->required()->check(CLI::IsMember(rftt::algorithm_names()));
  solve->add_option("-i,--instance", inst_path)->required();
  solve->add_option("-o,--output", sched_path);

  // verify
  auto* verify = app.add_subcommand("verify", "check a schedule");
  verify->add_option("-i,--instance", inst_path)->required();
  verify->add_option("-s,--schedule", sched_path)->required();

  // pinwheel
  auto* pinwheel = app.add_subcommand("pinwheel", "decide a pinwheel instance");
  pinwheel->add_option("--periods", periods)->required();

  // bench
  auto* bench = app.add_subcommand("bench", "run a benchmark suite");
  std::string suite_path, csv_path;
  bench->add_option("--suite", suite_path)->required();
  bench->add_option("--csv", csv_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : input_error;
  }

  try {
    if (*gen) {
      rftt::GenSpec spec;
      spec.seed = seed;
      spec.family = family;
      if (family == "pinwheel") {
        spec.family = shape == "star" ? "pinwheel_star" : "pinwheel_sp";
      }
      auto put = [&](const char* key, const std::optional<std::int64_t>& v) {
        if (v) {
          spec.params[key] = *v;
        }
      };
      put("n", n);
      put("i", i);
      put("m", m);
      put("max_weight", max_weight);
      put("max_turnover", max_turnover);
      put("extra", extra);
      if (!periods.empty()) {
        spec.values = parse_list(periods, "period");
      } else if (!ints.empty()) {
        spec.values = parse_list(ints, "integer");
      }
      rftt::save_instance(rftt::generate(spec), out_path);
      return ok;
    }
    if (*solve) {
      const rftt::Instance instance = rftt::load_instance(inst_path);
      const rftt::Objective obj = objective.empty() ? rftt::default_objectives(algo).front()
                                                    : rftt::objective_from_string(objective);
      const rftt::Solution sol = rftt::run_algorithm(instance, algo, obj);
      print_report(sol.report);
      if (!sched_path.empty() && sol.schedule.period > 0) {
        rftt::write_file(sched_path, rftt::schedule_to_json(sol.schedule).dump(1) + "\n");
      }
      return ok;
    }
    if (*verify) {
      const rftt::Instance instance = rftt::load_instance(inst_path);
      const rftt::AnySchedule any = rftt::parse_schedule(rftt::read_file(sched_path));
      const rftt::Schedule schedule = std::holds_alternative<rftt::Schedule>(any)
                                        ? std::get<rftt::Schedule>(any)
                                        : rftt::expand(std::get<rftt::CompactSchedule>(any));
      const rftt::FeasibilityReport report = rftt::verify(instance, schedule);
      if (!report.feasible) {
        std::cout << "infeasible\n";
        for (const auto& v : report.violations) {
          std::cout << v.description() << '\n';
        }
        return negative;
      }
      const rftt::Evaluation ev = rftt::evaluate(instance, schedule);
      std::cout << "feasible\n"
                << "avg " << ev.avg << '\n'
                << "max " << ev.max << '\n';
      return ok;
    }
    if (*pinwheel) {
      const rftt::PinwheelResult r = rftt::pinwheel_feasible(parse_list(periods, "period"));
      if (!r.feasible) {
        std::cout << "infeasible\n";
        return negative;
      }
      std::cout << "feasible\nwitness";
      for (int job : r.witness) {
        std::cout << ' ' << job;
      }
      std::cout << '\n';
      return ok;
    }
    if (*bench) {
      const rftt::Suite suite = rftt::parse_suite(rftt::read_file(suite_path));
      rftt::write_file(csv_path, rftt::to_csv(rftt::run_suite(suite)));
      return ok;
    }
  } catch (const rftt::SizeGuardError& e) {
    std::cerr << "size guard: " << e.what() << '\n';
    return size_guard;
  } catch (const rftt::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return input_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return negative;
  }
  return ok;
}
