#include "rftt/schedule.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "rftt/instance_io.h"

namespace rftt {

std::int64_t period_of(const CompactSchedule& compact) {
  std::int64_t l = 1;
  for (const auto& c : compact.classes) {
    if (c.modulus <= 0) {
      throw InputError("nonpositive modulus " + std::to_string(c.modulus));
    }
    l = std::lcm(l, c.modulus);
    if (l > max_expanded_period) {
      throw SizeGuardError("compact schedule period exceeds " +
                           std::to_string(max_expanded_period));
    }
  }
  return l;
}

namespace {

void check_class(const CongruenceClass& c) {
  if (c.modulus <= 0 || c.residue < 0 || c.residue >= c.modulus) {
    throw InputError("class " + std::to_string(c.residue) + " mod " +
                     std::to_string(c.modulus) + " is not canonical (0 <= a < m)");
  }
}

// Visit days of each vertex index; days are 1-based.
FeasibilityReport check_gaps(const Instance& instance,
                             std::int64_t period,
                             const std::vector<std::vector<std::int64_t>>& visits) {
  FeasibilityReport report;
  for (Index i = 0; i < instance.size(); ++i) {
    if (i == instance.depot_index()) {
      continue;
    }
    const Turnover tau = instance.turnover(i);
    const auto& days = visits[i];
    if (days.empty()) {
      report.violations.push_back({instance.id_of(i), ViolationKind::never_visited, 0, tau});
      continue;
    }
    std::int64_t worst = days.front() + period - days.back();
    for (std::size_t k = 1; k < days.size(); ++k) {
      worst = std::max(worst, days[k] - days[k - 1]);
    }
    if (worst > tau) {
      report.violations.push_back({instance.id_of(i), ViolationKind::gap, worst, tau});
    }
  }
  report.feasible = report.violations.empty();
  return report;
}

} // namespace

Schedule expand(const CompactSchedule& compact) {
  const std::int64_t period = period_of(compact);
  Schedule s;
  s.period = period;
  s.days.resize(period);
  for (std::int64_t d = 1; d <= period; ++d) {
    auto& day = s.days[d - 1];
    std::set<VertexId> seen;
    for (const auto& c : compact.classes) {
      check_class(c);
      if (d % c.modulus != c.residue) {
        continue;
      }
      for (VertexId v : c.vertices) {
        if (seen.insert(v).second) {
          day.push_back(v);
        }
      }
    }
  }
  return s;
}

std::string Violation::description() const {
  if (kind == ViolationKind::never_visited) {
    return "vertex " + std::to_string(vertex) + " never visited";
  }
  return "vertex " + std::to_string(vertex) + " gap " + std::to_string(gap) + " > " +
         std::to_string(turnover);
}

FeasibilityReport verify(const Instance& instance, const Schedule& schedule) {
  if (schedule.period <= 0) {
    throw InputError("schedule period must be positive");
  }
  if (static_cast<std::int64_t>(schedule.days.size()) != schedule.period) {
    throw InputError("schedule lists " + std::to_string(schedule.days.size()) +
                     " days for period " + std::to_string(schedule.period));
  }
  std::vector<std::vector<std::int64_t>> visits(instance.size());
  for (std::int64_t d = 1; d <= schedule.period; ++d) {
    for (VertexId v : schedule.days[d - 1]) {
      auto& list = visits[instance.index_of(v)];
      if (list.empty() || list.back() != d) {
        list.push_back(d);
      }
    }
  }
  return check_gaps(instance, schedule.period, visits);
}

FeasibilityReport verify(const Instance& instance, const CompactSchedule& compact) {
  const std::int64_t period = period_of(compact);
  std::vector<std::vector<std::int64_t>> visits(instance.size());
  for (const auto& c : compact.classes) {
    check_class(c);
    const std::int64_t first = c.residue == 0 ? c.modulus : c.residue;
    for (VertexId v : c.vertices) {
      auto& list = visits[instance.index_of(v)];
      for (std::int64_t d = first; d <= period; d += c.modulus) {
        list.push_back(d);
      }
    }
  }
  for (auto& list : visits) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return check_gaps(instance, period, visits);
}

Rational route_cost(const DistanceMatrix& dist, Index depot, const std::vector<Index>& order) {
  Rational cost(0);
  Index at = depot;
  for (Index v : order) {
    cost += dist(at, v);
    at = v;
  }
  return cost + dist(at, depot);
}

Evaluation evaluate(const Instance& instance, const Schedule& schedule,
                    const DistanceMatrix& dist) {
  if (schedule.period <= 0 ||
      static_cast<std::int64_t>(schedule.days.size()) != schedule.period) {
    throw InputError("schedule period does not match its day list");
  }
  Evaluation ev;
  Rational total(0);
  ev.max = Rational(0);
  std::vector<Index> order;
  for (const auto& day : schedule.days) {
    order.clear();
    for (VertexId v : day) {
      order.push_back(instance.index_of(v));
    }
    Rational c = route_cost(dist, instance.depot_index(), order);
    total += c;
    ev.max = max(ev.max, c);
    ev.per_day.push_back(std::move(c));
  }
  ev.avg = total / Rational(schedule.period);
  return ev;
}

Evaluation evaluate(const Instance& instance, const Schedule& schedule) {
  return evaluate(instance, schedule, metric_closure(instance));
}

AnySchedule schedule_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("classes")) {
      CompactSchedule c;
      for (const auto& cls : j.at("classes")) {
        CongruenceClass k{json_int(cls.at("residue"), "residue"),
                          json_int(cls.at("modulus"), "modulus"),
                          {}};
        for (const auto& v : cls.at("vertices")) {
          k.vertices.push_back(json_int(v, "class vertex"));
        }
        check_class(k);
        c.classes.push_back(std::move(k));
      }
      return c;
    }
    Schedule s;
    s.period = json_int(j.at("period"), "period");
    for (const auto& day : j.at("days")) {
      std::vector<VertexId> order;
      for (const auto& v : day) {
        order.push_back(json_int(v, "day vertex"));
      }
      s.days.push_back(std::move(order));
    }
    if (s.period <= 0) {
      throw InputError("zero period");
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed schedule: ") + e.what());
  }
}

nlohmann::ordered_json schedule_to_json(const Schedule& schedule) {
  nlohmann::ordered_json j;
  j["period"] = schedule.period;
  j["days"] = nlohmann::ordered_json::array();
  for (const auto& day : schedule.days) {
    j["days"].push_back(day);
  }
  return j;
}

nlohmann::ordered_json schedule_to_json(const CompactSchedule& compact) {
  nlohmann::ordered_json j;
  j["classes"] = nlohmann::ordered_json::array();
  for (const auto& c : compact.classes) {
    nlohmann::ordered_json k;
    k["residue"] = c.residue;
    k["modulus"] = c.modulus;
    k["vertices"] = c.vertices;
    j["classes"].push_back(std::move(k));
  }
  return j;
}

AnySchedule parse_schedule(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  return schedule_from_json(j);
}

} // namespace rftt
