#ifndef RFTT_SCHEDULE_H
#define RFTT_SCHEDULE_H

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "rftt/instance.h"

namespace rftt {

// Cyclic plan over days 1..period. days[d - 1] is the visit order of day d;
// the depot is implied at both ends and may also appear in between when a
// day chains several round trips. An empty list is an idle day.
struct Schedule {
  std::int64_t period = 1;
  std::vector<std::vector<VertexId>> days;
};

// Day d visits the class vertices whenever d mod modulus == residue.
struct CongruenceClass {
  std::int64_t residue;
  std::int64_t modulus;
  std::vector<VertexId> vertices;
};

struct CompactSchedule {
  std::vector<CongruenceClass> classes;
};

// Compact schedules expand over lcm of their moduli; above this cap the
// expansion is refused with SizeGuardError.
inline constexpr std::int64_t max_expanded_period = std::int64_t{1} << 20;

std::int64_t period_of(const CompactSchedule& compact);
// Vertices of a day follow class order, first occurrence wins.
Schedule expand(const CompactSchedule& compact);

enum class ViolationKind { never_visited, gap };

struct Violation {
  VertexId vertex;
  ViolationKind kind;
  std::int64_t gap = 0; // longest circular gap, for ViolationKind::gap
  Turnover turnover = 0;

  std::string description() const;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<Violation> violations;
};

// Every client's circular gaps between visit days (wrap included) must be
// at most its turnover. Throws InputError on unknown ids or a malformed
// period.
FeasibilityReport verify(const Instance& instance, const Schedule& schedule);
FeasibilityReport verify(const Instance& instance, const CompactSchedule& compact);

// Closed route depot -> order... -> depot in the metric closure.
Rational route_cost(const DistanceMatrix& dist, Index depot, const std::vector<Index>& order);

struct Evaluation {
  Rational avg;
  Rational max;
  std::vector<Rational> per_day;
};

Evaluation evaluate(const Instance& instance, const Schedule& schedule,
                    const DistanceMatrix& dist);
Evaluation evaluate(const Instance& instance, const Schedule& schedule);

// {"period": int, "days": [[int,...],...]} or
// {"classes": [{"residue": int, "modulus": int, "vertices": [int,...]}]}
using AnySchedule = std::variant<Schedule, CompactSchedule>;

AnySchedule schedule_from_json(const nlohmann::json& j);
nlohmann::ordered_json schedule_to_json(const Schedule& schedule);
nlohmann::ordered_json schedule_to_json(const CompactSchedule& compact);
AnySchedule parse_schedule(const std::string& text);

} // namespace rftt

#endif
