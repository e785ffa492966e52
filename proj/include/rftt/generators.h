#ifndef RFTT_GENERATORS_H
#define RFTT_GENERATORS_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rftt/instance.h"
#include "rftt/schedule.h"

namespace rftt {

// family: random_tree, random_star, random_line, random_general,
// pinwheel_star, pinwheel_sp, partition_star, gi, hi.
// Integer parameters by name (n, max_weight, max_turnover, extra, i, m);
// `values` carries the period or integer list of the reduction families.
struct GenSpec {
  std::string family;
  std::map<std::string, std::int64_t> params;
  std::vector<std::int64_t> values;
  std::uint64_t seed = 0;
};

// Depot id 0, clients 1..n.
Instance gen_random(const GenSpec& spec);

enum class PinwheelShape { star, series_parallel };

Instance gen_pinwheel(const std::vector<std::int64_t>& periods, PinwheelShape shape);

// Leaf weights are the integers themselves; the target value is 2B.
Instance gen_partition_star(const std::vector<std::int64_t>& integers, std::int64_t m);

// Interleaved sequence a^i (1-based values).
std::vector<std::int64_t> gi_sequence(int i);

// Turnovers of G_i reach 2^(2^i - 1), so 64-bit turnovers stop at i = 5.
inline constexpr int gi_max = 5;
inline constexpr int hi_max = 4;

Instance gen_gi(int i);
Instance gen_hi(int i);

// Day d visits copy (d mod tau) of every layer of H_i.
Schedule hi_rotating_schedule(int i);

// Dispatch on spec.family.
Instance generate(const GenSpec& spec);

} // namespace rftt

#endif
