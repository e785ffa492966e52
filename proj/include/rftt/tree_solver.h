#ifndef RFTT_TREE_SOLVER_H
#define RFTT_TREE_SOLVER_H

#include <map>
#include <vector>

#include "rftt/instance.h"
#include "rftt/routing.h"
#include "rftt/solve_report.h"

namespace rftt {

// Tree edges are identified by their lower (child) endpoint.
struct TTWeightedTree {
  RootedTree tree;
  std::vector<Turnover> q;         // tt-weight of the edge above v; 0 at the root
  std::vector<Turnover> effective; // minimum turnover in the subtree of v
  std::vector<Rational> depth;     // distance from the root
};

TTWeightedTree tt_weights(const Instance& instance);

// 2 * sum over edges of c(e) / q(e).
Rational tree_lower_bound(const TTWeightedTree& tt);

struct ClassKey {
  std::int64_t residue;
  std::int64_t modulus;
  auto operator<=>(const ClassKey&) const = default;
};

struct CongruenceAssignment {
  std::map<ClassKey, std::vector<Index>> f; // edge sets (child endpoints)
  std::map<ClassKey, std::vector<Index>> g; // vertex sets
  std::vector<std::optional<ClassKey>> class_of; // per vertex; empty at the root
  std::int64_t call_count = 0;       // calls on a nonempty edge sequence
  std::int64_t cost_violations = 0;  // calls breaking the per-call cost inequality
  std::int64_t rescued = 0;          // vertices lost with a split edge at a walk end
  std::int64_t max_modulus = 1;
  Rational lower_bound;              // L of the instance the recursion ran on
};

// Recursive tour splitting over the doubled-tree Euler sequence. Requires
// power-of-two turnovers; the instance is normalized first.
CongruenceAssignment recurse_tree_schedule(const Instance& instance);

// Edge set P + union of f(day mod h), completed with root paths for any
// assigned vertex left unconnected (counted in `fallback_paths`).
struct DayEdgeSet {
  std::vector<bool> edges; // indexed by child endpoint
  std::int64_t fallback_paths = 0;
};

DayEdgeSet day_edge_set(const CongruenceAssignment& assignment, const TTWeightedTree& tt,
                        std::int64_t day);

// T(a mod m) = P + union over h <= m of f(a mod h), P the root path of the
// f(a mod m) edge whose upper endpoint is closest to the root.
std::vector<bool> class_tree(const CongruenceAssignment& assignment, const TTWeightedTree& tt,
                             ClassKey key);

std::vector<Index> day_clients(const CongruenceAssignment& assignment, std::int64_t day);

Tour assemble_day_tour(const CongruenceAssignment& assignment, const TTWeightedTree& tt,
                       std::int64_t day, const DistanceMatrix& dist);

// Rounded synchronized schedule: client j on every multiple of its rounded
// turnover, day tours in depth-first order.
Solution solve_minavg_tree(const Instance& instance);

Solution solve_minmax_tree(const Instance& instance);

} // namespace rftt

#endif
