#ifndef RFTT_GENERAL_SOLVER_H
#define RFTT_GENERAL_SOLVER_H

#include <map>
#include <utility>
#include <vector>

#include "rftt/instance.h"
#include "rftt/routing.h"
#include "rftt/solve_report.h"

namespace rftt {

bool is_pow2(Turnover t);
Turnover round_down_pow2(Turnover t);
// floor(log2 t) for t >= 1.
int floor_log2(std::int64_t t);
// ceil(log2 n) for n >= 1.
int ceil_log2(std::int64_t n);

// Every turnover replaced by the largest power of two not above it.
Instance round_pow2(const Instance& instance);

// Clients grouped by (already rounded) turnover; a turnover k is saturated
// when at least k clients share it.
struct ClassPartition {
  std::map<Turnover, std::vector<Index>> classes;
  std::map<Turnover, bool> saturated;
};

ClassPartition partition_classes(const Instance& rounded);

// Each rounded class is solved on its own and the day tours are chained in
// ascending modulus. MIN-AVG: one tour per class on every multiple of the
// class turnover. MIN-MAX: the class tour is split into as many pieces as
// the turnover and the pieces rotate over consecutive days.
Solution solve_per_class(const Instance& instance, Objective objective);

// W_i sets for unsaturated clients, i = 2, 4, ..., 2^ceil(log2 n)
// (W_1 only when n == 1). Member r of W_i is served on days d = r mod i.
struct UnsaturatedPacking {
  std::map<Turnover, std::vector<Index>> sets;
};

UnsaturatedPacking pack_unsaturated(const Instance& rounded, const std::vector<Index>& clients);

Solution solve_minmax_logn(const Instance& instance);

// Level j tour serves every client with rounded turnover <= 2^j; day d uses
// the level of the largest power of two dividing d.
struct SyncSolution {
  std::int64_t period = 1;
  std::vector<Tour> levels;
};

SyncSolution synchronized_solution(const Instance& rounded, const DistanceMatrix& dist);
Schedule to_schedule(const Instance& instance, const SyncSolution& sync);

Solution solve_minavg_sync(const Instance& instance);

// Bottom-up pairing on a tree rooted at `root`: every subtree hands at most
// one unpaired vertex to its parent, so the pairs' tree paths are pairwise
// edge-disjoint. Pairs all of `subset` or all but one.
std::vector<std::pair<Index, Index>> tree_pairing(
  const std::vector<std::pair<Index, Index>>& tree_edges,
  const std::vector<Index>& subset,
  Index root);

struct NonDecreasingTree {
  std::vector<std::pair<Index, Index>> arcs; // (tail, head), heads never repeat
  Rational cost;
  std::int64_t rounds = 0;
};

// Repeated pairing rounds; each pair gets an arc from its lower- to its
// higher-turnover endpoint (the depot counts as lowest) and the higher one
// leaves the pool. Arc cost is the tree-path length.
NonDecreasingTree build_nondecreasing_tree(const std::vector<std::pair<Index, Index>>& tree_edges,
                                           const Instance& instance,
                                           const DistanceMatrix& dist);

// Per-day arborescences rooted at the depot; day tours are preorder walks.
struct NonDecreasingSolution {
  std::int64_t period = 1;
  std::vector<std::vector<std::pair<Index, Index>>> day_arcs;
};

Schedule to_schedule(const Instance& instance, const NonDecreasingSolution& solution);

NonDecreasingSolution sync_to_nondecreasing(const Instance& instance, const SyncSolution& sync,
                                            const DistanceMatrix& dist);

// Result serves client j exactly on the multiples of its turnover.
Schedule nondecreasing_to_sync(const Instance& instance, const NonDecreasingSolution& solution,
                               const DistanceMatrix& dist);

bool is_synchronized(const Instance& instance, const Schedule& schedule);

} // namespace rftt

#endif
