#ifndef RFTT_ROUTING_H
#define RFTT_ROUTING_H

#include <cstdint>
#include <utility>
#include <vector>

#include "rftt/instance.h"

namespace rftt {

// Closed depot tour. `order` lists the stops between the two depot
// endpoints; cost is measured along it in the metric closure.
struct Tour {
  std::vector<Index> order;
  Rational cost;
};

inline constexpr std::size_t tsp_exact_limit = 16;

// Distances among a vertex subset scaled to a common integer denominator,
// for exact integer dynamic programs. Entry (i, j) refers to vertices[i],
// vertices[j]. Throws SizeGuardError when values would overflow.
struct ScaledMatrix {
  std::vector<Index> vertices;
  std::int64_t scale = 1;
  std::vector<std::int64_t> d;

  std::int64_t operator()(std::size_t i, std::size_t j) const {
    return d[i * vertices.size() + j];
  }
};

ScaledMatrix scaled_submatrix(const DistanceMatrix& dist, const std::vector<Index>& vertices);

// Held-Karp over every subset of at most tsp_exact_limit clients at once.
// Position 0 of the matrix must be the depot; subsets are bitmasks over
// positions 1..k.
class SubsetTsp {
public:
  explicit SubsetTsp(ScaledMatrix matrix);

  std::size_t client_count() const { return k_; }
  // Optimal closed-tour cost of a subset, in scaled units.
  std::int64_t cost(std::uint32_t mask) const;
  // Matrix positions (1-based) in visiting order.
  std::vector<std::size_t> order(std::uint32_t mask) const;
  const ScaledMatrix& matrix() const { return m_; }

private:
  std::int64_t& dp(std::uint32_t mask, std::size_t j) { return dp_[mask * k_ + j]; }
  std::int64_t dp(std::uint32_t mask, std::size_t j) const { return dp_[mask * k_ + j]; }

  ScaledMatrix m_;
  std::size_t k_;
  std::vector<std::int64_t> dp_;
  std::vector<std::uint8_t> parent_;
  std::vector<std::int64_t> best_;
};

Tour tsp_exact(const std::vector<Index>& clients, const DistanceMatrix& dist, Index depot);

struct SpanningTree {
  std::vector<std::pair<Index, Index>> edges; // (parent, child), grown from vertices[0]
  Rational cost;
};

// Prim's algorithm on the metric closure; ties go to the earlier position
// in `vertices`.
SpanningTree minimum_spanning_tree(const std::vector<Index>& vertices, const DistanceMatrix& dist);

// Doubled MST shortcut to first-visit order; cost <= 2 * MST.
Tour tsp_double_tree(const std::vector<Index>& clients, const DistanceMatrix& dist, Index depot);

// Cuts the tour into k contiguous pieces by where each stop falls along
// the tour length, closing each piece at the depot. Returns exactly k tours
// (some possibly idle).
std::vector<Tour> split_tour(const Tour& tour, std::int64_t k, const DistanceMatrix& dist,
                             Index depot);

// tour.cost / k + 2 * (largest depot distance among the tour's stops).
Rational split_bound(const Tour& tour, std::int64_t k, const DistanceMatrix& dist, Index depot);

} // namespace rftt

#endif
