#ifndef RFTT_TEST_HELPERS_H
#define RFTT_TEST_HELPERS_H

#include <vector>

#include "rftt/instance.h"

namespace rftt::test {

// Depot 0 with leaves 1..n.
inline Instance star(const std::vector<std::int64_t>& weights, const std::vector<Turnover>& taus) {
  std::vector<Vertex> vs{{0, std::nullopt}};
  std::vector<Edge> es;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const auto id = static_cast<VertexId>(i + 1);
    vs.push_back({id, taus[i]});
    es.push_back({0, id, Rational(weights[i])});
  }
  return Instance("star", vs, 0, es);
}

inline Instance unit_star(const std::vector<Turnover>& taus) {
  return star(std::vector<std::int64_t>(taus.size(), 1), taus);
}

// Depot 0 at one end of a path 0-1-...-n.
inline Instance chain(const std::vector<std::int64_t>& weights, const std::vector<Turnover>& taus) {
  std::vector<Vertex> vs{{0, std::nullopt}};
  std::vector<Edge> es;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const auto id = static_cast<VertexId>(i + 1);
    vs.push_back({id, taus[i]});
    es.push_back({id - 1, id, Rational(weights[i])});
  }
  return Instance("chain", vs, 0, es);
}

} // namespace rftt::test

#endif
