#ifndef RFTT_INSTANCE_H
#define RFTT_INSTANCE_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rftt/rational.h"

namespace rftt {

using VertexId = std::int64_t;
using Index = std::size_t;
using Turnover = std::int64_t;

// Malformed or semantically invalid input (CLI exit code 2).
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Input within contract but beyond a configured size limit (exit code 3).
class SizeGuardError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Vertex {
  VertexId id;
  std::optional<Turnover> turnover; // absent for the depot
};

struct Edge {
  VertexId u;
  VertexId v;
  Rational weight;
};

enum class Topology { star, halfline, line, tree, general };

std::string_view to_string(Topology t);

bool is_tree(Topology t);
bool is_line(Topology t);

struct Arc {
  Index to;
  Index edge;
};

// Replenishment instance: weighted graph with a depot and per-client
// turnover times. The constructor only indexes vertices and edges;
// semantic checks live in validate().
class Instance {
public:
  Instance(std::string name,
           std::vector<Vertex> vertices,
           VertexId depot,
           std::vector<Edge> edges);

  const std::string& name() const { return name_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  VertexId depot() const { return depot_; }

  std::size_t size() const { return vertices_.size(); }
  std::size_t client_count() const { return vertices_.size() - 1; }
  Index depot_index() const { return depot_index_; }
  Index index_of(VertexId id) const;
  bool contains(VertexId id) const { return index_.contains(id); }
  VertexId id_of(Index i) const { return vertices_[i].id; }

  // Turnover of a client; 0 for the depot.
  Turnover turnover(Index i) const { return vertices_[i].turnover.value_or(0); }
  Turnover max_turnover() const;

  // Client indices in file order.
  std::vector<Index> clients() const;

  const std::vector<std::vector<Arc>>& adjacency() const { return adjacency_; }
  Index edge_u(Index e) const { return edge_ends_[e].first; }
  Index edge_v(Index e) const { return edge_ends_[e].second; }

  // Copy with turnovers replaced; entry i applies to vertex index i and
  // the depot entry is ignored.
  Instance with_turnovers(const std::vector<Turnover>& turnovers) const;
  Instance with_name(std::string name) const;
  std::vector<Turnover> turnovers() const;

private:
  std::string name_;
  std::vector<Vertex> vertices_;
  VertexId depot_;
  std::vector<Edge> edges_;
  std::unordered_map<VertexId, Index> index_;
  Index depot_index_ = 0;
  std::vector<std::vector<Arc>> adjacency_;
  std::vector<std::pair<Index, Index>> edge_ends_;
};

// Throws InputError naming the offending element: duplicate or missing
// depot, nonpositive turnover, negative weight, self-loop, parallel edge,
// disconnected graph.
void validate(const Instance& instance);

Topology classify(const Instance& instance);

// Tree rooted at the depot, children in ascending vertex id order.
struct RootedTree {
  Index root;
  std::vector<std::optional<Index>> parent;
  std::vector<Rational> parent_weight; // weight of the edge to the parent
  std::vector<std::vector<Index>> children;
  std::vector<Index> preorder;
};

RootedTree root_tree(const Instance& instance);

struct PruneEvent {
  VertexId vertex;
  Turnover original;
  Turnover effective;
  VertexId dominated_by; // descendant with the smallest turnover
};

struct NormalizeResult {
  Instance instance;
  Topology topology;
  std::vector<PruneEvent> events;
};

// Validates, classifies, and on trees lowers each turnover to the minimum
// turnover found in its subtree. An event is recorded for every vertex that
// has a strict descendant with turnover not larger than its own (the vertex
// is passed whenever that descendant is served), even when the effective
// value is unchanged.
NormalizeResult normalize(const Instance& instance);

class DistanceMatrix {
public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n) {}

  std::size_t size() const { return n_; }
  const Rational& operator()(Index i, Index j) const { return d_[i * n_ + j]; }
  Rational& operator()(Index i, Index j) { return d_[i * n_ + j]; }

private:
  std::size_t n_ = 0;
  std::vector<Rational> d_;
};

// All-pairs shortest paths over the instance graph.
DistanceMatrix metric_closure(const Instance& instance);

} // namespace rftt

#endif
