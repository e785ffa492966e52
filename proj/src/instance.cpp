#include "rftt/instance.h"

#include <algorithm>
#include <queue>
#include <set>

namespace rftt {

std::string_view to_string(Topology t) {
  switch (t) {
  case Topology::star:
    return "star";
  case Topology::halfline:
    return "halfline";
  case Topology::line:
    return "line";
  case Topology::tree:
    return "tree";
  case Topology::general:
    return "general";
  }
  return "general";
}

bool is_tree(Topology t) { return t != Topology::general; }
bool is_line(Topology t) { return t == Topology::halfline || t == Topology::line; }

Instance::Instance(std::string name,
                   std::vector<Vertex> vertices,
                   VertexId depot,
                   std::vector<Edge> edges)
  : name_(std::move(name)),
    vertices_(std::move(vertices)),
    depot_(depot),
    edges_(std::move(edges)) {
  for (Index i = 0; i < vertices_.size(); ++i) {
    if (!index_.emplace(vertices_[i].id, i).second) {
      throw InputError("duplicate vertex id " + std::to_string(vertices_[i].id));
    }
  }
  auto d = index_.find(depot_);
  if (d == index_.end()) {
    throw InputError("depot " + std::to_string(depot_) + " is not a listed vertex");
  }
  depot_index_ = d->second;

  adjacency_.resize(vertices_.size());
  edge_ends_.reserve(edges_.size());
  for (Index e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    auto u = index_.find(edge.u);
    auto v = index_.find(edge.v);
    if (u == index_.end() || v == index_.end()) {
      throw InputError("edge (" + std::to_string(edge.u) + "," + std::to_string(edge.v) +
                       ") references an unknown vertex");
    }
    edge_ends_.emplace_back(u->second, v->second);
    adjacency_[u->second].push_back({v->second, e});
    if (u->second != v->second) {
      adjacency_[v->second].push_back({u->second, e});
    }
  }
}

Index Instance::index_of(VertexId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw InputError("unknown vertex id " + std::to_string(id));
  }
  return it->second;
}

Turnover Instance::max_turnover() const {
  Turnover m = 0;
  for (const auto& v : vertices_) {
    m = std::max(m, v.turnover.value_or(0));
  }
  return m;
}

std::vector<Index> Instance::clients() const {
  std::vector<Index> out;
  out.reserve(client_count());
  for (Index i = 0; i < vertices_.size(); ++i) {
    if (i != depot_index_) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<Turnover> Instance::turnovers() const {
  std::vector<Turnover> t(vertices_.size());
  for (Index i = 0; i < vertices_.size(); ++i) {
    t[i] = turnover(i);
  }
  return t;
}

Instance Instance::with_turnovers(const std::vector<Turnover>& turnovers) const {
  std::vector<Vertex> vs = vertices_;
  for (Index i = 0; i < vs.size(); ++i) {
    if (i != depot_index_) {
      vs[i].turnover = turnovers[i];
    }
  }
  return Instance(name_, std::move(vs), depot_, edges_);
}

Instance Instance::with_name(std::string name) const {
  return Instance(std::move(name), vertices_, depot_, edges_);
}

void validate(const Instance& instance) {
  for (Index i = 0; i < instance.size(); ++i) {
    const auto& v = instance.vertices()[i];
    if (i == instance.depot_index()) {
      if (v.turnover) {
        throw InputError("depot " + std::to_string(v.id) + " must not have a turnover");
      }
      continue;
    }
    if (!v.turnover) {
      throw InputError("duplicate depot: vertex " + std::to_string(v.id) +
                       " has no turnover");
    }
    if (*v.turnover <= 0) {
      throw InputError("nonpositive turnover " + std::to_string(*v.turnover) +
                       " at vertex " + std::to_string(v.id));
    }
  }

  std::set<std::pair<Index, Index>> seen;
  for (Index e = 0; e < instance.edges().size(); ++e) {
    const auto& edge = instance.edges()[e];
    const std::string label =
      "(" + std::to_string(edge.u) + "," + std::to_string(edge.v) + ")";
    if (edge.weight.is_negative()) {
      throw InputError("negative weight on edge " + label);
    }
    Index a = instance.edge_u(e);
    Index b = instance.edge_v(e);
    if (a == b) {
      throw InputError("self-loop " + label);
    }
    if (!seen.emplace(std::min(a, b), std::max(a, b)).second) {
      throw InputError("parallel edge " + label);
    }
  }

  std::vector<bool> reached(instance.size(), false);
  std::vector<Index> stack{instance.depot_index()};
  reached[instance.depot_index()] = true;
  while (!stack.empty()) {
    Index u = stack.back();
    stack.pop_back();
    for (const auto& arc : instance.adjacency()[u]) {
      if (!reached[arc.to]) {
        reached[arc.to] = true;
        stack.push_back(arc.to);
      }
    }
  }
  for (Index i = 0; i < instance.size(); ++i) {
    if (!reached[i]) {
      throw InputError("disconnected graph: vertex " + std::to_string(instance.id_of(i)) +
                       " unreachable from depot");
    }
  }
}

Topology classify(const Instance& instance) {
  const std::size_t n = instance.size();
  if (instance.edges().size() + 1 != n) {
    return Topology::general;
  }
  std::size_t max_degree = 0;
  bool star = true;
  for (Index i = 0; i < n; ++i) {
    max_degree = std::max(max_degree, instance.adjacency()[i].size());
  }
  for (Index e = 0; e < instance.edges().size(); ++e) {
    if (instance.edge_u(e) != instance.depot_index() &&
        instance.edge_v(e) != instance.depot_index()) {
      star = false;
    }
  }
  if (max_degree <= 2) {
    return instance.adjacency()[instance.depot_index()].size() <= 1 ? Topology::halfline
                                                                     : Topology::line;
  }
  return star ? Topology::star : Topology::tree;
}

RootedTree root_tree(const Instance& instance) {
  if (!is_tree(classify(instance))) {
    throw InputError("instance '" + instance.name() + "' is not a tree");
  }
  const std::size_t n = instance.size();
  RootedTree t;
  t.root = instance.depot_index();
  t.parent.assign(n, std::nullopt);
  t.parent_weight.assign(n, Rational(0));
  t.children.assign(n, {});

  std::vector<bool> seen(n, false);
  std::vector<Index> stack{t.root};
  seen[t.root] = true;
  while (!stack.empty()) {
    Index u = stack.back();
    stack.pop_back();
    for (const auto& arc : instance.adjacency()[u]) {
      if (!seen[arc.to]) {
        seen[arc.to] = true;
        t.parent[arc.to] = u;
        t.parent_weight[arc.to] = instance.edges()[arc.edge].weight;
        t.children[u].push_back(arc.to);
        stack.push_back(arc.to);
      }
    }
  }
  for (auto& c : t.children) {
    std::sort(c.begin(), c.end(), [&](Index a, Index b) {
      return instance.id_of(a) < instance.id_of(b);
    });
  }

  stack.assign(1, t.root);
  while (!stack.empty()) {
    Index u = stack.back();
    stack.pop_back();
    t.preorder.push_back(u);
    for (auto it = t.children[u].rbegin(); it != t.children[u].rend(); ++it) {
      stack.push_back(*it);
    }
  }
  return t;
}

NormalizeResult normalize(const Instance& instance) {
  validate(instance);
  const Topology topology = classify(instance);
  if (!is_tree(topology)) {
    return {instance, topology, {}};
  }

  const RootedTree tree = root_tree(instance);
  const std::size_t n = instance.size();
  // Minimum turnover over the subtree of each vertex, with its argmin.
  std::vector<Turnover> sub_min(n);
  std::vector<Index> sub_arg(n);
  std::vector<Turnover> below_min(n, 0);
  std::vector<std::optional<Index>> below_arg(n);
  for (auto it = tree.preorder.rbegin(); it != tree.preorder.rend(); ++it) {
    Index u = *it;
    for (Index c : tree.children[u]) {
      if (!below_arg[u] || sub_min[c] < below_min[u]) {
        below_min[u] = sub_min[c];
        below_arg[u] = sub_arg[c];
      }
    }
    if (u == tree.root) {
      continue;
    }
    sub_min[u] = instance.turnover(u);
    sub_arg[u] = u;
    if (below_arg[u] && below_min[u] <= sub_min[u]) {
      sub_min[u] = below_min[u];
      sub_arg[u] = *below_arg[u];
    }
  }

  std::vector<Turnover> effective = instance.turnovers();
  std::vector<PruneEvent> events;
  for (Index u : tree.preorder) {
    if (u == tree.root || !below_arg[u] || below_min[u] > instance.turnover(u)) {
      continue;
    }
    effective[u] = below_min[u];
    events.push_back({instance.id_of(u),
                      instance.turnover(u),
                      below_min[u],
                      instance.id_of(*below_arg[u])});
  }
  return {instance.with_turnovers(effective), topology, std::move(events)};
}

DistanceMatrix metric_closure(const Instance& instance) {
  validate(instance);
  const std::size_t n = instance.size();
  DistanceMatrix dist(n);
  using Entry = std::pair<Rational, Index>;
  for (Index s = 0; s < n; ++s) {
    std::vector<std::optional<Rational>> best(n);
    std::vector<bool> done(n, false);
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    best[s] = Rational(0);
    queue.emplace(Rational(0), s);
    while (!queue.empty()) {
      auto [d, u] = queue.top();
      queue.pop();
      if (done[u]) {
        continue;
      }
      done[u] = true;
      for (const auto& arc : instance.adjacency()[u]) {
        Rational cand = d + instance.edges()[arc.edge].weight;
        if (!best[arc.to] || cand < *best[arc.to]) {
          best[arc.to] = cand;
          queue.emplace(cand, arc.to);
        }
      }
    }
    for (Index t = 0; t < n; ++t) {
      dist(s, t) = *best[t];
    }
  }
  return dist;
}

} // namespace rftt
