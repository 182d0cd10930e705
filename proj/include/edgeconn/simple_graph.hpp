#pragma once

#include <algorithm>
#include <concepts>
#include <span>
#include <utility>
#include <vector>

#include "edgeconn/types.hpp"

namespace edgeconn {

// Anything the push and sweep routines can walk: CSR arcs with integer
// multiplicities, degree = sum of incident multiplicities.
template <class G>
concept WeightedGraph = requires(const G& g, VertexId v, ArcId a) {
  { g.vertex_count() } -> std::convertible_to<std::size_t>;
  { g.arc_begin(v) } -> std::convertible_to<ArcId>;
  { g.arc_end(v) } -> std::convertible_to<ArcId>;
  { g.arc_head(a) } -> std::convertible_to<VertexId>;
  { g.arc_weight(a) } -> std::convertible_to<std::uint64_t>;
  { g.degree(v) } -> std::convertible_to<std::uint64_t>;
  { g.total_volume() } -> std::convertible_to<std::uint64_t>;
};

struct Edge {
  VertexId u;
  VertexId v;
};

// Immutable undirected simple graph. Edge ids are dense in [0, m).
class SimpleGraph {
 public:
  SimpleGraph() = default;

  // Throws PreconditionError on self-loops, parallel edges or bad endpoints.
  SimpleGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    std::vector<std::size_t> count(n_ + 1, 0);
    for (const Edge& e : edges_) {
      if (e.u >= n_ || e.v >= n_) throw PreconditionError("edge endpoint out of range");
      if (e.u == e.v) throw PreconditionError("self-loop in simple graph");
      ++count[e.u];
      ++count[e.v];
    }
    offsets_.assign(n_ + 1, 0);
    for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + count[v];
    heads_.resize(offsets_[n_]);
    arc_edge_.resize(offsets_[n_]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (EdgeId id = 0; id < edges_.size(); ++id) {
      const Edge& e = edges_[id];
      heads_[fill[e.u]] = e.v;
      arc_edge_[fill[e.u]++] = id;
      heads_[fill[e.v]] = e.u;
      arc_edge_[fill[e.v]++] = id;
    }
    for (VertexId v = 0; v < n_; ++v) {
      std::vector<std::pair<VertexId, EdgeId>> row;
      for (ArcId a = offsets_[v]; a < offsets_[v + 1]; ++a) row.emplace_back(heads_[a], arc_edge_[a]);
      std::sort(row.begin(), row.end());
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i > 0 && row[i].first == row[i - 1].first)
          throw PreconditionError("parallel edge in simple graph");
        heads_[offsets_[v] + i] = row[i].first;
        arc_edge_[offsets_[v] + i] = row[i].second;
      }
    }
    min_degree_ = 0;
    if (n_ > 0) {
      min_degree_ = degree(0);
      for (VertexId v = 1; v < n_; ++v) min_degree_ = std::min(min_degree_, degree(v));
    }
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::uint64_t total_volume() const { return 2 * edges_.size(); }
  std::uint64_t min_degree() const { return min_degree_; }

  std::uint64_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  ArcId arc_begin(VertexId v) const { return offsets_[v]; }
  ArcId arc_end(VertexId v) const { return offsets_[v + 1]; }
  VertexId arc_head(ArcId a) const { return heads_[a]; }
  std::uint64_t arc_weight(ArcId) const { return 1; }
  EdgeId arc_edge(ArcId a) const { return arc_edge_[a]; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {heads_.data() + offsets_[v], heads_.data() + offsets_[v + 1]};
  }
  const Edge& edge(EdgeId id) const { return edges_[id]; }
  const std::vector<Edge>& edges() const { return edges_; }

  VertexId min_degree_vertex() const {
    for (VertexId v = 0; v < n_; ++v)
      if (degree(v) == min_degree_) return v;
    return kNoVertex;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> heads_;
  std::vector<EdgeId> arc_edge_;
  std::uint64_t min_degree_ = 0;
};

// Connected components by BFS; returns component index per vertex and the count.
template <WeightedGraph G>
std::pair<std::vector<std::uint32_t>, std::uint32_t> connected_components(const G& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> comp(n, std::numeric_limits<std::uint32_t>::max());
  std::uint32_t count = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < n; ++s) {
    if (comp[s] != std::numeric_limits<std::uint32_t>::max()) continue;
    comp[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (ArcId a = g.arc_begin(v); a < g.arc_end(v); ++a) {
        VertexId w = g.arc_head(a);
        if (comp[w] == std::numeric_limits<std::uint32_t>::max()) {
          comp[w] = count;
          stack.push_back(w);
        }
      }
    }
    ++count;
  }
  return {std::move(comp), count};
}

template <WeightedGraph G>
bool is_connected(const G& g) {
  return g.vertex_count() <= 1 || connected_components(g).second == 1;
}

}  // namespace edgeconn
