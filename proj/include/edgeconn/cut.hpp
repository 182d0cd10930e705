#pragma once

#include <limits>
#include <type_traits>

#include "edgeconn/multigraph.hpp"

namespace edgeconn {

// One side of a bipartition with its boundary and volume. Conductance is
// boundary / min(volume, total_volume - volume); comparisons use the exact
// integer pair.
struct CutView {
  std::vector<VertexId> side;
  std::uint64_t boundary = 0;
  std::uint64_t volume = 0;
  std::uint64_t total_volume = 0;
  std::vector<EdgeId> boundary_edges;

  std::uint64_t denominator() const { return std::min(volume, total_volume - volume); }
  double conductance() const {
    const std::uint64_t d = denominator();
    if (d == 0) return std::numeric_limits<double>::infinity();
    return static_cast<double>(boundary) / static_cast<double>(d);
  }
};

// a/b < c/d for non-negative integers, with x/0 treated as +infinity.
inline bool ratio_less(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  if (b == 0) return false;
  if (d == 0) return true;
  return static_cast<unsigned __int128>(a) * d < static_cast<unsigned __int128>(c) * b;
}

// Smaller conductance wins, then smaller volume.
inline bool better_cut(std::uint64_t boundary_a, std::uint64_t den_a, std::uint64_t vol_a,
                       std::uint64_t boundary_b, std::uint64_t den_b, std::uint64_t vol_b) {
  if (ratio_less(boundary_a, den_a, boundary_b, den_b)) return true;
  if (ratio_less(boundary_b, den_b, boundary_a, den_a)) return false;
  return vol_a < vol_b;
}

inline bool better_cut(const CutView& a, const CutView& b) {
  return better_cut(a.boundary, a.denominator(), a.volume, b.boundary, b.denominator(), b.volume);
}

template <WeightedGraph G>
std::vector<char> membership(const G& g, const std::vector<VertexId>& side) {
  std::vector<char> in(g.vertex_count(), 0);
  for (VertexId v : side) {
    if (v >= g.vertex_count()) throw PreconditionError("cut side: vertex out of range");
    in[v] = 1;
  }
  return in;
}

// Throws PreconditionError when side is empty or everything.
template <WeightedGraph G>
CutView cut_view(const G& g, std::vector<VertexId> side) {
  std::sort(side.begin(), side.end());
  side.erase(std::unique(side.begin(), side.end()), side.end());
  if (side.empty() || side.size() >= g.vertex_count()) throw PreconditionError("cut side must be proper");
  const std::vector<char> in = membership(g, side);
  CutView c;
  c.total_volume = g.total_volume();
  for (VertexId v : side) {
    c.volume += g.degree(v);
    for (ArcId a = g.arc_begin(v); a < g.arc_end(v); ++a)
      if (!in[g.arc_head(a)]) c.boundary += g.arc_weight(a);
  }
  c.side = std::move(side);
  if constexpr (std::is_same_v<G, SimpleGraph>) {
    for (EdgeId id = 0; id < g.edge_count(); ++id)
      if (in[g.edge(id).u] != in[g.edge(id).v]) c.boundary_edges.push_back(id);
  } else if constexpr (std::is_same_v<G, MultiGraph>) {
    for (const MultiEdge& e : g.edges())
      if (in[e.u] != in[e.v]) c.boundary_edges.push_back(e.original);
    std::sort(c.boundary_edges.begin(), c.boundary_edges.end());
  }
  return c;
}

template <WeightedGraph G>
double conductance(const G& g, const std::vector<VertexId>& side) {
  return cut_view(g, side).conductance();
}

// Expands a cut of a contracted graph to the original vertices.
inline CutView map_cut_to_original(const MultiGraph& g, const std::vector<VertexId>& side) {
  std::vector<VertexId> expanded;
  for (VertexId v : side) {
    if (v >= g.vertex_count()) throw PreconditionError("cut side: vertex out of range");
    expanded.insert(expanded.end(), g.members(v).begin(), g.members(v).end());
  }
  return cut_view(g.original(), std::move(expanded));
}

// True when deleting the listed edges leaves the side disconnected from the rest.
inline bool separates(const SimpleGraph& g, const std::vector<VertexId>& side, const std::vector<EdgeId>& removed) {
  std::vector<char> gone(g.edge_count(), 0);
  for (EdgeId e : removed) gone[e] = 1;
  std::vector<char> in = membership(g, side);
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<VertexId> stack;
  for (VertexId s : side) {
    if (seen[s]) continue;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (ArcId a = g.arc_begin(v); a < g.arc_end(v); ++a) {
        if (gone[g.arc_edge(a)]) continue;
        VertexId w = g.arc_head(a);
        if (!in[w]) return false;
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return true;
}

}  // namespace edgeconn
