#pragma once

#include <random>
#include <set>

#include "edgeconn/simple_graph.hpp"

namespace edgeconn {

// Uniform double in [0,1) from the raw engine output, so results do not
// depend on the standard library's distribution implementations.
inline double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::uint64_t index_draw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % bound;
}

inline SimpleGraph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) e.push_back({u, v});
  return SimpleGraph(n, std::move(e));
}

inline SimpleGraph cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId u = 0; u < n; ++u) e.push_back({u, static_cast<VertexId>((u + 1) % n)});
  return SimpleGraph(n, std::move(e));
}

inline SimpleGraph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId u = 0; u + 1 < n; ++u) e.push_back({u, u + 1});
  return SimpleGraph(n, std::move(e));
}

// Two copies of K_k on [0,k) and [k,2k) joined by the matching i -- k+i for i < t.
inline SimpleGraph barbell(std::size_t k, std::size_t t) {
  if (t > k) throw PreconditionError("barbell: more bridges than clique vertices");
  std::vector<Edge> e;
  for (std::size_t side = 0; side < 2; ++side)
    for (VertexId u = 0; u < k; ++u)
      for (VertexId v = u + 1; v < k; ++v)
        e.push_back({static_cast<VertexId>(u + side * k), static_cast<VertexId>(v + side * k)});
  for (VertexId i = 0; i < t; ++i) e.push_back({i, static_cast<VertexId>(k + i)});
  return SimpleGraph(2 * k, std::move(e));
}

inline SimpleGraph random_gnp(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> e;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (unit_draw(rng) < p) e.push_back({u, v});
  return SimpleGraph(n, std::move(e));
}

// Two G(half, p) blocks on [0,half) and [half,2 half) plus t distinct random
// edges between them.
inline SimpleGraph planted_cut(std::size_t half, double p, std::size_t t, std::uint64_t seed) {
  if (t > half * half) throw PreconditionError("planted cut: too many crossing edges");
  std::mt19937_64 rng(seed);
  std::vector<Edge> e;
  for (std::size_t side = 0; side < 2; ++side)
    for (VertexId u = 0; u < half; ++u)
      for (VertexId v = u + 1; v < half; ++v)
        if (unit_draw(rng) < p)
          e.push_back({static_cast<VertexId>(u + side * half), static_cast<VertexId>(v + side * half)});
  std::set<std::pair<VertexId, VertexId>> cross;
  while (cross.size() < t) {
    VertexId a = static_cast<VertexId>(index_draw(rng, half));
    VertexId b = static_cast<VertexId>(half + index_draw(rng, half));
    if (cross.insert({a, b}).second) e.push_back({a, b});
  }
  return SimpleGraph(2 * half, std::move(e));
}

}  // namespace edgeconn
