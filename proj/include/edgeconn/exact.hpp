#pragma once

#include <bit>
#include <map>
#include <queue>

#include "edgeconn/cut.hpp"

namespace edgeconn {

struct ExactCut {
  std::uint64_t value = 0;
  std::vector<VertexId> side;
};

// Stoer-Wagner minimum cut with a lazy max-heap per phase.
template <WeightedGraph G>
ExactCut stoer_wagner(const G& g) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw PreconditionError("minimum cut needs at least two vertices");
  std::vector<std::map<VertexId, std::uint64_t>> adj(n);
  for (VertexId u = 0; u < n; ++u)
    for (ArcId a = g.arc_begin(u); a < g.arc_end(u); ++a)
      if (g.arc_head(a) != u) adj[u][g.arc_head(a)] += g.arc_weight(a);
  std::vector<std::vector<VertexId>> members(n);
  for (VertexId v = 0; v < n; ++v) members[v] = {v};
  std::vector<char> merged(n, 0), added(n, 0);
  std::vector<std::uint64_t> key(n, 0);
  ExactCut best;
  best.value = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t remaining = n; remaining > 1; --remaining) {
    std::fill(key.begin(), key.end(), 0);
    std::fill(added.begin(), added.end(), 0);
    std::priority_queue<std::pair<std::uint64_t, std::int64_t>> heap;  // (key, -vertex)
    for (VertexId v = 0; v < n; ++v)
      if (!merged[v]) heap.push({0, -static_cast<std::int64_t>(v)});
    VertexId prev = kNoVertex, last = kNoVertex;
    for (std::size_t i = 0; i < remaining; ++i) {
      VertexId v;
      for (;;) {
        auto [k, nv] = heap.top();
        heap.pop();
        v = static_cast<VertexId>(-nv);
        if (!added[v] && k == key[v]) break;
      }
      added[v] = 1;
      prev = last;
      last = v;
      for (auto [u, w] : adj[v])
        if (!added[u]) {
          key[u] += w;
          heap.push({key[u], -static_cast<std::int64_t>(u)});
        }
    }
    if (key[last] < best.value) {
      best.value = key[last];
      best.side = members[last];
    }
    // merge last into prev
    members[prev].insert(members[prev].end(), members[last].begin(), members[last].end());
    for (auto [u, w] : adj[last]) {
      adj[u].erase(last);
      if (u == prev) continue;
      adj[u][prev] += w;
      adj[prev][u] += w;
    }
    adj[prev].erase(last);
    adj[last].clear();
    merged[last] = 1;
  }
  std::sort(best.side.begin(), best.side.end());
  return best;
}

struct CappedCut {
  bool above_cap = false;
  ExactCut cut;
};

// Exact minimum cut of a contracted graph, reported as above the cap when
// its value exceeds it.
inline CappedCut exact_mincut_multigraph(const MultiGraph& g, std::uint64_t cap) {
  CappedCut r;
  r.cut = stoer_wagner(g);
  r.above_cap = r.cut.value > cap;
  return r;
}

struct BruteForceCuts {
  std::uint64_t value = 0;
  // Every minimum bipartition, each given by the side without the last vertex.
  std::vector<std::vector<VertexId>> sides;
};

// Enumerates all 2^(n-1) - 1 bipartitions in Gray code order. n <= 20.
template <WeightedGraph G>
BruteForceCuts brute_force_mincut(const G& g) {
  const std::size_t n = g.vertex_count();
  if (n < 2 || n > 20) throw PreconditionError("brute force needs 2 <= n <= 20");
  std::vector<char> in(n, 0);
  std::uint64_t boundary = 0;
  std::vector<std::uint32_t> hits;
  BruteForceCuts r;
  r.value = std::numeric_limits<std::uint64_t>::max();
  const std::uint32_t count = 1u << (n - 1);
  std::uint32_t code = 0;
  for (std::uint32_t i = 1; i < count; ++i) {
    const VertexId v = static_cast<VertexId>(std::countr_zero(i));
    for (ArcId a = g.arc_begin(v); a < g.arc_end(v); ++a) {
      const VertexId w = g.arc_head(a);
      if (w == v) continue;
      if (in[w] == in[v]) boundary += g.arc_weight(a);
      else boundary -= g.arc_weight(a);
    }
    in[v] ^= 1;
    code ^= 1u << v;
    if (boundary < r.value) {
      r.value = boundary;
      hits.clear();
    }
    if (boundary == r.value) hits.push_back(code);
  }
  std::sort(hits.begin(), hits.end());
  for (std::uint32_t c : hits) {
    std::vector<VertexId> side;
    for (VertexId v = 0; v + 1 < n; ++v)
      if (c >> v & 1) side.push_back(v);
    r.sides.push_back(std::move(side));
  }
  return r;
}

struct SparseCertificate {
  SimpleGraph graph;            // same vertices, kept edges only
  std::vector<EdgeId> kept;     // id in the input of each kept edge
  std::vector<std::uint32_t> forest;  // 1-based forest index of every input edge
};

// Scan-first search forests F1, F2, ...; keeps the edges of F1..Fk. Every cut
// of at most k edges is preserved exactly, larger cuts keep at least k.
inline SparseCertificate sparse_certificate(const SimpleGraph& g, std::uint32_t k) {
  const std::size_t n = g.vertex_count();
  SparseCertificate c;
  c.forest.assign(g.edge_count(), 0);
  std::vector<std::uint32_t> r(n, 0);
  std::vector<char> scanned(n, 0);
  std::vector<std::vector<VertexId>> bucket(1);
  for (VertexId v = n; v-- > 0;) bucket[0].push_back(v);
  std::size_t top = 0, left = n;
  while (left > 0) {
    while (bucket[top].empty()) --top;
    VertexId x = bucket[top].back();
    bucket[top].pop_back();
    if (scanned[x] || r[x] != top) continue;
    scanned[x] = 1;
    --left;
    for (ArcId a = g.arc_begin(x); a < g.arc_end(x); ++a) {
      VertexId y = g.arc_head(a);
      if (scanned[y]) continue;
      c.forest[g.arc_edge(a)] = ++r[y];
      if (r[y] >= bucket.size()) bucket.resize(r[y] + 1);
      bucket[r[y]].push_back(y);
      top = std::max<std::size_t>(top, r[y]);
    }
  }
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (c.forest[e] <= k) {
      c.kept.push_back(e);
      edges.push_back(g.edge(e));
    }
  c.graph = SimpleGraph(n, std::move(edges));
  return c;
}

}  // namespace edgeconn
