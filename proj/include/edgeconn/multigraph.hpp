#pragma once

#include <memory>
#include <numeric>
#include <vector>

#include "edgeconn/simple_graph.hpp"

namespace edgeconn {

struct MultiEdge {
  VertexId u;
  VertexId v;
  EdgeId original;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  VertexId find(VertexId x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<VertexId> parent_;
};

// A contraction of an original simple graph. Every current vertex owns a set
// of original vertices; edges inside a set are gone, parallel edges remain and
// each keeps its original id. No pair of current vertices is joined by more
// than min_degree(original) edges: such pairs are merged on construction.
class MultiGraph {
 public:
  MultiGraph() = default;

  explicit MultiGraph(std::shared_ptr<const SimpleGraph> origin) : origin_(std::move(origin)) {
    std::vector<VertexId> owner(origin_->vertex_count());
    std::iota(owner.begin(), owner.end(), 0);
    build(std::move(owner));
  }

  // owner[x] names the group of original vertex x; group labels are arbitrary.
  static MultiGraph from_partition(std::shared_ptr<const SimpleGraph> origin, std::vector<VertexId> owner) {
    MultiGraph g;
    g.origin_ = std::move(origin);
    if (owner.size() != g.origin_->vertex_count()) throw PreconditionError("partition size mismatch");
    g.build(std::move(owner));
    return g;
  }

  std::size_t vertex_count() const { return members_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::uint64_t total_volume() const { return 2 * edges_.size(); }
  std::uint64_t degree(VertexId v) const { return degree_[v]; }
  ArcId arc_begin(VertexId v) const { return offsets_[v]; }
  ArcId arc_end(VertexId v) const { return offsets_[v + 1]; }
  VertexId arc_head(ArcId a) const { return heads_[a]; }
  std::uint64_t arc_weight(ArcId a) const { return weights_[a]; }

  std::uint64_t multiplicity_cap() const { return origin_->min_degree(); }
  bool is_super(VertexId v) const { return members_[v].size() > 1; }
  const std::vector<VertexId>& members(VertexId v) const { return members_[v]; }
  VertexId owner(VertexId original) const { return owner_[original]; }
  const std::vector<VertexId>& contraction_map() const { return owner_; }
  const std::vector<MultiEdge>& edges() const { return edges_; }
  const SimpleGraph& original() const { return *origin_; }
  const std::shared_ptr<const SimpleGraph>& original_ptr() const { return origin_; }

  std::uint64_t multiplicity(VertexId u, VertexId v) const {
    for (ArcId a = offsets_[u]; a < offsets_[u + 1]; ++a)
      if (heads_[a] == v) return weights_[a];
    return 0;
  }

  std::vector<EdgeId> provenance() const {
    std::vector<EdgeId> out;
    out.reserve(edges_.size());
    for (const MultiEdge& e : edges_) out.push_back(e.original);
    return out;
  }

 private:
  void build(std::vector<VertexId> owner) {
    const SimpleGraph& g = *origin_;
    const std::uint64_t cap = g.min_degree();
    for (;;) {
      canonicalize(owner);
      const std::size_t k = members_.size();
      std::vector<std::vector<std::pair<VertexId, EdgeId>>> rows(k);
      edges_.clear();
      for (EdgeId id = 0; id < g.edge_count(); ++id) {
        VertexId a = owner[g.edge(id).u], b = owner[g.edge(id).v];
        if (a == b) continue;
        edges_.push_back({std::min(a, b), std::max(a, b), id});
        rows[a].emplace_back(b, id);
        rows[b].emplace_back(a, id);
      }
      offsets_.assign(k + 1, 0);
      heads_.clear();
      weights_.clear();
      degree_.assign(k, 0);
      std::vector<std::pair<VertexId, VertexId>> heavy;
      for (VertexId v = 0; v < k; ++v) {
        auto& row = rows[v];
        std::sort(row.begin(), row.end());
        for (std::size_t i = 0; i < row.size();) {
          std::size_t j = i;
          while (j < row.size() && row[j].first == row[i].first) ++j;
          heads_.push_back(row[i].first);
          weights_.push_back(j - i);
          if (cap > 0 && j - i > cap && v < row[i].first) heavy.emplace_back(v, row[i].first);
          degree_[v] += j - i;
          i = j;
        }
        offsets_[v + 1] = heads_.size();
      }
      if (heavy.empty()) break;
      DisjointSets ds(k);
      for (auto [a, b] : heavy) ds.unite(a, b);
      for (VertexId& o : owner) o = ds.find(o);
    }
    owner_ = std::move(owner);
  }

  // Relabels groups by their smallest original member and fills members_.
  void canonicalize(std::vector<VertexId>& owner) {
    std::vector<VertexId> relabel(owner.empty() ? 0 : *std::max_element(owner.begin(), owner.end()) + 1,
                                  kNoVertex);
    members_.clear();
    for (VertexId x = 0; x < owner.size(); ++x) {
      VertexId& r = relabel[owner[x]];
      if (r == kNoVertex) {
        r = static_cast<VertexId>(members_.size());
        members_.emplace_back();
      }
      members_[r].push_back(x);
      owner[x] = r;
    }
  }

  std::shared_ptr<const SimpleGraph> origin_;
  std::vector<VertexId> owner_;
  std::vector<std::vector<VertexId>> members_;
  std::vector<MultiEdge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> heads_;
  std::vector<std::uint64_t> weights_;
  std::vector<std::uint64_t> degree_;
};

// Merges each listed set of current vertices; sets must be disjoint.
// Singletons and empty sets are no-ops.
inline MultiGraph contract(const MultiGraph& g, const std::vector<std::vector<VertexId>>& sets) {
  std::vector<VertexId> group(g.vertex_count());
  std::iota(group.begin(), group.end(), 0);
  std::vector<char> seen(g.vertex_count(), 0);
  for (const auto& s : sets) {
    for (VertexId v : s) {
      if (v >= g.vertex_count()) throw PreconditionError("contract: vertex out of range");
      if (seen[v]) throw PreconditionError("contract: sets overlap");
      seen[v] = 1;
      group[v] = s.front();
    }
  }
  std::vector<VertexId> owner(g.original().vertex_count());
  for (VertexId x = 0; x < owner.size(); ++x) owner[x] = group[g.owner(x)];
  return MultiGraph::from_partition(g.original_ptr(), std::move(owner));
}

inline MultiGraph contract(const MultiGraph& g, const std::vector<VertexId>& set) {
  return contract(g, std::vector<std::vector<VertexId>>{set});
}

}  // namespace edgeconn
