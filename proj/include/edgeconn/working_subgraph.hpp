#pragma once

#include "edgeconn/multigraph.hpp"

namespace edgeconn {

// A graph on local ids 0..k-1 with CSR arcs and multiplicities; to_host maps
// local ids back to the graph it was cut out of.
class LocalGraph {
 public:
  std::size_t vertex_count() const { return to_host_.size(); }
  std::uint64_t total_volume() const { return total_; }
  std::uint64_t degree(VertexId v) const { return degree_[v]; }
  ArcId arc_begin(VertexId v) const { return offsets_[v]; }
  ArcId arc_end(VertexId v) const { return offsets_[v + 1]; }
  VertexId arc_head(ArcId a) const { return heads_[a]; }
  std::uint64_t arc_weight(ArcId a) const { return weights_[a]; }
  VertexId to_host(VertexId v) const { return to_host_[v]; }
  const std::vector<VertexId>& host_ids() const { return to_host_; }
  std::uint64_t edge_count() const { return total_ / 2; }

  std::vector<VertexId> to_host(const std::vector<VertexId>& local) const {
    std::vector<VertexId> out;
    for (VertexId v : local) out.push_back(to_host_[v]);
    std::sort(out.begin(), out.end());
    return out;
  }
  std::uint64_t volume(const std::vector<VertexId>& local) const {
    std::uint64_t t = 0;
    for (VertexId v : local) t += degree_[v];
    return t;
  }

 private:
  friend class WorkingSubgraph;
  std::vector<VertexId> to_host_;
  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> heads_;
  std::vector<std::uint64_t> weights_;
  std::vector<std::uint64_t> degree_;
  std::uint64_t total_ = 0;
};

// The subgraph H of a contracted graph that the clustering works on: a set
// of alive vertices and alive arcs. Removing an edge removes all parallel
// copies between its endpoints, which is all that cutting and trimming need.
class WorkingSubgraph {
 public:
  explicit WorkingSubgraph(const MultiGraph& host)
      : host_(&host),
        vertex_alive_(host.vertex_count(), 1),
        arc_alive_(host.vertex_count() ? host.arc_end(static_cast<VertexId>(host.vertex_count() - 1)) : 0, 1),
        reverse_(arc_alive_.size()),
        degree_(host.vertex_count()) {
    for (VertexId u = 0; u < host.vertex_count(); ++u) {
      degree_[u] = host.degree(u);
      for (ArcId a = host.arc_begin(u); a < host.arc_end(u); ++a) {
        VertexId w = host.arc_head(a);
        ArcId lo = host.arc_begin(w), hi = host.arc_end(w);
        while (lo < hi) {
          ArcId mid = (lo + hi) / 2;
          if (host.arc_head(mid) < u) lo = mid + 1;
          else hi = mid;
        }
        reverse_[a] = lo;
      }
    }
    edges_ = host.edge_count();
  }

  const MultiGraph& host() const { return *host_; }
  bool alive(VertexId v) const { return vertex_alive_[v]; }
  bool arc_alive(ArcId a) const { return arc_alive_[a]; }
  std::uint64_t degree(VertexId v) const { return degree_[v]; }
  std::uint64_t lost_degree(VertexId v) const { return host_->degree(v) - degree_[v]; }
  std::uint64_t edge_count() const { return edges_; }

  // Removes v and its incident edges; returns the number of edges removed.
  std::uint64_t remove_vertex(VertexId v) {
    if (!vertex_alive_[v]) return 0;
    std::uint64_t removed = 0;
    for (ArcId a = host_->arc_begin(v); a < host_->arc_end(v); ++a)
      if (arc_alive_[a]) removed += kill(v, a);
    vertex_alive_[v] = 0;
    return removed;
  }

  // Removes every edge between `side` and `rest`; returns how many.
  std::uint64_t cut(const std::vector<VertexId>& side, const std::vector<VertexId>& rest) {
    std::vector<char>& mark = scratch();
    for (VertexId v : rest) mark[v] = 1;
    std::uint64_t removed = 0;
    for (VertexId v : side)
      for (ArcId a = host_->arc_begin(v); a < host_->arc_end(v); ++a)
        if (arc_alive_[a] && mark[host_->arc_head(a)]) removed += kill(v, a);
    for (VertexId v : rest) mark[v] = 0;
    return removed;
  }

  // Removes, until none is left, alive vertices that lost more than
  // `fraction` of their degree in the host. Returns edges removed; the removed
  // vertices are appended to `gone` when given.
  std::uint64_t trim(const std::vector<VertexId>& candidates, double fraction, std::vector<VertexId>* gone = nullptr) {
    std::vector<VertexId> stack;
    for (VertexId v : candidates)
      if (vertex_alive_[v] && over(v, fraction)) stack.push_back(v);
    std::uint64_t removed = 0;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      if (!vertex_alive_[v]) continue;
      for (ArcId a = host_->arc_begin(v); a < host_->arc_end(v); ++a) {
        if (!arc_alive_[a]) continue;
        VertexId w = host_->arc_head(a);
        removed += kill(v, a);
        if (vertex_alive_[w] && over(w, fraction)) stack.push_back(w);
      }
      vertex_alive_[v] = 0;
      if (gone) gone->push_back(v);
    }
    return removed;
  }

  std::uint64_t trim_all(double fraction, std::vector<VertexId>* gone = nullptr) {
    std::vector<VertexId> all;
    for (VertexId v = 0; v < host_->vertex_count(); ++v) all.push_back(v);
    return trim(all, fraction, gone);
  }

  bool trimmed(double fraction) const {
    for (VertexId v = 0; v < host_->vertex_count(); ++v)
      if (vertex_alive_[v] && over(v, fraction)) return false;
    return true;
  }

  // Connected components of H among the given alive vertices (all alive
  // vertices when `within` is empty).
  std::vector<std::vector<VertexId>> components(const std::vector<VertexId>& within) const {
    std::vector<char> allowed(host_->vertex_count(), 0), seen(host_->vertex_count(), 0);
    if (within.empty()) {
      for (VertexId v = 0; v < host_->vertex_count(); ++v) allowed[v] = vertex_alive_[v];
    } else {
      for (VertexId v : within) allowed[v] = vertex_alive_[v];
    }
    std::vector<std::vector<VertexId>> out;
    std::vector<VertexId> stack;
    for (VertexId s = 0; s < host_->vertex_count(); ++s) {
      if (!allowed[s] || seen[s]) continue;
      out.emplace_back();
      seen[s] = 1;
      stack.push_back(s);
      while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        out.back().push_back(v);
        for (ArcId a = host_->arc_begin(v); a < host_->arc_end(v); ++a) {
          VertexId w = host_->arc_head(a);
          if (arc_alive_[a] && allowed[w] && !seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
        }
      }
      std::sort(out.back().begin(), out.back().end());
    }
    return out;
  }

  // H restricted to `set`, with local ids in non-decreasing order of H-degree
  // (ties by host id).
  LocalGraph local(std::vector<VertexId> set) const {
    std::sort(set.begin(), set.end(), [&](VertexId a, VertexId b) {
      return degree_[a] != degree_[b] ? degree_[a] < degree_[b] : a < b;
    });
    LocalGraph L;
    L.to_host_ = set;
    std::vector<VertexId> local_id(host_->vertex_count(), kNoVertex);
    for (VertexId i = 0; i < set.size(); ++i) local_id[set[i]] = i;
    L.degree_.assign(set.size(), 0);
    std::vector<std::pair<VertexId, std::uint64_t>> row;
    for (VertexId i = 0; i < set.size(); ++i) {
      row.clear();
      VertexId v = set[i];
      for (ArcId a = host_->arc_begin(v); a < host_->arc_end(v); ++a) {
        VertexId w = host_->arc_head(a);
        if (arc_alive_[a] && local_id[w] != kNoVertex) row.emplace_back(local_id[w], host_->arc_weight(a));
      }
      std::sort(row.begin(), row.end());
      for (auto [w, k] : row) {
        L.heads_.push_back(w);
        L.weights_.push_back(k);
        L.degree_[i] += k;
      }
      L.offsets_.push_back(L.heads_.size());
      L.total_ += L.degree_[i];
    }
    return L;
  }

  // Edges of H with both endpoints in the set, counted with multiplicity.
  std::uint64_t internal_edges(const std::vector<VertexId>& set) const {
    std::vector<char>& mark = scratch();
    for (VertexId v : set) mark[v] = 1;
    std::uint64_t twice = 0;
    for (VertexId v : set)
      for (ArcId a = host_->arc_begin(v); a < host_->arc_end(v); ++a)
        if (arc_alive_[a] && mark[host_->arc_head(a)]) twice += host_->arc_weight(a);
    for (VertexId v : set) mark[v] = 0;
    return twice / 2;
  }

 private:
  bool over(VertexId v, double fraction) const {
    return static_cast<double>(lost_degree(v)) > fraction * static_cast<double>(host_->degree(v)) + 1e-9;
  }
  std::uint64_t kill(VertexId v, ArcId a) {
    const std::uint64_t k = host_->arc_weight(a);
    arc_alive_[a] = 0;
    arc_alive_[reverse_[a]] = 0;
    degree_[v] -= k;
    degree_[host_->arc_head(a)] -= k;
    edges_ -= k;
    return k;
  }
  std::vector<char>& scratch() const {
    scratch_.resize(host_->vertex_count(), 0);
    return scratch_;
  }

  const MultiGraph* host_;
  std::vector<char> vertex_alive_;
  std::vector<char> arc_alive_;
  std::vector<ArcId> reverse_;
  std::vector<std::uint64_t> degree_;
  std::uint64_t edges_ = 0;
  mutable std::vector<char> scratch_;
};

}  // namespace edgeconn
