#pragma once

#include <cmath>
#include <optional>

#include "edgeconn/cut.hpp"

namespace edgeconn {

inline double checked_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("teleport probability must lie in (0,1)");
  return alpha;
}

struct MassEntry {
  VertexId vertex;
  double mass;
};

// Starting mass vector, kept in non-increasing order of mass / degree.
class InitialDistribution {
 public:
  template <WeightedGraph G>
  static InitialDistribution point(const G& g, VertexId v) {
    return from_entries(g, {{v, 1.0}});
  }

  // Equal mass 1/|X| on each vertex of X.
  template <WeightedGraph G>
  static InitialDistribution uniform_mass(const G& g, const std::vector<VertexId>& set) {
    if (set.empty()) throw PreconditionError("empty start set");
    std::vector<MassEntry> e;
    for (VertexId v : set) e.push_back({v, 1.0 / static_cast<double>(set.size())});
    return from_entries(g, std::move(e));
  }

  // Mass d(v) / vol(X) on each vertex of X.
  template <WeightedGraph G>
  static InitialDistribution uniform_density(const G& g, const std::vector<VertexId>& set) {
    std::uint64_t vol = 0;
    for (VertexId v : set) vol += g.degree(v);
    if (set.empty() || vol == 0) throw PreconditionError("empty start set");
    std::vector<MassEntry> e;
    for (VertexId v : set) e.push_back({v, static_cast<double>(g.degree(v)) / static_cast<double>(vol)});
    return from_entries(g, std::move(e));
  }

  template <WeightedGraph G>
  static InitialDistribution from_entries(const G& g, std::vector<MassEntry> entries) {
    std::vector<char> seen(g.vertex_count(), 0);
    for (const MassEntry& e : entries) {
      if (e.vertex >= g.vertex_count()) throw PreconditionError("start vertex out of range");
      if (seen[e.vertex]) throw PreconditionError("start vertex listed twice");
      if (!(e.mass >= 0.0)) throw PreconditionError("negative start mass");
      if (g.degree(e.vertex) == 0) throw PreconditionError("start vertex has degree zero");
      seen[e.vertex] = 1;
    }
    std::stable_sort(entries.begin(), entries.end(), [&](const MassEntry& a, const MassEntry& b) {
      return a.mass * static_cast<double>(g.degree(b.vertex)) > b.mass * static_cast<double>(g.degree(a.vertex));
    });
    InitialDistribution d;
    d.entries_ = std::move(entries);
    return d;
  }

  const std::vector<MassEntry>& entries() const { return entries_; }
  double total() const {
    double t = 0;
    for (const MassEntry& e : entries_) t += e.mass;
    return t;
  }

 private:
  std::vector<MassEntry> entries_;
};

// Settled and residual mass together with the per-arc pushed flow. After a
// quantised run each touched vertex sits in the group of its push count, and
// its settled density is exactly count * epsilon * alpha.
class MassState {
 public:
  MassState() = default;

  template <WeightedGraph G>
  MassState(const G& g, double alpha, const InitialDistribution& start)
      : alpha_(checked_alpha(alpha)),
        settled_(g.vertex_count(), 0.0),
        residual_(g.vertex_count(), 0.0),
        flow_(arc_total(g), 0.0),
        pushes_(g.vertex_count(), 0),
        touched_(g.vertex_count(), 0),
        total_volume_(g.total_volume()) {
    for (const MassEntry& e : start.entries()) {
      residual_[e.vertex] = e.mass;
      touch(e.vertex);
    }
  }

  double alpha() const { return alpha_; }
  double epsilon() const { return epsilon_; }
  bool quantized() const { return quantized_; }
  double settled(VertexId v) const { return settled_[v]; }
  double residual(VertexId v) const { return residual_[v]; }
  const std::vector<double>& settled() const { return settled_; }
  const std::vector<double>& residual() const { return residual_; }
  std::uint64_t push_count(VertexId v) const { return pushes_[v]; }
  std::uint64_t total_pushes() const { return total_pushes_; }
  std::uint64_t work() const { return work_; }
  std::uint64_t total_volume() const { return total_volume_; }
  const std::vector<VertexId>& touched() const { return touched_list_; }
  double arc_flow(ArcId a) const { return flow_[a]; }

  double settled_total() const {
    double t = 0;
    for (VertexId v : touched_list_) t += settled_[v];
    return t;
  }
  double residual_total() const {
    double t = 0;
    for (VertexId v : touched_list_) t += residual_[v];
    return t;
  }

  // Moves q of u's residual: alpha*q settles, (1-alpha)q/2 spreads over the
  // arcs, the rest stays.
  template <WeightedGraph G>
  void push_amount(const G& g, VertexId u, double q) {
    const std::uint64_t d = g.degree(u);
    if (d == 0) throw PreconditionError("push from a vertex of degree zero");
    if (q < 0 || q > residual_[u] * (1 + 1e-12) + 1e-300) throw PreconditionError("push amount exceeds residual");
    settled_[u] += alpha_ * q;
    residual_[u] -= (1 + alpha_) * q / 2;
    const double share = (1 - alpha_) * q / (2 * static_cast<double>(d));
    for (ArcId a = g.arc_begin(u); a < g.arc_end(u); ++a) {
      const double f = share * static_cast<double>(g.arc_weight(a));
      flow_[a] += f;
      VertexId w = g.arc_head(a);
      residual_[w] += f;
      touch(w);
    }
    ++total_pushes_;
    work_ += d;
    if (q > 0) ++pushes_[u];
  }

  template <WeightedGraph G>
  void push(const G& g, VertexId u) {
    quantized_ = false;
    push_amount(g, u, residual_[u]);
  }

  // Net mass sent over the edges joining u and v.
  template <WeightedGraph G>
  double net_flow(const G& g, VertexId u, VertexId v) const {
    double f = 0;
    for (ArcId a = g.arc_begin(u); a < g.arc_end(u); ++a)
      if (g.arc_head(a) == v) f += flow_[a];
    for (ArcId a = g.arc_begin(v); a < g.arc_end(v); ++a)
      if (g.arc_head(a) == u) f -= flow_[a];
    return f;
  }

 private:
  template <WeightedGraph G>
  static std::size_t arc_total(const G& g) {
    return g.vertex_count() == 0 ? 0 : g.arc_end(static_cast<VertexId>(g.vertex_count() - 1));
  }
  void touch(VertexId v) {
    if (!touched_[v]) {
      touched_[v] = 1;
      touched_list_.push_back(v);
    }
  }

  friend class PushRun;

  double alpha_ = 0.5;
  double epsilon_ = 0;
  bool quantized_ = false;
  std::vector<double> settled_, residual_, flow_;
  std::vector<std::uint64_t> pushes_;
  std::vector<char> touched_;
  std::vector<VertexId> touched_list_;
  std::uint64_t total_pushes_ = 0, work_ = 0, total_volume_ = 0;
};

// Quantised approximate PageRank: while some vertex has residual density at
// least epsilon, push exactly epsilon * d(u) from it. Active vertices are
// served first in first out, seeded in the start order. Can be advanced in
// slices of work so several runs may be interleaved.
class PushRun {
 public:
  template <WeightedGraph G>
  PushRun(const G& g, double alpha, double epsilon, const InitialDistribution& start)
      : state_(g, alpha, start), queued_(g.vertex_count(), 0), limit_(g.vertex_count()) {
    if (!(epsilon > 0)) throw PreconditionError("epsilon must be positive");
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      limit_[v] = g.degree(v) ? epsilon * static_cast<double>(g.degree(v)) : std::numeric_limits<double>::infinity();
    state_.epsilon_ = epsilon;
    state_.quantized_ = true;
    for (const MassEntry& e : start.entries())
      if (active(g, e.vertex)) enqueue(e.vertex);
  }

  // Runs until no vertex is active or at least budget units of work (sum of
  // degrees pushed from) were spent. Returns true once finished.
  template <WeightedGraph G>
  bool advance(const G& g, std::uint64_t budget = std::numeric_limits<std::uint64_t>::max()) {
    const std::uint64_t stop = state_.work_ + std::min(budget, std::numeric_limits<std::uint64_t>::max() - state_.work_);
    const double eps = state_.epsilon_;
    const double alpha = state_.alpha_;
    MassState& st = state_;
    while (head_ < queue_.size() && st.work_ < stop) {
      VertexId u = queue_[head_++];
      queued_[u] = 0;
      const std::uint64_t d = g.degree(u);
      const double q = limit_[u];
      if (st.residual_[u] < q) continue;
      // Inline form of MassState::push_amount that also activates neighbours.
      st.settled_[u] += alpha * q;
      st.residual_[u] -= (1 + alpha) * q / 2;
      const double share = (1 - alpha) * eps / 2;
      for (ArcId a = g.arc_begin(u), e = g.arc_end(u); a < e; ++a) {
        const double f = share * static_cast<double>(g.arc_weight(a));
        st.flow_[a] += f;
        const VertexId w = g.arc_head(a);
        const double rw = st.residual_[w] += f;
        st.touch(w);
        if (!queued_[w] && rw >= limit_[w]) enqueue(w);
      }
      ++st.total_pushes_;
      st.work_ += d;
      ++st.pushes_[u];
      if (!queued_[u] && active(g, u)) enqueue(u);
      if (head_ > 4096 && 2 * head_ > queue_.size()) {
        queue_.erase(queue_.begin(), queue_.begin() + static_cast<std::ptrdiff_t>(head_));
        head_ = 0;
      }
    }
    return head_ == queue_.size();
  }

  bool finished() const { return head_ == queue_.size(); }
  const MassState& state() const { return state_; }
  MassState take() { return std::move(state_); }

 private:
  template <WeightedGraph G>
  bool active(const G&, VertexId v) const {
    return state_.residual_[v] >= limit_[v];
  }
  void enqueue(VertexId v) {
    queued_[v] = 1;
    queue_.push_back(v);
  }

  MassState state_;
  std::vector<VertexId> queue_;
  std::size_t head_ = 0;
  std::vector<char> queued_;
  std::vector<double> limit_;
};

template <WeightedGraph G>
MassState approximate_pagerank(const G& g, double alpha, double epsilon, const InitialDistribution& start) {
  PushRun run(g, alpha, epsilon, start);
  run.advance(g);
  return run.take();
}

// Vertices with positive settled mass in non-increasing settled density.
// For a quantised state the order inside one density group is the order in
// which the vertices were first reached; otherwise ties go by vertex id.
struct DensityOrder {
  std::vector<VertexId> vertex;
  std::vector<double> density;
  bool has_zero_mass_vertex = false;
  std::uint64_t total_volume = 0;
};

template <WeightedGraph G>
DensityOrder density_order(const G& g, const MassState& s) {
  DensityOrder o;
  o.total_volume = g.total_volume();
  std::vector<VertexId> pos;
  for (VertexId v : s.touched())
    if (s.settled(v) > 0) pos.push_back(v);
  if (s.quantized()) {
    // Counting sort on push counts; touched() lists vertices by first touch,
    // which is stable with respect to the push schedule.
    std::uint64_t top = 0;
    for (VertexId v : pos) top = std::max(top, s.push_count(v));
    std::vector<std::vector<VertexId>> groups(top + 1);
    for (VertexId v : pos) groups[s.push_count(v)].push_back(v);
    const double step = s.epsilon() * s.alpha();
    for (std::uint64_t c = top; c >= 1; --c)
      for (VertexId v : groups[c]) {
        o.vertex.push_back(v);
        o.density.push_back(static_cast<double>(c) * step);
      }
  } else {
    std::sort(pos.begin(), pos.end(), [&](VertexId a, VertexId b) {
      double da = s.settled(a) / static_cast<double>(g.degree(a));
      double db = s.settled(b) / static_cast<double>(g.degree(b));
      return da != db ? da > db : a < b;
    });
    for (VertexId v : pos) {
      o.vertex.push_back(v);
      o.density.push_back(s.settled(v) / static_cast<double>(g.degree(v)));
    }
  }
  o.has_zero_mass_vertex = o.vertex.size() < g.vertex_count();
  return o;
}

// vol of {v : density(v) >= x} (or > x when strict).
template <WeightedGraph G>
std::uint64_t volume_above(const G& g, const DensityOrder& o, double x, bool strict = false) {
  if (x < 0 || (!strict && x == 0)) return g.total_volume();
  std::uint64_t vol = 0;
  for (std::size_t i = 0; i < o.vertex.size(); ++i)
    if (strict ? o.density[i] > x : o.density[i] >= x) vol += g.degree(o.vertex[i]);
  return vol;
}

// vol of {v : density(v) < x} (or <= x when inclusive).
template <WeightedGraph G>
std::uint64_t volume_below(const G& g, const DensityOrder& o, double x, bool inclusive = false) {
  return g.total_volume() - volume_above(g, o, x, /*strict=*/inclusive);
}

enum class SweepSide { High, Low };

// Best candidate among the prefix sets of the density order (High) or their
// complements (Low) that arise as threshold sets for a threshold in the given
// range: (lo, hi] for High, [lo, hi) for Low. Splits inside one group of equal
// density are allowed strictly between lo and hi. Empty and full sets are
// skipped. Smallest conductance wins, then smallest volume.
template <WeightedGraph G>
std::optional<CutView> sweep(const G& g, const DensityOrder& o, SweepSide side, double lo, double hi) {
  const std::size_t k = o.vertex.size();
  const std::size_t n = g.vertex_count();
  const std::uint64_t total = g.total_volume();
  std::vector<char> in(n, 0);
  std::uint64_t boundary = 0, vol = 0;
  bool have = false;
  std::size_t best_j = 0;
  std::uint64_t best_b = 0, best_den = 0, best_vol = 0;
  for (std::size_t j = 1; j <= k; ++j) {
    VertexId u = o.vertex[j - 1];
    std::uint64_t inside = 0;
    for (ArcId a = g.arc_begin(u); a < g.arc_end(u); ++a)
      if (in[g.arc_head(a)]) inside += g.arc_weight(a);
    in[u] = 1;
    vol += g.degree(u);
    boundary = boundary + g.degree(u) - 2 * inside;
    if (j == n) break;
    const double here = o.density[j - 1];
    const double next = j < k ? o.density[j] : (o.has_zero_mass_vertex ? 0.0 : -std::numeric_limits<double>::infinity());
    bool ok;
    if (next < here)
      ok = side == SweepSide::High ? (next < hi && here > lo) : (next < hi && here >= lo);
    else
      ok = side == SweepSide::High ? (lo < here && here < hi) : (lo <= here && here < hi);
    if (!ok) continue;
    const std::uint64_t cand_vol = side == SweepSide::High ? vol : total - vol;
    const std::uint64_t den = std::min(vol, total - vol);
    if (!have || better_cut(boundary, den, cand_vol, best_b, best_den, best_vol)) {
      have = true;
      best_j = j;
      best_b = boundary;
      best_den = den;
      best_vol = cand_vol;
    }
  }
  if (!have) return std::nullopt;
  CutView c;
  c.boundary = best_b;
  c.volume = best_vol;
  c.total_volume = total;
  if (side == SweepSide::High) {
    c.side.assign(o.vertex.begin(), o.vertex.begin() + static_cast<std::ptrdiff_t>(best_j));
  } else {
    std::vector<char> top(n, 0);
    for (std::size_t i = 0; i < best_j; ++i) top[o.vertex[i]] = 1;
    for (VertexId v = 0; v < n; ++v)
      if (!top[v]) c.side.push_back(v);
  }
  std::sort(c.side.begin(), c.side.end());
  return c;
}

template <WeightedGraph G>
std::optional<CutView> sweep_high(const G& g, const MassState& s, double lo, double hi) {
  return sweep(g, density_order(g, s), SweepSide::High, lo, hi);
}

template <WeightedGraph G>
std::optional<CutView> sweep_low(const G& g, const MassState& s, double lo, double hi) {
  return sweep(g, density_order(g, s), SweepSide::Low, lo, hi);
}

// Settled mass of S minus vol(S) / vol(V).
template <WeightedGraph G>
double excess(const G& g, const std::vector<double>& mass, const std::vector<VertexId>& set) {
  double p = 0;
  std::uint64_t vol = 0;
  for (VertexId v : set) {
    p += mass[v];
    vol += g.degree(v);
  }
  return p - static_cast<double>(vol) / static_cast<double>(g.total_volume());
}

template <WeightedGraph G>
double excess(const G& g, const MassState& s, const std::vector<VertexId>& set) {
  return excess(g, s.settled(), set);
}

}  // namespace edgeconn
