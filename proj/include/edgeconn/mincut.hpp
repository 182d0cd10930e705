#pragma once

#include "edgeconn/exact.hpp"
#include "edgeconn/kernel.hpp"

namespace edgeconn {

enum class CutKind { Trivial, NonTrivial };
enum class CutSource { Disconnected, FallbackExact, Kernel, MinDegree };

inline const char* to_string(CutKind k) { return k == CutKind::Trivial ? "trivial" : "non-trivial"; }
inline const char* to_string(CutSource s) {
  switch (s) {
    case CutSource::Disconnected: return "disconnected";
    case CutSource::FallbackExact: return "fallback-exact";
    case CutSource::Kernel: return "kernel";
    case CutSource::MinDegree: return "min-degree";
  }
  return "?";
}

struct MinCutResult {
  std::uint64_t lambda = 0;
  CutView cut;  // over the input graph; boundary_edges are input edge ids
  CutKind kind = CutKind::Trivial;
  CutSource source = CutSource::MinDegree;
  std::size_t kernel_vertices = 0;
  std::size_t kernel_edges = 0;
  std::size_t rounds = 0;
};

// Kernel of a sparse certificate with k = delta, pulled back to the input by
// merging the endpoints of every edge the certificate dropped.
inline KernelResult kernel_vertex_bound(const SimpleGraph& g, const PipelineConfig& cfg) {
  if (g.vertex_count() < 2) throw PreconditionError("graph needs at least two vertices");
  if (!is_connected(g)) throw PreconditionError("graph is not connected");
  SparseCertificate cert = sparse_certificate(g, static_cast<std::uint32_t>(g.min_degree()));
  KernelResult inner = build_kernel(cert.graph, cfg);
  auto origin = std::make_shared<const SimpleGraph>(g);
  std::vector<VertexId> owner = inner.kernel.contraction_map();
  DisjointSets ds(inner.kernel.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (cert.forest[e] > g.min_degree()) ds.unite(owner[g.edge(e).u], owner[g.edge(e).v]);
  for (VertexId& o : owner) o = ds.find(o);
  KernelResult out = std::move(inner);
  out.kernel = MultiGraph::from_partition(origin, std::move(owner));
  return out;
}

inline KernelResult compute_kernel(const SimpleGraph& g, const PipelineConfig& cfg) {
  return cfg.sparse_certificate_first ? kernel_vertex_bound(g, cfg) : build_kernel(g, cfg);
}

inline MinCutResult finish(const SimpleGraph& g, CutView cut, CutSource source) {
  MinCutResult r;
  r.lambda = cut.boundary;
  r.source = source;
  const std::size_t k = cut.side.size();
  r.kind = (k == 1 || k + 1 == g.vertex_count()) ? CutKind::Trivial : CutKind::NonTrivial;
  if (cut.boundary_edges.size() != cut.boundary || !separates(g, cut.side, cut.boundary_edges))
    throw Error("internal error: reported cut does not separate its side");
  r.cut = std::move(cut);
  return r;
}

// Edge connectivity with a witness cut. The kernel built on the way is
// handed back through kernel_out when the graph is connected.
inline MinCutResult minimum_cut(const SimpleGraph& g, const PipelineConfig& cfg = PipelineConfig::paper(),
                                KernelResult* kernel_out = nullptr) {
  if (g.vertex_count() < 2) throw PreconditionError("graph needs at least two vertices");
  auto [comp, count] = connected_components(g);
  if (count > 1) {
    std::vector<VertexId> side;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (comp[v] == 0) side.push_back(v);
    return finish(g, cut_view(g, side), CutSource::Disconnected);
  }
  KernelResult kr = compute_kernel(g, cfg);
  MinCutResult r;
  if (kr.fallback) {
    ExactCut c = stoer_wagner(g);
    r = finish(g, cut_view(g, c.side), CutSource::FallbackExact);
  } else {
    const std::uint64_t delta = g.min_degree();
    r = finish(g, cut_view(g, {g.min_degree_vertex()}), CutSource::MinDegree);
    if (kr.kernel.vertex_count() >= 2) {
      CappedCut c = exact_mincut_multigraph(kr.kernel, delta);
      if (!c.above_cap && c.cut.value < delta)
        r = finish(g, map_cut_to_original(kr.kernel, c.cut.side), CutSource::Kernel);
    }
  }
  r.kernel_vertices = kr.kernel.vertex_count();
  r.kernel_edges = kr.kernel.edge_count();
  r.rounds = kr.rounds.size();
  if (kernel_out) *kernel_out = std::move(kr);
  return r;
}

struct CertifyOutcome {
  bool certified = false;
  std::optional<CutView> cut;
  std::string stage;  // which probe produced the cut
  std::size_t probes = 0;
};

// Either a cut of conductance at most phi0, or the verdict that no
// non-trivial minimum cut was detected.
inline CertifyOutcome certify_or_cut(const SimpleGraph& g, const PipelineConfig& cfg) {
  if (g.vertex_count() < 2) throw PreconditionError("graph needs at least two vertices");
  if (!is_connected(g)) throw PreconditionError("graph is not connected");
  const Constants k = resolve(cfg, g.vertex_count(), g.edge_count(), g.min_degree());
  if (static_cast<double>(g.min_degree()) < k.certify_min_degree)
    throw PreconditionError("minimum degree below the configured minimum");
  NibbleOptions opt;
  opt.conductance_target = k.phi0;
  opt.opportunistic = true;
  opt.slice = cfg.slice;
  std::vector<VertexId> order(g.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return g.degree(a) < g.degree(b); });
  const double m = static_cast<double>(g.edge_count());
  const double delta = static_cast<double>(g.min_degree());
  CertifyOutcome out;
  auto take = [&](NibbleOutcome& r, const char* stage) {
    if (!r.has_cut_within(k.phi0)) return false;
    out.cut = std::move(r.cut);
    out.stage = stage;
    return true;
  };
  const std::size_t balanced = std::min<std::size_t>(order.size(), static_cast<std::size_t>(cfg.balanced_probe_count));
  for (std::size_t i = 0; i < balanced; ++i) {
    ++out.probes;
    NibbleOutcome r = nibble(g, k.alpha0, InitialDistribution::point(g, order[i]), 0.125, opt);
    if (take(r, "balanced")) return out;
  }
  const int levels = static_cast<int>(std::ceil(std::log2(m / (delta * delta))));
  for (int i = 1; i <= levels; ++i) {
    const double s = m / std::pow(2.0, i);
    if (s < 1) break;
    const double gamma = 0.5 - s / (2 * m);
    const std::size_t count =
        std::min<std::size_t>(order.size(), static_cast<std::size_t>(std::ceil(cfg.probe_set_factor * m / (k.alpha0 * s))));
    std::vector<VertexId> probe_set(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count));
    for (VertexId v : probe_set) {
      ++out.probes;
      NibbleOutcome r = s <= gamma * m / 8
                            ? bounded_nibble(g, k.alpha0, InitialDistribution::point(g, v), gamma, s, opt)
                            : nibble(g, k.alpha0, InitialDistribution::point(g, v), gamma, opt);
      if (take(r, "small-side")) return out;
    }
    ++out.probes;
    NibbleOutcome r = some_small(g, k.alpha0, InitialDistribution::uniform_mass(g, probe_set), 0.5, opt);
    if (take(r, "endgame")) return out;
  }
  out.certified = true;
  return out;
}

}  // namespace edgeconn
