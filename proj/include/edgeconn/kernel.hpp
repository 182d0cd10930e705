#pragma once

#include <string>

#include "edgeconn/probes.hpp"

namespace edgeconn {

// Edges lost by one round, with multiplicity.
struct ChargeLedger {
  std::uint64_t cut_edges = 0;
  std::uint64_t passive_cut_edges = 0;
  std::uint64_t trimmed_edges = 0;
  std::uint64_t shaved_edges = 0;
  std::uint64_t scrapped_edges = 0;

  std::uint64_t total_cut() const { return cut_edges + passive_cut_edges; }
  std::uint64_t charged() const { return trimmed_edges + shaved_edges + scrapped_edges; }
  bool within_bound() const { return charged() <= 4 * total_cut(); }
  ChargeLedger& operator+=(const ChargeLedger& o) {
    cut_edges += o.cut_edges;
    passive_cut_edges += o.passive_cut_edges;
    trimmed_edges += o.trimmed_edges;
    shaved_edges += o.shaved_edges;
    scrapped_edges += o.scrapped_edges;
    return *this;
  }
};

struct GateResult {
  bool done = false;
  std::vector<VertexId> passive;
  std::uint64_t passive_edges = 0;  // edges with a passive endpoint
};

// Finds the passive super vertices (degree below delta*). Done when at least
// the configured share of the edges touches them.
inline GateResult passive_gate(const MultiGraph& g, const Constants& k, const PipelineConfig& cfg) {
  GateResult r;
  std::vector<char> passive(g.vertex_count(), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.is_super(v) && static_cast<double>(g.degree(v)) < k.delta_star) {
      passive[v] = 1;
      r.passive.push_back(v);
    }
  for (const MultiEdge& e : g.edges())
    if (passive[e.u] || passive[e.v]) ++r.passive_edges;
  r.done = g.edge_count() == 0 ||
           static_cast<double>(r.passive_edges) >= cfg.passive_edge_fraction * static_cast<double>(g.edge_count());
  return r;
}

// Gate check, and unless done, removal of the passive super vertices from H
// followed by trimming.
inline GateResult remove_passive_and_gate(WorkingSubgraph& h, const Constants& k, const PipelineConfig& cfg,
                                          ChargeLedger& ledger) {
  GateResult r = passive_gate(h.host(), k, cfg);
  if (r.done) return r;
  for (VertexId v : r.passive) ledger.passive_cut_edges += h.remove_vertex(v);
  ledger.trimmed_edges += h.trim_all(cfg.trim_fraction);
  return r;
}

struct ShaveResult {
  std::vector<VertexId> loose;
  std::vector<VertexId> core;  // empty when scrapped
  bool scrapped = false;
};

// Drops the loose vertices of a cluster (regular vertices with at least
// d(v)/2 - slack host edges leaving it) and keeps the rest as a core when it
// holds enough of the edges touching the cluster.
inline ShaveResult shave_and_core(const WorkingSubgraph& h, const std::vector<VertexId>& cluster,
                                  const PipelineConfig& cfg, ChargeLedger& ledger) {
  const MultiGraph& g = h.host();
  std::vector<char> in(g.vertex_count(), 0), loose(g.vertex_count(), 0);
  for (VertexId v : cluster) in[v] = 1;
  ShaveResult r;
  for (VertexId v : cluster) {
    if (g.is_super(v)) {
      r.core.push_back(v);
      continue;
    }
    std::uint64_t leaving = 0;
    for (ArcId a = g.arc_begin(v); a < g.arc_end(v); ++a)
      if (!in[g.arc_head(a)]) leaving += g.arc_weight(a);
    if (static_cast<double>(leaving) + 1e-9 >= static_cast<double>(g.degree(v)) / 2 - cfg.loose_slack) {
      loose[v] = 1;
      r.loose.push_back(v);
    } else {
      r.core.push_back(v);
    }
  }
  // All three counts below are doubled.
  std::uint64_t internal_core = 0, touching = 0, h_loose = 0;
  for (VertexId v : cluster) {
    for (ArcId a = g.arc_begin(v); a < g.arc_end(v); ++a) {
      VertexId w = g.arc_head(a);
      const std::uint64_t mult = g.arc_weight(a);
      touching += in[w] ? mult : 2 * mult;
      if (in[w] && !loose[v] && !loose[w]) internal_core += mult;
      if (in[w] && h.arc_alive(a) && (loose[v] || loose[w])) h_loose += mult;
    }
  }
  touching /= 2;
  internal_core /= 2;
  ledger.shaved_edges += h_loose / 2;
  if (static_cast<double>(internal_core) > cfg.core_fraction * static_cast<double>(touching)) return r;
  ledger.scrapped_edges += h.internal_edges(r.core);
  r.core.clear();
  r.scrapped = true;
  return r;
}

inline MultiGraph contract_cores(const MultiGraph& g, const std::vector<std::vector<VertexId>>& cores) {
  return contract(g, cores);
}

struct RoundTrace {
  std::size_t vertices_before = 0, edges_before = 0;
  std::size_t vertices_after = 0, edges_after = 0;
  std::uint64_t passive_edges = 0;
  bool gate_fired = false;
  std::size_t clusters = 0, cores = 0, scrapped = 0, components_cut = 0;
  std::size_t steps = 0;
  std::uint64_t work = 0;
  ChargeLedger ledger;
};

struct KernelResult {
  MultiGraph kernel;
  std::vector<RoundTrace> rounds;
  Constants constants;
  bool fallback = false;
  std::string stop_reason;  // "fallback", "passive-gate" or "stalled"
};

// Strength-halving loop on the components of H. Returns the clusters.
inline std::vector<std::vector<VertexId>> decompose(WorkingSubgraph& h, const Constants& k, const PipelineConfig& cfg,
                                                    RoundTrace& trace) {
  struct Pending {
    std::vector<VertexId> vertices;
    double strength;
  };
  std::vector<Pending> queue;
  for (auto& comp : h.components({})) {
    double m = static_cast<double>(h.internal_edges(comp));
    queue.push_back({std::move(comp), m});
  }
  std::vector<std::vector<VertexId>> clusters;
  while (!queue.empty()) {
    Pending p = std::move(queue.back());
    queue.pop_back();
    std::erase_if(p.vertices, [&](VertexId v) { return !h.alive(v); });
    if (p.vertices.empty()) continue;
    double s = std::min(p.strength, static_cast<double>(h.internal_edges(p.vertices)));
    bool split = false;
    while (s > k.s0) {
      StepOutcome step = recurse_step(h, p.vertices, s, k, cfg);
      ++trace.steps;
      trace.work += step.work;
      if (step.status == ProbeStatus::StrengthHalved) {
        s /= 2;
        continue;
      }
      std::vector<char> side(h.host().vertex_count(), 0);
      for (VertexId v : step.side) side[v] = 1;
      std::vector<VertexId> rest;
      for (VertexId v : p.vertices)
        if (!side[v]) rest.push_back(v);
      trace.ledger.cut_edges += h.cut(step.side, rest);
      trace.ledger.trimmed_edges += h.trim(p.vertices, cfg.trim_fraction);
      ++trace.components_cut;
      const double rest_strength = step.status == ProbeStatus::LargeSideHalved ? s / 2 : s;
      for (auto& part : h.components(step.side)) queue.push_back({std::move(part), s});
      for (auto& part : h.components(rest)) queue.push_back({std::move(part), rest_strength});
      split = true;
      break;
    }
    if (!split) clusters.push_back(std::move(p.vertices));
  }
  std::sort(clusters.begin(), clusters.end());
  return clusters;
}

// Repeats cluster, shave and contract rounds until the passive gate fires.
inline KernelResult build_kernel(const SimpleGraph& g0, const PipelineConfig& cfg) {
  if (g0.vertex_count() < 2) throw PreconditionError("graph needs at least two vertices");
  if (!is_connected(g0)) throw PreconditionError("graph is not connected");
  KernelResult out;
  out.constants = resolve(cfg, g0.vertex_count(), g0.edge_count(), g0.min_degree());
  MultiGraph current(std::make_shared<const SimpleGraph>(g0));
  if (static_cast<double>(g0.min_degree()) <= out.constants.fallback_degree) {
    out.kernel = std::move(current);
    out.fallback = true;
    out.stop_reason = "fallback";
    return out;
  }
  for (;;) {
    RoundTrace trace;
    trace.vertices_before = current.vertex_count();
    trace.edges_before = current.edge_count();
    WorkingSubgraph h(current);
    GateResult gate = remove_passive_and_gate(h, out.constants, cfg, trace.ledger);
    trace.passive_edges = gate.passive_edges;
    if (gate.done) {
      trace.gate_fired = true;
      trace.vertices_after = trace.vertices_before;
      trace.edges_after = trace.edges_before;
      out.rounds.push_back(trace);
      out.stop_reason = "passive-gate";
      break;
    }
    auto clusters = decompose(h, out.constants, cfg, trace);
    std::vector<std::vector<VertexId>> cores;
    for (const auto& c : clusters) {
      ShaveResult r = shave_and_core(h, c, cfg, trace.ledger);
      if (r.scrapped) ++trace.scrapped;
      else if (r.core.size() > 1) cores.push_back(std::move(r.core));
    }
    trace.clusters = clusters.size();
    trace.cores = cores.size();
    MultiGraph next = contract_cores(current, cores);
    trace.vertices_after = next.vertex_count();
    trace.edges_after = next.edge_count();
    out.rounds.push_back(trace);
    if (next.edge_count() >= current.edge_count()) {
      out.stop_reason = "stalled";
      break;
    }
    current = std::move(next);
  }
  out.kernel = std::move(current);
  return out;
}

}  // namespace edgeconn
