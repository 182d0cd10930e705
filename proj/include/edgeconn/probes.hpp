#pragma once

#include "edgeconn/config.hpp"
#include "edgeconn/nibble.hpp"
#include "edgeconn/working_subgraph.hpp"

namespace edgeconn {

enum class ProbeStatus { CutFound, NotCaptured, BatchCertified, Guarded, LargeSideHalved, StrengthHalved };

inline const char* to_string(ProbeStatus s) {
  switch (s) {
    case ProbeStatus::CutFound: return "cut-found";
    case ProbeStatus::NotCaptured: return "not-captured";
    case ProbeStatus::BatchCertified: return "batch-certified";
    case ProbeStatus::Guarded: return "guarded";
    case ProbeStatus::LargeSideHalved: return "large-side-halved";
    case ProbeStatus::StrengthHalved: return "strength-halved";
  }
  return "?";
}

// Which volume the running time of a probe is paid from.
enum class ChargeTag { None, ChargedToCut, ChargedToComponent };

// Probe results on a component graph; vertex ids are local to it.
struct ProbeOutcome {
  ProbeStatus status = ProbeStatus::NotCaptured;
  std::optional<CutView> cut;
  std::vector<VertexId> certified;
  ChargeTag charge = ChargeTag::None;
  std::uint64_t work = 0;
};

namespace detail {

inline NibbleOptions probe_options(const Constants& k, const PipelineConfig& cfg) {
  NibbleOptions o;
  o.conductance_target = k.phi0;
  o.opportunistic = true;
  o.slice = cfg.slice;
  return o;
}

inline bool is_cut(const ProbeOutcome& o) { return o.status == ProbeStatus::CutFound; }

}  // namespace detail

// Decides whether v is captured by a set of volume in (s/2, s]: either finds
// a cut of conductance at most phi0 or certifies that v is not captured.
inline Task<ProbeOutcome> captured_probe_task(const LocalGraph& c, VertexId v, double s, Constants k,
                                              PipelineConfig cfg) {
  const double m = static_cast<double>(c.edge_count());
  if (v >= c.vertex_count()) throw PreconditionError("probe vertex outside the component");
  if (!(s >= k.s0 && s <= m)) throw PreconditionError("strength must lie in [s0, m(C)]");
  NibbleOptions opt = detail::probe_options(k, cfg);
  NibbleOutcome r;
  if (s <= m / cfg.small_volume_divisor)
    r = co_await bounded_nibble_task(c, k.alpha0, InitialDistribution::point(c, v), 0.5, s, opt);
  else
    r = co_await nibble_task(c, k.alpha0, InitialDistribution::point(c, v), 0.2, opt);
  ProbeOutcome out;
  out.work = r.work;
  if (r.has_cut_within(k.phi0) && r.cut->volume <= c.edge_count()) {
    out.status = ProbeStatus::CutFound;
    out.cut = std::move(r.cut);
    out.charge = ChargeTag::ChargedToCut;
  } else {
    out.status = ProbeStatus::NotCaptured;
  }
  co_return out;
}

inline std::size_t batch_limit(double m, double s, double divisor) {
  return static_cast<std::size_t>(std::max(1.0, std::floor(m / (divisor * s * std::log2(4 * s)))));
}

// Probes every vertex of a small batch. Certifies the non-captured ones when
// they make up at least half of the batch (by volume when even_density),
// otherwise returns a cut.
inline Task<ProbeOutcome> batch_non_captured_task(const LocalGraph& c, std::vector<VertexId> batch, double s,
                                                  bool even_density, Constants k, PipelineConfig cfg) {
  const double m = static_cast<double>(c.edge_count());
  const double divisor = even_density ? cfg.even_segment_divisor : cfg.segment_divisor;
  if (batch.size() > batch_limit(m, s, divisor)) throw PreconditionError("batch size outside the allowed range");
  ProbeOutcome out;
  if (batch.empty()) {
    out.status = ProbeStatus::BatchCertified;
    co_return out;
  }
  std::optional<CutView> fallback;
  for (VertexId v : batch) {
    ProbeOutcome r = co_await captured_probe_task(c, v, s, k, cfg);
    out.work += r.work;
    if (r.status == ProbeStatus::NotCaptured) out.certified.push_back(v);
    else if (!fallback || better_cut(*r.cut, *fallback)) fallback = std::move(r.cut);
  }
  const bool enough = even_density ? 2 * c.volume(out.certified) >= c.volume(batch)
                                   : 2 * out.certified.size() >= batch.size();
  if (enough) {
    out.status = ProbeStatus::BatchCertified;
    out.charge = ChargeTag::ChargedToComponent;
    co_return out;
  }
  const double gamma = 1 / (64 * std::log2(4 * s));
  InitialDistribution start =
      even_density ? InitialDistribution::uniform_density(c, batch) : InitialDistribution::uniform_mass(c, batch);
  NibbleOutcome r = co_await nibble_task(c, k.alpha0, std::move(start), gamma, detail::probe_options(k, cfg));
  out.work += r.work;
  out.status = ProbeStatus::CutFound;
  out.charge = ChargeTag::ChargedToComponent;
  out.cut = r.has_cut_within(k.phi0) && r.cut->volume <= c.edge_count() ? std::move(r.cut) : std::move(fallback);
  out.certified.clear();
  co_return out;
}

// Either a cut, or evidence that the start set is not concentrated on a
// set of volume at most m(C).
inline Task<ProbeOutcome> half_concentration_guard_task(const LocalGraph& c, std::vector<VertexId> starts, Constants k,
                                                        PipelineConfig cfg) {
  const double gamma = 1 / (512 * std::log2(4 * static_cast<double>(c.total_volume())));
  NibbleOutcome r = co_await nibble_task(c, k.alpha0, InitialDistribution::uniform_mass(c, starts), gamma,
                                         detail::probe_options(k, cfg));
  ProbeOutcome out;
  out.work = r.work;
  if (r.has_cut_within(k.phi0) && r.cut->volume <= c.edge_count()) {
    out.status = ProbeStatus::CutFound;
    out.cut = std::move(r.cut);
    out.charge = ChargeTag::ChargedToComponent;
  } else {
    out.status = ProbeStatus::Guarded;
  }
  co_return out;
}

// Runs the endgame search from the certified vertices. A low-density side
// found at the end means the rest of the component has half the strength.
inline Task<ProbeOutcome> uncaptured_set_probe_task(const LocalGraph& c, std::vector<VertexId> certified, double s,
                                                    bool even_density, Constants k, PipelineConfig cfg) {
  const double m = static_cast<double>(c.edge_count());
  if (certified.empty()) throw PreconditionError("no certified start vertices");
  if (even_density ? static_cast<double>(c.volume(certified)) < m
                   : static_cast<double>(certified.size()) < cfg.uncaptured_factor * m / (s * k.alpha0))
    throw PreconditionError("certified start set too small");
  InitialDistribution start = even_density ? InitialDistribution::uniform_density(c, certified)
                                           : InitialDistribution::uniform_mass(c, certified);
  NibbleOutcome r = co_await some_small_task(c, k.alpha0, std::move(start), 0.5, detail::probe_options(k, cfg));
  ProbeOutcome out;
  out.work = r.work;
  out.charge = ChargeTag::ChargedToComponent;
  if (r.status == NibbleStatus::CutFound) {
    out.status = ProbeStatus::CutFound;
    out.cut = std::move(r.cut);
  } else if (r.status == NibbleStatus::EndgameCutAllLowDensity) {
    out.status = ProbeStatus::LargeSideHalved;
    out.cut = std::move(r.cut);
  } else {
    out.status = ProbeStatus::StrengthHalved;
  }
  co_return out;
}

inline ProbeOutcome captured_probe(const LocalGraph& c, VertexId v, double s, const Constants& k,
                                   const PipelineConfig& cfg) {
  return captured_probe_task(c, v, s, k, cfg).run();
}

inline ProbeOutcome batch_non_captured(const LocalGraph& c, const std::vector<VertexId>& batch, double s,
                                       bool even_density, const Constants& k, const PipelineConfig& cfg) {
  return batch_non_captured_task(c, batch, s, even_density, k, cfg).run();
}

inline ProbeOutcome half_concentration_guard(const LocalGraph& c, const std::vector<VertexId>& starts,
                                             const Constants& k, const PipelineConfig& cfg) {
  return half_concentration_guard_task(c, starts, k, cfg).run();
}

inline ProbeOutcome uncaptured_set_probe(const LocalGraph& c, const std::vector<VertexId>& certified, double s,
                                         bool even_density, const Constants& k, const PipelineConfig& cfg) {
  return uncaptured_set_probe_task(c, certified, s, even_density, k, cfg).run();
}

struct StepOutcome {
  ProbeStatus status = ProbeStatus::StrengthHalved;
  std::vector<VertexId> side;  // host ids of the cut side
  double conductance = 0;
  bool even_density = false;
  std::size_t probes = 0;
  std::uint64_t work = 0;
};

// One strength-halving step on component C of H with strength s > s0: picks
// the lowest-degree start vertices, probes them in batches next to the
// concentration guard (interleaved, first cut wins), then runs the endgame
// search from the certified vertices.
inline StepOutcome recurse_step(const WorkingSubgraph& h, const std::vector<VertexId>& component, double s,
                                const Constants& k, const PipelineConfig& cfg) {
  LocalGraph c = h.local(component);
  const double m = static_cast<double>(c.edge_count());
  if (!(s > k.s0 && s <= m)) throw PreconditionError("strength must lie in (s0, m(C)]");
  const double want = std::ceil(cfg.y_select_factor * m / (s * k.alpha0));
  StepOutcome out;
  out.even_density = want > static_cast<double>(c.vertex_count());
  const std::size_t ycount = out.even_density ? c.vertex_count() : static_cast<std::size_t>(want);
  const std::size_t seg = batch_limit(m, s, out.even_density ? cfg.even_segment_divisor : cfg.segment_divisor);

  std::vector<Task<ProbeOutcome>> tasks;
  for (std::size_t i = 0; i < ycount; i += seg) {
    std::vector<VertexId> batch;
    for (std::size_t j = i; j < std::min(ycount, i + seg); ++j) batch.push_back(static_cast<VertexId>(j));
    tasks.push_back(batch_non_captured_task(c, std::move(batch), s, out.even_density, k, cfg));
  }
  if (!out.even_density) {
    std::vector<VertexId> y(ycount);
    std::iota(y.begin(), y.end(), 0);
    tasks.push_back(half_concentration_guard_task(c, std::move(y), k, cfg));
  }
  out.probes = tasks.size();
  std::vector<std::optional<ProbeOutcome>> results;
  auto winner = run_interleaved<ProbeOutcome>(tasks, detail::is_cut, results);
  for (auto& r : results)
    if (r) out.work += r->work;
  if (winner) {
    out.status = ProbeStatus::CutFound;
    out.side = c.to_host(results[*winner]->cut->side);
    out.conductance = results[*winner]->cut->conductance();
    return out;
  }
  std::vector<VertexId> certified;
  for (auto& r : results)
    if (r && r->status == ProbeStatus::BatchCertified)
      certified.insert(certified.end(), r->certified.begin(), r->certified.end());
  ProbeOutcome end = uncaptured_set_probe(c, certified, s, out.even_density, k, cfg);
  out.work += end.work;
  ++out.probes;
  out.status = end.status;
  if (end.cut) {
    out.side = c.to_host(end.cut->side);
    out.conductance = end.cut->conductance();
  }
  return out;
}

}  // namespace edgeconn
