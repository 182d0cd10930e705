#pragma once

#include "edgeconn/cooperative.hpp"
#include "edgeconn/pagerank.hpp"

namespace edgeconn {

enum class NibbleStatus { CutFound, NoSuchSet, EndgameCutAllLowDensity, NoLowDensityVertex };

inline const char* to_string(NibbleStatus s) {
  switch (s) {
    case NibbleStatus::CutFound: return "cut-found";
    case NibbleStatus::NoSuchSet: return "no-such-set";
    case NibbleStatus::EndgameCutAllLowDensity: return "endgame-cut-all-low-density";
    case NibbleStatus::NoLowDensityVertex: return "no-low-density-vertex";
  }
  return "?";
}

struct NibbleOptions {
  // With a finite target a triggered sweep whose best conductance is above
  // the target does not end the search: epsilon keeps halving, and the best
  // cut seen is reported if no later sweep reaches the target. The default
  // returns the first triggered sweep.
  double conductance_target = std::numeric_limits<double>::infinity();
  // Also sweep every prefix of the density order after each run and stop
  // as soon as one meets the (finite) target.
  bool opportunistic = false;
  // Work (sum of degrees pushed from) between two yields.
  std::uint64_t slice = 1u << 14;
};

struct NibbleOutcome {
  NibbleStatus status = NibbleStatus::NoSuchSet;
  std::optional<CutView> cut;
  double epsilon = 0;
  double settled_excess = 0;
  std::uint64_t work = 0;
  std::uint32_t runs = 0;

  bool has_cut_within(double bound) const {
    return cut && (status == NibbleStatus::CutFound || status == NibbleStatus::EndgameCutAllLowDensity) &&
           cut->conductance() <= bound;
  }
};

namespace detail {

template <WeightedGraph G>
Task<MassState> pagerank_task(const G& g, double alpha, double epsilon, InitialDistribution start,
                              std::uint64_t slice) {
  PushRun run(g, alpha, epsilon, start);
  while (!run.advance(g, slice)) co_await yield_now{};
  co_return run.take();
}

// Keeps the better of the current best and a fresh candidate.
struct BestCut {
  std::optional<CutView> cut;
  double epsilon = 0;
  double excess = 0;
  void offer(std::optional<CutView> c, double eps, double exc) {
    if (!c) return;
    if (!cut || better_cut(*c, *cut)) {
      cut = std::move(c);
      epsilon = eps;
      excess = exc;
    }
  }
};

inline double lg(double x) { return std::log2(x); }

template <WeightedGraph G>
bool opportunistic_hit(const G& g, const DensityOrder& o, const MassState& st, double eps,
                       const NibbleOptions& opt, NibbleOutcome& out) {
  if (!opt.opportunistic || !std::isfinite(opt.conductance_target)) return false;
  const double inf = std::numeric_limits<double>::infinity();
  auto c = sweep(g, o, SweepSide::High, -inf, inf);
  if (!c || c->conductance() > opt.conductance_target) return false;
  out.status = NibbleStatus::CutFound;
  out.settled_excess = excess(g, st, c->side);
  out.cut = std::move(c);
  out.epsilon = eps;
  return true;
}

template <WeightedGraph G>
void validate_common(const G& g, double alpha, double gamma) {
  checked_alpha(alpha);
  if (!(gamma > 0 && gamma < 1)) throw PreconditionError("excess parameter must lie in (0,1)");
  if (g.total_volume() == 0) throw PreconditionError("graph has no edges");
}

// The high-density branch shared by the searches: sweep V_{>=t} for t in
// (base + eps/2, base + eps] when that range holds enough volume and its
// bottom stays within half of the total volume.
template <WeightedGraph G>
std::optional<CutView> high_branch(const G& g, const DensityOrder& o, double eps, double need) {
  const double base = 1.0 / static_cast<double>(g.total_volume());
  if (static_cast<double>(volume_above(g, o, base + eps)) < need) return std::nullopt;
  if (2 * volume_above(g, o, base + eps / 2) > g.total_volume()) return std::nullopt;
  return sweep(g, o, SweepSide::High, base + eps / 2, base + eps);
}

}  // namespace detail

// Looks for a set of volume at most about s whose settled excess is at least gamma.
template <WeightedGraph G>
Task<NibbleOutcome> bounded_nibble_task(const G& g, double alpha, InitialDistribution start, double gamma, double s,
                                        NibbleOptions opt = {}) {
  detail::validate_common(g, alpha, gamma);
  const double m = static_cast<double>(g.total_volume()) / 2;
  if (!(s >= 1 && s <= m)) throw PreconditionError("volume bound must lie in [1, m]");
  NibbleOutcome out;
  detail::BestCut best;
  double eps = gamma / 2;
  do {
    eps /= 2;
    MassState st = co_await detail::pagerank_task(g, alpha, eps, start, opt.slice);
    out.work += st.work();
    ++out.runs;
    DensityOrder o = density_order(g, st);
    if (detail::opportunistic_hit(g, o, st, eps, opt, out)) co_return out;
    auto c = detail::high_branch(g, o, eps, gamma / (8 * eps * detail::lg(4 * s)));
    if (c) {
      double exc = excess(g, st, c->side);
      best.offer(std::move(c), eps, exc);
      if (best.cut->conductance() <= opt.conductance_target) break;
    }
    co_await yield_now{};
  } while (eps >= gamma / (4 * s));
  if (best.cut) {
    out.status = NibbleStatus::CutFound;
    out.cut = std::move(best.cut);
    out.epsilon = best.epsilon;
    out.settled_excess = best.excess;
  } else {
    out.status = NibbleStatus::NoSuchSet;
    out.epsilon = eps;
  }
  co_return out;
}

// Looks for a set of any volume up to m with excess at least gamma, from
// either the high-density or the low-density end.
template <WeightedGraph G>
Task<NibbleOutcome> nibble_task(const G& g, double alpha, InitialDistribution start, double gamma,
                                NibbleOptions opt = {}) {
  detail::validate_common(g, alpha, gamma);
  const double vol = static_cast<double>(g.total_volume());
  const double base = 1.0 / vol;
  const double lg8m = detail::lg(4 * vol);
  NibbleOutcome out;
  detail::BestCut best;
  double eps = gamma / 2;
  do {
    eps /= 2;
    MassState st = co_await detail::pagerank_task(g, alpha, eps, start, opt.slice);
    out.work += st.work();
    ++out.runs;
    DensityOrder o = density_order(g, st);
    if (detail::opportunistic_hit(g, o, st, eps, opt, out)) co_return out;
    const double need = gamma / (8 * eps * lg8m);
    auto hi = detail::high_branch(g, o, eps, need);
    if (hi) {
      double exc = excess(g, st, hi->side);
      best.offer(std::move(hi), eps, exc);
    }
    if (2 * volume_below(g, o, base - eps, true) <= g.total_volume() &&
        static_cast<double>(volume_below(g, o, base - 2 * eps)) >= need) {
      auto lo = sweep(g, o, SweepSide::Low, base - 2 * eps, base - eps);
      if (lo) {
        double exc = excess(g, st, lo->side);
        best.offer(std::move(lo), eps, exc);
      }
    }
    if (best.cut && best.cut->conductance() <= opt.conductance_target) break;
    co_await yield_now{};
  } while (eps >= gamma / (4 * vol));
  if (best.cut) {
    out.status = NibbleStatus::CutFound;
    out.cut = std::move(best.cut);
    out.epsilon = best.epsilon;
    out.settled_excess = best.excess;
  } else {
    out.status = NibbleStatus::NoSuchSet;
    out.epsilon = eps;
  }
  co_return out;
}

// Either a high-density set with excess (case i), the set of all vertices of
// low limit density (case ii), or a certificate that no vertex has limit
// density at most (1 - gamma) / vol(V) (case iii).
template <WeightedGraph G>
Task<NibbleOutcome> some_small_task(const G& g, double alpha, InitialDistribution start, double gamma,
                                    NibbleOptions opt = {}) {
  detail::validate_common(g, alpha, gamma);
  const double vol = static_cast<double>(g.total_volume());
  const double lg8m = detail::lg(4 * vol);
  const double g4 = gamma / 4;
  NibbleOutcome out;
  double eps = g4 / 2;
  do {
    eps /= 2;
    MassState st = co_await detail::pagerank_task(g, alpha, eps, start, opt.slice);
    out.work += st.work();
    ++out.runs;
    DensityOrder o = density_order(g, st);
    if (detail::opportunistic_hit(g, o, st, eps, opt, out)) co_return out;
    auto c = detail::high_branch(g, o, eps, g4 / (8 * eps * lg8m));
    if (c && c->conductance() <= opt.conductance_target) {
      out.status = NibbleStatus::CutFound;
      out.settled_excess = excess(g, st, c->side);
      out.cut = std::move(c);
      out.epsilon = eps;
      co_return out;
    }
    co_await yield_now{};
  } while (eps >= g4 / (4 * vol));

  eps = gamma / (4 * vol);
  MassState st = co_await detail::pagerank_task(g, alpha, eps, start, opt.slice);
  out.work += st.work();
  ++out.runs;
  out.epsilon = eps;
  DensityOrder o = density_order(g, st);
  const double tau = (1 - gamma) / vol;
  const double top = (1 - 0.75 * gamma) / vol;
  std::size_t above = 0;
  for (double d : o.density)
    if (d > tau) ++above;
  if (above < g.vertex_count()) {
    auto c = sweep(g, o, SweepSide::Low, tau, top);
    if (c) {
      out.status = NibbleStatus::EndgameCutAllLowDensity;
      out.settled_excess = excess(g, st, c->side);
      out.cut = std::move(c);
      co_return out;
    }
  }
  out.status = NibbleStatus::NoLowDensityVertex;
  co_return out;
}

template <WeightedGraph G>
NibbleOutcome bounded_nibble(const G& g, double alpha, const InitialDistribution& start, double gamma, double s,
                             NibbleOptions opt = {}) {
  return bounded_nibble_task(g, alpha, start, gamma, s, opt).run();
}

template <WeightedGraph G>
NibbleOutcome nibble(const G& g, double alpha, const InitialDistribution& start, double gamma,
                     NibbleOptions opt = {}) {
  return nibble_task(g, alpha, start, gamma, opt).run();
}

template <WeightedGraph G>
NibbleOutcome some_small(const G& g, double alpha, const InitialDistribution& start, double gamma,
                         NibbleOptions opt = {}) {
  return some_small_task(g, alpha, start, gamma, opt).run();
}

}  // namespace edgeconn
