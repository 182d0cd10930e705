#include <gtest/gtest.h>

#include "edgeconn/edgeconn.hpp"

using namespace edgeconn;

namespace {

struct Fixture {
  std::shared_ptr<const SimpleGraph> g;
  MultiGraph host;
  explicit Fixture(SimpleGraph s) : g(std::make_shared<const SimpleGraph>(std::move(s))), host(g) {}
};

std::vector<VertexId> range(VertexId lo, VertexId hi) {
  std::vector<VertexId> v;
  for (VertexId x = lo; x < hi; ++x) v.push_back(x);
  return v;
}

Constants scaled_for(const LocalGraph& c, std::uint64_t delta) {
  return resolve(PipelineConfig::scaled(), c.vertex_count(), c.edge_count(), delta);
}

}  // namespace

TEST(Config, PaperProfile) {
  Constants k = resolve(PipelineConfig::paper(), 1024, 4096, 20);
  EXPECT_DOUBLE_EQ(k.alpha0, 1.0 / 100000);
  EXPECT_DOUBLE_EQ(k.phi0, 1.0 / 240);
  EXPECT_DOUBLE_EQ(k.delta_star, 10 * 20 / k.alpha0);
  EXPECT_DOUBLE_EQ(k.s0, 64 * 20 / k.alpha0);
  EXPECT_DOUBLE_EQ(k.fallback_degree, std::pow(12.0, 5));
}

TEST(Config, ScaledProfile) {
  Constants k = resolve(PipelineConfig::scaled(), 80, 1563, 39);
  EXPECT_DOUBLE_EQ(k.alpha0, 0.05);
  EXPECT_DOUBLE_EQ(k.phi0, 0.1);
  EXPECT_DOUBLE_EQ(k.delta_star, 4 * 39);
  EXPECT_DOUBLE_EQ(k.s0, 39);
  EXPECT_DOUBLE_EQ(resolve(PipelineConfig::scaled(), 4, 4, 2).phi0, 0.5);
  PipelineConfig c = PipelineConfig::scaled();
  c.alpha0 = 0.2;
  EXPECT_DOUBLE_EQ(resolve(c, 80, 1563, 39).s0, 39);
}

TEST(Config, TextOverridesAndErrors) {
  PipelineConfig c;
  apply_config_text(c, "# comment\n[pipeline]\nprofile = \"scaled\"\nphi0 = 0.2\ntrim_fraction = 0.5\nslice = 64\n");
  EXPECT_EQ(c.profile, "scaled");
  EXPECT_DOUBLE_EQ(*c.phi0, 0.2);
  EXPECT_DOUBLE_EQ(c.trim_fraction, 0.5);
  EXPECT_EQ(c.slice, 64u);
  EXPECT_THROW(apply_config_text(c, "bogus = 1\n"), ParseError);
  EXPECT_THROW(apply_config_text(c, "phi0 = abc\n"), ParseError);
  EXPECT_THROW(apply_config_text(c, "phi0\n"), ParseError);
  c.phi0 = -1;
  EXPECT_THROW(resolve(c, 10, 10, 2), PreconditionError);
  EXPECT_THROW(load_profile("/nonexistent/profile.toml"), ParseError);
}

TEST(Trim, ThresholdIsMoreThanThreeFifths) {
  Fixture f(complete_graph(6));
  WorkingSubgraph h(f.host);
  EXPECT_EQ(h.trim_all(0.6), 0u);
  h.cut({0}, {1, 2, 3});
  EXPECT_EQ(h.lost_degree(0), 3u);
  h.trim_all(0.6);
  EXPECT_TRUE(h.alive(0));
  h.cut({0}, {4});
  std::vector<VertexId> gone;
  EXPECT_EQ(h.trim_all(0.6, &gone), 1u);
  EXPECT_FALSE(h.alive(0));
  EXPECT_EQ(gone, (std::vector<VertexId>{0}));
}

TEST(Trim, Cascades) {
  Fixture f(complete_graph(6));
  WorkingSubgraph h(f.host);
  h.cut({0}, {1, 2, 3});
  h.cut({4}, {1, 2, 3, 5});
  std::vector<VertexId> gone;
  EXPECT_EQ(h.trim_all(0.6, &gone), 2u);
  std::sort(gone.begin(), gone.end());
  EXPECT_EQ(gone, (std::vector<VertexId>{0, 4}));
  for (VertexId v : {1u, 2u, 3u, 5u}) EXPECT_TRUE(h.alive(v));
  EXPECT_TRUE(h.trimmed(0.6));
}

TEST(Trim, FixpointKeepsTwoFifths) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Fixture f(random_gnp(30, 0.3, seed));
    WorkingSubgraph h(f.host);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 40; ++i) {
      VertexId a = static_cast<VertexId>(index_draw(rng, 30)), b = static_cast<VertexId>(index_draw(rng, 30));
      if (a != b) h.cut({a}, {b});
    }
    h.trim_all(0.6);
    for (VertexId v = 0; v < 30; ++v) {
      if (!h.alive(v)) continue;
      EXPECT_GE(5 * h.degree(v), 2 * f.host.degree(v));
    }
  }
}

TEST(PassiveGate, NoSuperVerticesRemovesNothing) {
  Fixture f(complete_graph(6));
  WorkingSubgraph h(f.host);
  Constants k;
  k.delta_star = 1000;
  ChargeLedger l;
  GateResult r = remove_passive_and_gate(h, k, PipelineConfig::scaled(), l);
  EXPECT_FALSE(r.done);
  EXPECT_TRUE(r.passive.empty());
  EXPECT_EQ(h.edge_count(), 15u);
  EXPECT_EQ(l.passive_cut_edges, 0u);
}

TEST(PassiveGate, HeavyPassiveVertexEndsTheLoop) {
  Fixture f(cycle_graph(20));
  MultiGraph g = contract(f.host, std::vector<VertexId>{0, 1});
  Constants k;
  k.delta_star = 10;
  GateResult r = passive_gate(g, k, PipelineConfig::scaled());
  EXPECT_TRUE(r.done);
  EXPECT_EQ(r.passive.size(), 1u);
  EXPECT_EQ(r.passive_edges, 2u);
}

TEST(PassiveGate, ActiveSuperVertexStays) {
  Fixture f(cycle_graph(20));
  MultiGraph g = contract(f.host, std::vector<VertexId>{0, 1});
  Constants k;
  k.delta_star = 2;
  WorkingSubgraph h(g);
  ChargeLedger l;
  GateResult r = remove_passive_and_gate(h, k, PipelineConfig::scaled(), l);
  EXPECT_FALSE(r.done);
  EXPECT_TRUE(h.alive(g.owner(0)));
  EXPECT_EQ(h.edge_count(), 19u);
}

TEST(Shave, ClosedClusterIsItsOwnCore) {
  Fixture f(complete_graph(6));
  WorkingSubgraph h(f.host);
  ChargeLedger l;
  ShaveResult r = shave_and_core(h, range(0, 6), PipelineConfig::scaled(), l);
  EXPECT_TRUE(r.loose.empty());
  EXPECT_EQ(r.core, range(0, 6));
  EXPECT_EQ(l.charged(), 0u);
}

TEST(Shave, HalfMinusOneLeavingIsLoose) {
  // 0 has degree 6 with 2 = 6/2 - 1 edges leaving the K5 {0..4}.
  std::vector<Edge> e{{0, 5}, {0, 6}, {5, 6}};
  for (VertexId a = 0; a < 5; ++a)
    for (VertexId b = a + 1; b < 5; ++b) e.push_back({a, b});
  Fixture f(SimpleGraph(7, e));
  WorkingSubgraph h(f.host);
  ChargeLedger l;
  ShaveResult r = shave_and_core(h, range(0, 5), PipelineConfig::scaled(), l);
  EXPECT_EQ(r.loose, (std::vector<VertexId>{0}));
  EXPECT_EQ(r.core, range(1, 5));
  EXPECT_FALSE(r.scrapped);
  EXPECT_EQ(l.shaved_edges, 4u);
}

TEST(Shave, ThinCoreIsScrapped) {
  // Only the edge 0-1 stays inside the core: 1/5 of the edges touching.
  Fixture f(SimpleGraph(6, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}}));
  WorkingSubgraph h(f.host);
  ChargeLedger l;
  ShaveResult r = shave_and_core(h, range(0, 6), PipelineConfig::scaled(), l);
  EXPECT_TRUE(r.scrapped);
  EXPECT_TRUE(r.core.empty());
  EXPECT_EQ(l.scrapped_edges, 1u);
  EXPECT_EQ(l.shaved_edges, 4u);
}

TEST(ContractCores, Identity) {
  Fixture f(cycle_graph(5));
  MultiGraph g = contract_cores(f.host, {});
  EXPECT_EQ(g.vertex_count(), 5u);
  EXPECT_THROW(contract_cores(f.host, {{0, 1}, {1, 2}}), PreconditionError);
}

TEST(Ledger, Arithmetic) {
  ChargeLedger a;
  a.cut_edges = 2;
  a.trimmed_edges = 5;
  a.shaved_edges = 3;
  EXPECT_TRUE(a.within_bound());
  a.scrapped_edges = 1;
  EXPECT_FALSE(a.within_bound());
  ChargeLedger b;
  b.passive_cut_edges = 1;
  a += b;
  EXPECT_EQ(a.total_cut(), 3u);
  EXPECT_TRUE(a.within_bound());
}

TEST(Probes, CapturedInBarbell) {
  Fixture f(barbell(12, 1));
  WorkingSubgraph h(f.host);
  LocalGraph c = h.local(range(0, 24));
  Constants k = scaled_for(c, 11);
  PipelineConfig cfg = PipelineConfig::scaled();
  for (VertexId v = 0; v < c.vertex_count(); ++v) {
    if (c.to_host(v) >= 12) continue;
    ProbeOutcome r = captured_probe(c, v, static_cast<double>(c.edge_count()), k, cfg);
    ASSERT_EQ(r.status, ProbeStatus::CutFound);
    EXPECT_LE(r.cut->conductance(), k.phi0);
    EXPECT_EQ(r.cut->boundary, 1u);
    EXPECT_EQ(r.charge, ChargeTag::ChargedToCut);
  }
}

TEST(Probes, CompleteGraphNotCaptured) {
  Fixture f(complete_graph(12));
  WorkingSubgraph h(f.host);
  LocalGraph c = h.local(range(0, 12));
  Constants k = scaled_for(c, 11);
  PipelineConfig cfg = PipelineConfig::scaled();
  for (VertexId v = 0; v < 12; ++v)
    EXPECT_EQ(captured_probe(c, v, static_cast<double>(c.edge_count()), k, cfg).status, ProbeStatus::NotCaptured);
  EXPECT_THROW(captured_probe(c, 0, 1, k, cfg), PreconditionError);
  EXPECT_THROW(captured_probe(c, 0, 1000, k, cfg), PreconditionError);
}

TEST(Probes, BatchCertifiesCliqueAndCutsBarbell) {
  PipelineConfig cfg = PipelineConfig::scaled();
  cfg.segment_divisor = 1e-3;
  {
    Fixture f(complete_graph(12));
    WorkingSubgraph h(f.host);
    LocalGraph c = h.local(range(0, 12));
    Constants k = scaled_for(c, 11);
    ProbeOutcome r = batch_non_captured(c, {0, 1, 2}, 66, false, k, cfg);
    EXPECT_EQ(r.status, ProbeStatus::BatchCertified);
    EXPECT_EQ(r.certified, (std::vector<VertexId>{0, 1, 2}));
    EXPECT_EQ(batch_non_captured(c, {}, 66, false, k, cfg).status, ProbeStatus::BatchCertified);
  }
  {
    Fixture f(barbell(12, 1));
    WorkingSubgraph h(f.host);
    LocalGraph c = h.local(range(0, 24));
    Constants k = scaled_for(c, 11);
    std::vector<VertexId> batch;
    for (VertexId v = 0; v < c.vertex_count(); ++v)
      if (c.to_host(v) == 0 || c.to_host(v) == 13) batch.push_back(v);
    ProbeOutcome r = batch_non_captured(c, batch, static_cast<double>(c.edge_count()), false, k, cfg);
    ASSERT_EQ(r.status, ProbeStatus::CutFound);
    EXPECT_EQ(r.cut->boundary, 1u);
    EXPECT_DOUBLE_EQ(conductance(c, r.cut->side), r.cut->conductance());
  }
}

TEST(Probes, BatchSizeChecked) {
  Fixture f(complete_graph(12));
  WorkingSubgraph h(f.host);
  LocalGraph c = h.local(range(0, 12));
  Constants k = scaled_for(c, 11);
  EXPECT_THROW(batch_non_captured(c, {0, 1}, 66, false, k, PipelineConfig::scaled()), PreconditionError);
}

TEST(Probes, ConcentrationGuard) {
  PipelineConfig cfg = PipelineConfig::scaled();
  {
    Fixture f(complete_graph(10));
    WorkingSubgraph h(f.host);
    LocalGraph c = h.local(range(0, 10));
    EXPECT_EQ(half_concentration_guard(c, range(0, 10), scaled_for(c, 9), cfg).status, ProbeStatus::Guarded);
  }
  {
    Fixture f(barbell(12, 1));
    WorkingSubgraph h(f.host);
    LocalGraph c = h.local(range(0, 24));
    std::vector<VertexId> left;
    for (VertexId v = 0; v < c.vertex_count(); ++v)
      if (c.to_host(v) < 12) left.push_back(v);
    ProbeOutcome r = half_concentration_guard(c, left, scaled_for(c, 11), cfg);
    ASSERT_EQ(r.status, ProbeStatus::CutFound);
    EXPECT_EQ(r.cut->boundary, 1u);
  }
}

TEST(Probes, StationaryStartHalvesStrength) {
  Fixture f(complete_graph(10));
  WorkingSubgraph h(f.host);
  LocalGraph c = h.local(range(0, 10));
  Constants k = scaled_for(c, 9);
  ProbeOutcome r = uncaptured_set_probe(c, range(0, 10), 45, true, k, PipelineConfig::scaled());
  EXPECT_EQ(r.status, ProbeStatus::StrengthHalved);
  EXPECT_THROW(uncaptured_set_probe(c, {0}, 45, true, k, PipelineConfig::scaled()), PreconditionError);
}

TEST(RecurseStep, SeparatesBarbell) {
  Fixture f(barbell(12, 2));
  WorkingSubgraph h(f.host);
  Constants k = resolve(PipelineConfig::scaled(), 24, f.g->edge_count(), 11);
  StepOutcome a = recurse_step(h, range(0, 24), static_cast<double>(f.g->edge_count()), k, PipelineConfig::scaled());
  ASSERT_EQ(a.status, ProbeStatus::CutFound);
  EXPECT_TRUE(a.side == range(0, 12) || a.side == range(12, 24));
  StepOutcome b = recurse_step(h, range(0, 24), static_cast<double>(f.g->edge_count()), k, PipelineConfig::scaled());
  EXPECT_EQ(a.side, b.side);
  EXPECT_EQ(a.work, b.work);
}

TEST(RecurseStep, CliqueHalvesStrength) {
  Fixture f(complete_graph(12));
  WorkingSubgraph h(f.host);
  Constants k = resolve(PipelineConfig::scaled(), 12, 66, 11);
  StepOutcome r = recurse_step(h, range(0, 12), 66, k, PipelineConfig::scaled());
  EXPECT_EQ(r.status, ProbeStatus::StrengthHalved);
  EXPECT_THROW(recurse_step(h, range(0, 12), 5, k, PipelineConfig::scaled()), PreconditionError);
}

TEST(BuildKernel, BarbellCollapsesToTwoCores) {
  SimpleGraph g = barbell(16, 3);
  KernelResult r = build_kernel(g, PipelineConfig::scaled());
  EXPECT_FALSE(r.fallback);
  EXPECT_LE(r.kernel.vertex_count(), 10u);
  EXPECT_EQ(exact_mincut_multigraph(r.kernel, g.min_degree()).cut.value, 3u);
  for (const RoundTrace& t : r.rounds) EXPECT_TRUE(t.ledger.within_bound());
  for (std::size_t i = 1; i < r.rounds.size(); ++i) EXPECT_LE(r.rounds[i].edges_before, r.rounds[i - 1].edges_before);
}

TEST(BuildKernel, CompleteGraphKeepsLambda) {
  SimpleGraph g = complete_graph(10);
  KernelResult r = build_kernel(g, PipelineConfig::scaled());
  std::uint64_t lambda = g.min_degree();
  if (r.kernel.vertex_count() > 1) lambda = std::min(lambda, stoer_wagner(r.kernel).value);
  EXPECT_EQ(lambda, 9u);
}

TEST(BuildKernel, FallbackBelowThreshold) {
  SimpleGraph g = cycle_graph(10);
  KernelResult r = build_kernel(g, PipelineConfig::paper());
  EXPECT_TRUE(r.fallback);
  EXPECT_EQ(r.stop_reason, "fallback");
  EXPECT_EQ(r.kernel.vertex_count(), 10u);
  EXPECT_THROW(build_kernel(SimpleGraph(4, {{0, 1}, {2, 3}}), PipelineConfig::scaled()), PreconditionError);
}
