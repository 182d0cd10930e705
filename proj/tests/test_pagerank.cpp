#include <gtest/gtest.h>

#include <random>

#include "edgeconn/edgeconn.hpp"

using namespace edgeconn;

namespace {

SimpleGraph connected_gnp(std::size_t n, double p, std::uint64_t seed) {
  for (;; ++seed) {
    SimpleGraph g = random_gnp(n, p, seed);
    if (is_connected(g)) return g;
  }
}

// Random full and partial pushes from a random start vector.
MassState random_pushes(const SimpleGraph& g, double alpha, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<MassEntry> start;
  double left = 1;
  for (VertexId v = 0; v < g.vertex_count() && left > 0; ++v) {
    double m = v + 1 == g.vertex_count() ? left : left * unit_draw(rng);
    start.push_back({v, m});
    left -= m;
  }
  MassState s(g, alpha, InitialDistribution::from_entries(g, start));
  for (int i = 0; i < count; ++i) {
    VertexId u = static_cast<VertexId>(index_draw(rng, g.vertex_count()));
    if (i % 3 == 0)
      s.push(g, u);
    else
      s.push_amount(g, u, s.residual(u) * unit_draw(rng));
  }
  return s;
}

}  // namespace

TEST(Alpha, RangeChecked) {
  EXPECT_THROW(checked_alpha(0), PreconditionError);
  EXPECT_THROW(checked_alpha(1), PreconditionError);
  EXPECT_DOUBLE_EQ(checked_alpha(0.25), 0.25);
}

TEST(Start, Validation) {
  SimpleGraph g(3, {{0, 1}});
  EXPECT_THROW(InitialDistribution::point(g, 2), PreconditionError);
  EXPECT_THROW(InitialDistribution::point(g, 5), PreconditionError);
  EXPECT_THROW(InitialDistribution::uniform_mass(g, {}), PreconditionError);
  EXPECT_THROW(InitialDistribution::from_entries(g, {{0, 0.5}, {0, 0.5}}), PreconditionError);
  EXPECT_THROW(InitialDistribution::from_entries(g, {{0, -0.1}}), PreconditionError);
}

TEST(Start, SortedByDensity) {
  SimpleGraph g = path_graph(3);
  auto d = InitialDistribution::uniform_mass(g, {1, 0, 2});
  EXPECT_EQ(d.entries()[0].vertex, 0u);
  EXPECT_EQ(d.entries()[1].vertex, 2u);
  EXPECT_EQ(d.entries()[2].vertex, 1u);
  auto u = InitialDistribution::uniform_density(g, {0, 1});
  EXPECT_NEAR(u.total(), 1.0, 1e-15);
}

TEST(Push, SingleFullPush) {
  SimpleGraph g = complete_graph(4);
  const double a = 0.2;
  MassState s(g, a, InitialDistribution::point(g, 0));
  s.push(g, 0);
  EXPECT_DOUBLE_EQ(s.settled(0), a);
  EXPECT_DOUBLE_EQ(s.residual(0), (1 - a) / 2);
  for (VertexId v = 1; v < 4; ++v) EXPECT_DOUBLE_EQ(s.residual(v), (1 - a) / 6);
  EXPECT_EQ(s.work(), 3u);
  EXPECT_THROW(s.push_amount(g, 0, 1.0), PreconditionError);
}

TEST(Push, ConservationAndFlowIdentity) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SimpleGraph g = connected_gnp(8 + seed % 5, 0.5, seed * 11);
    const double a = 0.05 + 0.02 * static_cast<double>(seed);
    MassState s = random_pushes(g, a, seed, 200);
    EXPECT_NEAR(s.settled_total() + s.residual_total(), 1.0, 1e-9);
    for (const Edge& e : g.edges()) {
      double expect = (1 - a) / (2 * a) *
                      (s.settled(e.u) / static_cast<double>(g.degree(e.u)) - s.settled(e.v) / static_cast<double>(g.degree(e.v)));
      EXPECT_NEAR(s.net_flow(g, e.u, e.v), expect, 1e-9);
    }
  }
}

TEST(ApproximatePageRank, StopsWithSmallResidualsAndBoundedWork) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SimpleGraph g = connected_gnp(30, 0.2, seed);
    const double a = 0.1, eps = 1e-3;
    MassState s = approximate_pagerank(g, a, eps, InitialDistribution::point(g, 0));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      EXPECT_LT(s.residual(v), eps * static_cast<double>(g.degree(v)));
      EXPECT_NEAR(s.settled(v) / static_cast<double>(g.degree(v)), static_cast<double>(s.push_count(v)) * eps * a,
                  1e-12);
    }
    EXPECT_LE(static_cast<double>(s.work()), 1 / (eps * a));
    EXPECT_NEAR(s.settled_total() + s.residual_total(), 1.0, 1e-9);
  }
}

TEST(ApproximatePageRank, SlicedRunMatchesStraightRun) {
  SimpleGraph g = barbell(12, 2);
  auto start = InitialDistribution::point(g, 3);
  MassState whole = approximate_pagerank(g, 0.05, 1e-4, start);
  PushRun run(g, 0.05, 1e-4, start);
  int slices = 0;
  while (!run.advance(g, 50)) ++slices;
  EXPECT_GT(slices, 1);
  EXPECT_EQ(run.state().settled(), whole.settled());
  EXPECT_EQ(run.state().residual(), whole.residual());
}

TEST(DensityOrder, QuantizedGroupsDescend) {
  SimpleGraph g = barbell(8, 1);
  MassState s = approximate_pagerank(g, 0.1, 1e-3, InitialDistribution::point(g, 0));
  DensityOrder o = density_order(g, s);
  ASSERT_FALSE(o.vertex.empty());
  EXPECT_EQ(o.vertex[0], 0u);
  for (std::size_t i = 1; i < o.density.size(); ++i) EXPECT_GE(o.density[i - 1], o.density[i]);
}

TEST(Sweep, BarbellHalfFromOneSide) {
  SimpleGraph g = barbell(10, 1);
  MassState s = approximate_pagerank(g, 0.05, 1e-5, InitialDistribution::point(g, 2));
  auto c = sweep(g, density_order(g, s), SweepSide::High, 0, std::numeric_limits<double>::infinity());
  ASSERT_TRUE(c);
  EXPECT_EQ(c->boundary, 1u);
  EXPECT_EQ(c->side.size(), 10u);
  EXPECT_GT(excess(g, s, c->side), 0.3);
}

TEST(Sweep, RangeRestrictsThresholds) {
  SimpleGraph g = path_graph(4);
  MassState s(g, 0.5, InitialDistribution::from_entries(g, {{0, 0.4}, {1, 0.3}, {2, 0.2}, {3, 0.1}}));
  for (VertexId v = 0; v < 4; ++v) s.push(g, v);
  DensityOrder o = density_order(g, s);
  const double inf = std::numeric_limits<double>::infinity();
  // Only the threshold at the top vertex lies in the range.
  auto top = sweep(g, o, SweepSide::High, o.density[1], inf);
  ASSERT_TRUE(top);
  EXPECT_EQ(top->side, (std::vector<VertexId>{o.vertex[0]}));
  EXPECT_FALSE(sweep(g, o, SweepSide::High, inf, inf));
  auto low = sweep(g, o, SweepSide::Low, 0, o.density[2]);
  ASSERT_TRUE(low);
  for (VertexId v : low->side) EXPECT_LT(s.settled(v) / static_cast<double>(g.degree(v)), o.density[2]);
}

TEST(Sweep, MatchesExhaustiveThresholdSets) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    SimpleGraph g = connected_gnp(5 + seed % 6, 0.5, seed * 3 + 1);
    MassState s = random_pushes(g, 0.15, seed, 60);
    DensityOrder o = density_order(g, s);
    const std::size_t n = g.vertex_count();
    auto c = sweep(g, o, SweepSide::High, 0, std::numeric_limits<double>::infinity());
    bool found = false;
    std::uint64_t bb = 0, bd = 1;
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
      double lo_in = std::numeric_limits<double>::infinity(), hi_out = 0;
      for (VertexId v = 0; v < n; ++v) {
        double d = s.settled(v) / static_cast<double>(g.degree(v));
        if (mask >> v & 1) lo_in = std::min(lo_in, d);
        else hi_out = std::max(hi_out, d);
      }
      if (!(lo_in > hi_out)) continue;
      std::vector<VertexId> side;
      for (VertexId v = 0; v < n; ++v)
        if (mask >> v & 1) side.push_back(v);
      CutView cv = cut_view(g, side);
      if (!found || ratio_less(cv.boundary, cv.denominator(), bb, bd)) {
        found = true;
        bb = cv.boundary;
        bd = cv.denominator();
      }
    }
    ASSERT_EQ(found, c.has_value());
    if (found) {
      EXPECT_EQ(c->boundary * bd, bb * c->denominator()) << "seed " << seed;
    }
  }
}
