// Runs approximate PageRank from one vertex of a barbell and sweeps for the low-conductance side.
#include <cstdio>
#include <limits>

#include "edgeconn/edgeconn.hpp"

int main() {
  using namespace edgeconn;
  SimpleGraph g = barbell(12, 2);
  MassState s = approximate_pagerank(g, 0.05, 1e-5, InitialDistribution::point(g, 3));
  auto cut = sweep_high(g, s, 0, std::numeric_limits<double>::infinity());
  if (!cut) return 1;
  std::printf("work %llu, boundary %llu, conductance %.4f, side size %zu\n",
              static_cast<unsigned long long>(s.work()), static_cast<unsigned long long>(cut->boundary),
              conductance(g, cut->side), cut->side.size());

  NibbleOptions opt;
  opt.conductance_target = 0.1;
  NibbleOutcome r = nibble(g, 0.05, InitialDistribution::point(g, 20), 0.2, opt);
  std::printf("nibble from 20: %s\n", to_string(r.status));
}
