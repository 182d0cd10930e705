// Reads an edge list or DIMACS file and prints its edge connectivity with a witness.
#include <iostream>

#include "edgeconn/edgeconn.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: min_cut_file GRAPH [paper|scaled]\n";
    return 1;
  }
  using namespace edgeconn;
  try {
    ParseResult parsed = read_graph_file(argv[1]);
    PipelineConfig cfg = argc > 2 ? load_profile(argv[2]) : PipelineConfig::scaled();
    MinCutResult r = minimum_cut(parsed.graph, cfg);
    std::cout << "lambda " << r.lambda << " (" << to_string(r.kind) << ", " << to_string(r.source) << ")\n";
    std::cout << "side";
    for (VertexId v : r.cut.side) std::cout << ' ' << parsed.labels[v];
    std::cout << '\n';
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
}
