#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "edgeconn/edgeconn.hpp"
#include "json.hpp"

namespace edgeconn::cli {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kMismatch = 3 };

struct Overrides {
  std::string profile = "paper";
  std::optional<double> alpha0, phi0, s0, delta_star, fallback_degree;

  void add(CLI::App* app) {
    app->add_option("--profile", profile, "paper, scaled, or a key = value config file");
    app->add_option("--alpha0", alpha0, "teleport probability of the probes");
    app->add_option("--phi0", phi0, "conductance bound for cuts");
    app->add_option("--s0", s0, "strength at which a component counts as a cluster");
    app->add_option("--delta-star", delta_star, "passive super vertex degree threshold");
    app->add_option("--fallback-degree", fallback_degree, "min degree at or below which the exact routine runs");
  }

  // Flags beat the config file, which beats the profile defaults.
  PipelineConfig config() const {
    PipelineConfig c = load_profile(profile);
    if (alpha0) c.alpha0 = alpha0;
    if (phi0) c.phi0 = phi0;
    if (s0) c.s0 = s0;
    if (delta_star) c.delta_star = delta_star;
    if (fallback_degree) c.fallback_degree = fallback_degree;
    return c;
  }
};

struct Input {
  std::string path;
  std::string format = "auto";
  bool dedupe = false;

  void add(CLI::App* app) {
    app->add_option("file", path, "graph file (edge list or DIMACS)")->required();
    app->add_option("--format", format, "auto, edge-list or dimacs")
        ->check(CLI::IsMember({"auto", "edge-list", "dimacs"}));
    app->add_flag("--dedupe", dedupe, "drop self-loops and repeated edges instead of failing");
  }
  ParseResult load() const {
    GraphFormat f = format == "dimacs" ? GraphFormat::Dimacs
                    : format == "edge-list" ? GraphFormat::EdgeList
                                            : GraphFormat::Auto;
    return read_graph_file(path, f, dedupe ? ParseMode::Dedupe : ParseMode::Strict);
  }
};

inline json graph_summary(const ParseResult& p) {
  json j;
  j["n"] = p.graph.vertex_count();
  j["m"] = p.graph.edge_count();
  j["min_degree"] = p.graph.min_degree();
  if (p.dropped_self_loops || p.dropped_duplicates) {
    j["dropped_self_loops"] = p.dropped_self_loops;
    j["dropped_duplicates"] = p.dropped_duplicates;
  }
  return j;
}

inline json labels_of(const ParseResult& p, const std::vector<VertexId>& side) {
  json a = json::array();
  for (VertexId v : side) a.push_back(p.labels[v]);
  return a;
}

inline json constants_json(const Constants& k) {
  json j;
  j["alpha0"] = k.alpha0;
  j["phi0"] = k.phi0;
  j["delta_star"] = k.delta_star;
  j["s0"] = k.s0;
  j["fallback_degree"] = k.fallback_degree;
  j["certify_min_degree"] = k.certify_min_degree;
  return j;
}

// Every setting the run used, overrides as null when unset.
inline json config_json(const PipelineConfig& c) {
  auto opt = [](const std::optional<double>& x) { return x ? json(*x) : json(nullptr); };
  json j;
  j["profile"] = c.profile;
  j["alpha0"] = opt(c.alpha0);
  j["phi0"] = opt(c.phi0);
  j["delta_star"] = opt(c.delta_star);
  j["delta_star_factor"] = opt(c.delta_star_factor);
  j["s0"] = opt(c.s0);
  j["s0_factor"] = opt(c.s0_factor);
  j["fallback_degree"] = opt(c.fallback_degree);
  j["certify_min_degree"] = opt(c.certify_min_degree);
  j["trim_fraction"] = c.trim_fraction;
  j["loose_slack"] = c.loose_slack;
  j["core_fraction"] = c.core_fraction;
  j["passive_edge_fraction"] = c.passive_edge_fraction;
  j["y_select_factor"] = c.y_select_factor;
  j["segment_divisor"] = c.segment_divisor;
  j["even_segment_divisor"] = c.even_segment_divisor;
  j["uncaptured_factor"] = c.uncaptured_factor;
  j["small_volume_divisor"] = c.small_volume_divisor;
  j["balanced_probe_count"] = c.balanced_probe_count;
  j["probe_set_factor"] = c.probe_set_factor;
  j["slice"] = c.slice;
  j["sparse_certificate_first"] = c.sparse_certificate_first;
  return j;
}

inline json ledger_json(const ChargeLedger& l) {
  json j;
  j["cut"] = l.cut_edges;
  j["passive_cut"] = l.passive_cut_edges;
  j["trimmed"] = l.trimmed_edges;
  j["shaved"] = l.shaved_edges;
  j["scrapped"] = l.scrapped_edges;
  j["within_bound"] = l.within_bound();
  return j;
}

inline json mincut_json(const ParseResult& p, const PipelineConfig& cfg, const MinCutResult& r) {
  json j;
  j["schema"] = 1;
  j["command"] = "mincut";
  j["config"] = config_json(cfg);
  j["graph"] = graph_summary(p);
  j["lambda"] = r.lambda;
  j["kind"] = to_string(r.kind);
  j["source"] = to_string(r.source);
  j["side"] = labels_of(p, r.cut.side);
  json edges = json::array();
  for (EdgeId e : r.cut.boundary_edges)
    edges.push_back(json::array({p.labels[p.graph.edge(e).u], p.labels[p.graph.edge(e).v]}));
  j["boundary_edges"] = edges;
  j["kernel"] = {{"vertices", r.kernel_vertices}, {"edges", r.kernel_edges}, {"rounds", r.rounds}};
  return j;
}

inline json kernel_json(const ParseResult& p, const PipelineConfig& cfg, const KernelResult& k, bool stats) {
  json j;
  j["schema"] = 1;
  j["command"] = "kernel";
  j["config"] = config_json(cfg);
  j["graph"] = graph_summary(p);
  j["constants"] = constants_json(k.constants);
  j["fallback"] = k.fallback;
  j["stop_reason"] = k.stop_reason;
  j["kernel"] = {{"vertices", k.kernel.vertex_count()}, {"edges", k.kernel.edge_count()}};
  if (stats) {
    json rounds = json::array();
    ChargeLedger sum;
    for (const RoundTrace& t : k.rounds) {
      json r;
      r["vertices_before"] = t.vertices_before;
      r["edges_before"] = t.edges_before;
      r["vertices_after"] = t.vertices_after;
      r["edges_after"] = t.edges_after;
      r["gate_fired"] = t.gate_fired;
      r["passive_edges"] = t.passive_edges;
      r["clusters"] = t.clusters;
      r["cores"] = t.cores;
      r["scrapped_clusters"] = t.scrapped;
      r["steps"] = t.steps;
      r["work"] = t.work;
      r["ledger"] = ledger_json(t.ledger);
      rounds.push_back(r);
      sum += t.ledger;
    }
    j["rounds"] = rounds;
    j["ledger"] = ledger_json(sum);
  } else {
    json members = json::array();
    for (VertexId v = 0; v < k.kernel.vertex_count(); ++v) members.push_back(labels_of(p, k.kernel.members(v)));
    j["members"] = members;
    json edges = json::array();
    for (const MultiEdge& e : k.kernel.edges()) edges.push_back(json::array({e.u, e.v}));
    j["edges"] = edges;
  }
  return j;
}

inline SimpleGraph bench_instance(const std::string& family, std::size_t a, std::size_t t, double p,
                                  std::uint64_t seed) {
  if (family == "barbell") return barbell(a, t);
  if (family == "random-gnp") return random_gnp(a, p, seed);
  return planted_cut(a, p, t, seed);
}

struct Runner {
  std::ostream& out;
  std::ostream& err;
};

inline int cmd_mincut(const Input& in, const Overrides& ov, bool as_json, Runner io) {
  ParseResult p = in.load();
  const PipelineConfig cfg = ov.config();
  MinCutResult r = minimum_cut(p.graph, cfg);
  if (as_json) {
    io.out << mincut_json(p, cfg, r).dump() << '\n';
  } else {
    io.out << "lambda " << r.lambda << '\n' << "kind " << to_string(r.kind) << '\n';
    io.out << "source " << to_string(r.source) << '\n' << "side";
    for (VertexId v : r.cut.side) io.out << ' ' << p.labels[v];
    io.out << '\n' << "boundary";
    for (EdgeId e : r.cut.boundary_edges)
      io.out << ' ' << p.labels[p.graph.edge(e).u] << '-' << p.labels[p.graph.edge(e).v];
    io.out << '\n';
  }
  return kOk;
}

inline int cmd_kernel(const Input& in, const Overrides& ov, bool stats, Runner io) {
  ParseResult p = in.load();
  const PipelineConfig cfg = ov.config();
  KernelResult k = compute_kernel(p.graph, cfg);
  io.out << kernel_json(p, cfg, k, stats).dump() << '\n';
  return kOk;
}

inline int cmd_certify(const Input& in, const Overrides& ov, Runner io) {
  ParseResult p = in.load();
  const PipelineConfig cfg = ov.config();
  CertifyOutcome c = certify_or_cut(p.graph, cfg);
  json j;
  j["schema"] = 1;
  j["command"] = "certify";
  j["config"] = config_json(cfg);
  j["graph"] = graph_summary(p);
  j["bound"] = resolve(cfg, p.graph.vertex_count(), p.graph.edge_count(), p.graph.min_degree()).phi0;
  j["verdict"] = c.certified ? "certified" : "cut";
  j["probes"] = c.probes;
  if (c.cut) {
    j["stage"] = c.stage;
    j["side"] = labels_of(p, c.cut->side);
    j["boundary"] = c.cut->boundary;
    j["conductance"] = c.cut->conductance();
  }
  io.out << j.dump() << '\n';
  return kOk;
}

inline int cmd_pagerank(const Input& in, const std::string& source, const std::string& set_file, double alpha,
                        double eps, bool do_sweep, Runner io) {
  ParseResult p = in.load();
  std::unordered_map<std::string, VertexId> id;
  for (VertexId v = 0; v < p.labels.size(); ++v) id[p.labels[v]] = v;
  auto lookup = [&](const std::string& name) {
    auto it = id.find(name);
    if (it == id.end()) throw PreconditionError("unknown vertex " + name);
    return it->second;
  };
  std::vector<VertexId> starts;
  if (!source.empty()) {
    starts.push_back(lookup(source));
  } else {
    std::ifstream f(set_file);
    if (!f) throw ParseError(0, "cannot open " + set_file);
    std::string name;
    while (f >> name) starts.push_back(lookup(name));
  }
  InitialDistribution start = InitialDistribution::uniform_mass(p.graph, starts);
  MassState s = approximate_pagerank(p.graph, alpha, eps, start);
  json line;
  line["schema"] = 1;
  line["command"] = "pagerank";
  line["alpha"] = alpha;
  line["epsilon"] = eps;
  line["pushes"] = s.total_pushes();
  line["work"] = s.work();
  line["vertices"] = p.labels;
  line["settled"] = s.settled();
  line["residual"] = s.residual();
  io.out << line.dump() << '\n';
  if (do_sweep) {
    auto c = sweep(p.graph, density_order(p.graph, s), SweepSide::High, 0, std::numeric_limits<double>::infinity());
    json sj;
    sj["schema"] = 1;
    sj["sweep"] = "high";
    if (c) {
      sj["side"] = labels_of(p, c->side);
      sj["boundary"] = c->boundary;
      sj["volume"] = c->volume;
      sj["conductance"] = c->conductance();
      sj["settled_excess"] = excess(p.graph, s, c->side);
    } else {
      sj["side"] = nullptr;
    }
    io.out << sj.dump() << '\n';
  }
  return kOk;
}

struct BenchArgs {
  std::string family = "barbell";
  std::vector<std::size_t> sizes{20};
  std::vector<std::size_t> bridges{2};
  double p = 0.5;
  std::uint64_t seed = 1;
  std::size_t count = 1;
  std::string format = "csv";
  bool timing = false;
};

inline int cmd_bench(const BenchArgs& b, const Overrides& ov, Runner io) {
  const PipelineConfig cfg = ov.config();
  json rows = json::array();
  if (b.format == "csv") {
    io.out << "family,size,bridges,p,seed,n,m,min_degree,lambda,kind,source,kernel_vertices,kernel_edges,rounds,"
              "cut,passive_cut,trimmed,shaved,scrapped,ledger_within_bound";
    if (b.timing) io.out << ",ms";
    io.out << '\n';
  }
  for (std::size_t a : b.sizes)
    for (std::size_t t : b.bridges)
      for (std::size_t i = 0; i < b.count; ++i) {
        const std::uint64_t seed = b.seed + i;
        SimpleGraph g = bench_instance(b.family, a, t, b.p, seed);
        if (!is_connected(g)) continue;
        auto t0 = std::chrono::steady_clock::now();
        KernelResult k;
        MinCutResult r = minimum_cut(g, cfg, &k);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        bool ok = true;
        ChargeLedger sum;
        for (const RoundTrace& tr : k.rounds) {
          ok = ok && tr.ledger.within_bound();
          sum += tr.ledger;
        }
        if (b.format == "csv") {
          io.out << b.family << ',' << a << ',' << t << ',' << b.p << ',' << seed << ',' << g.vertex_count() << ','
                 << g.edge_count() << ',' << g.min_degree() << ',' << r.lambda << ',' << to_string(r.kind) << ','
                 << to_string(r.source) << ',' << k.kernel.vertex_count() << ',' << k.kernel.edge_count() << ','
                 << k.rounds.size() << ',' << sum.cut_edges << ',' << sum.passive_cut_edges << ','
                 << sum.trimmed_edges << ',' << sum.shaved_edges << ',' << sum.scrapped_edges << ','
                 << (ok ? "true" : "false");
          if (b.timing) io.out << ',' << ms;
          io.out << '\n';
        } else {
          json j;
          j["family"] = b.family;
          j["size"] = a;
          j["bridges"] = t;
          j["p"] = b.p;
          j["seed"] = seed;
          j["n"] = g.vertex_count();
          j["m"] = g.edge_count();
          j["min_degree"] = g.min_degree();
          j["lambda"] = r.lambda;
          j["kind"] = to_string(r.kind);
          j["source"] = to_string(r.source);
          j["kernel_vertices"] = k.kernel.vertex_count();
          j["kernel_edges"] = k.kernel.edge_count();
          j["rounds"] = k.rounds.size();
          j["ledger"] = ledger_json(sum);
          j["ledger_within_bound"] = ok;
          if (b.timing) j["ms"] = ms;
          rows.push_back(j);
        }
      }
  if (b.format == "json") {
    json j;
    j["schema"] = 1;
    j["command"] = "bench";
    j["config"] = config_json(cfg);
    j["runs"] = rows;
    io.out << j.dump() << '\n';
  }
  return kOk;
}

// A "# lambda N" (or DIMACS "c lambda N") comment states the expected answer.
inline std::optional<std::uint64_t> declared_lambda(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string mark, key;
    std::uint64_t value;
    if (ls >> mark >> key >> value && (mark == "#" || mark == "c") && key == "lambda") return value;
  }
  return std::nullopt;
}

// Checks every graph file in dir against an exact solver.
inline int cmd_verify(const std::string& dir, const Overrides& ov, Runner io) {
  const PipelineConfig cfg = ov.config();
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  bool mismatch = false;
  json results = json::array();
  for (const auto& f : files) {
    ParseResult p = read_graph_file(f.string());
    json j;
    j["file"] = f.filename().string();
    const SimpleGraph& g = p.graph;
    if (g.vertex_count() < 2) {
      j["status"] = "skipped";
      results.push_back(j);
      continue;
    }
    MinCutResult r = minimum_cut(g, cfg);
    std::uint64_t expect;
    std::string oracle;
    if (!is_connected(g)) {
      expect = 0;
      oracle = "components";
    } else if (g.vertex_count() <= 20) {
      expect = brute_force_mincut(g).value;
      oracle = "brute-force";
    } else {
      expect = stoer_wagner(g).value;
      oracle = "stoer-wagner";
    }
    std::optional<std::uint64_t> declared = declared_lambda(f.string());
    const bool ok = expect == r.lambda && (!declared || *declared == expect);
    mismatch = mismatch || !ok;
    j["lambda"] = r.lambda;
    j["expected"] = expect;
    j["oracle"] = oracle;
    if (declared) j["declared"] = *declared;
    j["status"] = ok ? "ok" : "mismatch";
    results.push_back(j);
  }
  json out;
  out["schema"] = 1;
  out["command"] = "verify";
  out["config"] = config_json(cfg);
  out["files"] = results;
  out["ok"] = !mismatch;
  io.out << out.dump() << '\n';
  return mismatch ? kMismatch : kOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"edge connectivity via local PageRank clustering"};
  app.require_subcommand(1);
  Runner io{out, err};

  Input mc_in, k_in, c_in, pr_in;
  Overrides mc_ov, k_ov, c_ov, b_ov, v_ov;
  bool mc_json = false, k_stats = false, pr_sweep = false;
  std::string pr_source, pr_set, v_dir;
  double pr_alpha = 0.1, pr_eps = 1e-4;
  BenchArgs bench;

  auto* mc = app.add_subcommand("mincut", "edge connectivity and a minimum cut");
  mc_in.add(mc);
  mc_ov.add(mc);
  mc->add_flag("--json", mc_json, "print a JSON report");

  auto* kc = app.add_subcommand("kernel", "contracted graph that keeps all non-trivial minimum cuts");
  k_in.add(kc);
  k_ov.add(kc);
  kc->add_flag("--stats", k_stats, "per-round trace instead of the kernel itself");

  auto* cc = app.add_subcommand("certify", "find a low-conductance cut or certify there is none");
  c_in.add(cc);
  c_ov.add(cc);

  auto* pc = app.add_subcommand("pagerank", "quantised approximate personalised PageRank");
  pr_in.add(pc);
  auto* src = pc->add_option("--source", pr_source, "start vertex");
  auto* set = pc->add_option("--set", pr_set, "file listing start vertices (uniform mass)");
  src->excludes(set);
  pc->add_option("--alpha", pr_alpha, "teleport probability")->check(CLI::Range(0.0, 1.0));
  pc->add_option("--eps", pr_eps, "residual density threshold")->check(CLI::PositiveNumber);
  pc->add_flag("--sweep", pr_sweep, "also print the best sweep cut");

  auto* bc = app.add_subcommand("bench", "run the pipeline on generated graph families");
  bc->add_option("--family", bench.family)->check(CLI::IsMember({"barbell", "random-gnp", "planted-cut"}));
  bc->add_option("--size", bench.sizes, "clique size, vertex count, or block size")->delimiter(',');
  bc->add_option("--bridges", bench.bridges, "crossing edges (barbell, planted-cut)")->delimiter(',');
  bc->add_option("--p", bench.p, "edge probability")->check(CLI::Range(0.0, 1.0));
  bc->add_option("--seed", bench.seed);
  bc->add_option("--count", bench.count, "instances per size");
  bc->add_option("--output", bench.format)->check(CLI::IsMember({"csv", "json"}));
  bc->add_flag("--timing", bench.timing, "include wall-clock milliseconds (output no longer reproducible)");
  b_ov.add(bc);

  auto* vc = app.add_subcommand("verify", "compare minimum cuts of every graph in a directory with an exact oracle");
  vc->add_option("dir", v_dir)->required()->check(CLI::ExistingDirectory);
  v_ov.add(vc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  try {
    if (*mc) return cmd_mincut(mc_in, mc_ov, mc_json, io);
    if (*kc) return cmd_kernel(k_in, k_ov, k_stats, io);
    if (*cc) return cmd_certify(c_in, c_ov, io);
    if (*pc) {
      if (pr_source.empty() && pr_set.empty()) {
        err << "usage error: pagerank needs --source or --set\n";
        return kUsage;
      }
      return cmd_pagerank(pr_in, pr_source, pr_set, pr_alpha, pr_eps, pr_sweep, io);
    }
    if (*bc) return cmd_bench(bench, b_ov, io);
    if (*vc) return cmd_verify(v_dir, v_ov, io);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace edgeconn::cli
