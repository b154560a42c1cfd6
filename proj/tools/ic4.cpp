// ic4: generate graphs, detect / find / verify induced 4-cycles, self-test, benchmark.
// Exit codes: 0 found / OK / pass, 1 none / BAD / fail, 2 error.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ic4/bench.hpp"
#include "ic4/detector.hpp"
#include "ic4/errors.hpp"
#include "ic4/generators.hpp"
#include "ic4/graph.hpp"

namespace {

using namespace ic4;

auto graph_from(std::size_t n, std::uint64_t mask) -> Graph {
  GraphBuilder b(n);
  std::size_t bit = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v, ++bit) {
      if (mask >> bit & 1U) b.add_edge(u, v);
    }
  }
  return std::move(b).build();
}

auto cmd_gen(const std::string& spec, const std::string& out) -> int {
  auto g = generate(parse_spec(spec));
  if (out.empty()) {
    std::cout << save_graph(g.graph);
  } else {
    save_graph_file(g.graph, out);
  }
  return 0;
}

auto cmd_detect(const std::string& path, const std::string& algo, std::size_t n0) -> int {
  const auto g = load_graph_file(path);
  DetectionReport r;
  if (algo == "fast") {
    DecompConfig cfg;
    cfg.n0 = n0;
    r = detect(g, cfg);
  } else if (algo == "oracle") {
    r = detect_oracle(g);
  } else {
    r = detect_naive(g);
  }
  std::cout << (r.found ? "FOUND" : "NONE") << '\n' << r.to_line() << '\n';
  if (!r.diagnostic.empty()) std::cerr << "diagnostic: " << r.diagnostic << '\n';
  return r.found ? 0 : 1;
}

auto cmd_find(const std::string& path) -> int {
  const auto g = load_graph_file(path);
  auto w = find(g);
  if (!w) {
    std::cout << "NONE\n";
    return 1;
  }
  std::cout << "FOUND " << to_string(*w) << '\n';
  return 0;
}

auto cmd_verify(const std::string& path, const std::vector<Vertex>& q) -> int {
  const auto g = load_graph_file(path);
  bool ok = q.size() == 4 && std::all_of(q.begin(), q.end(), [&](Vertex v) { return v < g.n(); });
  ok = ok && verify_witness(g, C4Witness{q[0], q[1], q[2], q[3]});
  std::cout << (ok ? "OK" : "BAD") << '\n';
  return ok ? 0 : 1;
}

auto cmd_selftest(std::size_t max_n) -> int {
  if (max_n > 7) throw ConfigError("selftest: --max-n is limited to 7");
  DecompConfig plain;
  DecompConfig forced;
  forced.n0 = 0;
  std::size_t checked = 0, failures = 0;
  for (std::size_t n = 0; n <= max_n; ++n) {
    const auto pairs = n * (n - (n ? 1 : 0)) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      const auto g = graph_from(n, mask);
      const bool truth = oracle_detect(g).has_value();
      for (const auto* cfg : {&plain, &forced}) {
        const auto r = detect(g, *cfg);
        auto w = find(g, *cfg);
        const bool good = r.found == truth && r.diagnostic.empty() && w.has_value() == truth &&
                          (!w || verify_witness(g, *w));
        if (!good && failures++ < 10) std::cerr << "mismatch: n=" << n << " mask=" << mask << '\n';
        ++checked;
      }
    }
  }
  std::cout << "selftest checked=" << checked << " failures=" << failures << '\n';
  std::cout << (failures ? "FAIL" : "PASS") << '\n';
  return failures ? 1 : 0;
}

auto cmd_bench(const std::string& sizes, std::size_t reps, const std::string& csv, std::uint64_t seed) -> int {
  BenchOptions opt;
  std::stringstream ss(sizes);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.empty()) continue;
    opt.sizes.push_back(std::stoul(tok));
  }
  if (opt.sizes.empty()) throw ConfigError("bench: --sizes is empty");
  opt.reps = reps;
  opt.seed = seed;
  const auto rows = run_bench(opt);
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!csv.empty()) {
    file.open(csv);
    if (!file) throw std::runtime_error("cannot write " + csv);
    out = &file;
  }
  *out << kBenchCsvHeader << '\n';
  for (const auto& r : rows) *out << to_csv(r) << '\n';
  std::vector<std::size_t> distinct(opt.sizes);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() >= 2) {
    std::cout << "slope=" << fit_slope(rows) << '\n';
  } else {
    std::cout << "slope=nan\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"induced 4-cycle detection"};
  app.require_subcommand(1);

  std::string spec, out, path, algo = "fast", csv, sizes;
  std::size_t n0 = DecompConfig{}.n0, max_n = 6, reps = 3;
  std::uint64_t seed = 1;
  std::vector<Vertex> quad;

  auto* gen = app.add_subcommand("gen", "write an edge list for a generator spec");
  gen->add_option("spec", spec, "e.g. gnp:n=64,p=0.5,seed=1")->required();
  gen->add_option("-o,--out", out, "output path (stdout when omitted)");

  auto* det = app.add_subcommand("detect", "decide whether the graph has an induced C4");
  det->add_option("file", path)->required();
  det->add_option("--algo", algo)->check(CLI::IsMember({"fast", "oracle", "naive"}));
  det->add_option("--n0", n0, "oracle threshold for --algo fast");

  auto* fnd = app.add_subcommand("find", "print a witness");
  fnd->add_option("file", path)->required();

  auto* ver = app.add_subcommand("verify", "check a quadruple a b c d");
  ver->add_option("file", path)->required();
  ver->add_option("vertices", quad)->required()->expected(4);

  auto* self = app.add_subcommand("selftest", "exhaustive check against the oracle");
  self->add_option("--max-n", max_n);

  auto* bench = app.add_subcommand("bench", "time G(n,1/2) and print the fitted slope");
  bench->add_option("--sizes", sizes)->required();
  bench->add_option("--reps", reps);
  bench->add_option("--csv", csv);
  bench->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) return cmd_gen(spec, out);
    if (*det) return cmd_detect(path, algo, n0);
    if (*fnd) return cmd_find(path);
    if (*ver) return cmd_verify(path, quad);
    if (*self) return cmd_selftest(max_n);
    if (*bench) return cmd_bench(sizes, reps, csv, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
