#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "ic4/decomposition.hpp"
#include "ic4/errors.hpp"
#include "ic4/generators.hpp"
#include "support/reference.hpp"

using namespace ic4;

namespace {

auto complete(std::size_t n) -> Graph {
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v);
  }
  return std::move(b).build();
}

auto all_vertices(std::size_t n) -> std::vector<Vertex> {
  std::vector<Vertex> r(n);
  for (Vertex v = 0; v < n; ++v) r[v] = v;
  return r;
}

auto edges_within(const Graph& g, const std::vector<Vertex>& vs) -> std::size_t {
  std::size_t m = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) m += g.adjacent(vs[i], vs[j]) ? 1 : 0;
  }
  return m;
}

auto clique(const Graph& g, const std::vector<Vertex>& vs) -> bool {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (!g.adjacent(vs[i], vs[j])) return false;
    }
  }
  return true;
}

// Independent restatement of the layered invariants with the proved bounds.
void expect_layered(const Graph& g, const LayeredDecomposition& d, const DecompConfig& cfg) {
  const auto n = g.n();
  ASSERT_EQ(d.H, static_cast<int>(std::floor(std::log2(static_cast<double>(n)))));
  ASSERT_EQ(d.L, d.H / 2);
  std::vector<int> level(n, -1);
  for (const auto& c : d.clusters) {
    ASSERT_TRUE(clique(g, c.vertices));
    ASSERT_GE(c.level, d.L);
    ASSERT_LE(c.level, d.H);
    const double target = static_cast<double>(n) / std::pow(2.0, c.level);
    ASSERT_GT(static_cast<double>(c.size()), cfg.band_lo * target);
    ASSERT_LE(static_cast<double>(c.size()), cfg.band_hi * target);
    for (auto v : c.vertices) {
      ASSERT_EQ(level[v], -1) << "vertex in two clusters";
      level[v] = c.level;
    }
  }
  for (auto l : level) ASSERT_NE(l, -1);
  ASSERT_LE(static_cast<double>(d.stats.remainder_edges),
            cfg.c_sparse * std::pow(static_cast<double>(n), 1.5) * std::sqrt(d.stats.delta_L));
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      if (g.adjacent(x, y)) continue;
      const auto e = d.table.find(x, y);
      for (int l = d.L + 1; l <= d.H; ++l) {
        std::vector<Vertex> want;
        for (Vertex z = 0; z < n; ++z) {
          if (level[z] == l && g.adjacent(x, z) && g.adjacent(y, z)) want.push_back(z);
        }
        ASSERT_LE(static_cast<double>(want.size()), static_cast<double>(n) / std::pow(2.0, l - 1));
        std::vector<Vertex> have;
        if (e) {
          auto s = d.table.level_members(*e, l);
          have.assign(s.begin(), s.end());
        }
        std::sort(have.begin(), have.end());
        ASSERT_EQ(have, want);
      }
    }
  }
}

}  // namespace

TEST(Config, Validation) {
  DecompConfig ok;
  EXPECT_NO_THROW(ok.validate());
  auto bad = ok;
  bad.band_lo = 3;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = ok;
  bad.c_sparse = 2;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = ok;
  bad.c_nbr = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = ok;
  bad.degree_prune = -1;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(Config, FloorLog2) {
  for (std::size_t n = 1; n < 5000; ++n) EXPECT_EQ(floor_log2(n), static_cast<int>(std::log2(static_cast<double>(n)) + 1e-12));
}

TEST(ExtractClique, CompleteGraph) {
  auto g = complete(40);
  auto r = extract_clique(g, all_vertices(40));
  ASSERT_TRUE(std::holds_alternative<std::vector<Vertex>>(r));
  const auto& c = std::get<std::vector<Vertex>>(r);
  EXPECT_TRUE(clique(g, c));
  EXPECT_GE(static_cast<double>(c.size()), 39.0 * 39.0 / (16.0 * 40.0));
}

TEST(ExtractClique, SparseGivesSingleton) {
  auto g = gnp(100, Rational{1, 20}, 3);
  auto r = extract_clique(g, all_vertices(100));
  ASSERT_TRUE(std::holds_alternative<std::vector<Vertex>>(r));
  EXPECT_EQ(std::get<std::vector<Vertex>>(r), std::vector<Vertex>{0});
}

TEST(ExtractClique, BipartiteForcesWitness) {
  // K_{50,50}: every common neighbourhood is an independent side
  GraphBuilder b(100);
  for (Vertex u = 0; u < 50; ++u) {
    for (Vertex v = 50; v < 100; ++v) b.add_edge(u, v);
  }
  auto g = std::move(b).build();
  auto r = extract_clique(g, all_vertices(100));
  ASSERT_TRUE(std::holds_alternative<C4Witness>(r));
  EXPECT_TRUE(verify_witness(g, std::get<C4Witness>(r)));
}

TEST(ExtractClique, PolarityBlowupGivesLargeClique) {
  for (std::uint64_t w : {4ULL, 8ULL}) {
    GraphSpec s;
    s.kind = GenKind::PolarityBlowup;
    s.q = 5;
    s.w = w;
    auto g = generate(s).graph;
    const auto n = g.n();
    const double d = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(n);
    auto r = extract_clique(g, all_vertices(n));
    ASSERT_TRUE(std::holds_alternative<std::vector<Vertex>>(r));
    const auto& c = std::get<std::vector<Vertex>>(r);
    EXPECT_TRUE(clique(g, c));
    if (d > 4 * std::sqrt(static_cast<double>(n))) {
      EXPECT_GE(static_cast<double>(c.size()), d * d / (16.0 * static_cast<double>(n)));
    }
  }
}

TEST(ExtractClique, OutcomesAlwaysCheckOut) {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 150; ++it) {
    const std::size_t n = 20 + rng() % 60;
    auto g = gnp(n, Rational{1 + rng() % 19, 20}, rng());
    std::vector<Vertex> r;
    for (Vertex v = 0; v < n; ++v) {
      if (rng() % 4) r.push_back(v);
    }
    if (r.empty()) continue;
    auto out = extract_clique(g, r);
    if (auto* w = std::get_if<C4Witness>(&out)) {
      ASSERT_TRUE(verify_witness(g, *w));
      for (auto v : w->as_array()) ASSERT_TRUE(std::binary_search(r.begin(), r.end(), v));
      continue;
    }
    const auto& c = std::get<std::vector<Vertex>>(out);
    ASSERT_TRUE(clique(g, c));
    for (auto v : c) ASSERT_TRUE(std::binary_search(r.begin(), r.end(), v));
    const double s = static_cast<double>(r.size());
    const double d = 2.0 * static_cast<double>(edges_within(g, r)) / s;
    if (d > 4 * std::sqrt(s)) {
      ASSERT_GE(static_cast<double>(c.size()), d * d / (16.0 * s));
    } else {
      ASSERT_EQ(c.size(), 1U);
    }
  }
}

TEST(DecomposeLarge, EdgelessGraph) {
  Graph g(50);
  auto r = decompose_large(g, 4);
  ASSERT_TRUE(std::holds_alternative<LargeDecomposition>(r));
  const auto& d = std::get<LargeDecomposition>(r);
  EXPECT_TRUE(d.cliques.empty());
  EXPECT_EQ(d.remainder, all_vertices(50));
  EXPECT_EQ(d.remainder_edges, 0U);
}

TEST(DecomposeLarge, BandAndSparsity) {
  std::mt19937_64 rng(13);
  const DecompConfig cfg;
  std::size_t peeled = 0;
  for (int it = 0; it < 30; ++it) {
    const std::size_t n = 64 + rng() % 192;
    double delta = 1 + static_cast<double>(rng() % 12);
    Graph g = gnp(n, Rational{1 + rng() % 9, 10}, rng());
    if (it % 3 == 0) {
      // C4-free and dense enough that peeling has to run
      g = clique_blowup(c4_free_base(8, Rational{1, 2}, rng()), 64);
      delta = 1 + static_cast<double>(it % 2);
    }
    auto r = decompose_large(g, delta, cfg);
    if (auto* w = std::get_if<C4Witness>(&r)) {
      ASSERT_TRUE(verify_witness(g, *w));
      ASSERT_TRUE(oracle_detect(g));
      continue;
    }
    const auto& d = std::get<LargeDecomposition>(r);
    peeled += d.cliques.size();
    std::set<Vertex> seen;
    for (const auto& c : d.cliques) {
      ASSERT_TRUE(clique(g, c));
      ASSERT_GT(static_cast<double>(c.size()), cfg.band_lo * delta);
      ASSERT_LE(static_cast<double>(c.size()), cfg.band_hi * delta);
      for (auto v : c) ASSERT_TRUE(seen.insert(v).second);
    }
    for (auto v : d.remainder) ASSERT_TRUE(seen.insert(v).second);
    ASSERT_EQ(seen.size(), g.n());
    ASSERT_EQ(d.remainder_edges, edges_within(g, d.remainder));
    ASSERT_LT(static_cast<double>(d.remainder_edges),
              cfg.c_sparse * std::pow(static_cast<double>(g.n()), 1.5) * std::sqrt(delta));
  }
  EXPECT_GT(peeled, 0U);
}

TEST(DecomposeLarge, DisjointCliques) {
  // n/delta cliques of size delta sit below the edge bound, so nothing is peeled
  const std::size_t k = 16, s = 32, n = k * s;
  GraphBuilder b(n);
  for (std::size_t i = 0; i < k; ++i) {
    auto vs = std::vector<Vertex>();
    for (std::size_t j = 0; j < s; ++j) vs.push_back(static_cast<Vertex>(i * s + j));
    b.add_clique(vs);
  }
  auto g = std::move(b).build();
  auto r = decompose_large(g, static_cast<double>(s));
  ASSERT_TRUE(std::holds_alternative<LargeDecomposition>(r));
  const auto& d = std::get<LargeDecomposition>(r);
  EXPECT_TRUE(d.cliques.empty());
  EXPECT_EQ(d.remainder_edges, g.edge_count());
  EXPECT_LT(static_cast<double>(d.remainder_edges), 4.0 * std::pow(static_cast<double>(n), 1.5) * std::sqrt(32.0));
}

TEST(DecomposeLow, TableMatchesDirectCommonNeighbourhoods) {
  std::mt19937_64 rng(17);
  int decided = 0;
  for (int it = 0; it < 40; ++it) {
    const std::size_t n = 32 + rng() % 96;
    const double delta = 2 + static_cast<double>(rng() % 10);
    Graph g = it % 2 ? clique_blowup(c4_free_base(n / 4, Rational{1, 3}, rng()), 4)
                     : gnp(n, Rational{1, 1 + rng() % 12}, rng());
    auto r = decompose_low(g, delta);
    if (auto* w = std::get_if<C4Witness>(&r)) {
      ASSERT_TRUE(verify_witness(g, *w));
      continue;
    }
    ++decided;
    const auto& d = std::get<LowDecomposition>(r);
    std::vector<char> in_r(g.n(), 0);
    for (auto v : d.remainder) in_r[v] = 1;
    std::set<Vertex> seen(d.remainder.begin(), d.remainder.end());
    for (const auto& c : d.cliques) {
      ASSERT_TRUE(clique(g, c));
      for (auto v : c) ASSERT_TRUE(seen.insert(v).second);
    }
    ASSERT_EQ(seen.size(), g.n());
    std::vector<std::pair<Vertex, Vertex>> keys;
    std::vector<std::vector<Vertex>> members;
    for (Vertex x = 0; x < g.n(); ++x) {
      for (Vertex y = x + 1; y < g.n(); ++y) {
        if (g.adjacent(x, y)) continue;
        std::vector<Vertex> common;
        for (Vertex z = 0; z < g.n(); ++z) {
          if (in_r[z] && g.adjacent(x, z) && g.adjacent(y, z)) common.push_back(z);
        }
        ASSERT_LT(static_cast<double>(common.size()), delta);
        if (!common.empty()) {
          keys.push_back({x, y});
          members.push_back(common);
        }
      }
    }
    ASSERT_EQ(d.keys, keys);
    for (std::size_t e = 0; e < keys.size(); ++e) {
      auto s = d.common(e);
      std::vector<Vertex> got(s.begin(), s.end());
      std::sort(got.begin(), got.end());
      ASSERT_EQ(got, members[e]);
    }
  }
  EXPECT_GT(decided, 10);
}

TEST(DecomposeLow, PlantedNonCliqueCommonNeighbourhood) {
  // x = 0, y = 1 non-adjacent with 10 common neighbours forming an independent set
  GraphBuilder b(40);
  for (Vertex z = 2; z < 12; ++z) {
    b.add_edge(0, z);
    b.add_edge(1, z);
  }
  auto g = std::move(b).build();
  auto r = decompose_low(g, 4);
  ASSERT_TRUE(std::holds_alternative<C4Witness>(r));
  EXPECT_TRUE(verify_witness(g, std::get<C4Witness>(r)));
}

TEST(DecomposeLow, CompleteGraphHasEmptyTable) {
  auto g = complete(30);
  auto r = decompose_low(g, 30);
  ASSERT_TRUE(std::holds_alternative<LowDecomposition>(r));
  const auto& d = std::get<LowDecomposition>(r);
  EXPECT_TRUE(d.keys.empty());
  std::size_t covered = d.remainder.size();
  for (const auto& c : d.cliques) covered += c.size();
  EXPECT_EQ(covered, 30U);
}

TEST(DecomposeLayers, EdgelessGoesToLevelH) {
  Graph g(100);
  auto r = decompose_layers(g);
  ASSERT_TRUE(std::holds_alternative<LayeredDecomposition>(r));
  const auto& d = std::get<LayeredDecomposition>(r);
  EXPECT_EQ(d.clusters.size(), 100U);
  for (const auto& c : d.clusters) {
    EXPECT_EQ(c.level, d.H);
    EXPECT_EQ(c.size(), 1U);
  }
  EXPECT_EQ(d.table.size(), 0U);
  EXPECT_TRUE(check_invariants(g, d).empty());
}

TEST(DecomposeLayers, CliqueBlowupOfC4FreeBase) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto base = c4_free_base(24, Rational{1, 2}, seed);
    ASSERT_FALSE(oracle_detect(base));
    auto g = clique_blowup(base, 16);
    auto r = decompose_layers(g);
    ASSERT_TRUE(std::holds_alternative<LayeredDecomposition>(r));
    const auto& d = std::get<LayeredDecomposition>(r);
    expect_layered(g, d, DecompConfig{});
    EXPECT_TRUE(check_invariants(g, d).empty());
  }
}

TEST(DecomposeLayers, RandomGraphsDecideOrDecompose) {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 12; ++it) {
    const std::size_t n = 64 << (it % 3);
    auto g = gnp(n, Rational{1 + rng() % 19, 20}, rng());
    auto r = decompose_layers(g);
    if (auto* w = std::get_if<C4Witness>(&r)) {
      ASSERT_TRUE(verify_witness(g, *w));
      continue;
    }
    const auto& d = std::get<LayeredDecomposition>(r);
    expect_layered(g, d, DecompConfig{});
    EXPECT_TRUE(check_invariants(g, d).empty());
  }
  auto dense = gnp(256, Rational{1, 2}, 1);
  auto r = decompose_layers(dense);
  ASSERT_TRUE(oracle_detect(dense));
  if (auto* w = std::get_if<C4Witness>(&r)) EXPECT_TRUE(verify_witness(dense, *w));
}

TEST(DecomposeLayers, ChordalAndPolarityInstances) {
  std::mt19937_64 rng(29);
  std::vector<Graph> gs;
  gs.push_back(ref::chordal_graph(rng, 200, 60, 6));
  gs.push_back(ref::chordal_graph(rng, 300, 30, 12));
  GraphSpec s;
  s.kind = GenKind::PolarityBlowup;
  s.q = 7;
  s.w = 4;
  gs.push_back(generate(s).graph);
  for (const auto& g : gs) {
    auto r = decompose_layers(g);
    ASSERT_TRUE(std::holds_alternative<LayeredDecomposition>(r));
    const auto& d = std::get<LayeredDecomposition>(r);
    expect_layered(g, d, DecompConfig{});
    EXPECT_TRUE(check_invariants(g, d).empty());
  }
}

TEST(DecomposeLayers, LevelTableViews) {
  std::mt19937_64 rng(31);
  auto g = ref::chordal_graph(rng, 256, 40, 8);
  auto r = decompose_layers(g);
  ASSERT_TRUE(std::holds_alternative<LayeredDecomposition>(r));
  const auto& d = std::get<LayeredDecomposition>(r);
  const auto& t = d.table;
  std::size_t by_vertex_total = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    int last_level = -1;
    for (auto e : t.by_vertex(v)) {
      auto [x, y] = t.key(e);
      ASSERT_TRUE(x == v || y == v);
      const int l = d.level_of[t.other(e, v)];
      ASSERT_GE(l, last_level);
      last_level = l;
      ++by_vertex_total;
    }
    for (int l = d.L; l <= d.H; ++l) {
      for (auto e : t.by_vertex_at(v, l)) ASSERT_EQ(d.level_of[t.other(e, v)], l);
    }
    for (auto e : t.containing(v)) {
      auto m = t.members(e);
      ASSERT_NE(std::find(m.begin(), m.end(), v), m.end());
    }
  }
  EXPECT_EQ(by_vertex_total, 2 * t.size());
  std::size_t containing_total = 0;
  for (Vertex v = 0; v < g.n(); ++v) containing_total += t.containing(v).size();
  EXPECT_EQ(containing_total, t.total_members());
  for (std::uint32_t e = 0; e < t.size(); ++e) {
    auto [x, y] = t.key(e);
    ASSERT_LT(x, y);
    ASSERT_FALSE(g.adjacent(x, y));
    ASSERT_EQ(t.find(x, y), e);
    ASSERT_EQ(t.find(y, x), e);
    std::size_t sum = 0;
    for (int l = d.L + 1; l <= d.H; ++l) sum += t.level_members(e, l).size();
    ASSERT_EQ(sum, t.members(e).size());
  }
}

TEST(CheckInvariants, CatchesCorruption) {
  std::mt19937_64 rng(37);
  auto g = ref::chordal_graph(rng, 128, 30, 6);
  auto r = decompose_layers(g);
  ASSERT_TRUE(std::holds_alternative<LayeredDecomposition>(r));
  const auto d = std::get<LayeredDecomposition>(r);
  ASSERT_TRUE(check_invariants(g, d).empty());

  auto moved = d;
  // move a vertex between clusters without updating the maps
  for (auto& c : moved.clusters) {
    if (c.size() >= 2) {
      c.vertices.pop_back();
      break;
    }
  }
  EXPECT_FALSE(check_invariants(g, moved).empty());

  auto relabeled = d;
  relabeled.clusters.front().level = d.H + 1;
  EXPECT_FALSE(check_invariants(g, relabeled).empty());

  DecompConfig strict;
  strict.c_nbr = 1e-9;
  if (d.table.size() > 0) EXPECT_FALSE(check_invariants(g, d, strict).empty());

  // an edge that breaks a cluster's clique
  for (const auto& c : d.clusters) {
    if (c.size() < 2) continue;
    GraphBuilder b(g);
    b.remove_edge(c.vertices[0], c.vertices[1]);
    EXPECT_FALSE(check_invariants(std::move(b).build(), d).empty());
    break;
  }
}

TEST(DebugDump, Schema) {
  std::mt19937_64 rng(41);
  auto g = ref::chordal_graph(rng, 128, 30, 6);
  auto r = decompose_layers(g);
  ASSERT_TRUE(std::holds_alternative<LayeredDecomposition>(r));
  const auto& d = std::get<LayeredDecomposition>(r);
  auto text = debug_dump(d);
  EXPECT_NE(text.find("n=128\n"), std::string::npos);
  EXPECT_NE(text.find("L=3\n"), std::string::npos);
  EXPECT_NE(text.find("H=7\n"), std::string::npos);
  EXPECT_NE(text.find("max_table_size="), std::string::npos);
  std::size_t levels = 0, vertices = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("level=", 0) != 0) continue;
    ++levels;
    auto p = line.find("vertices=");
    vertices += std::stoul(line.substr(p + 9));
  }
  EXPECT_EQ(levels, 5U);
  EXPECT_EQ(vertices, 128U);
}
