#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <regex>

#include "ic4/detector.hpp"
#include "ic4/errors.hpp"
#include "ic4/generators.hpp"
#include "support/reference.hpp"

using namespace ic4;

namespace {

// Sign of 2^(den*lhs) - n^num in exact integer arithmetic (small arguments only).
auto power_cmp(std::int64_t lhs, std::int64_t num, std::int64_t den, std::size_t n) -> int {
  const auto e = den * lhs;
  if (e < 0) return -1;
  unsigned __int128 left = 1, right = 1;
  for (std::int64_t i = 0; i < e; ++i) left *= 2;
  for (std::int64_t i = 0; i < num; ++i) right *= n;
  return (left > right) - (left < right);
}

auto cycle(std::size_t n) -> Graph {
  GraphBuilder b(n);
  for (Vertex v = 0; v < n; ++v) b.add_edge(v, static_cast<Vertex>((v + 1) % n));
  return std::move(b).build();
}

auto complete(std::size_t n) -> Graph {
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v);
  }
  return std::move(b).build();
}

auto eager() -> DecompConfig {
  DecompConfig cfg;
  cfg.n0 = 0;
  return cfg;
}

// Mixed corpus of small graphs; roughly half contain an induced C4.
auto corpus(std::mt19937_64& rng, int i) -> Graph {
  switch (i % 5) {
    case 0: return gnp(8 + rng() % 40, Rational{1 + rng() % 9, 10}, rng());
    case 1: return ref::chordal_graph(rng, 8 + rng() % 40, 6 + static_cast<int>(rng() % 10), 0.5);
    case 2: return clique_blowup(c4_free_base(4 + rng() % 10, Rational{1, 2}, rng()), 1 + rng() % 5);
    case 3: return clique_blowup(gnp(4 + rng() % 8, Rational{1, 2}, rng()), 1 + rng() % 5);
    default: {
      auto g = clique_blowup(c4_free_base(4 + rng() % 10, Rational{1, 3}, rng()), 1 + rng() % 4);
      return ref::flip_random_pair(g, rng);
    }
  }
}

// Blowup of a C4-free base with cross edges removed so that a cycle runs through two or three
// blown-up cliques: a, a' in one clique and b, c (or b, b') in its neighbours.
auto surgery(std::mt19937_64& rng) -> Graph {
  const std::size_t w = 2 + rng() % 6;
  const auto base = c4_free_base(6 + rng() % 10, Rational{1, 2}, rng());
  auto g = clique_blowup(base, w);
  std::vector<std::pair<Vertex, Vertex>> drop;
  const auto copy = [&](Vertex v) { return static_cast<Vertex>(v * w + rng() % w); };
  const auto edges = base.edges();
  if (edges.empty()) return g;
  const auto [x, y] = edges[rng() % edges.size()];
  const Vertex a = static_cast<Vertex>(x * w), a2 = a + 1;
  if (rng() % 2) {
    const Vertex b = static_cast<Vertex>(y * w), b2 = b + 1;
    drop = {{a, b}, {a2, b2}};
  } else {
    // a third base vertex adjacent to both x and y, if any
    std::vector<Vertex> zs;
    for (Vertex z = 0; z < base.n(); ++z) {
      if (base.adjacent(z, x) && base.adjacent(z, y)) zs.push_back(z);
    }
    if (zs.empty()) return g;
    const Vertex c = copy(zs[rng() % zs.size()]);
    drop = {{a, c}, {a2, copy(y)}};
  }
  GraphBuilder b(g.n());
  for (auto [u, v] : g.edges()) {
    bool keep = true;
    for (auto [p, q] : drop) keep &= !((u == p && v == q) || (u == q && v == p));
    if (keep) b.add_edge(u, v);
  }
  return std::move(b).build();
}

}  // namespace

TEST(LogThreshold, MatchesExactPowers) {
  for (std::size_t n : {1U, 2U, 3U, 4U, 5U, 7U, 8U, 12U, 16U, 100U, 128U, 255U, 256U, 1000U, 1024U, 4096U}) {
    for (std::int64_t num = 1; num <= 9; ++num) {
      for (std::int64_t den = 1; den <= 6; ++den) {
        for (std::int64_t lhs = 0; lhs * den <= 120; ++lhs) {
          ASSERT_EQ(log_threshold_cmp(lhs, num, den, n), power_cmp(lhs, num, den, n))
              << lhs << " " << num << " " << den << " " << n;
        }
      }
    }
  }
  EXPECT_THROW(log_threshold_cmp(1, 1, 1, 0), ContractViolation);
}

TEST(Classify, ThreeTypes) {
  // n = 1024: L = 5, H = 10, threshold 2(t1+t3) vs 30
  EXPECT_EQ(classify3(5, 6, 6, 5, 1024), Case3::TwoPaths);
  EXPECT_EQ(classify3(8, 5, 8, 5, 1024), Case3::CommonNeighbors);
  EXPECT_EQ(classify3(5, 5, 9, 5, 1024), Case3::Triples);
  EXPECT_EQ(classify3(5, 5, 10, 5, 1024), Case3::Triples);
  EXPECT_THROW(classify3(5, 7, 6, 5, 1024), ContractViolation);
}

TEST(Classify, FourTypes) {
  // n = 4096: 6 * sum vs 132
  EXPECT_EQ(classify4({6, 6, 6, 6}, 6, 4096), Case4::Quadruples);
  EXPECT_EQ(classify4({11, 11, 12, 11}, 6, 4096), Case4::Common13);
  EXPECT_EQ(classify4({11, 11, 11, 12}, 6, 4096), Case4::Common24);
  EXPECT_EQ(classify4({6, 6, 12, 6}, 6, 4096), Case4::Codegree1);
  EXPECT_THROW(classify4({7, 6, 6, 6}, 6, 4096), ContractViolation);
  EXPECT_THROW(classify4({6, 8, 6, 7}, 6, 4096), ContractViolation);
}

TEST(Classify, EveryNormalizedTypeHasACase) {
  for (std::size_t n = 4; n <= (std::size_t{1} << 16); n = n * 3 / 2 + 1) {
    const int H = floor_log2(n), L = H / 2;
    for (int t1 = L; t1 <= H; ++t1) {
      for (int t2 = L; t2 <= H; ++t2) {
        for (int t3 = t2; t3 <= H; ++t3) ASSERT_NO_THROW(classify3(t1, t2, t3, L, n)) << n;
        for (int t3 = t1; t3 <= H; ++t3) {
          for (int t4 = t2; t4 <= H; ++t4) {
            if (t2 < t1) continue;
            ASSERT_NO_THROW(classify4({t1, t2, t3, t4}, L, n)) << n << " " << t1 << t2 << t3 << t4;
          }
        }
      }
    }
  }
}

TEST(Report, LineFormat) {
  auto r = detect(cycle(4));
  const std::regex re(
      R"(found=1 phase=[a-z0-9-]+ witness=\d+,\d+,\d+,\d+ ms_decomp=[0-9.]+ ms_p2=[0-9.]+ ms_p3=[0-9.]+ ms_p4=[0-9.]+ ms_total=[0-9.]+)");
  EXPECT_TRUE(std::regex_match(r.to_line(), re)) << r.to_line();
  auto none = detect(complete(5));
  EXPECT_NE(none.to_line().find("found=0"), std::string::npos);
  EXPECT_NE(none.to_line().find("witness=-"), std::string::npos);
}

TEST(Detect, SmallGraphsUseOracle) {
  auto r = detect(cycle(4));
  EXPECT_TRUE(r.found);
  EXPECT_EQ(r.phase, Phase::OracleFallback);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(verify_witness(cycle(4), *r.witness));
  EXPECT_EQ(phase_name(Phase::OracleFallback), "oracle-fallback");
}

TEST(Detect, CompleteGraphsHaveNone) {
  for (std::size_t n : {4U, 20U, 65U, 130U}) {
    auto r = detect(complete(n), eager());
    EXPECT_FALSE(r.found) << n;
    EXPECT_FALSE(r.witness);
    EXPECT_TRUE(r.diagnostic.empty());
  }
}

TEST(Detect, LongCyclesAreNegativeFourCycleIsPositive) {
  EXPECT_TRUE(detect(cycle(4), eager()).found);
  for (std::size_t n : {5U, 6U, 40U, 100U}) EXPECT_FALSE(detect(cycle(n), eager()).found) << n;
}

TEST(Detect, AgreesWithOracleOnMixedCorpus) {
  std::mt19937_64 rng(2024);
  int positives = 0;
  for (int i = 0; i < 400; ++i) {
    auto g = i % 4 == 3 ? surgery(rng) : corpus(rng, i);
    if (g.n() < 4) continue;
    const bool truth = oracle_detect(g).has_value();
    for (const auto& cfg : {eager(), DecompConfig{}}) {
      auto r = detect(g, cfg);
      ASSERT_EQ(r.found, truth) << i << " n=" << g.n();
      ASSERT_TRUE(r.diagnostic.empty()) << r.diagnostic;
      if (r.witness) ASSERT_TRUE(verify_witness(g, *r.witness));
    }
    positives += truth ? 1 : 0;
  }
  EXPECT_GT(positives, 80);
  EXPECT_LT(positives, 320);
}

TEST(Detect, PolarityBlowupsAreNegative) {
  for (std::uint64_t q : {3U, 5U, 7U}) {
    for (std::size_t w : {1U, 3U}) {
      auto g = clique_blowup(polarity_graph(q), w);
      auto r = detect(g, eager());
      EXPECT_FALSE(r.found) << q << " " << w;
      EXPECT_TRUE(r.diagnostic.empty());
    }
  }
}

TEST(Phases, EachPhaseMatchesSpanningClassifier) {
  std::mt19937_64 rng(99);
  int hits[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < 500; ++i) {
    auto g = i % 2 ? surgery(rng) : corpus(rng, i);
    if (g.n() < 4) continue;
    auto dr = decompose_layers(g, eager());
    if (auto* w = std::get_if<C4Witness>(&dr)) {
      ASSERT_TRUE(verify_witness(g, *w));
      ++hits[0];
      continue;
    }
    const auto& d = std::get<LayeredDecomposition>(dr);
    ASSERT_TRUE(check_invariants(g, d, eager()).empty());
    const auto& part = d.cluster_of;
    auto p2 = detect_2_clustered(g, d);
    const bool two = ref::has_c4_spanning(g, part, 2);
    ASSERT_EQ(std::holds_alternative<C4Witness>(p2), two) << i;
    if (two) {
      ASSERT_TRUE(verify_witness(g, std::get<C4Witness>(p2)));
      ++hits[1];
      continue;
    }
    const auto& t = std::get<OrderingTable>(p2);
    const bool three = ref::has_c4_spanning(g, part, 3);
    ASSERT_EQ(detect_3_clustered(g, d, t), three) << i;
    if (three) {
      ++hits[2];
      continue;
    }
    const bool four = ref::has_c4_spanning(g, part, 4);
    ASSERT_EQ(detect_4_clustered(g, d, t), four) << i;
    hits[four ? 3 : 4]++;
  }
  EXPECT_GT(hits[1], 0);
  EXPECT_GT(hits[2], 0);
  EXPECT_GT(hits[3], 0);
  EXPECT_GT(hits[4], 0);
}

TEST(Detect, PhaseOfPositiveReportIsSound) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 150; ++i) {
    auto g = corpus(rng, i);
    if (g.n() < 4) continue;
    auto r = detect(g, eager());
    if (!r.found) {
      EXPECT_FALSE(r.witness);
      continue;
    }
    EXPECT_NE(r.phase, Phase::OracleFallback);
    // the last two phases decide without producing a witness
    if (r.witness) {
      EXPECT_TRUE(verify_witness(g, *r.witness));
    } else {
      EXPECT_TRUE(r.phase == Phase::ThreeClustered || r.phase == Phase::FourClustered) << phase_name(r.phase);
    }
    EXPECT_GE(r.ms_total, 0);
  }
}

TEST(Find, VerifiedAndConsistentWithDetect) {
  std::mt19937_64 rng(321);
  for (int i = 0; i < 120; ++i) {
    auto g = corpus(rng, i);
    if (g.n() < 4) continue;
    auto w = find(g, eager());
    EXPECT_EQ(w.has_value(), detect(g, eager()).found) << i;
    if (w) {
      EXPECT_TRUE(verify_witness(g, *w));
      EXPECT_EQ(*w, canonical(*w));
    }
  }
}

TEST(Find, PlantedCycleInLargerGraph) {
  auto gen = generate(parse_spec("planted-c4:n=200,seed=3,p=1/20"));
  auto w = find(gen.graph, eager());
  ASSERT_TRUE(w);
  EXPECT_TRUE(verify_witness(gen.graph, *w));
}

TEST(Detect, Deterministic) {
  auto g = gnp(150, Rational{1, 2}, 17);
  auto a = detect(g);
  auto b = detect(g);
  EXPECT_EQ(a.found, b.found);
  EXPECT_EQ(a.phase, b.phase);
  EXPECT_EQ(a.witness, b.witness);
  EXPECT_EQ(find(g), find(g));
}

TEST(Baselines, AgreeWithEachOther) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    auto g = gnp(4 + rng() % 16, Rational{1 + rng() % 4, 5}, rng());
    auto o = detect_oracle(g);
    auto n = detect_naive(g);
    EXPECT_EQ(o.found, n.found);
    EXPECT_EQ(o.phase, Phase::Oracle);
    EXPECT_EQ(n.phase, Phase::Naive);
    if (n.witness) EXPECT_TRUE(verify_witness(g, *n.witness));
  }
}
