#include "ic4/detector.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "ic4/errors.hpp"
#include "ic4/quadruples.hpp"
#include "ic4/triples.hpp"

namespace ic4 {

auto phase_name(Phase p) -> std::string {
  switch (p) {
    case Phase::OracleFallback: return "oracle-fallback";
    case Phase::Decomposition: return "decomposition";
    case Phase::TwoClustered: return "2-clustered";
    case Phase::ThreeClustered: return "3-clustered";
    case Phase::FourClustered: return "4-clustered";
    case Phase::Oracle: return "oracle";
    case Phase::Naive: return "naive";
  }
  return "unknown";
}

auto DetectionReport::to_line() const -> std::string {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  os << "found=" << (found ? 1 : 0) << " phase=" << phase_name(phase) << " witness=";
  if (witness) {
    os << witness->a << ',' << witness->b << ',' << witness->c << ',' << witness->d;
  } else {
    os << '-';
  }
  os << " ms_decomp=" << ms_decomp << " ms_p2=" << ms_p2 << " ms_p3=" << ms_p3 << " ms_p4=" << ms_p4
     << " ms_total=" << ms_total;
  return os.str();
}

auto log_threshold_cmp(std::int64_t lhs, std::int64_t num, std::int64_t den, std::size_t n) -> int {
  if (n == 0) throw ContractViolation("log_threshold_cmp: n = 0");
  if (std::has_single_bit(n)) {
    const auto k = static_cast<std::int64_t>(floor_log2(n));
    const auto diff = den * lhs - num * k;
    return (diff > 0) - (diff < 0);
  }
  const double diff = static_cast<double>(den * lhs) - static_cast<double>(num) * std::log2(static_cast<double>(n));
  return (diff > 0) - (diff < 0);
}

auto classify3(int t1, int t2, int t3, int L, std::size_t n) -> Case3 {
  if (t2 > t3) throw ContractViolation("classify3: expects t2 <= t3");
  if (t2 >= L + 1) return Case3::TwoPaths;
  if (log_threshold_cmp(2 * (t1 + t3), 3, 1, n) > 0) return Case3::CommonNeighbors;
  const int rest = t1 + t2 + t3 - std::min({t1, t2, t3});
  if (log_threshold_cmp(2 * rest, 3, 1, n) <= 0) return Case3::Triples;
  throw ContractViolation("classify3: type matches no case");
}

auto classify4(const std::array<int, 4>& t, int L, std::size_t n) -> Case4 {
  const auto [t1, t2, t3, t4] = t;
  if (t1 > std::min({t2, t3, t4}) || t2 > t4) throw ContractViolation("classify4: type is not normalized");
  (void)L;
  if (log_threshold_cmp(6 * (t2 + t3 + t4), 11, 1, n) <= 0) return Case4::Quadruples;
  if (log_threshold_cmp(6 * (t1 + t3), 11, 1, n) > 0) return Case4::Common13;
  if (log_threshold_cmp(6 * (t2 + t4), 11, 1, n) > 0) return Case4::Common24;
  if (log_threshold_cmp(6 * (t3 - t1), 1, 1, n) >= 0) return Case4::Codegree1;
  if (log_threshold_cmp(6 * (t4 - t2), 1, 1, n) >= 0) return Case4::Codegree2;
  if (log_threshold_cmp(6 * (t1 + t3), 7, 1, n) > 0) return Case4::Common13Late;
  if (log_threshold_cmp(6 * (t2 + t4), 7, 1, n) > 0) return Case4::Common24Late;
  throw ContractViolation("classify4: type matches no case");
}

auto detect_2_clustered(const Graph& g, const LayeredDecomposition& d) -> std::variant<C4Witness, OrderingTable> {
  auto r = build_ordering_table(g, d.clusters);
  if (auto* w = std::get_if<C4Witness>(&r)) return canonical(*w);
  return std::get<OrderingTable>(std::move(r));
}

namespace {

// Levels that hold at least one cluster, optionally only clusters of two or more vertices.
auto levels_with(const LayeredDecomposition& d, bool need_pair) -> std::vector<int> {
  std::vector<int> out;
  for (int l = d.L; l <= d.H; ++l) {
    for (auto id : d.by_level[static_cast<std::size_t>(l)]) {
      if (!need_pair || d.clusters[id].size() >= 2) {
        out.push_back(l);
        break;
      }
    }
  }
  return out;
}

// Table entries grouped by the unordered pair of endpoint levels.
class EntriesByLevels {
 public:
  explicit EntriesByLevels(const LayeredDecomposition& d) {
    for (std::uint32_t e = 0; e < d.table.size(); ++e) {
      auto [x, y] = d.table.key(e);
      groups_[key(d.level_of[x], d.level_of[y])].push_back(e);
    }
  }
  auto get(int a, int b) const -> const std::vector<std::uint32_t>& {
    static const std::vector<std::uint32_t> none;
    auto it = groups_.find(key(a, b));
    return it == groups_.end() ? none : it->second;
  }

 private:
  static auto key(int a, int b) -> std::uint64_t {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  }
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> groups_;
};

void require_table_level(const LayeredDecomposition& d, int l) {
  if (l <= d.L) throw ContractViolation("common-neighbourhood table requested at level " + std::to_string(l));
}

// Some non-edge with endpoint levels {la, lb} has common neighbours u at level sa and w at
// level sb with u != w and u, w non-adjacent. With same_cluster, u must share a cluster with an
// endpoint, which confines the cycle to three clusters.
auto common_pair_case(const Graph& g, const LayeredDecomposition& d, const EntriesByLevels& groups, int la, int lb,
                      int sa, int sb, bool same_cluster = false) -> bool {
  require_table_level(d, sa);
  require_table_level(d, sb);
  for (auto e : groups.get(la, lb)) {
    auto us = d.table.level_members(e, sa);
    if (us.empty()) continue;
    auto ws = d.table.level_members(e, sb);
    const auto [p, q] = d.table.key(e);
    for (auto u : us) {
      if (same_cluster && d.cluster_of[u] != d.cluster_of[p] && d.cluster_of[u] != d.cluster_of[q]) continue;
      for (auto w : ws) {
        if (u != w && !g.adjacent(u, w)) return true;
      }
    }
  }
  return false;
}

// Two induced 2-paths v1-v2-v3 and v2-v3-v1' with v1, v1' in one cluster of level t1.
auto two_paths_case(const LayeredDecomposition& d, int t1, int t2, int t3) -> bool {
  require_table_level(d, t2);
  require_table_level(d, t3);
  std::unordered_set<std::uint64_t> y;
  for (auto cid : d.by_level[static_cast<std::size_t>(t3)]) {
    for (auto v3 : d.clusters[cid].vertices) {
      y.clear();
      for (auto e : d.table.by_vertex_at(v3, t1)) {
        const auto v1 = d.table.other(e, v3);
        for (auto v2 : d.table.level_members(e, t2)) {
          y.insert((static_cast<std::uint64_t>(v2) << 32) | d.cluster_of[v1]);
        }
      }
      if (y.empty()) continue;
      for (auto e : d.table.containing(v3)) {
        auto [p, q] = d.table.key(e);
        for (auto [a, b] : {std::pair{p, q}, std::pair{q, p}}) {
          if (d.level_of[a] == t2 && d.level_of[b] == t1 &&
              y.count((static_cast<std::uint64_t>(a) << 32) | d.cluster_of[b])) {
            return true;
          }
        }
      }
    }
  }
  return false;
}

auto triples_case(const LayeredDecomposition& d, const OrderingTable& t, int t1, int t2, int t3) -> bool {
  for (auto x1 : d.by_level[static_cast<std::size_t>(t1)]) {
    if (d.clusters[x1].size() < 2) continue;
    for (auto x2 : d.by_level[static_cast<std::size_t>(t2)]) {
      if (x2 == x1) continue;
      for (auto x3 : d.by_level[static_cast<std::size_t>(t3)]) {
        if (x3 == x1 || x3 == x2 || (t2 == t3 && x3 < x2)) continue;
        if (detect_triple_pass(t, x1, x2, x3)) return true;
      }
    }
  }
  return false;
}

// Anchor cluster X at level ta; non-edges (v2, v4) at levels (sa, sb) with v3 in N_to(v2, v4).
// A vertex of X closes (x, v2, v3, v4) iff deg_X(v3) < codeg_X(v2, v4).
auto codegree_case(const Graph& g, const LayeredDecomposition& d, const OrderingTable& t,
                   const EntriesByLevels& groups, int ta, int sa, int sb, int to) -> bool {
  require_table_level(d, to);
  std::vector<std::uint32_t> relevant;
  for (auto e : groups.get(sa, sb)) {
    if (!d.table.level_members(e, to).empty()) relevant.push_back(e);
  }
  if (relevant.empty()) return false;
  std::vector<std::int64_t> deg(g.n(), -1);
  std::vector<Vertex> touched;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> memo;
  for (auto xid : d.by_level[static_cast<std::size_t>(ta)]) {
    const auto& x = d.clusters[xid];
    Bitset xb(g.n());
    for (auto v : x.vertices) xb.set(v);
    for (auto v : touched) deg[v] = -1;
    touched.clear();
    memo.clear();
    for (auto e : relevant) {
      auto [v2, v4] = d.table.key(e);
      if (d.level_of[v2] != sa) std::swap(v2, v4);
      const auto c2 = d.cluster_of[v2], c4 = d.cluster_of[v4];
      if (c2 == xid || c4 == xid) continue;
      auto it = memo.find({c2, c4});
      if (it == memo.end()) it = memo.emplace(std::pair{c2, c4}, cluster_codegrees(t, xid, c2, c4)).first;
      const auto cols = d.clusters[c4].size();
      const auto codeg = it->second[d.clusters[c2].index_of(v2) * cols + d.clusters[c4].index_of(v4)];
      if (codeg == 0) continue;
      for (auto v3 : d.table.level_members(e, to)) {
        if (d.cluster_of[v3] == xid) continue;
        if (deg[v3] < 0) {
          deg[v3] = static_cast<std::int64_t>(and_popcount(g.row(v3), xb.words()));
          touched.push_back(v3);
        }
        if (degree_vs_codegree_witnessable(static_cast<std::size_t>(deg[v3]), codeg)) return true;
      }
    }
  }
  return false;
}

// Edge / non-edge presence between two clusters, cached per pair.
class PairShapes {
 public:
  PairShapes(const Graph& g, const LayeredDecomposition& d) : g_(g), d_(d) {}

  // bit 0: some cross edge, bit 1: some cross non-edge
  auto get(std::uint32_t x, std::uint32_t y) -> unsigned {
    if (x > y) std::swap(x, y);
    const auto k = (static_cast<std::uint64_t>(x) << 32) | y;
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    const auto& cy = d_.clusters[y].vertices;
    Bitset yb(g_.n());
    for (auto v : cy) yb.set(v);
    std::size_t edges = 0;
    for (auto u : d_.clusters[x].vertices) edges += and_popcount(g_.row(u), yb.words());
    const unsigned s = (edges > 0 ? 1U : 0U) | (edges < d_.clusters[x].size() * cy.size() ? 2U : 0U);
    cache_.emplace(k, s);
    return s;
  }

  // Some cyclic order of the four clusters has cross edges around it and non-edges across.
  auto may_span(const std::array<std::uint32_t, 4>& ids) -> bool {
    static constexpr std::array<std::array<std::size_t, 4>, 3> kCycles{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 1, 3, 2}}};
    for (const auto& [i, j, k, l] : kCycles) {
      if ((get(ids[i], ids[j]) & 1U) && (get(ids[j], ids[k]) & 1U) && (get(ids[k], ids[l]) & 1U) &&
          (get(ids[l], ids[i]) & 1U) && (get(ids[i], ids[k]) & 2U) && (get(ids[j], ids[l]) & 2U)) {
        return true;
      }
    }
    return false;
  }

 private:
  const Graph& g_;
  const LayeredDecomposition& d_;
  std::unordered_map<std::uint64_t, unsigned> cache_;
};

// One cluster per sorted level; equal levels take increasing cluster ids. Smaller cycles were
// ruled out by the earlier phases, so only cycles meeting all four clusters are searched.
auto quadruples_case(const LayeredDecomposition& d, const OrderingTable& t, PairShapes& shapes, std::array<int, 4> lv)
    -> bool {
  std::sort(lv.begin(), lv.end());
  std::array<std::uint32_t, 4> pick{};
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == 4) {
      return shapes.may_span(pick) && detect_quadruple_spanning(t, pick[0], pick[1], pick[2], pick[3]);
    }
    const auto& ids = d.by_level[static_cast<std::size_t>(lv[i])];
    for (auto id : ids) {
      if (i > 0 && lv[i] == lv[i - 1] && id <= pick[i - 1]) continue;
      pick[i] = id;
      if (self(self, i + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace

auto detect_3_clustered(const Graph& g, const LayeredDecomposition& d, const OrderingTable& t) -> bool {
  const auto all = levels_with(d, false);
  const auto pairs = levels_with(d, true);
  if (d.clusters.size() < 3) return false;
  const EntriesByLevels groups(d);
  for (auto t1 : pairs) {
    for (auto t2 : all) {
      for (auto t3 : all) {
        if (t3 < t2) continue;
        switch (classify3(t1, t2, t3, d.L, d.n)) {
          case Case3::TwoPaths:
            if (two_paths_case(d, t1, t2, t3)) return true;
            break;
          case Case3::CommonNeighbors:
            if (common_pair_case(g, d, groups, t1, t2, t1, t3, true)) return true;
            break;
          case Case3::Triples:
            if (triples_case(d, t, t1, t2, t3)) return true;
            break;
        }
      }
    }
  }
  return false;
}

auto detect_4_clustered(const Graph& g, const LayeredDecomposition& d, const OrderingTable& t) -> bool {
  if (d.clusters.size() < 4) return false;
  const auto all = levels_with(d, false);
  const EntriesByLevels groups(d);
  PairShapes shapes(g, d);
  std::set<std::array<int, 4>> done;
  for (auto t1 : all) {
    for (auto t2 : all) {
      for (auto t3 : all) {
        for (auto t4 : all) {
          if (t2 < t1 || t3 < t1 || t4 < t1 || t4 < t2) continue;
          const std::array<int, 4> ty{t1, t2, t3, t4};
          bool hit = false;
          switch (classify4(ty, d.L, d.n)) {
            case Case4::Quadruples: {
              auto key = ty;
              std::sort(key.begin(), key.end());
              if (done.insert(key).second) hit = quadruples_case(d, t, shapes, ty);
              break;
            }
            case Case4::Common13:
            case Case4::Common13Late:
              hit = common_pair_case(g, d, groups, t2, t4, t1, t3);
              break;
            case Case4::Common24:
            case Case4::Common24Late:
              hit = common_pair_case(g, d, groups, t1, t3, t2, t4);
              break;
            case Case4::Codegree1:
              hit = codegree_case(g, d, t, groups, t1, t2, t4, t3);
              break;
            case Case4::Codegree2:
              hit = codegree_case(g, d, t, groups, t2, t1, t3, t4);
              break;
          }
          if (hit) return true;
        }
      }
    }
  }
  return false;
}

namespace {

using Clock = std::chrono::steady_clock;

auto ms_since(Clock::time_point t0) -> double {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

auto from_oracle(const Graph& g, Phase phase) -> DetectionReport {
  const auto t0 = Clock::now();
  DetectionReport r;
  r.phase = phase;
  r.witness = oracle_detect(g);
  r.found = r.witness.has_value();
  r.ms_total = ms_since(t0);
  return r;
}

auto run_phases(const Graph& g, const DecompConfig& cfg, DetectionReport& r) -> void {
  auto t0 = Clock::now();
  r.phase = Phase::Decomposition;
  auto dec = decompose_layers(g, cfg);
  r.ms_decomp = ms_since(t0);
  if (auto* w = std::get_if<C4Witness>(&dec)) {
    r.found = true;
    r.witness = canonical(*w);
    return;
  }
  const auto& d = std::get<LayeredDecomposition>(dec);

  t0 = Clock::now();
  r.phase = Phase::TwoClustered;
  auto p2 = detect_2_clustered(g, d);
  r.ms_p2 = ms_since(t0);
  if (auto* w = std::get_if<C4Witness>(&p2)) {
    r.found = true;
    r.witness = *w;
    return;
  }
  const auto& table = std::get<OrderingTable>(p2);

  t0 = Clock::now();
  r.phase = Phase::ThreeClustered;
  r.found = detect_3_clustered(g, d, table);
  r.ms_p3 = ms_since(t0);
  if (r.found) return;

  t0 = Clock::now();
  r.phase = Phase::FourClustered;
  r.found = detect_4_clustered(g, d, table);
  r.ms_p4 = ms_since(t0);
}

}  // namespace

auto detect(const Graph& g, const DecompConfig& cfg) -> DetectionReport {
  cfg.validate();
  if (g.n() < std::max<std::size_t>(cfg.n0, 4)) return from_oracle(g, Phase::OracleFallback);
  const auto t0 = Clock::now();
  DetectionReport r;
  try {
    run_phases(g, cfg, r);
  } catch (const ContractViolation& e) {
    auto fb = from_oracle(g, Phase::OracleFallback);
    fb.diagnostic = std::string("contract violation in ") + phase_name(r.phase) + ": " + e.what();
    fb.ms_decomp = r.ms_decomp;
    fb.ms_p2 = r.ms_p2;
    fb.ms_p3 = r.ms_p3;
    fb.ms_p4 = r.ms_p4;
    r = std::move(fb);
  }
  if (r.witness && !verify_witness(g, *r.witness)) throw ContractViolation("detect: witness does not verify");
  r.ms_total = ms_since(t0);
  return r;
}

auto detect_oracle(const Graph& g) -> DetectionReport { return from_oracle(g, Phase::Oracle); }

auto detect_naive(const Graph& g) -> DetectionReport {
  const auto t0 = Clock::now();
  DetectionReport r;
  r.phase = Phase::Naive;
  r.witness = naive_detect(g);
  r.found = r.witness.has_value();
  r.ms_total = ms_since(t0);
  return r;
}

namespace {

auto search(const Graph& g, const DecompConfig& cfg) -> std::optional<C4Witness> {
  const auto m = g.n();
  if (m <= 8) return naive_detect(g);
  const auto part = (m + 7) / 8;
  auto part_range = [&](std::size_t i) {
    return std::pair{std::min(m, i * part), std::min(m, (i + 1) * part)};
  };
  std::set<unsigned> tried;
  for (unsigned i1 = 0; i1 < 8; ++i1) {
    for (unsigned i2 = 0; i2 < 8; ++i2) {
      for (unsigned i3 = 0; i3 < 8; ++i3) {
        for (unsigned i4 = 0; i4 < 8; ++i4) {
          const unsigned mask = (1U << i1) | (1U << i2) | (1U << i3) | (1U << i4);
          if (!tried.insert(mask).second) continue;
          std::vector<Vertex> vs;
          for (unsigned p = 0; p < 8; ++p) {
            if (!(mask >> p & 1U)) continue;
            auto [lo, hi] = part_range(p);
            for (auto v = lo; v < hi; ++v) vs.push_back(static_cast<Vertex>(v));
          }
          if (vs.size() < 4) continue;
          const auto sub = g.induced(vs);
          auto rep = detect(sub, cfg);
          if (!rep.found) continue;
          std::optional<C4Witness> local = rep.witness;
          if (!local) local = search(sub, cfg);
          if (!local) throw ContractViolation("find: detect reported a cycle that the recursion cannot locate");
          return C4Witness{vs[local->a], vs[local->b], vs[local->c], vs[local->d]};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

auto find(const Graph& g, const DecompConfig& cfg) -> std::optional<C4Witness> {
  auto rep = detect(g, cfg);
  if (!rep.found) return std::nullopt;
  if (rep.witness) return canonical(*rep.witness);
  auto w = search(g, cfg);
  if (!w) throw ContractViolation("find: detect reported a cycle that the recursion cannot locate");
  w = canonical(*w);
  if (!verify_witness(g, *w)) throw ContractViolation("find: recursion produced an invalid witness");
  return w;
}

}  // namespace ic4
