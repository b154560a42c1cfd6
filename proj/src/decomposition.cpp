#include "ic4/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "ic4/errors.hpp"

namespace ic4 {

void DecompConfig::validate() const {
  if (!(band_lo > 0) || !(band_hi > band_lo)) throw ConfigError("DecompConfig: need 0 < band_lo < band_hi");
  if (!(c_sparse > 2)) throw ConfigError("DecompConfig: c_sparse must exceed 2");
  if (!(c_nbr > 0)) throw ConfigError("DecompConfig: c_nbr must be positive");
  if (!(degree_prune > 0) || degree_prune >= 1) throw ConfigError("DecompConfig: degree_prune must lie in (0, 1)");
}

auto floor_log2(std::size_t n) -> int {
  if (n == 0) throw ContractViolation("floor_log2(0)");
  return static_cast<int>(std::bit_width(n)) - 1;
}

namespace {

auto checked(const Graph& g, C4Witness w) -> C4Witness {
  w = canonical(w);
  if (!verify_witness(g, w)) throw ContractViolation("decomposition produced an invalid witness " + to_string(w));
  return w;
}

auto bits_of(std::size_t n, std::span<const Vertex> vs) -> Bitset {
  Bitset b(n);
  for (auto v : vs) b.set(v);
  return b;
}

auto to_vertices(std::span<const Word> w) -> std::vector<Vertex> {
  std::vector<Vertex> out;
  for_each_bit(w, [&](std::size_t v) { out.push_back(static_cast<Vertex>(v)); });
  return out;
}

// Z = N(x) ∩ N(y) ∩ within for a non-edge (x, y): the clique, or the cycle (x, u, y, v).
auto common_clique(const Graph& g, Vertex x, Vertex y, std::span<const Word> within)
    -> Outcome<std::vector<Vertex>> {
  std::vector<Word> z(g.words());
  auto rx = g.row(x), ry = g.row(y);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = rx[i] & ry[i] & within[i];
  if (auto p = first_non_adjacent_pair(g, z)) return checked(g, {x, p->first, y, p->second});
  return to_vertices(z);
}

// Lexicographically first pair of s with codeg over within at least delta.
auto pair_rule(const Graph& g, const std::vector<Vertex>& s, std::span<const Word> within, double delta)
    -> Outcome<std::vector<Vertex>> {
  std::vector<Word> tmp(g.words());
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto rx = g.row(s[i]);
    for (std::size_t k = 0; k < tmp.size(); ++k) tmp[k] = rx[k] & within[k];
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (static_cast<double>(and_popcount(tmp, g.row(s[j]))) >= delta) {
        return common_clique(g, s[i], s[j], within);
      }
    }
  }
  throw ContractViolation("extract_clique: no pair with large co-degree");
}

// Split a sorted clique into ceil(k / cap) near-equal consecutive parts.
auto split(std::vector<Vertex> c, std::size_t cap) -> std::vector<std::vector<Vertex>> {
  cap = std::max<std::size_t>(cap, 1);
  if (c.size() <= cap) return {std::move(c)};
  const auto p = (c.size() + cap - 1) / cap;
  std::vector<std::vector<Vertex>> out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < p; ++i) {
    const auto len = c.size() / p + (i < c.size() % p ? 1 : 0);
    out.emplace_back(c.begin() + static_cast<std::ptrdiff_t>(pos), c.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  return out;
}

auto band_cap(double hi, double delta) -> std::size_t {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(hi * delta)));
}

}  // namespace

auto extract_clique(const Graph& g, std::span<const Vertex> r, const DecompConfig& cfg)
    -> Outcome<std::vector<Vertex>> {
  if (r.empty()) throw ContractViolation("extract_clique: empty vertex set");
  const auto n = g.n();
  const auto in_r = bits_of(n, r);
  const double size = static_cast<double>(r.size());
  std::size_t degsum = 0;
  std::vector<std::size_t> deg(n, 0);
  for (auto v : r) degsum += deg[v] = and_popcount(g.row(v), in_r.words());
  const double d = static_cast<double>(degsum) / size;
  if (d <= 4 * std::sqrt(size)) return std::vector<Vertex>{r.front()};
  const double delta = d * d / (16 * size);

  // prune to minimum degree above degree_prune * d
  Bitset vt = in_r;
  std::vector<Vertex> queue;
  for (auto v : r) {
    if (static_cast<double>(deg[v]) <= cfg.degree_prune * d) queue.push_back(v);
  }
  for (auto v : queue) vt.reset(v);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for_each_bit(g.row(queue[qi]), [&](std::size_t u) {
      if (!vt.test(u)) return;
      if (static_cast<double>(--deg[u]) <= cfg.degree_prune * d) {
        vt.reset(u);
        queue.push_back(static_cast<Vertex>(u));
      }
    });
  }
  const auto vtilde = vt.to_vector();
  if (vtilde.empty()) throw ContractViolation("extract_clique: pruning removed every vertex");

  Bitset indep(n);
  auto extend = [&] {
    for (auto v : vtilde) {
      if (!indep.test(v) && and_popcount(g.row(v), indep.words()) == 0) indep.set(v);
    }
  };
  extend();

  const double vsize = static_cast<double>(vtilde.size());
  std::vector<std::vector<Vertex>> unique(n);
  while (static_cast<double>(indep.count()) < 4 * vsize / d) {
    for (auto& u : unique) u.clear();
    for (auto v : vtilde) {
      if (indep.test(v)) continue;
      std::size_t only = kNoBit;
      int hits = 0;
      auto row = g.row(v);
      auto iw = indep.words();
      for (std::size_t k = 0; k < iw.size() && hits < 2; ++k) {
        Word w = row[k] & iw[k];
        if (!w) continue;
        hits += std::popcount(w);
        only = k * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
      }
      if (hits == 1) unique[only].push_back(v);
    }
    std::optional<Vertex> pick;
    for (auto x : indep.to_vector()) {
      if (static_cast<double>(unique[x].size()) >= d / 8 - 1) {
        pick = x;
        break;
      }
    }
    if (!pick) return pair_rule(g, to_vertices(indep.words()), vt.words(), delta);
    const auto& ux = unique[*pick];
    const auto take = std::min(ux.size(), static_cast<std::size_t>(std::ceil(delta)));
    std::vector<Vertex> s(ux.begin(), ux.begin() + static_cast<std::ptrdiff_t>(take));
    const auto sb = bits_of(n, s);
    auto p = first_non_adjacent_pair(g, sb.words());
    if (!p) return s;
    indep.reset(*pick);
    indep.set(p->first);
    indep.set(p->second);
    extend();
  }
  auto members = to_vertices(indep.words());
  members.resize(std::min(members.size(), static_cast<std::size_t>(std::ceil(4 * vsize / d))));
  return pair_rule(g, members, vt.words(), delta);
}

auto decompose_large(const Graph& g, double delta, const DecompConfig& cfg) -> Outcome<LargeDecomposition> {
  cfg.validate();
  if (!(delta >= 1)) throw ContractViolation("decompose_large: delta must be at least 1");
  const auto n = g.n();
  Bitset in_r(n);
  for (std::size_t v = 0; v < n; ++v) in_r.set(v);
  std::size_t edges = g.edge_count();
  const double limit = cfg.c_sparse * std::pow(static_cast<double>(n), 1.5) * std::sqrt(delta);
  const auto cap = band_cap(cfg.band_hi, delta);

  LargeDecomposition out;
  while (edges > 0 && static_cast<double>(edges) >= limit) {
    auto res = extract_clique(g, in_r.to_vector(), cfg);
    if (auto* w = std::get_if<C4Witness>(&res)) return *w;
    auto clique = std::get<std::vector<Vertex>>(std::move(res));
    if (!is_clique(g, clique)) throw ContractViolation("decompose_large: extracted set is not a clique");
    if (clique.size() > cap) clique.resize(cap);
    for (auto v : clique) {
      in_r.reset(v);
      edges -= and_popcount(g.row(v), in_r.words());
    }
    out.cliques.push_back(std::move(clique));
  }
  out.remainder = to_vertices(in_r.words());
  out.remainder_edges = edges;
  return out;
}

namespace {

// Common-neighbourhood sets N_R(x, y) under deletions from R.
class EntryPool {
 public:
  EntryPool(const Graph& g, Bitset in_r, std::size_t threshold)
      : g_(g), in_r_(std::move(in_r)), threshold_(threshold), back_(g.n()) {}

  auto in_r() const -> const Bitset& { return in_r_; }
  auto size() const -> std::size_t { return keys_.size(); }
  auto key(std::uint32_t e) const -> std::pair<Vertex, Vertex> { return keys_[e]; }
  auto live(std::uint32_t e) const -> std::size_t { return live_[e]; }
  auto members(std::uint32_t e) const -> const std::vector<Vertex>& { return members_[e]; }

  auto entry(Vertex x, Vertex y) -> std::uint32_t {
    if (x > y) std::swap(x, y);
    const auto k = (static_cast<std::uint64_t>(x) << 32) | y;
    auto [it, fresh] = index_.try_emplace(k, static_cast<std::uint32_t>(keys_.size()));
    if (fresh) {
      keys_.emplace_back(x, y);
      live_.push_back(0);
      members_.emplace_back();
    }
    return it->second;
  }

  void insert(std::uint32_t e, Vertex z) {
    members_[e].push_back(z);
    back_[z].push_back(e);
    ++live_[e];
  }

  void offer(std::uint32_t e) {
    if (live_[e] >= threshold_) heap_.emplace(live_[e], std::numeric_limits<std::uint32_t>::max() - e);
  }

  auto live_members(std::uint32_t e) const -> std::vector<Vertex> {
    std::vector<Vertex> out;
    for (auto z : members_[e]) {
      if (in_r_.test(z)) out.push_back(z);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Tests the live set of e; removes it from R when it is a clique.
  auto take(std::uint32_t e) -> Outcome<std::vector<Vertex>> {
    auto z = live_members(e);
    const auto zb = bits_of(g_.n(), z);
    if (auto p = first_non_adjacent_pair(g_, zb.words())) {
      return checked(g_, {keys_[e].first, p->first, keys_[e].second, p->second});
    }
    for (auto v : z) remove(v);
    return z;
  }

  void remove(Vertex z) {
    if (!in_r_.test(z)) return;
    in_r_.reset(z);
    for (auto e : back_[z]) --live_[e];
  }

  /// Extracts every live set of size >= threshold; cliques go to sink.
  auto drain(std::vector<std::vector<Vertex>>& sink) -> std::optional<C4Witness> {
    while (!heap_.empty()) {
      auto [cnt, inv] = heap_.top();
      heap_.pop();
      const auto e = std::numeric_limits<std::uint32_t>::max() - inv;
      if (live_[e] < threshold_) continue;
      if (live_[e] != cnt) {
        offer(e);
        continue;
      }
      auto res = take(e);
      if (auto* w = std::get_if<C4Witness>(&res)) return *w;
      sink.push_back(std::get<std::vector<Vertex>>(std::move(res)));
    }
    return std::nullopt;
  }

  void release() {
    std::vector<std::vector<Vertex>>().swap(members_);
    std::vector<std::vector<std::uint32_t>>().swap(back_);
    std::unordered_map<std::uint64_t, std::uint32_t>().swap(index_);
  }

 private:
  const Graph& g_;
  Bitset in_r_;
  std::size_t threshold_;
  std::vector<std::pair<Vertex, Vertex>> keys_;
  std::vector<std::size_t> live_;
  std::vector<std::vector<Vertex>> members_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::vector<std::vector<std::uint32_t>> back_;
  std::priority_queue<std::pair<std::size_t, std::uint32_t>> heap_;
};

struct LowState {
  LargeDecomposition large;
  EntryPool pool;
  std::vector<std::vector<Vertex>> extracted;  // cliques removed from R, unsplit
};

auto run_low(const Graph& g, double delta, const DecompConfig& cfg) -> Outcome<LowState> {
  auto lr = decompose_large(g, delta, cfg);
  if (auto* w = std::get_if<C4Witness>(&lr)) return *w;
  auto large = std::get<LargeDecomposition>(std::move(lr));
  const auto n = g.n();
  const auto r0 = bits_of(n, large.remainder);
  LowState st{std::move(large), EntryPool(g, r0, static_cast<std::size_t>(std::ceil(delta))), {}};
  auto& pool = st.pool;

  // common neighbours in R of every non-edge with an endpoint in R
  std::vector<Word> common(g.words());
  for (auto x : st.large.remainder) {
    auto rx = g.row(x);
    for (Vertex y = 0; y < n; ++y) {
      if (y == x || g.adjacent(x, y) || (r0.test(y) && y < x)) continue;
      auto ry = g.row(y);
      auto rr = pool.in_r().words();
      bool any = false;
      for (std::size_t k = 0; k < common.size(); ++k) any |= (common[k] = rx[k] & ry[k] & rr[k]) != 0;
      if (!any) continue;
      const auto e = pool.entry(x, y);
      for_each_bit(std::span<const Word>(common), [&](std::size_t z) { pool.insert(e, static_cast<Vertex>(z)); });
      pool.offer(e);
      if (auto w = pool.drain(st.extracted)) return *w;
    }
  }

  // induced 2-paths through R between two peeled cliques, guided by their ordering
  std::vector<Cluster> xs;
  for (std::size_t i = 0; i < st.large.cliques.size(); ++i) {
    xs.push_back(Cluster{static_cast<std::uint32_t>(i), 0, st.large.cliques[i]});
    std::sort(xs.back().vertices.begin(), xs.back().vertices.end());
  }
  std::vector<std::uint32_t> touched;
  std::vector<std::size_t> ny;
  for (std::size_t a = 0; a < xs.size(); ++a) {
    for (std::size_t b = a + 1; b < xs.size(); ++b) {
      const auto& cx = xs[a];
      const auto& cy = xs[b];
      auto pr = detect_pair(g, cx, cy);
      if (auto* w = std::get_if<C4Witness>(&pr)) return checked(g, *w);
      const auto& ord = std::get<ConciseOrdering>(pr);
      touched.clear();
      for (auto z : pool.in_r().to_vector()) {
        ny.clear();
        for (std::size_t k = 0; k < cy.size(); ++k) {
          if (g.adjacent(static_cast<Vertex>(z), cy.vertices[k])) ny.push_back(k);
        }
        if (ny.empty()) continue;
        std::sort(ny.begin(), ny.end(), [&](std::size_t p, std::size_t q) { return ord.g[p] < ord.g[q]; });
        for (std::size_t i = 0; i < cx.size(); ++i) {
          if (!g.adjacent(static_cast<Vertex>(z), cx.vertices[i])) continue;
          for (auto k : ny) {
            if (ord.g[k] >= ord.f[i]) break;
            const auto e = pool.entry(cx.vertices[i], cy.vertices[k]);
            pool.insert(e, static_cast<Vertex>(z));
            touched.push_back(e);
          }
        }
      }
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      for (auto e : touched) pool.offer(e);
      if (auto w = pool.drain(st.extracted)) return *w;
    }
  }
  return st;
}

auto key_order(const EntryPool& pool) -> std::vector<std::uint32_t> {
  std::vector<std::uint32_t> order(pool.size());
  for (std::uint32_t e = 0; e < order.size(); ++e) order[e] = e;
  std::sort(order.begin(), order.end(), [&](auto p, auto q) { return pool.key(p) < pool.key(q); });
  return order;
}

}  // namespace

auto decompose_low(const Graph& g, double delta, const DecompConfig& cfg) -> Outcome<LowDecomposition> {
  auto res = run_low(g, delta, cfg);
  if (auto* w = std::get_if<C4Witness>(&res)) return *w;
  auto& st = std::get<LowState>(res);
  LowDecomposition out;
  out.cliques = std::move(st.large.cliques);
  for (auto& z : st.extracted) {
    for (auto& part : split(std::move(z), band_cap(cfg.band_hi, delta))) out.cliques.push_back(std::move(part));
  }
  out.remainder = st.pool.in_r().to_vector();
  out.remainder_edges = st.large.remainder_edges;
  out.offsets.push_back(0);
  for (auto e : key_order(st.pool)) {
    auto m = st.pool.live_members(e);
    if (m.empty()) continue;
    out.keys.push_back(st.pool.key(e));
    out.members.insert(out.members.end(), m.begin(), m.end());
    out.offsets.push_back(out.members.size());
  }
  return out;
}

class LevelTableBuilder {
 public:
  static auto build(std::vector<int> level_of, std::vector<std::pair<Vertex, Vertex>> keys,
                    std::vector<std::size_t> offsets, std::vector<Vertex> members) -> LevelTable {
    LevelTable t;
    const auto n = level_of.size();
    t.level_of_ = std::move(level_of);
    t.keys_ = std::move(keys);
    t.offsets_ = std::move(offsets);
    t.members_ = std::move(members);
    const auto& lv = t.level_of_;
    for (std::size_t e = 0; e < t.keys_.size(); ++e) {
      std::sort(t.members_.begin() + static_cast<std::ptrdiff_t>(t.offsets_[e]),
                t.members_.begin() + static_cast<std::ptrdiff_t>(t.offsets_[e + 1]),
                [&](Vertex a, Vertex b) { return std::pair{lv[a], a} < std::pair{lv[b], b}; });
    }

    std::vector<std::size_t> cnt(n + 1, 0);
    for (const auto& [x, y] : t.keys_) ++cnt[x + 1], ++cnt[y + 1];
    for (std::size_t v = 0; v < n; ++v) cnt[v + 1] += cnt[v];
    t.by_vertex_off_ = cnt;
    t.by_vertex_.assign(cnt[n], 0);
    for (std::uint32_t e = 0; e < t.keys_.size(); ++e) {
      t.by_vertex_[cnt[t.keys_[e].first]++] = e;
      t.by_vertex_[cnt[t.keys_[e].second]++] = e;
    }
    for (Vertex v = 0; v < n; ++v) {
      auto b = t.by_vertex_.begin() + static_cast<std::ptrdiff_t>(t.by_vertex_off_[v]);
      auto en = t.by_vertex_.begin() + static_cast<std::ptrdiff_t>(t.by_vertex_off_[v + 1]);
      std::sort(b, en, [&](std::uint32_t p, std::uint32_t q) {
        auto op = t.other(p, v), oq = t.other(q, v);
        return std::pair{lv[op], op} < std::pair{lv[oq], oq};
      });
    }

    std::fill(cnt.begin(), cnt.end(), 0);
    for (auto v : t.members_) ++cnt[v + 1];
    for (std::size_t v = 0; v < n; ++v) cnt[v + 1] += cnt[v];
    t.containing_off_ = cnt;
    t.containing_.assign(cnt[n], 0);
    for (std::uint32_t e = 0; e < t.keys_.size(); ++e) {
      for (auto v : t.members(e)) t.containing_[cnt[v]++] = e;
    }
    return t;
  }
};

auto LevelTable::level_members(std::uint32_t e, int level) const -> std::span<const Vertex> {
  auto m = members(e);
  auto lo = std::partition_point(m.begin(), m.end(), [&](Vertex v) { return level_of_[v] < level; });
  auto hi = std::partition_point(lo, m.end(), [&](Vertex v) { return level_of_[v] <= level; });
  return {lo, hi};
}

auto LevelTable::find(Vertex x, Vertex y) const -> std::optional<std::uint32_t> {
  if (x > y) std::swap(x, y);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), std::pair{x, y});
  if (it == keys_.end() || *it != std::pair{x, y}) return std::nullopt;
  return static_cast<std::uint32_t>(it - keys_.begin());
}

auto LevelTable::by_vertex_at(Vertex v, int level) const -> std::span<const std::uint32_t> {
  auto all = by_vertex(v);
  auto lo = std::partition_point(all.begin(), all.end(), [&](std::uint32_t e) { return level_of_[other(e, v)] < level; });
  auto hi = std::partition_point(lo, all.end(), [&](std::uint32_t e) { return level_of_[other(e, v)] <= level; });
  return {lo, hi};
}

auto decompose_layers(const Graph& g, const DecompConfig& cfg) -> Outcome<LayeredDecomposition> {
  cfg.validate();
  const auto n = g.n();
  if (n < 4) throw ContractViolation("decompose_layers: need at least 4 vertices");
  const int H = floor_log2(n);
  const int L = H / 2;
  const double delta = static_cast<double>(n) / std::ldexp(1.0, L);

  auto res = run_low(g, delta, cfg);
  if (auto* w = std::get_if<C4Witness>(&res)) return *w;
  auto& st = std::get<LowState>(res);
  auto& pool = st.pool;

  std::vector<std::pair<int, std::vector<Vertex>>> found;
  for (auto& c : st.large.cliques) {
    std::sort(c.begin(), c.end());
    found.emplace_back(L, std::move(c));
  }
  for (auto& z : st.extracted) {
    for (auto& part : split(std::move(z), band_cap(cfg.band_hi, delta))) found.emplace_back(L, std::move(part));
  }

  const Bitset rtilde = pool.in_r();
  const auto order = key_order(pool);
  for (int l = L + 1; l <= H - 1; ++l) {
    const auto scale = std::size_t{1} << l;
    for (auto e : order) {
      if (pool.live(e) * scale <= n) continue;
      auto r = pool.take(e);
      if (auto* w = std::get_if<C4Witness>(&r)) return *w;
      auto z = std::get<std::vector<Vertex>>(std::move(r));
      for (auto& part : split(std::move(z), n / (scale / 2))) found.emplace_back(l, std::move(part));
    }
  }
  for (auto v : pool.in_r().to_vector()) found.emplace_back(H, std::vector<Vertex>{v});

  LayeredDecomposition d;
  d.n = n;
  d.L = L;
  d.H = H;
  std::sort(found.begin(), found.end(),
            [](const auto& p, const auto& q) { return std::pair{p.first, p.second.front()} < std::pair{q.first, q.second.front()}; });
  d.level_of.assign(n, -1);
  d.cluster_of.assign(n, 0);
  d.by_level.assign(static_cast<std::size_t>(H) + 1, {});
  d.stats.level_sizes.assign(static_cast<std::size_t>(H) + 1, 0);
  d.stats.cluster_counts.assign(static_cast<std::size_t>(H) + 1, 0);
  for (auto& [lvl, vs] : found) {
    const auto id = static_cast<std::uint32_t>(d.clusters.size());
    for (auto v : vs) {
      d.level_of[v] = lvl;
      d.cluster_of[v] = id;
    }
    d.by_level[static_cast<std::size_t>(lvl)].push_back(id);
    d.stats.level_sizes[static_cast<std::size_t>(lvl)] += vs.size();
    ++d.stats.cluster_counts[static_cast<std::size_t>(lvl)];
    d.clusters.push_back(Cluster{id, lvl, std::move(vs)});
  }
  d.stats.remainder_edges = st.large.remainder_edges;
  d.stats.delta_L = delta;

  // N_l tables: the low-stage common neighbourhoods filtered through the snapshot of R
  std::vector<std::pair<Vertex, Vertex>> keys;
  std::vector<std::size_t> offsets{0};
  std::vector<Vertex> members;
  for (auto e : order) {
    const auto before = members.size();
    for (auto z : pool.members(e)) {
      if (rtilde.test(z)) members.push_back(z);
    }
    if (members.size() == before) continue;
    keys.push_back(pool.key(e));
    offsets.push_back(members.size());
  }
  pool.release();
  d.table = LevelTableBuilder::build(d.level_of, std::move(keys), std::move(offsets), std::move(members));
  for (std::uint32_t e = 0; e < d.table.size(); ++e) {
    auto m = d.table.members(e);
    for (std::size_t i = 0; i < m.size();) {
      std::size_t j = i;
      while (j < m.size() && d.level_of[m[j]] == d.level_of[m[i]]) ++j;
      d.stats.max_table_size = std::max(d.stats.max_table_size, j - i);
      i = j;
    }
  }
  return d;
}

auto check_invariants(const Graph& g, const LayeredDecomposition& d, const DecompConfig& cfg)
    -> std::vector<std::string> {
  std::vector<std::string> bad;
  auto fail = [&](const std::string& s) {
    if (bad.size() < 50) bad.push_back(s);
  };
  const auto n = g.n();
  if (d.n != n) fail("vertex count mismatch");
  std::vector<int> seen(n, 0);
  for (std::size_t i = 0; i < d.clusters.size(); ++i) {
    const auto& c = d.clusters[i];
    const auto tag = "cluster " + std::to_string(i);
    if (c.id != i) fail(tag + ": id mismatch");
    if (c.level < d.L || c.level > d.H) fail(tag + ": level out of range");
    if (c.vertices.empty()) fail(tag + ": empty");
    if (!std::is_sorted(c.vertices.begin(), c.vertices.end())) fail(tag + ": unsorted");
    if (!is_clique(g, c.vertices)) fail(tag + ": not a clique");
    const double target = static_cast<double>(n) / std::ldexp(1.0, c.level);
    const auto s = static_cast<double>(c.size());
    if (!(s > cfg.band_lo * target && s <= cfg.band_hi * target)) {
      fail(tag + ": size " + std::to_string(c.size()) + " outside band at level " + std::to_string(c.level));
    }
    for (auto v : c.vertices) {
      if (v >= n) {
        fail(tag + ": vertex out of range");
        continue;
      }
      ++seen[v];
      if (d.level_of[v] != c.level || d.cluster_of[v] != c.id) fail(tag + ": stale vertex maps");
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (seen[v] != 1) fail("vertex " + std::to_string(v) + " covered " + std::to_string(seen[v]) + " times");
  }
  const double limit = cfg.c_sparse * std::pow(static_cast<double>(n), 1.5) * std::sqrt(d.stats.delta_L);
  if (static_cast<double>(d.stats.remainder_edges) > limit) fail("remainder has too many edges");

  // every non-edge against a direct bitset computation
  std::vector<Word> common(g.words());
  std::vector<std::size_t> per_level(static_cast<std::size_t>(d.H) + 1);
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      if (g.adjacent(x, y)) continue;
      auto rx = g.row(x), ry = g.row(y);
      std::fill(per_level.begin(), per_level.end(), 0);
      bool any = false;
      for (std::size_t k = 0; k < common.size(); ++k) any |= (common[k] = rx[k] & ry[k]) != 0;
      if (any) {
        for_each_bit(std::span<const Word>(common), [&](std::size_t z) { ++per_level[static_cast<std::size_t>(d.level_of[z])]; });
      }
      const auto e = d.table.find(x, y);
      for (int l = d.L + 1; l <= d.H; ++l) {
        const auto want = per_level[static_cast<std::size_t>(l)];
        const auto have = e ? d.table.level_members(*e, l) : std::span<const Vertex>{};
        const auto tag = "N_" + std::to_string(l) + "(" + std::to_string(x) + "," + std::to_string(y) + ")";
        if (have.size() != want) {
          fail(tag + ": table has " + std::to_string(have.size()) + ", expected " + std::to_string(want));
        }
        for (auto z : have) {
          if (!g.adjacent(x, z) || !g.adjacent(y, z)) fail(tag + ": member is not a common neighbour");
        }
        if (static_cast<double>(want) > cfg.c_nbr * static_cast<double>(n) / std::ldexp(1.0, l)) {
          fail(tag + ": size " + std::to_string(want) + " exceeds bound");
        }
      }
    }
  }
  for (std::uint32_t e = 0; e < d.table.size(); ++e) {
    for (auto z : d.table.members(e)) {
      if (d.level_of[z] <= d.L) fail("table entry " + std::to_string(e) + " holds a level-L vertex");
    }
  }
  return bad;
}

auto debug_dump(const LayeredDecomposition& d) -> std::string {
  std::ostringstream os;
  os << "n=" << d.n << "\nL=" << d.L << "\nH=" << d.H << "\nremainder_edges=" << d.stats.remainder_edges
     << "\ndelta_L=" << d.stats.delta_L << '\n';
  for (int l = d.L; l <= d.H; ++l) {
    const auto i = static_cast<std::size_t>(l);
    os << "level=" << l << " vertices=" << d.stats.level_sizes[i] << " clusters=" << d.stats.cluster_counts[i]
       << '\n';
  }
  os << "table_entries=" << d.table.size() << "\ntable_members=" << d.table.total_members()
     << "\nmax_table_size=" << d.stats.max_table_size << '\n';
  return os.str();
}

}  // namespace ic4
