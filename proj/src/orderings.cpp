#include "ic4/orderings.hpp"

#include <algorithm>

#include "ic4/errors.hpp"

namespace ic4 {

namespace {

auto pair_key(std::uint32_t x, std::uint32_t y) -> std::uint64_t { return (std::uint64_t{x} << 32) | y; }

void fill_images(ConciseOrdering& o) {
  o.f_image = sorted_image(o.f);
  o.g_image = sorted_image(o.g);
}

/// The construction itself, without verification.
auto construct(const Graph& g, const Cluster& a, const Cluster& b) -> ConciseOrdering {
  ConciseOrdering o;
  o.x_id = a.id;
  o.y_id = b.id;
  o.g.assign(b.size(), 0);
  o.f.assign(a.size(), static_cast<ExtInt>(a.size()) + 1);
  for (std::size_t j = 0; j < b.size(); ++j) {
    for (auto v : a.vertices) o.g[j] += g.adjacent(v, b.vertices[j]) ? 1 : 0;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (g.adjacent(a.vertices[i], b.vertices[j])) o.f[i] = std::min(o.f[i], o.g[j]);
    }
  }
  fill_images(o);
  return o;
}

auto reorient(const ConciseOrdering& s, std::size_t stored_x_size) -> ConciseOrdering {
  const auto k = static_cast<ExtInt>(stored_x_size) + 1;
  ConciseOrdering o;
  o.x_id = s.y_id;
  o.y_id = s.x_id;
  o.f.resize(s.g.size());
  o.g.resize(s.f.size());
  for (std::size_t j = 0; j < s.g.size(); ++j) o.f[j] = k - s.g[j];
  for (std::size_t i = 0; i < s.f.size(); ++i) o.g[i] = k - s.f[i];
  fill_images(o);
  return o;
}

}  // namespace

auto Cluster::index_of(Vertex v) const -> std::size_t {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) throw ContractViolation("vertex not in cluster");
  return static_cast<std::size_t>(it - vertices.begin());
}

auto detect_pair(const Graph& g, const Cluster& a, const Cluster& b) -> PairResult {
  for (auto u : a.vertices) {
    if (std::binary_search(b.vertices.begin(), b.vertices.end(), u)) {
      throw ContractViolation("detect_pair: clusters overlap");
    }
  }
  if (!is_clique(g, a.vertices) || !is_clique(g, b.vertices)) {
    throw ContractViolation("detect_pair: cluster is not a clique");
  }
  auto o = construct(g, a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const bool edge = g.adjacent(a.vertices[i], b.vertices[j]);
      if (edge == (o.f[i] <= o.g[j])) continue;
      if (edge) throw ContractViolation("detect_pair: edge violates the ordering");
      // non-edge with f(a) <= g(b): a's lowest-labelled neighbour b' and some a' in N(b) \ N(b')
      std::size_t jt = b.size();
      for (std::size_t j2 = 0; j2 < b.size() && jt == b.size(); ++j2) {
        if (o.g[j2] == o.f[i] && g.adjacent(a.vertices[i], b.vertices[j2])) jt = j2;
      }
      for (auto at : a.vertices) {
        if (jt < b.size() && g.adjacent(at, b.vertices[j]) && !g.adjacent(at, b.vertices[jt])) {
          C4Witness w{a.vertices[i], b.vertices[jt], b.vertices[j], at};
          if (!verify_witness(g, w)) break;
          return w;
        }
      }
      throw ContractViolation("detect_pair: failed to assemble witness");
    }
  }
  return o;
}

void OrderingTable::store(ConciseOrdering ord) {
  if (ord.x_id >= ord.y_id) throw ContractViolation("OrderingTable::store expects x_id < y_id");
  auto key = pair_key(ord.x_id, ord.y_id);
  pairs_.insert_or_assign(key, std::move(ord));
}

auto OrderingTable::stored(std::uint32_t x, std::uint32_t y) const -> const ConciseOrdering* {
  auto it = pairs_.find(pair_key(x, y));
  return it == pairs_.end() ? nullptr : &it->second;
}

auto ordering_for(const OrderingTable& t, std::uint32_t x_id, std::uint32_t y_id) -> ConciseOrdering {
  if (x_id == y_id || x_id >= t.clusters().size() || y_id >= t.clusters().size()) {
    throw ContractViolation("ordering_for: unknown pair " + std::to_string(x_id) + "," + std::to_string(y_id));
  }
  const auto& x = t.cluster(x_id);
  const auto& y = t.cluster(y_id);
  if (x.size() == 1 && y.size() == 1) {
    ConciseOrdering o;
    o.x_id = x_id;
    o.y_id = y_id;
    const bool edge = t.graph().adjacent(x.vertices[0], y.vertices[0]);
    o.f = {edge ? 0 : 1};
    o.g = {0};
    fill_images(o);
    return o;
  }
  if (x.size() < 2 || y.size() < 2) return construct(t.graph(), x, y);
  if (x_id < y_id) {
    if (const auto* s = t.stored(x_id, y_id)) return *s;
  } else if (const auto* s = t.stored(y_id, x_id)) {
    return reorient(*s, y.size());
  }
  throw ContractViolation("ordering_for: unknown pair " + std::to_string(x_id) + "," + std::to_string(y_id));
}

auto build_ordering_table(const Graph& g, std::span<const Cluster> clusters)
    -> std::variant<C4Witness, OrderingTable> {
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (clusters[i].id != i) throw ContractViolation("cluster ids must equal their positions");
  }
  OrderingTable table(g, clusters);
  std::vector<std::uint32_t> big;
  for (const auto& c : clusters) {
    if (c.size() >= 2) big.push_back(c.id);
  }
  for (std::size_t i = 0; i < big.size(); ++i) {
    for (std::size_t j = i + 1; j < big.size(); ++j) {
      auto r = detect_pair(g, clusters[big[i]], clusters[big[j]]);
      if (auto* w = std::get_if<C4Witness>(&r)) return *w;
      table.store(std::get<ConciseOrdering>(std::move(r)));
    }
  }
  return table;
}

}  // namespace ic4
