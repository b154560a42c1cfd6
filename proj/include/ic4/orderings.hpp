#ifndef IC4_ORDERINGS_HPP
#define IC4_ORDERINGS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ic4/graph.hpp"
#include "ic4/range_query.hpp"

namespace ic4 {

struct Cluster {
  std::uint32_t id = 0;
  int level = 0;
  std::vector<Vertex> vertices;  // sorted

  auto size() const -> std::size_t { return vertices.size(); }
  /// Position of v in vertices; v must belong to the cluster.
  auto index_of(Vertex v) const -> std::size_t;
};

/// Labels f on X and g on Y with (x,y) an edge iff f(x) <= g(y). f and g are aligned with the
/// clusters' sorted vertex lists.
struct ConciseOrdering {
  std::uint32_t x_id = 0;
  std::uint32_t y_id = 0;
  std::vector<ExtInt> f;
  std::vector<ExtInt> g;
  std::vector<ExtInt> f_image;  // sorted distinct
  std::vector<ExtInt> g_image;
};

using PairResult = std::variant<C4Witness, ConciseOrdering>;

/// g(b) = deg_A(b); f(a) = min g over N_B(a), or |A|+1 when a has no neighbor in B.
/// Returns a witness (a, b', b, a') with two vertices per cluster if the pair is not ordered.
auto detect_pair(const Graph& g, const Cluster& a, const Cluster& b) -> PairResult;

/// Pair-keyed orderings for a fixed cluster list (clusters[i].id == i). Pairs where both
/// clusters have at least two vertices are stored once under (min id, max id) with f on the
/// smaller id; all other pairs are synthesized on request. The table refers to the graph and
/// the cluster list, which must outlive it.
class OrderingTable {
 public:
  OrderingTable(const Graph& g, std::span<const Cluster> clusters) : g_(&g), clusters_(clusters) {}

  void store(ConciseOrdering ord);
  auto stored(std::uint32_t x, std::uint32_t y) const -> const ConciseOrdering*;
  auto stored_count() const -> std::size_t { return pairs_.size(); }

  auto graph() const -> const Graph& { return *g_; }
  auto clusters() const -> std::span<const Cluster> { return clusters_; }
  auto cluster(std::uint32_t id) const -> const Cluster& { return clusters_[id]; }

 private:
  const Graph* g_;
  std::span<const Cluster> clusters_;
  std::unordered_map<std::uint64_t, ConciseOrdering> pairs_;
};

/// Ordering of (x, y) with f on cluster x. Singleton-singleton pairs: f = 0, g = 0 for an edge,
/// f = 1, g = 0 otherwise.
auto ordering_for(const OrderingTable& t, std::uint32_t x_id, std::uint32_t y_id) -> ConciseOrdering;

/// Runs detect_pair on every pair of clusters with at least two vertices each, in ascending
/// (x, y) id order, and stops at the first witness.
auto build_ordering_table(const Graph& g, std::span<const Cluster> clusters)
    -> std::variant<C4Witness, OrderingTable>;

}  // namespace ic4

#endif
