#ifndef IC4_DECOMPOSITION_HPP
#define IC4_DECOMPOSITION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ic4/graph.hpp"
#include "ic4/orderings.hpp"

namespace ic4 {

/// Constants of the decomposition. A level with target size D keeps clusters in (band_lo*D, band_hi*D].
struct DecompConfig {
  double band_lo = 0.25;
  double band_hi = 2.0;
  double c_sparse = 4.0;      // remainder edge bound c_sparse * n^1.5 * sqrt(D); must exceed 2
  double c_nbr = 2.0;         // common-neighbourhood bound c_nbr * n / 2^l
  std::size_t n0 = 64;        // below this the detector skips the decomposition
  double degree_prune = 0.5;  // clique extraction drops vertices of degree <= degree_prune * d

  /// Throws ConfigError on inconsistent values.
  void validate() const;
};

template <typename T>
using Outcome = std::variant<C4Witness, T>;

/// Clique extraction on G[r] (r sorted, non-empty). Returns a clique of size at least
/// d^2 / (16 |r|), a singleton when d <= 4 sqrt(|r|), or a witness.
auto extract_clique(const Graph& g, std::span<const Vertex> r, const DecompConfig& cfg = {})
    -> Outcome<std::vector<Vertex>>;

struct LargeDecomposition {
  std::vector<std::vector<Vertex>> cliques;
  std::vector<Vertex> remainder;
  std::size_t remainder_edges = 0;
};

/// Peels cliques of size about delta until G[R] has fewer than c_sparse * n^1.5 * sqrt(delta) edges.
auto decompose_large(const Graph& g, double delta, const DecompConfig& cfg = {}) -> Outcome<LargeDecomposition>;

struct LowDecomposition {
  std::vector<std::vector<Vertex>> cliques;
  std::vector<Vertex> remainder;
  std::size_t remainder_edges = 0;  // of the decompose_large stage
  /// Non-empty N_R(x, y) for non-edges x < y, in key order.
  std::vector<std::pair<Vertex, Vertex>> keys;
  std::vector<std::size_t> offsets;
  std::vector<Vertex> members;

  auto common(std::size_t e) const -> std::span<const Vertex> {
    return {members.data() + offsets[e], offsets[e + 1] - offsets[e]};
  }
};

/// Cliques of size about delta plus a remainder R with |N_R(x, y)| < delta for every non-edge.
auto decompose_low(const Graph& g, double delta, const DecompConfig& cfg = {}) -> Outcome<LowDecomposition>;

/// N_l(x, y) for non-edges (x, y) and levels l > L. Only non-empty entries are stored.
class LevelTable {
 public:
  LevelTable() = default;

  auto size() const -> std::size_t { return keys_.size(); }
  auto key(std::uint32_t e) const -> std::pair<Vertex, Vertex> { return keys_[e]; }
  /// All members of the entry, sorted by (level, id).
  auto members(std::uint32_t e) const -> std::span<const Vertex> {
    return {members_.data() + offsets_[e], offsets_[e + 1] - offsets_[e]};
  }
  auto level_members(std::uint32_t e, int level) const -> std::span<const Vertex>;
  auto find(Vertex x, Vertex y) const -> std::optional<std::uint32_t>;
  /// Entries with v as an endpoint, sorted by (level of the other endpoint, other endpoint).
  auto by_vertex(Vertex v) const -> std::span<const std::uint32_t> {
    return {by_vertex_.data() + by_vertex_off_[v], by_vertex_off_[v + 1] - by_vertex_off_[v]};
  }
  /// by_vertex(v) restricted to entries whose other endpoint lies at the given level.
  auto by_vertex_at(Vertex v, int level) const -> std::span<const std::uint32_t>;
  /// Entries whose member list contains v.
  auto containing(Vertex v) const -> std::span<const std::uint32_t> {
    return {containing_.data() + containing_off_[v], containing_off_[v + 1] - containing_off_[v]};
  }
  auto other(std::uint32_t e, Vertex v) const -> Vertex { return keys_[e].first == v ? keys_[e].second : keys_[e].first; }
  auto total_members() const -> std::size_t { return members_.size(); }

 private:
  friend class LevelTableBuilder;
  std::vector<int> level_of_;
  std::vector<std::pair<Vertex, Vertex>> keys_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> members_;
  std::vector<std::size_t> by_vertex_off_;
  std::vector<std::uint32_t> by_vertex_;
  std::vector<std::size_t> containing_off_;
  std::vector<std::uint32_t> containing_;
};

struct DecompStats {
  std::size_t remainder_edges = 0;  // G[R] after the large-clique stage
  double delta_L = 0;
  std::vector<std::size_t> level_sizes;     // vertices per level, indexed by level
  std::vector<std::size_t> cluster_counts;  // clusters per level
  std::size_t max_table_size = 0;           // largest |N_l(x, y)| over entries and levels
};

struct LayeredDecomposition {
  std::size_t n = 0;
  int L = 0;
  int H = 0;
  std::vector<Cluster> clusters;  // id == position; sorted by (level, smallest vertex)
  std::vector<int> level_of;
  std::vector<std::uint32_t> cluster_of;
  std::vector<std::vector<std::uint32_t>> by_level;  // indexed by level, 0..H
  LevelTable table;
  DecompStats stats;
};

/// Levels L = floor(log2(n) / 2) .. H = floor(log2 n) of cliques with bounded common
/// neighbourhoods. Requires n >= 4.
auto decompose_layers(const Graph& g, const DecompConfig& cfg = {}) -> Outcome<LayeredDecomposition>;

/// Human-readable list of every violated invariant; empty when the decomposition is valid.
auto check_invariants(const Graph& g, const LayeredDecomposition& d, const DecompConfig& cfg = {})
    -> std::vector<std::string>;

/// key=value lines: n, L, H, remainder_edges, delta_L, one "level" line per level, max_table_size.
auto debug_dump(const LayeredDecomposition& d) -> std::string;

auto floor_log2(std::size_t n) -> int;

}  // namespace ic4

#endif
