#ifndef IC4_GRAPH_HPP
#define IC4_GRAPH_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ic4/bitset.hpp"

namespace ic4 {

using Vertex = std::uint32_t;

/// Undirected simple graph stored as n adjacency bitsets. Immutable; build through GraphBuilder.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  auto n() const -> std::size_t { return n_; }
  auto words() const -> std::size_t { return words_; }

  auto row(Vertex v) const -> std::span<const Word> {
    return {bits_.data() + static_cast<std::size_t>(v) * words_, words_};
  }
  auto adjacent(Vertex u, Vertex v) const -> bool { return test_bit(row(u), v); }
  auto degree(Vertex v) const -> std::size_t { return popcount(row(v)); }
  auto neighbors(Vertex v) const -> std::vector<Vertex>;
  auto edge_count() const -> std::size_t;
  auto edges() const -> std::vector<std::pair<Vertex, Vertex>>;

  /// Subgraph induced by vs (sorted, distinct); vertex i of the result is vs[i].
  auto induced(std::span<const Vertex> vs) const -> Graph;

  auto operator==(const Graph&) const -> bool = default;

 private:
  friend class GraphBuilder;
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> bits_;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n) : g_(n) {}
  explicit GraphBuilder(Graph g) : g_(std::move(g)) {}

  auto n() const -> std::size_t { return g_.n(); }
  auto adjacent(Vertex u, Vertex v) const -> bool { return g_.adjacent(u, v); }
  void add_edge(Vertex u, Vertex v);
  void remove_edge(Vertex u, Vertex v);
  void set_edge(Vertex u, Vertex v, bool present) { present ? add_edge(u, v) : remove_edge(u, v); }
  void toggle_edge(Vertex u, Vertex v) { set_edge(u, v, !adjacent(u, v)); }
  void add_clique(std::span<const Vertex> vs);

  auto view() const -> const Graph& { return g_; }
  auto build() && -> Graph { return std::move(g_); }
  auto build() const& -> Graph { return g_; }

 private:
  auto mutable_row(Vertex v) -> std::span<Word> {
    return {g_.bits_.data() + static_cast<std::size_t>(v) * g_.words_, g_.words_};
  }
  Graph g_;
};

/// Ordered quadruple (a,b,c,d): cycle edges ab, bc, cd, da; chords ac, bd absent.
struct C4Witness {
  Vertex a = 0, b = 0, c = 0, d = 0;

  auto as_array() const -> std::array<Vertex, 4> { return {a, b, c, d}; }
  auto operator==(const C4Witness&) const -> bool = default;
  auto operator<=>(const C4Witness&) const = default;
};

auto verify_witness(const Graph& g, const C4Witness& w) -> bool;

/// Rotate/reflect so that a is the smallest id and b < d.
auto canonical(const C4Witness& w) -> C4Witness;

auto to_string(const C4Witness& w) -> std::string;

/// Edge-list text: "n m" then m lines "u v". Duplicates and reversed lines allowed; m counts lines.
auto load_graph(std::string_view text) -> Graph;
auto load_graph_file(const std::string& path) -> Graph;
auto save_graph(const Graph& g) -> std::string;
void save_graph_file(const Graph& g, const std::string& path);

/// Scans non-edges (x,y), x < y, lexicographically and returns (x,u,y,v) for the first
/// non-adjacent pair u < v inside N(x) ∩ N(y), canonicalized.
auto oracle_detect(const Graph& g) -> std::optional<C4Witness>;

/// Plain enumeration of 4-subsets; only for small graphs and as the CLI's naive algorithm.
auto naive_detect(const Graph& g) -> std::optional<C4Witness>;

/// Smallest non-adjacent pair (u,v), u < v, among the set bits of s; nullopt if s is a clique.
auto first_non_adjacent_pair(const Graph& g, std::span<const Word> s) -> std::optional<std::pair<Vertex, Vertex>>;

auto is_clique(const Graph& g, std::span<const Vertex> vs) -> bool;

}  // namespace ic4

#endif
