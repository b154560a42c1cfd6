#ifndef IC4_GENERATORS_HPP
#define IC4_GENERATORS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ic4/graph.hpp"

namespace ic4 {

enum class GenKind { Gnp, PolarityBlowup, CliqueBlowup, PlantedC4, NestedPair };

struct Rational {
  std::uint64_t num = 1;
  std::uint64_t den = 2;
};

/// Grammar: <kind>:<key>=<value>(,<key>=<value>)*
///   gnp:n=,p=,seed=             G(n,p)
///   polarity-blowup:q=,w=       q prime; w defaults to 1
///   clique-blowup:n=,p=,w=,seed= base on n vertices, blown up by w
///   planted-c4:n=,p=,seed=      p defaults to 1/2
///   nested-pair:n=,seed=,plant= plant defaults to 0
/// p is a decimal ("0.25") or a fraction ("1/4").
struct GraphSpec {
  GenKind kind = GenKind::Gnp;
  std::uint64_t n = 0;
  Rational p{};
  std::uint64_t q = 0;
  std::uint64_t w = 1;
  std::uint64_t seed = 0;
  bool plant = false;
};

inline constexpr std::size_t kDefaultMaxVertices = std::size_t{1} << 15;

auto parse_spec(std::string_view text) -> GraphSpec;
auto format_spec(const GraphSpec& spec) -> std::string;
auto parse_rational(std::string_view text) -> Rational;

struct Generated {
  Graph graph;
  /// planted-c4 and nested-pair with plant=1 record the planted cycle here.
  std::optional<C4Witness> planted;
};

auto generate(const GraphSpec& spec, std::size_t max_n = kDefaultMaxVertices) -> Generated;

/// G(n,p): pair (u,v), u < v, is an edge iff scale(value(u*n+v), den) < num.
auto gnp(std::size_t n, Rational p, std::uint64_t seed) -> Graph;

auto is_prime(std::uint64_t q) -> bool;

/// Polarity graph of PG(2,q). Points are normalized triples listed as (1,a,b), (0,1,b), (0,0,1)
/// in lexicographic order of (a,b); x ~ y iff x·y ≡ 0 (mod q) and x ≠ y.
auto polarity_graph(std::uint64_t q) -> Graph;

/// Every vertex becomes a w-clique, every edge a complete bipartite join.
/// Vertex v·w + i is copy i of base vertex v.
auto clique_blowup(const Graph& base, std::size_t w) -> Graph;

/// Candidate edges of gnp(n,p,seed) added one at a time in pseudo-random order, skipping
/// any edge that would close an induced C4. The result has no induced C4.
auto c4_free_base(std::size_t n, Rational p, std::uint64_t seed) -> Graph;

/// Two cliques A = [0, ceil(n/2)) and B = [ceil(n/2), n) with nested neighborhoods
/// (each b is joined to a prefix of a seeded permutation of A).
auto nested_pair(std::size_t n, std::uint64_t seed, bool plant) -> Generated;

}  // namespace ic4

#endif
