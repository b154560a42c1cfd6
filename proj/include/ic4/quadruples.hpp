#ifndef IC4_QUADRUPLES_HPP
#define IC4_QUADRUPLES_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ic4/orderings.hpp"
#include "ic4/range_query.hpp"

namespace ic4 {

/// Neighbourhood shape of a vertex w against an ordered pair (X, Z). When xi_high > zeta_low:
///   N_X(w) = {x : f_XZ(x) <= xi_pre} plus the neighbours with f_XZ(x) == xi_high
///   N_Z(w) = {z : g_XZ(z) >= zeta_suff} plus the neighbours with g_XZ(z) == zeta_low
struct NeighborhoodVector {
  ExtInt xi_pre = kBottom;
  ExtInt xi_high = kBottom;
  ExtInt zeta_low = kTop;
  ExtInt zeta_suff = kTop;

  auto operator==(const NeighborhoodVector&) const -> bool = default;
};

/// One entry per vertex of W; empty when w has no neighbour in X or none in Z. The triple must
/// be free of induced C4s; a violated structure raises ContractViolation.
auto correlated_vectors(const OrderingTable& t, std::uint32_t w, std::uint32_t x, std::uint32_t z)
    -> std::vector<std::optional<NeighborhoodVector>>;

/// Is there an induced C4 inside the union of four pairwise ordered, disjoint clusters?
auto detect_quadruple(const OrderingTable& t, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d)
    -> bool;

/// Only cycles with one vertex in each cluster; requires that no three of the clusters hold an
/// induced C4.
auto detect_quadruple_spanning(const OrderingTable& t, std::uint32_t a, std::uint32_t b, std::uint32_t c,
                               std::uint32_t d) -> bool;

/// Cycles (a, b, c, d) with b in the extreme layer of N_B(a), for one fixed role assignment.
auto quadruple_extreme_case(const OrderingTable& t, std::uint32_t a, std::uint32_t b, std::uint32_t c,
                            std::uint32_t d) -> bool;

/// Cycles (a, b, c, d) with b and d in the full prefix and suffix of both a and c.
auto quadruple_prefix_case(const OrderingTable& t, std::uint32_t a, std::uint32_t b, std::uint32_t c,
                           std::uint32_t d) -> bool;

/// codeg_W(x, z) for all (x, z) in X x Z, row-major with |Z| columns.
auto cluster_codegrees(const OrderingTable& t, std::uint32_t w, std::uint32_t x, std::uint32_t z)
    -> std::vector<std::uint32_t>;

/// For an induced 2-path (u, v, w) outside X with no induced C4 using two vertices of X: some
/// x in X closes an induced C4 (x, u, v, w) iff deg_X(v) < codeg_X(u, w).
constexpr auto degree_vs_codegree_witnessable(std::size_t deg_v, std::size_t codeg_uw) -> bool {
  return deg_v < codeg_uw;
}

}  // namespace ic4

#endif
