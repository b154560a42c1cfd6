#ifndef IC4_TRIPLES_HPP
#define IC4_TRIPLES_HPP

#include <cstdint>
#include <vector>

#include "ic4/orderings.hpp"
#include "ic4/range_query.hpp"

namespace ic4 {

/// For a vertex b against clusters (A, C): h_low is the smallest f_AC over A \ N_A(b) (TOP when
/// b sees all of A), h_high the largest f_AC over N_A(b) (BOTTOM when b sees none of A).
struct SandwichThresholds {
  ExtInt h_low = kTop;
  ExtInt h_high = kBottom;
};

/// Thresholds for every vertex of B, aligned with B's vertex list.
auto sandwich_thresholds(const ConciseOrdering& ab, const ConciseOrdering& ac) -> std::vector<SandwichThresholds>;

/// N_A(b) and N_A(c) are incomparable iff h_low(b) <= g_AC(c) < h_high(b).
auto neighborhoods_incomparable(const SandwichThresholds& t, ExtInt g_ac_c) -> bool;

/// Is there an induced C4 with two vertices in cluster x and one in each of y and z?
auto detect_triple_pass(const OrderingTable& t, std::uint32_t x, std::uint32_t y, std::uint32_t z) -> bool;

/// Is there an induced C4 inside the union of three pairwise ordered, disjoint clusters?
auto detect_triple(const OrderingTable& t, std::uint32_t a, std::uint32_t b, std::uint32_t c) -> bool;

}  // namespace ic4

#endif
