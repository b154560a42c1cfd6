#ifndef IC4_RANGE_QUERY_HPP
#define IC4_RANGE_QUERY_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ic4/graph.hpp"

namespace ic4 {

/// Integer extended by BOTTOM and TOP. The two extreme int64 values are reserved for the
/// sentinels, so the natural integer order is the extended order.
using ExtInt = std::int64_t;
inline constexpr ExtInt kBottom = std::numeric_limits<ExtInt>::min();
inline constexpr ExtInt kTop = std::numeric_limits<ExtInt>::max();

inline constexpr int kMaxDim = 4;

struct Bound {
  ExtInt value = 0;
  bool closed = true;
};

struct AxisRange {
  Bound lo{kBottom, true};
  Bound hi{kTop, true};

  static constexpr auto all() -> AxisRange { return {}; }
  static constexpr auto closed(ExtInt a, ExtInt b) -> AxisRange { return {{a, true}, {b, true}}; }
  static constexpr auto at_least(ExtInt a) -> AxisRange { return {{a, true}, {kTop, true}}; }
  static constexpr auto greater(ExtInt a) -> AxisRange { return {{a, false}, {kTop, true}}; }
  static constexpr auto at_most(ExtInt b) -> AxisRange { return {{kBottom, true}, {b, true}}; }
  static constexpr auto less(ExtInt b) -> AxisRange { return {{kBottom, true}, {b, false}}; }
  static constexpr auto exactly(ExtInt a) -> AxisRange { return closed(a, a); }

  /// Equivalent closed integer interval; nullopt when empty.
  auto normalized() const -> std::optional<std::pair<ExtInt, ExtInt>>;
  auto contains(ExtInt v) const -> bool;
};

struct Box {
  std::array<AxisRange, kMaxDim> axes{};

  Box() = default;
  Box(std::initializer_list<AxisRange> r) {
    std::size_t i = 0;
    for (const auto& a : r) axes[i++] = a;
  }
  auto contains(std::span<const ExtInt> coords) const -> bool;
};

struct RangePoint {
  std::array<ExtInt, kMaxDim> coords{};
  int dim = 0;
  Vertex payload = 0;

  RangePoint() = default;
  RangePoint(std::initializer_list<ExtInt> c, Vertex p) : payload(p) {
    for (auto v : c) {
      if (dim < kMaxDim) coords[static_cast<std::size_t>(dim)] = v;
      ++dim;
    }
  }
};

struct CountResult {
  std::size_t count = 0;
  /// Smallest payload among contained points when count > 0.
  std::optional<Vertex> witness;
};

enum class Direction { Min, Max };
enum class SearchMode { Threshold, Equality };

struct Extremum {
  ExtInt value = 0;
  Vertex payload = 0;
};

/// Static layered range tree over points in d <= 4 dimensions. Each level is a
/// balanced tree on one coordinate whose nodes carry a structure on the next
/// coordinate; the last coordinate is a sorted array with a min-payload segment tree.
/// Nodes of at most kLeafSize points are scanned directly.
class RangePointSet {
 public:
  RangePointSet() = default;
  RangePointSet(RangePointSet&&) noexcept;
  auto operator=(RangePointSet&&) noexcept -> RangePointSet&;
  ~RangePointSet();

  static auto build(int d, std::vector<RangePoint> points) -> RangePointSet;

  auto dim() const -> int { return d_; }
  auto size() const -> std::size_t { return n_; }

  auto query(const Box& box) const -> CountResult;
  auto count(const Box& box) const -> std::size_t { return query(box).count; }

  struct Layer;

 private:
  int d_ = 0;
  std::size_t n_ = 0;
  std::vector<ExtInt> coords_;  // n_ * d_, row-major
  std::vector<Vertex> payloads_;
  std::unique_ptr<Layer> root_;
};

auto count_and_witness(const RangePointSet& s, const Box& box) -> CountResult;

/// Smallest (Min) or largest (Max) candidate v such that a point inside `constraints` has its
/// target coordinate <= v (Min) or >= v (Max) in Threshold mode, or == v in Equality mode.
/// Binary search over the candidates with one count query per probe. In Threshold mode the
/// answer equals the true extremum whenever the candidates contain every attained value.
auto extremal_on_image(const RangePointSet& s, const Box& constraints, int target_axis, Direction dir,
                       std::span<const ExtInt> candidates, SearchMode mode = SearchMode::Threshold)
    -> std::optional<Extremum>;

/// Sorted distinct copy of values.
auto sorted_image(std::vector<ExtInt> values) -> std::vector<ExtInt>;

}  // namespace ic4

#endif
