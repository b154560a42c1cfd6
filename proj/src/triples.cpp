#include "ic4/triples.hpp"

namespace ic4 {

auto sandwich_thresholds(const ConciseOrdering& ab, const ConciseOrdering& ac) -> std::vector<SandwichThresholds> {
  std::vector<RangePoint> pts;
  pts.reserve(ab.f.size());
  for (std::size_t i = 0; i < ab.f.size(); ++i) pts.push_back(RangePoint({ab.f[i], ac.f[i]}, static_cast<Vertex>(i)));
  auto s = RangePointSet::build(2, std::move(pts));

  std::vector<SandwichThresholds> out(ab.g.size());
  for (std::size_t j = 0; j < ab.g.size(); ++j) {
    // a is a non-neighbour of b exactly when f_AB(a) > g_AB(b)
    if (auto lo = extremal_on_image(s, {AxisRange::greater(ab.g[j]), AxisRange::all()}, 1, Direction::Min,
                                    ac.f_image)) {
      out[j].h_low = lo->value;
    }
    if (auto hi = extremal_on_image(s, {AxisRange::at_most(ab.g[j]), AxisRange::all()}, 1, Direction::Max,
                                    ac.f_image)) {
      out[j].h_high = hi->value;
    }
  }
  return out;
}

auto neighborhoods_incomparable(const SandwichThresholds& t, ExtInt g_ac_c) -> bool {
  return t.h_low <= g_ac_c && g_ac_c < t.h_high;
}

auto detect_triple_pass(const OrderingTable& t, std::uint32_t x, std::uint32_t y, std::uint32_t z) -> bool {
  if (t.cluster(x).size() < 2) return false;
  const auto xy = ordering_for(t, x, y);
  const auto xz = ordering_for(t, x, z);
  const auto yz = ordering_for(t, y, z);
  const auto th = sandwich_thresholds(xy, xz);

  std::vector<RangePoint> pts;
  pts.reserve(xz.g.size());
  for (std::size_t k = 0; k < xz.g.size(); ++k) pts.push_back(RangePoint({xz.g[k], yz.g[k]}, static_cast<Vertex>(k)));
  auto s = RangePointSet::build(2, std::move(pts));

  for (std::size_t j = 0; j < th.size(); ++j) {
    if (th[j].h_low >= th[j].h_high) continue;
    Box box{AxisRange{{th[j].h_low, true}, {th[j].h_high, false}}, AxisRange::at_least(yz.f[j])};
    if (s.count(box) > 0) return true;
  }
  return false;
}

auto detect_triple(const OrderingTable& t, std::uint32_t a, std::uint32_t b, std::uint32_t c) -> bool {
  return detect_triple_pass(t, a, b, c) || detect_triple_pass(t, b, a, c) || detect_triple_pass(t, c, a, b);
}

}  // namespace ic4
