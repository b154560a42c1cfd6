#include "ic4/quadruples.hpp"

#include <array>

#include "ic4/errors.hpp"
#include "ic4/triples.hpp"

namespace ic4 {

namespace {

auto points2(const std::vector<ExtInt>& a, const std::vector<ExtInt>& b) -> RangePointSet {
  std::vector<RangePoint> pts;
  pts.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) pts.push_back(RangePoint({a[i], b[i]}, static_cast<Vertex>(i)));
  return RangePointSet::build(2, std::move(pts));
}

auto points3(const std::vector<ExtInt>& a, const std::vector<ExtInt>& b, const std::vector<ExtInt>& c)
    -> RangePointSet {
  std::vector<RangePoint> pts;
  pts.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) pts.push_back(RangePoint({a[i], b[i], c[i]}, static_cast<Vertex>(i)));
  return RangePointSet::build(3, std::move(pts));
}

}  // namespace

auto correlated_vectors(const OrderingTable& t, std::uint32_t w, std::uint32_t x, std::uint32_t z)
    -> std::vector<std::optional<NeighborhoodVector>> {
  const auto wx = ordering_for(t, w, x);
  const auto wz = ordering_for(t, w, z);
  const auto xz = ordering_for(t, x, z);
  // x side: (f_XZ(x), g_WX(x)); z side: (g_XZ(z), g_WZ(z))
  const auto sx = points2(xz.f, wx.g);
  const auto sz = points2(xz.g, wz.g);

  std::vector<std::optional<NeighborhoodVector>> out(wx.f.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto in_x = AxisRange::at_least(wx.f[i]);
    const auto in_z = AxisRange::at_least(wz.f[i]);
    auto high = extremal_on_image(sx, {AxisRange::all(), in_x}, 0, Direction::Max, xz.f_image);
    auto low = extremal_on_image(sz, {AxisRange::all(), in_z}, 0, Direction::Min, xz.g_image);
    if (!high || !low) continue;
    NeighborhoodVector v{kBottom, high->value, low->value, kTop};
    if (v.xi_high > v.zeta_low) {
      if (auto pre = extremal_on_image(sx, {AxisRange::less(v.xi_high), in_x}, 0, Direction::Max, xz.f_image)) {
        v.xi_pre = pre->value;
      }
      if (auto suf = extremal_on_image(sz, {AxisRange::greater(v.zeta_low), in_z}, 0, Direction::Min, xz.g_image)) {
        v.zeta_suff = suf->value;
      }
      // the prefix and suffix must be complete, otherwise the triple holds an induced C4
      const auto px = AxisRange::at_most(v.xi_pre);
      const auto pz = AxisRange::at_least(v.zeta_suff);
      if (sx.count({px, in_x}) != sx.count({px, AxisRange::all()}) ||
          sz.count({pz, in_z}) != sz.count({pz, AxisRange::all()})) {
        throw ContractViolation("correlated_vectors: neighbourhood is not prefix-closed; triple has an induced C4");
      }
    }
    out[i] = v;
  }
  return out;
}

auto quadruple_extreme_case(const OrderingTable& t, std::uint32_t a, std::uint32_t b, std::uint32_t c,
                            std::uint32_t d) -> bool {
  const auto vec = correlated_vectors(t, a, b, d);
  const auto ab = ordering_for(t, a, b);
  const auto ac = ordering_for(t, a, c);
  const auto ad = ordering_for(t, a, d);
  const auto bc = ordering_for(t, b, c);
  const auto bd = ordering_for(t, b, d);
  const auto cd = ordering_for(t, c, d);

  const auto sb = points3(ab.g, bd.f, bc.f);  // over B
  const auto sd = points3(ad.g, bd.g, cd.g);  // over D
  const auto sc = points3(ac.g, bc.g, cd.f);  // over C

  for (std::size_t i = 0; i < vec.size(); ++i) {
    if (!vec[i]) continue;
    const auto xi = vec[i]->xi_high;
    // beta: smallest f_BC over the extreme layer of N_B(a)
    auto beta = extremal_on_image(sb, {AxisRange::at_least(ab.f[i]), AxisRange::exactly(xi), AxisRange::all()}, 2,
                                  Direction::Min, bc.f_image);
    if (!beta) continue;
    // delta: largest g_CD over neighbours d of a that miss the extreme layer
    auto delta = extremal_on_image(sd, {AxisRange::at_least(ad.f[i]), AxisRange::less(xi), AxisRange::all()}, 2,
                                   Direction::Max, cd.g_image);
    if (!delta) continue;
    Box q{AxisRange::less(ac.f[i]), AxisRange::at_least(beta->value), AxisRange::at_most(delta->value)};
    if (sc.count(q) > 0) return true;
  }
  return false;
}

auto quadruple_prefix_case(const OrderingTable& t, std::uint32_t a, std::uint32_t b, std::uint32_t c,
                           std::uint32_t d) -> bool {
  const auto va = correlated_vectors(t, a, b, d);
  const auto vc = correlated_vectors(t, c, b, d);
  const auto ac = ordering_for(t, a, c);

  auto usable = [](const std::optional<NeighborhoodVector>& v) {
    return v && v->xi_high > v->zeta_low && v->xi_pre != kBottom && v->zeta_suff != kTop && v->xi_pre > v->zeta_suff;
  };

  std::vector<RangePoint> pts;
  for (std::size_t k = 0; k < vc.size(); ++k) {
    if (usable(vc[k])) pts.push_back(RangePoint({ac.g[k], vc[k]->xi_pre, vc[k]->zeta_suff}, static_cast<Vertex>(k)));
  }
  if (pts.empty()) return false;
  const auto s = RangePointSet::build(3, std::move(pts));
  for (std::size_t i = 0; i < va.size(); ++i) {
    if (!usable(va[i])) continue;
    Box q{AxisRange::less(ac.f[i]), AxisRange::greater(va[i]->zeta_suff), AxisRange::less(va[i]->xi_pre)};
    if (s.count(q) > 0) return true;
  }
  return false;
}

namespace {

struct PairShape {
  bool edge = false;
  bool non_edge = false;
};

auto shape(const OrderingTable& t, std::uint32_t x, std::uint32_t y) -> PairShape {
  const auto& g = t.graph();
  const auto& cy = t.cluster(y);
  std::size_t edges = 0;
  for (auto u : t.cluster(x).vertices) {
    for (auto v : cy.vertices) edges += g.adjacent(u, v) ? 1 : 0;
  }
  return {edges > 0, edges < t.cluster(x).size() * cy.size()};
}

}  // namespace

auto detect_quadruple_spanning(const OrderingTable& t, std::uint32_t a, std::uint32_t b, std::uint32_t c,
                               std::uint32_t d) -> bool {
  const std::array<std::uint32_t, 4> ids{a, b, c, d};
  std::array<std::array<PairShape, 4>, 4> sh{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) sh[i][j] = sh[j][i] = shape(t, ids[i], ids[j]);
  }
  // the three ways to split four clusters into two opposite pairs, as cycles p-q-r-s
  const std::array<std::array<std::size_t, 4>, 3> cycles{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 1, 3, 2}}};
  for (const auto& [i, j, k, l] : cycles) {
    // a cycle through p, q, r, s needs cross edges around it and non-edges on both diagonals
    if (!sh[i][j].edge || !sh[j][k].edge || !sh[k][l].edge || !sh[l][i].edge || !sh[i][k].non_edge ||
        !sh[j][l].non_edge) {
      continue;
    }
    const auto p = ids[i], q = ids[j], r = ids[k], s = ids[l];
    if (quadruple_extreme_case(t, p, q, r, s) || quadruple_extreme_case(t, p, s, r, q) ||
        quadruple_extreme_case(t, r, q, p, s) || quadruple_extreme_case(t, r, s, p, q) ||
        quadruple_prefix_case(t, p, q, r, s)) {
      return true;
    }
  }
  return false;
}

auto detect_quadruple(const OrderingTable& t, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d)
    -> bool {
  return detect_triple(t, a, b, c) || detect_triple(t, a, b, d) || detect_triple(t, a, c, d) ||
         detect_triple(t, b, c, d) || detect_quadruple_spanning(t, a, b, c, d);
}

auto cluster_codegrees(const OrderingTable& t, std::uint32_t w, std::uint32_t x, std::uint32_t z)
    -> std::vector<std::uint32_t> {
  const auto wx = ordering_for(t, w, x);
  const auto wz = ordering_for(t, w, z);
  const auto s = points2(wx.f, wz.f);
  const auto cols = wz.g.size();
  std::vector<std::uint32_t> out(wx.g.size() * cols);
  for (std::size_t i = 0; i < wx.g.size(); ++i) {
    for (std::size_t k = 0; k < cols; ++k) {
      out[i * cols + k] =
          static_cast<std::uint32_t>(s.count({AxisRange::at_most(wx.g[i]), AxisRange::at_most(wz.g[k])}));
    }
  }
  return out;
}

}  // namespace ic4
