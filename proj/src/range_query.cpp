#include "ic4/range_query.hpp"

#include <algorithm>
#include <numeric>

#include "ic4/errors.hpp"

namespace ic4 {

namespace {

constexpr std::size_t kLeafSize = 8;
constexpr Vertex kNoPayload = std::numeric_limits<Vertex>::max();

struct Closed {
  std::array<ExtInt, kMaxDim> lo{};
  std::array<ExtInt, kMaxDim> hi{};
};

struct Acc {
  std::size_t count = 0;
  Vertex min_payload = kNoPayload;
};

}  // namespace

auto AxisRange::normalized() const -> std::optional<std::pair<ExtInt, ExtInt>> {
  ExtInt l = lo.value;
  ExtInt h = hi.value;
  if (!lo.closed) {
    if (l == kTop) return std::nullopt;
    ++l;
  }
  if (!hi.closed) {
    if (h == kBottom) return std::nullopt;
    --h;
  }
  if (l > h) return std::nullopt;
  return std::pair{l, h};
}

auto AxisRange::contains(ExtInt v) const -> bool {
  auto r = normalized();
  return r && r->first <= v && v <= r->second;
}

auto Box::contains(std::span<const ExtInt> coords) const -> bool {
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!axes[i].contains(coords[i])) return false;
  }
  return true;
}

struct RangePointSet::Layer {
  struct Node {
    std::uint32_t l = 0, r = 0;
    std::int32_t left = -1, right = -1;
    std::unique_ptr<Layer> sub;
  };

  int axis = 0;
  std::vector<ExtInt> keys;
  std::vector<std::uint32_t> ids;
  std::vector<Vertex> mint;  // last axis only: segment tree of payload minima
  std::vector<Node> nodes;   // inner axes only, nodes[0] is the root

  static auto make(const RangePointSet& s, int axis, std::vector<std::uint32_t> ids) -> std::unique_ptr<Layer>;
  auto build_node(const RangePointSet& s, std::uint32_t l, std::uint32_t r) -> std::int32_t;
  void query(const RangePointSet& s, const Closed& q, Acc& acc) const;
  void visit(const RangePointSet& s, std::int32_t node, std::uint32_t i, std::uint32_t j, const Closed& q,
             Acc& acc) const;
  void scan(const RangePointSet& s, std::uint32_t i, std::uint32_t j, const Closed& q, Acc& acc) const;
};

auto RangePointSet::Layer::make(const RangePointSet& s, int axis, std::vector<std::uint32_t> ids)
    -> std::unique_ptr<Layer> {
  auto L = std::make_unique<Layer>();
  L->axis = axis;
  const auto d = static_cast<std::size_t>(s.d_);
  const auto a = static_cast<std::size_t>(axis);
  std::sort(ids.begin(), ids.end(), [&](std::uint32_t x, std::uint32_t y) {
    auto cx = s.coords_[x * d + a];
    auto cy = s.coords_[y * d + a];
    return cx != cy ? cx < cy : x < y;
  });
  L->keys.resize(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) L->keys[k] = s.coords_[ids[k] * d + a];
  L->ids = std::move(ids);
  const auto m = L->ids.size();
  if (axis == s.d_ - 1) {
    L->mint.assign(2 * m, kNoPayload);
    for (std::size_t k = 0; k < m; ++k) L->mint[m + k] = s.payloads_[L->ids[k]];
    for (std::size_t k = m; k-- > 1;) L->mint[k] = std::min(L->mint[2 * k], L->mint[2 * k + 1]);
  } else if (m > kLeafSize) {
    L->build_node(s, 0, static_cast<std::uint32_t>(m));
  }
  return L;
}

auto RangePointSet::Layer::build_node(const RangePointSet& s, std::uint32_t l, std::uint32_t r) -> std::int32_t {
  auto idx = static_cast<std::int32_t>(nodes.size());
  nodes.emplace_back();
  nodes.back().l = l;
  nodes.back().r = r;
  if (r - l > kLeafSize) {
    std::vector<std::uint32_t> part(ids.begin() + l, ids.begin() + r);
    auto sub = make(s, axis + 1, std::move(part));
    auto mid = l + (r - l) / 2;
    auto left = build_node(s, l, mid);
    auto right = build_node(s, mid, r);
    auto& node = nodes[static_cast<std::size_t>(idx)];
    node.sub = std::move(sub);
    node.left = left;
    node.right = right;
  }
  return idx;
}

void RangePointSet::Layer::scan(const RangePointSet& s, std::uint32_t i, std::uint32_t j, const Closed& q,
                                Acc& acc) const {
  const auto d = static_cast<std::size_t>(s.d_);
  for (auto k = i; k < j; ++k) {
    auto id = ids[k];
    const ExtInt* c = &s.coords_[id * d];
    bool in = true;
    for (auto ax = static_cast<std::size_t>(axis) + 1; ax < d && in; ++ax) in = q.lo[ax] <= c[ax] && c[ax] <= q.hi[ax];
    if (in) {
      ++acc.count;
      acc.min_payload = std::min(acc.min_payload, s.payloads_[id]);
    }
  }
}

void RangePointSet::Layer::visit(const RangePointSet& s, std::int32_t ni, std::uint32_t i, std::uint32_t j,
                                 const Closed& q, Acc& acc) const {
  const auto& node = nodes[static_cast<std::size_t>(ni)];
  if (node.l >= j || node.r <= i) return;
  if (i <= node.l && node.r <= j) {
    if (node.sub) {
      node.sub->query(s, q, acc);
    } else {
      scan(s, node.l, node.r, q, acc);
    }
    return;
  }
  if (node.left < 0) {
    scan(s, std::max(i, node.l), std::min(j, node.r), q, acc);
    return;
  }
  visit(s, node.left, i, j, q, acc);
  visit(s, node.right, i, j, q, acc);
}

void RangePointSet::Layer::query(const RangePointSet& s, const Closed& q, Acc& acc) const {
  const auto a = static_cast<std::size_t>(axis);
  auto i = static_cast<std::uint32_t>(std::lower_bound(keys.begin(), keys.end(), q.lo[a]) - keys.begin());
  auto j = static_cast<std::uint32_t>(std::upper_bound(keys.begin(), keys.end(), q.hi[a]) - keys.begin());
  if (i >= j) return;
  if (axis == s.d_ - 1) {
    acc.count += j - i;
    const auto m = ids.size();
    Vertex best = kNoPayload;
    for (auto l = i + m, r = j + m; l < r; l >>= 1, r >>= 1) {
      if (l & 1) best = std::min(best, mint[l++]);
      if (r & 1) best = std::min(best, mint[--r]);
    }
    acc.min_payload = std::min(acc.min_payload, best);
  } else if (nodes.empty()) {
    scan(s, i, j, q, acc);
  } else {
    visit(s, 0, i, j, q, acc);
  }
}

RangePointSet::RangePointSet(RangePointSet&&) noexcept = default;
auto RangePointSet::operator=(RangePointSet&&) noexcept -> RangePointSet& = default;
RangePointSet::~RangePointSet() = default;

auto RangePointSet::build(int d, std::vector<RangePoint> points) -> RangePointSet {
  if (d < 1 || d > kMaxDim) throw ContractViolation("range query dimension must be in 1..4");
  RangePointSet s;
  s.d_ = d;
  s.n_ = points.size();
  s.coords_.resize(points.size() * static_cast<std::size_t>(d));
  s.payloads_.resize(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k].dim != d) {
      throw ContractViolation("point " + std::to_string(k) + " has dimension " + std::to_string(points[k].dim) +
                              ", structure has " + std::to_string(d));
    }
    for (std::size_t a = 0; a < static_cast<std::size_t>(d); ++a) {
      s.coords_[k * static_cast<std::size_t>(d) + a] = points[k].coords[a];
    }
    s.payloads_[k] = points[k].payload;
  }
  if (!points.empty()) {
    std::vector<std::uint32_t> ids(points.size());
    std::iota(ids.begin(), ids.end(), 0U);
    s.root_ = Layer::make(s, 0, std::move(ids));
  }
  return s;
}

auto RangePointSet::query(const Box& box) const -> CountResult {
  if (!root_) return {};
  Closed q;
  for (std::size_t a = 0; a < static_cast<std::size_t>(d_); ++a) {
    auto r = box.axes[a].normalized();
    if (!r) return {};
    q.lo[a] = r->first;
    q.hi[a] = r->second;
  }
  Acc acc;
  root_->query(*this, q, acc);
  CountResult out{acc.count, std::nullopt};
  if (acc.count > 0) out.witness = acc.min_payload;
  return out;
}

auto count_and_witness(const RangePointSet& s, const Box& box) -> CountResult { return s.query(box); }

auto extremal_on_image(const RangePointSet& s, const Box& constraints, int target_axis, Direction dir,
                       std::span<const ExtInt> candidates, SearchMode mode) -> std::optional<Extremum> {
  if (target_axis < 0 || target_axis >= s.dim()) throw ContractViolation("target axis out of range");
  const auto t = static_cast<std::size_t>(target_axis);
  auto base = constraints.axes[t].normalized();
  if (!base || candidates.empty() || s.size() == 0) return std::nullopt;
  auto [lo, hi] = *base;

  auto probe = [&](ExtInt l, ExtInt h) {
    Box b = constraints;
    b.axes[t] = AxisRange::closed(std::max(l, lo), std::min(h, hi));
    if (b.axes[t].lo.value > b.axes[t].hi.value) return CountResult{};
    return s.query(b);
  };

  std::size_t first = 0;
  std::size_t last = candidates.size();  // search window [first, last)
  while (first < last) {
    std::optional<std::size_t> hit;
    if (dir == Direction::Min) {
      // smallest k in window with a point at target <= candidates[k]
      std::size_t a = first, b = last;
      while (a < b) {
        auto mid = a + (b - a) / 2;
        if (probe(kBottom, candidates[mid]).count > 0) {
          b = mid;
        } else {
          a = mid + 1;
        }
      }
      if (a < last) hit = a;
    } else {
      // one past the largest k in window with a point at target >= candidates[k]
      std::size_t a = first, b = last;
      while (a < b) {
        auto mid = a + (b - a) / 2;
        if (probe(candidates[mid], kTop).count > 0) {
          a = mid + 1;
        } else {
          b = mid;
        }
      }
      if (a > first) hit = a - 1;
    }
    if (!hit) return std::nullopt;
    auto v = candidates[*hit];
    if (mode == SearchMode::Threshold) {
      auto r = dir == Direction::Min ? probe(kBottom, v) : probe(v, kTop);
      return Extremum{v, *r.witness};
    }
    auto r = probe(v, v);
    if (r.count > 0) return Extremum{v, *r.witness};
    // v is not attained: every attained value on this side of v is not a candidate
    if (dir == Direction::Min) {
      if (v == kTop) return std::nullopt;
      lo = std::max(lo, v + 1);
      first = *hit + 1;
    } else {
      if (v == kBottom) return std::nullopt;
      hi = std::min(hi, v - 1);
      last = *hit;
    }
    if (lo > hi) return std::nullopt;
  }
  return std::nullopt;
}

auto sorted_image(std::vector<ExtInt> values) -> std::vector<ExtInt> {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace ic4
