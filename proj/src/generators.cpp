#include "ic4/generators.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <utility>

#include "ic4/errors.hpp"
#include "ic4/rng.hpp"

namespace ic4 {

namespace {

constexpr std::uint64_t kPlantSalt = 0x243f6a8885a308d3ULL;
constexpr std::uint64_t kOrderSalt = 0x13198a2e03707344ULL;

auto parse_uint(std::string_view tok, std::string_view key) -> std::uint64_t {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc() || p != tok.data() + tok.size()) {
    throw ParseError(0, "bad value for '" + std::string(key) + "': '" + std::string(tok) + "'");
  }
  return v;
}

auto kind_name(GenKind k) -> std::string_view {
  switch (k) {
    case GenKind::Gnp: return "gnp";
    case GenKind::PolarityBlowup: return "polarity-blowup";
    case GenKind::CliqueBlowup: return "clique-blowup";
    case GenKind::PlantedC4: return "planted-c4";
    case GenKind::NestedPair: return "nested-pair";
  }
  return "?";
}

auto format_rational(Rational r) -> std::string {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

void check_size(std::uint64_t n, std::size_t max_n) {
  if (n > max_n) {
    throw ConfigError("graph would have " + std::to_string(n) + " vertices, above the limit " +
                      std::to_string(max_n));
  }
}

}  // namespace

auto parse_rational(std::string_view text) -> Rational {
  Rational r{};
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    r.num = parse_uint(text.substr(0, slash), "p");
    r.den = parse_uint(text.substr(slash + 1), "p");
    if (r.den == 0) throw ParseError(0, "p has zero denominator");
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto ip = text.substr(0, dot);
    auto fp = text.substr(dot + 1);
    if (fp.empty() || fp.size() > 18) throw ParseError(0, "bad decimal for p: '" + std::string(text) + "'");
    r.den = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) r.den *= 10;
    r.num = (ip.empty() ? 0 : parse_uint(ip, "p")) * r.den + parse_uint(fp, "p");
  } else {
    r.num = parse_uint(text, "p");
    r.den = 1;
  }
  if (r.num > r.den) throw ConfigError("p must lie in [0,1]");
  auto g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  if (r.num == 0) r.den = 1;
  return r;
}

auto parse_spec(std::string_view text) -> GraphSpec {
  auto colon = text.find(':');
  auto kind = text.substr(0, colon);
  GraphSpec s{};
  bool found = false;
  for (auto k : {GenKind::Gnp, GenKind::PolarityBlowup, GenKind::CliqueBlowup, GenKind::PlantedC4,
                 GenKind::NestedPair}) {
    if (kind == kind_name(k)) {
      s.kind = k;
      found = true;
    }
  }
  if (!found) throw ParseError(0, "unknown generator kind '" + std::string(kind) + "'");

  std::vector<std::string_view> allowed;
  std::vector<std::string_view> required;
  switch (s.kind) {
    case GenKind::Gnp: allowed = required = {"n", "p", "seed"}; break;
    case GenKind::PolarityBlowup: allowed = {"q", "w"}, required = {"q"}; break;
    case GenKind::CliqueBlowup: allowed = required = {"n", "p", "w", "seed"}; break;
    case GenKind::PlantedC4: allowed = {"n", "p", "seed"}, required = {"n", "seed"}; break;
    case GenKind::NestedPair: allowed = {"n", "seed", "plant"}, required = {"n", "seed"}; break;
  }

  std::vector<std::string_view> seen;
  auto rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    auto item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError(0, "expected key=value, got '" + std::string(item) + "'");
    auto key = item.substr(0, eq);
    auto val = item.substr(eq + 1);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ParseError(0, "key '" + std::string(key) + "' not valid for " + std::string(kind));
    }
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      throw ParseError(0, "duplicate key '" + std::string(key) + "'");
    }
    seen.push_back(key);
    if (key == "n") s.n = parse_uint(val, key);
    if (key == "p") s.p = parse_rational(val);
    if (key == "q") s.q = parse_uint(val, key);
    if (key == "w") s.w = parse_uint(val, key);
    if (key == "seed") s.seed = parse_uint(val, key);
    if (key == "plant") {
      auto v = parse_uint(val, key);
      if (v > 1) throw ParseError(0, "plant must be 0 or 1");
      s.plant = v == 1;
    }
  }
  for (auto key : required) {
    if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
      throw ParseError(0, "missing key '" + std::string(key) + "' for " + std::string(kind));
    }
  }
  if (s.kind == GenKind::PolarityBlowup && !is_prime(s.q)) throw ConfigError("q must be prime");
  if ((s.kind == GenKind::PolarityBlowup || s.kind == GenKind::CliqueBlowup) && s.w == 0) {
    throw ConfigError("w must be positive");
  }
  return s;
}

auto format_spec(const GraphSpec& s) -> std::string {
  std::string out(kind_name(s.kind));
  out += ":";
  switch (s.kind) {
    case GenKind::Gnp:
      out += "n=" + std::to_string(s.n) + ",p=" + format_rational(s.p) + ",seed=" + std::to_string(s.seed);
      break;
    case GenKind::PolarityBlowup: out += "q=" + std::to_string(s.q) + ",w=" + std::to_string(s.w); break;
    case GenKind::CliqueBlowup:
      out += "n=" + std::to_string(s.n) + ",p=" + format_rational(s.p) + ",w=" + std::to_string(s.w) +
             ",seed=" + std::to_string(s.seed);
      break;
    case GenKind::PlantedC4:
      out += "n=" + std::to_string(s.n) + ",p=" + format_rational(s.p) + ",seed=" + std::to_string(s.seed);
      break;
    case GenKind::NestedPair:
      out += "n=" + std::to_string(s.n) + ",seed=" + std::to_string(s.seed) + ",plant=" + (s.plant ? "1" : "0");
      break;
  }
  return out;
}

auto is_prime(std::uint64_t q) -> bool {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

auto gnp(std::size_t n, Rational p, std::uint64_t seed) -> Graph {
  CounterRng rng(seed);
  GraphBuilder b(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (CounterRng::scale(rng.value(u * n + v), p.den) < p.num) {
        b.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
      }
    }
  }
  return std::move(b).build();
}

auto polarity_graph(std::uint64_t q) -> Graph {
  if (!is_prime(q)) throw ConfigError("q must be prime");
  std::vector<std::array<std::uint64_t, 3>> pts;
  for (std::uint64_t a = 0; a < q; ++a) {
    for (std::uint64_t b = 0; b < q; ++b) pts.push_back({1, a, b});
  }
  for (std::uint64_t b = 0; b < q; ++b) pts.push_back({0, 1, b});
  pts.push_back({0, 0, 1});
  GraphBuilder g(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      auto dot = (pts[i][0] * pts[j][0] + pts[i][1] * pts[j][1] + pts[i][2] * pts[j][2]) % q;
      if (dot == 0) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  }
  return std::move(g).build();
}

auto clique_blowup(const Graph& base, std::size_t w) -> Graph {
  GraphBuilder g(base.n() * w);
  for (std::size_t v = 0; v < base.n(); ++v) {
    for (std::size_t i = 0; i < w; ++i) {
      for (std::size_t j = i + 1; j < w; ++j) g.add_edge(static_cast<Vertex>(v * w + i), static_cast<Vertex>(v * w + j));
    }
  }
  for (auto [u, v] : base.edges()) {
    for (std::size_t i = 0; i < w; ++i) {
      for (std::size_t j = 0; j < w; ++j) g.add_edge(static_cast<Vertex>(u * w + i), static_cast<Vertex>(v * w + j));
    }
  }
  return std::move(g).build();
}

auto c4_free_base(std::size_t n, Rational p, std::uint64_t seed) -> Graph {
  CounterRng coin(seed);
  CounterRng order(seed ^ kOrderSalt);
  std::vector<std::pair<std::uint64_t, std::pair<Vertex, Vertex>>> cand;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      auto k = u * n + v;
      if (CounterRng::scale(coin.value(k), p.den) < p.num) {
        cand.push_back({order.value(k), {static_cast<Vertex>(u), static_cast<Vertex>(v)}});
      }
    }
  }
  std::sort(cand.begin(), cand.end());
  GraphBuilder b(n);
  std::vector<Word> only_v(words_for(n)), only_u(words_for(n));
  for (const auto& [key, e] : cand) {
    auto [u, v] = e;
    const Graph& g = b.view();
    auto ru = g.row(u);
    auto rv = g.row(v);
    for (std::size_t i = 0; i < only_v.size(); ++i) {
      only_v[i] = rv[i] & ~ru[i];
      only_u[i] = ru[i] & ~rv[i];
    }
    // A new induced C4 must run u-v-x-y-u with x in N(v)\N(u), y in N(u)\N(v), x ~ y.
    bool closes = false;
    for (auto x = next_bit(only_v, 0); x != kNoBit && !closes; x = next_bit(only_v, x + 1)) {
      closes = and_popcount(g.row(static_cast<Vertex>(x)), only_u) > 0;
    }
    if (!closes) b.add_edge(u, v);
  }
  return std::move(b).build();
}

auto nested_pair(std::size_t n, std::uint64_t seed, bool plant) -> Generated {
  const std::size_t s = (n + 1) / 2;
  const std::size_t t = n - s;
  CounterRng rng(seed);
  GraphBuilder b(n);
  std::vector<Vertex> perm(s);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  for (std::size_t i = s; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
  }
  for (std::size_t i = s; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
  }
  for (std::size_t j = 0; j < t; ++j) {
    auto k = rng.below(s + 1);
    for (std::size_t i = 0; i < k; ++i) b.add_edge(perm[i], static_cast<Vertex>(s + j));
  }
  Generated out;
  if (plant) {
    if (s < 2 || t < 2) throw ConfigError("nested-pair with plant=1 needs n >= 4");
    auto a1 = static_cast<Vertex>(rng.below(s));
    auto a2 = static_cast<Vertex>(rng.below(s - 1));
    if (a2 >= a1) ++a2;
    auto b1 = static_cast<Vertex>(s + rng.below(t));
    auto b2 = static_cast<Vertex>(s + rng.below(t - 1));
    if (b2 >= b1) ++b2;
    b.add_edge(a1, b1);
    b.add_edge(a2, b2);
    b.remove_edge(a1, b2);
    b.remove_edge(a2, b1);
    out.planted = canonical({a1, b1, b2, a2});
  }
  out.graph = std::move(b).build();
  return out;
}

auto generate(const GraphSpec& s, std::size_t max_n) -> Generated {
  switch (s.kind) {
    case GenKind::Gnp:
      check_size(s.n, max_n);
      return {gnp(s.n, s.p, s.seed), std::nullopt};
    case GenKind::PolarityBlowup: {
      if (!is_prime(s.q)) throw ConfigError("q must be prime");
      if (s.w == 0) throw ConfigError("w must be positive");
      auto base = s.q * s.q + s.q + 1;
      if (s.q > 65536 || s.w > max_n || base * s.w > max_n) {
        throw ConfigError("polarity blow-up exceeds the vertex limit " + std::to_string(max_n));
      }
      return {clique_blowup(polarity_graph(s.q), s.w), std::nullopt};
    }
    case GenKind::CliqueBlowup:
      if (s.w == 0) throw ConfigError("w must be positive");
      if (s.n > max_n || s.w > max_n) check_size(max_n + 1, max_n);
      check_size(s.n * s.w, max_n);
      return {clique_blowup(c4_free_base(s.n, s.p, s.seed), s.w), std::nullopt};
    case GenKind::PlantedC4: {
      check_size(s.n, max_n);
      if (s.n < 4) throw ConfigError("planted-c4 needs n >= 4");
      GraphBuilder b(gnp(s.n, s.p, s.seed));
      CounterRng rng(s.seed ^ kPlantSalt);
      std::array<Vertex, 4> q{};
      for (std::size_t i = 0; i < 4; ++i) {
        bool fresh = false;
        while (!fresh) {
          q[i] = static_cast<Vertex>(rng.below(s.n));
          fresh = std::find(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(i), q[i]) ==
                  q.begin() + static_cast<std::ptrdiff_t>(i);
        }
      }
      for (std::size_t i = 0; i < 4; ++i) b.add_edge(q[i], q[(i + 1) % 4]);
      b.remove_edge(q[0], q[2]);
      b.remove_edge(q[1], q[3]);
      return {std::move(b).build(), canonical({q[0], q[1], q[2], q[3]})};
    }
    case GenKind::NestedPair:
      check_size(s.n, max_n);
      return nested_pair(s.n, s.seed, s.plant);
  }
  throw ConfigError("unknown generator kind");
}

}  // namespace ic4
