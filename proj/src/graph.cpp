#include "ic4/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ic4/errors.hpp"

namespace ic4 {

Graph::Graph(std::size_t n) : n_(n), words_(words_for(n)), bits_(n * words_for(n), 0) {}

auto Graph::neighbors(Vertex v) const -> std::vector<Vertex> {
  std::vector<Vertex> out;
  for_each_bit(row(v), [&](std::size_t u) { out.push_back(static_cast<Vertex>(u)); });
  return out;
}

auto Graph::edge_count() const -> std::size_t {
  return popcount(std::span<const Word>(bits_)) / 2;
}

auto Graph::edges() const -> std::vector<std::pair<Vertex, Vertex>> {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < n_; ++u) {
    for (auto v = next_bit(row(u), u + 1); v != kNoBit; v = next_bit(row(u), v + 1)) {
      out.emplace_back(u, static_cast<Vertex>(v));
    }
  }
  return out;
}

auto Graph::induced(std::span<const Vertex> vs) const -> Graph {
  GraphBuilder b(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (adjacent(vs[i], vs[j])) b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  }
  return std::move(b).build();
}

void GraphBuilder::add_edge(Vertex u, Vertex v) {
  if (u == v || u >= g_.n_ || v >= g_.n_) throw ContractViolation("add_edge: invalid endpoints");
  set_bit(mutable_row(u), v);
  set_bit(mutable_row(v), u);
}

void GraphBuilder::remove_edge(Vertex u, Vertex v) {
  if (u == v || u >= g_.n_ || v >= g_.n_) throw ContractViolation("remove_edge: invalid endpoints");
  clear_bit(mutable_row(u), v);
  clear_bit(mutable_row(v), u);
}

void GraphBuilder::add_clique(std::span<const Vertex> vs) {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) add_edge(vs[i], vs[j]);
  }
}

auto verify_witness(const Graph& g, const C4Witness& w) -> bool {
  const auto q = w.as_array();
  for (int i = 0; i < 4; ++i) {
    if (q[i] >= g.n()) return false;
    for (int j = i + 1; j < 4; ++j) {
      if (q[i] == q[j]) return false;
    }
  }
  return g.adjacent(w.a, w.b) && g.adjacent(w.b, w.c) && g.adjacent(w.c, w.d) && g.adjacent(w.d, w.a) &&
         !g.adjacent(w.a, w.c) && !g.adjacent(w.b, w.d);
}

auto canonical(const C4Witness& w) -> C4Witness {
  auto q = w.as_array();
  auto start = static_cast<std::size_t>(std::min_element(q.begin(), q.end()) - q.begin());
  std::array<Vertex, 4> r{};
  for (std::size_t i = 0; i < 4; ++i) r[i] = q[(start + i) % 4];
  if (r[1] > r[3]) std::swap(r[1], r[3]);
  return {r[0], r[1], r[2], r[3]};
}

auto to_string(const C4Witness& w) -> std::string {
  return std::to_string(w.a) + "," + std::to_string(w.b) + "," + std::to_string(w.c) + "," + std::to_string(w.d);
}

namespace {

auto split_ws(std::string_view line) -> std::vector<std::string_view> {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

auto parse_u64(std::string_view tok, std::size_t line) -> std::uint64_t {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
  }
  return v;
}

auto pair_of(std::string_view line, std::size_t lineno) -> std::pair<std::uint64_t, std::uint64_t> {
  auto toks = split_ws(line);
  if (toks.size() != 2) throw ParseError(lineno, "expected two integers");
  return {parse_u64(toks[0], lineno), parse_u64(toks[1], lineno)};
}

}  // namespace

auto load_graph(std::string_view text) -> Graph {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  while (!lines.empty() && split_ws(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw ParseError(1, "missing header \"n m\"");

  auto [n, m] = pair_of(lines[0], 1);
  if (n > (std::uint64_t{1} << 31)) throw ParseError(1, "vertex count too large");
  if (lines.size() - 1 < m) {
    throw ParseError(lines.size() + 1, "missing edge line (header declares " + std::to_string(m) + ")");
  }
  if (lines.size() - 1 > m) {
    throw ParseError(static_cast<std::size_t>(m) + 2, "extra line beyond the " + std::to_string(m) + " declared edges");
  }
  GraphBuilder b(static_cast<std::size_t>(n));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto [u, v] = pair_of(lines[i], i + 1);
    if (u >= n || v >= n) throw ParseError(i + 1, "vertex id out of range");
    if (u == v) throw ParseError(i + 1, "self-loop");
    b.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return std::move(b).build();
}

auto load_graph_file(const std::string& path) -> Graph {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_graph(ss.str());
}

auto save_graph(const Graph& g) -> std::string {
  auto es = g.edges();
  std::string out = std::to_string(g.n()) + " " + std::to_string(es.size()) + "\n";
  for (auto [u, v] : es) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

void save_graph_file(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << save_graph(g);
  if (!out) throw ConfigError("write failed: " + path);
}

auto first_non_adjacent_pair(const Graph& g, std::span<const Word> s) -> std::optional<std::pair<Vertex, Vertex>> {
  for (auto u = next_bit(s, 0); u != kNoBit; u = next_bit(s, u + 1)) {
    auto ru = g.row(static_cast<Vertex>(u));
    for (std::size_t wi = (u + 1) / kWordBits; wi < s.size(); ++wi) {
      Word cand = s[wi] & ~ru[wi];
      if (wi == (u + 1) / kWordBits) cand &= ~Word{0} << ((u + 1) % kWordBits);
      if (cand) {
        auto v = wi * kWordBits + static_cast<std::size_t>(std::countr_zero(cand));
        return std::pair{static_cast<Vertex>(u), static_cast<Vertex>(v)};
      }
    }
  }
  return std::nullopt;
}

auto is_clique(const Graph& g, std::span<const Vertex> vs) -> bool {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (!g.adjacent(vs[i], vs[j])) return false;
    }
  }
  return true;
}

auto oracle_detect(const Graph& g) -> std::optional<C4Witness> {
  std::vector<Word> common(g.words());
  for (Vertex x = 0; x < g.n(); ++x) {
    auto rx = g.row(x);
    for (Vertex y = x + 1; y < g.n(); ++y) {
      if (g.adjacent(x, y)) continue;
      auto ry = g.row(y);
      bool any = false;
      for (std::size_t i = 0; i < common.size(); ++i) {
        common[i] = rx[i] & ry[i];
        any |= common[i] != 0;
      }
      if (!any) continue;
      if (auto p = first_non_adjacent_pair(g, common)) return canonical({x, p->first, y, p->second});
    }
  }
  return std::nullopt;
}

auto naive_detect(const Graph& g) -> std::optional<C4Witness> {
  const auto n = static_cast<Vertex>(g.n());
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      for (Vertex c = b + 1; c < n; ++c) {
        for (Vertex d = c + 1; d < n; ++d) {
          for (auto w : {C4Witness{a, b, c, d}, C4Witness{a, b, d, c}, C4Witness{a, c, b, d}}) {
            if (verify_witness(g, w)) return canonical(w);
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace ic4
