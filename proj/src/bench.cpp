#include "ic4/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

#include "ic4/detector.hpp"
#include "ic4/errors.hpp"
#include "ic4/generators.hpp"

namespace ic4 {

auto to_csv(const BenchRecord& r) -> std::string {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu,%llu,%s,%s,%d,%.17g,%.17g,%.17g,%.17g,%.17g", r.n,
                static_cast<unsigned long long>(r.seed), r.gen.c_str(), r.algo.c_str(), r.found ? 1 : 0, r.ms,
                r.ms_decomp, r.ms_p2, r.ms_p3, r.ms_p4);
  return buf;
}

namespace {

template <typename T>
auto parse_field(std::string_view s, const char* name) -> T {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw ParseError(0, std::string("bad csv field ") + name + ": '" + std::string(s) + "'");
  }
  return v;
}

auto parse_ms(std::string_view s, const char* name) -> double {
  auto v = parse_field<double>(s, name);
  if (!(v >= 0)) throw ParseError(0, std::string("negative csv field ") + name);
  return v;
}

}  // namespace

auto parse_csv_line(std::string_view line) -> BenchRecord {
  std::vector<std::string_view> f;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    f.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (f.size() != 10) throw ParseError(0, "csv line needs 10 fields, got " + std::to_string(f.size()));
  BenchRecord r;
  r.n = parse_field<std::size_t>(f[0], "n");
  r.seed = parse_field<std::uint64_t>(f[1], "seed");
  r.gen = std::string(f[2]);
  r.algo = std::string(f[3]);
  if (r.algo != "fast" && r.algo != "oracle" && r.algo != "naive") throw ParseError(0, "bad csv algo '" + r.algo + "'");
  if (f[4] != "0" && f[4] != "1") throw ParseError(0, "bad csv found flag");
  r.found = f[4] == "1";
  r.ms = parse_ms(f[5], "ms");
  r.ms_decomp = parse_ms(f[6], "ms_decomp");
  r.ms_p2 = parse_ms(f[7], "ms_p2");
  r.ms_p3 = parse_ms(f[8], "ms_p3");
  r.ms_p4 = parse_ms(f[9], "ms_p4");
  return r;
}

auto run_bench(const BenchOptions& opt) -> std::vector<BenchRecord> {
  std::vector<BenchRecord> rows;
  for (auto n : opt.sizes) {
    for (std::size_t rep = 0; rep < opt.reps; ++rep) {
      const auto seed = opt.seed + rep;
      const auto g = gnp(n, Rational{1, 2}, seed);
      auto add = [&](const char* algo, const DetectionReport& rep_) {
        rows.push_back(BenchRecord{n, seed, "gnp", algo, rep_.found, rep_.ms_total, rep_.ms_decomp, rep_.ms_p2,
                                   rep_.ms_p3, rep_.ms_p4});
      };
      add("fast", detect(g, opt.cfg));
      if (!opt.baselines) continue;
      add("oracle", detect_oracle(g));
      if (n <= opt.naive_max_n) add("naive", detect_naive(g));
    }
  }
  return rows;
}

auto fit_slope(const std::vector<BenchRecord>& rows) -> double {
  std::map<std::size_t, std::vector<double>> by_n;
  for (const auto& r : rows) {
    if (r.algo == "fast") by_n[r.n].push_back(r.ms);
  }
  if (by_n.size() < 2) throw ContractViolation("fit_slope: need at least two sizes");
  std::vector<double> xs, ys;
  for (auto& [n, ms] : by_n) {
    std::sort(ms.begin(), ms.end());
    const auto k = ms.size();
    const double med = k % 2 ? ms[k / 2] : (ms[k / 2 - 1] + ms[k / 2]) / 2;
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(std::max(med, 1e-3)));
  }
  const double k = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace ic4
