#ifndef IC4_BENCH_HPP
#define IC4_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ic4/decomposition.hpp"

namespace ic4 {

struct BenchRecord {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string gen = "gnp";
  std::string algo = "fast";  // fast | oracle | naive
  bool found = false;
  double ms = 0;
  double ms_decomp = 0;
  double ms_p2 = 0;
  double ms_p3 = 0;
  double ms_p4 = 0;

  auto operator==(const BenchRecord&) const -> bool = default;
};

inline constexpr std::string_view kBenchCsvHeader = "n,seed,gen,algo,found,ms,ms_decomp,ms_p2,ms_p3,ms_p4";

auto to_csv(const BenchRecord& r) -> std::string;
/// Inverse of to_csv; throws ParseError on malformed lines.
auto parse_csv_line(std::string_view line) -> BenchRecord;

struct BenchOptions {
  std::vector<std::size_t> sizes;
  std::size_t reps = 3;
  std::uint64_t seed = 1;
  std::size_t naive_max_n = 256;  // naive baseline rows only up to this size
  bool baselines = true;
  DecompConfig cfg{};
};

/// G(n, 1/2) with seed + rep for every size and repetition: one fast row each, plus oracle
/// rows and, for small n, naive rows.
auto run_bench(const BenchOptions& opt) -> std::vector<BenchRecord>;

/// Least-squares slope of log(median fast ms) against log n; per-size medians are clamped to
/// at least 1e-3 ms. Needs two distinct sizes.
auto fit_slope(const std::vector<BenchRecord>& rows) -> double;

}  // namespace ic4

#endif
