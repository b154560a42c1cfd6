#ifndef IC4_DETECTOR_HPP
#define IC4_DETECTOR_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "ic4/decomposition.hpp"
#include "ic4/graph.hpp"
#include "ic4/orderings.hpp"

namespace ic4 {

enum class Phase { OracleFallback, Decomposition, TwoClustered, ThreeClustered, FourClustered, Oracle, Naive };

auto phase_name(Phase p) -> std::string;

struct DetectionReport {
  bool found = false;
  Phase phase = Phase::OracleFallback;  // phase that decided; the last phase run when nothing was found
  std::optional<C4Witness> witness;
  double ms_decomp = 0;
  double ms_p2 = 0;
  double ms_p3 = 0;
  double ms_p4 = 0;
  double ms_total = 0;
  std::string diagnostic;  // set when an internal contract check failed and the oracle answered instead

  /// found=0|1 phase=<name> witness=a,b,c,d|- ms_decomp=.. ms_p2=.. ms_p3=.. ms_p4=.. ms_total=..
  auto to_line() const -> std::string;
};

/// Sign of den * lhs - num * log2(n): exact when n is a power of two, otherwise log2(n) is
/// irrational and the floating comparison cannot tie.
auto log_threshold_cmp(std::int64_t lhs, std::int64_t num, std::int64_t den, std::size_t n) -> int;

enum class Case3 { TwoPaths, CommonNeighbors, Triples };
enum class Case4 { Quadruples, Common13, Common24, Codegree1, Codegree2, Common13Late, Common24Late };

/// Case for the 3-type (t1, t2, t3), t2 <= t3, where t1 is the level of the two same-cluster
/// vertices. Throws ContractViolation when no case applies.
auto classify3(int t1, int t2, int t3, int L, std::size_t n) -> Case3;

/// Case for the 4-type (t1, t2, t3, t4) with t1 minimal and t2 <= t4, in cycle order.
/// Throws ContractViolation when no case applies.
auto classify4(const std::array<int, 4>& t, int L, std::size_t n) -> Case4;

/// Orders every cluster pair; the first unordered pair yields a witness.
auto detect_2_clustered(const Graph& g, const LayeredDecomposition& d) -> std::variant<C4Witness, OrderingTable>;

/// Induced C4s touching exactly three clusters. Requires that no 2-clustered C4 exists.
auto detect_3_clustered(const Graph& g, const LayeredDecomposition& d, const OrderingTable& t) -> bool;

/// Induced C4s touching four clusters. Requires that no 2- or 3-clustered C4 exists.
auto detect_4_clustered(const Graph& g, const LayeredDecomposition& d, const OrderingTable& t) -> bool;

/// Full decision procedure; graphs below max(cfg.n0, 4) vertices go to the oracle.
auto detect(const Graph& g, const DecompConfig& cfg = {}) -> DetectionReport;

/// Reports in the same schema for the baseline algorithms.
auto detect_oracle(const Graph& g) -> DetectionReport;
auto detect_naive(const Graph& g) -> DetectionReport;

/// Canonical witness iff detect reports one, found through 8-part recursion on detect.
auto find(const Graph& g, const DecompConfig& cfg = {}) -> std::optional<C4Witness>;

}  // namespace ic4

#endif
