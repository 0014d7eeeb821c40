#pragma once

/// Bit-exact combinational evaluation.
///
/// The simulator works on single-bit net values only. Batch evaluation
/// packs up to 64 vectors into the lanes of a machine word per net, which
/// is bit-identical to evaluating the vectors one at a time.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mulgen/netlist.hpp"

namespace mulgen::sim {

/// Port name -> integer value, interpreted per the port's width and signedness.
using Assignment = std::map<std::string, std::int64_t>;

/// Widest port that evaluate()/evaluate_batch() can carry in an int64.
inline constexpr std::size_t kMaxIntegerPortWidth = 63;

std::int64_t min_value(std::size_t width, Signedness s);
std::int64_t max_value(std::size_t width, Signedness s);

/// LSB-first bits; throws Error(OutOfRange) when value does not fit.
std::vector<bool> encode(std::int64_t value, std::size_t width, Signedness s);
/// Sum of b_i 2^i, with the top weight negated when Signed. Bits beyond
/// 64 are rejected with Error(OutOfRange).
std::int64_t decode(const std::vector<bool>& bits, Signedness s);

/// Evaluates every net given one bit per input-port bit, in port order.
std::vector<bool> evaluate_nets(const Circuit& circuit, const std::vector<bool>& input_bits);

Assignment evaluate(const Circuit& circuit, const Assignment& inputs);

/// One result per vector, in order. `workers` = 0 picks the hardware
/// concurrency; results do not depend on it.
std::vector<Assignment> evaluate_batch(const Circuit& circuit,
                                       const std::vector<Assignment>& vectors,
                                       std::size_t workers = 1);

/// Reusable 64-lane evaluator over a validated circuit. Lane words for input
/// bits are loaded per port bit; every output bit comes back as a lane word.
class LaneEvaluator {
 public:
  explicit LaneEvaluator(const Circuit& circuit);

  const Circuit& circuit() const { return *circuit_; }

  /// `inputs[p][i]` holds the lanes of bit i of input port p.
  /// Returns `out[p][i]` for output port p bit i.
  std::vector<std::vector<std::uint64_t>> run(
      const std::vector<std::vector<std::uint64_t>>& inputs);

 private:
  struct Op {
    GateKind kind;
    std::uint32_t a;
    std::uint32_t b;
    std::uint32_t out;
  };

  const Circuit* circuit_;
  std::vector<Op> program_;
  std::vector<std::uint64_t> nets_;
};

}  // namespace mulgen::sim
