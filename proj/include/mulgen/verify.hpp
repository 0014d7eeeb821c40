#pragma once

/// Oracle-based equivalence checking of multiplier netlists.
///
/// The circuit under test must expose inputs "A", "B" (width n) and output
/// "P" (width 2n). Inputs are driven with the two's-complement bit patterns
/// of the operands and P is decoded with the product signedness implied by
/// the spec, then compared with oracle_product().

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mulgen/multipliers.hpp"
#include "mulgen/netlist.hpp"

namespace mulgen::verify {

enum class Mode { Exhaustive, Random };

struct Failure {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t expected = 0;
  std::int64_t actual = 0;

  friend bool operator==(const Failure&, const Failure&) = default;
};

/// Counter-based SplitMix64: value i of a stream depends only on (seed, i),
/// so any partition of the index space reproduces the same vectors.
inline constexpr const char* kPrngAlgorithm = "splitmix64-counter";

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t index);

struct VerifyReport {
  std::string circuit;
  Mode mode = Mode::Exhaustive;
  std::uint64_t seed = 0;
  std::size_t requested_count = 0;    // random vectors asked for
  std::size_t boundary_vectors = 0;   // injected boundary pairs (random mode)
  std::size_t total_vectors = 0;
  std::vector<Failure> failures;      // sorted by (a, b)

  bool passed() const { return failures.empty(); }
  std::string to_text(std::size_t max_witnesses = 10) const;
  std::string to_json() const;
};

inline constexpr std::size_t kDefaultExhaustiveCap = 8;

/// Exact product on host integers. Throws Error(OutOfRange) when an operand
/// does not fit its width/signedness.
std::int64_t oracle_product(std::int64_t a, std::int64_t b, const MultiplierSpec& spec);

/// Sweeps all 2^(2n) operand pairs and records every mismatch. Throws
/// Error(WidthCap) above `cap`. `workers` = 0 uses the hardware concurrency.
VerifyReport verify_exhaustive(const Circuit& circuit, const MultiplierSpec& spec,
                               std::size_t cap = kDefaultExhaustiveCap, std::size_t workers = 0);

/// `count` seeded random pairs plus the boundary set {0, 1, -1, max, min}
/// of each operand crossed with itself.
VerifyReport verify_random(const Circuit& circuit, const MultiplierSpec& spec,
                           std::size_t count, std::uint64_t seed, std::size_t workers = 0);

/// Operand boundary values for one port, ascending and deduplicated.
std::vector<std::int64_t> boundary_values(std::size_t width, Signedness s);

}  // namespace mulgen::verify
