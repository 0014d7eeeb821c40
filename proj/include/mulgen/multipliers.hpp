#pragma once

/// Multiplier netlist generators.
///
/// Every generated circuit has input ports "A" and "B" of width n and an
/// output port "P" of width 2n. P is Unsigned only for Unsigned x Unsigned.

#include <cstddef>
#include <string>

#include "mulgen/genlib.hpp"
#include "mulgen/netlist.hpp"

namespace mulgen {

using genlib::Combiner;

enum class Architecture { FlatBW, FlatUnsignedArray, BoothRadix4, Decomposed };

/// How a decomposed multiplier is split. Halving recurses on quadrants
/// until the leaf width is reached; Grid splits each operand once into
/// n / leaf chunks and sums all (n / leaf)^2 leaf products in one combiner.
enum class SplitStyle { Halving, Grid };

struct MultiplierSpec {
  std::size_t width_a = 8;
  std::size_t width_b = 8;
  Signedness sign_a = Signedness::Signed;
  Signedness sign_b = Signedness::Signed;
  Architecture architecture = Architecture::FlatBW;
  std::size_t leaf_width = 4;
  Combiner combiner = Combiner::CsaTree;
  SplitStyle split = SplitStyle::Halving;
};

/// Largest operand width accepted; keeps every product inside int64.
inline constexpr std::size_t kMaxWidth = 31;

/// Throws Error(SpecViolation) naming the first violated invariant.
void check_spec(const MultiplierSpec& spec);

Signedness product_signedness(Signedness a, Signedness b);

/// Generates the circuit described by `spec` (dispatching on architecture).
Circuit generate(const MultiplierSpec& spec);

/// Unsigned n x n array: n^2 AND2 partial products.
Circuit unsigned_array_multiplier(std::size_t n, Combiner combiner = Combiner::CsaTree);

/// Signed n x n Baugh-Wooley array, n >= 2.
Circuit baugh_wooley_multiplier(std::size_t n, Combiner combiner = Combiner::CsaTree);

/// Array multiplier for any signedness pair, n >= 2.
Circuit mixed_sign_multiplier(std::size_t n, Signedness sign_a, Signedness sign_b,
                              Combiner combiner = Combiner::CsaTree);

/// Signed radix-4 Booth multiplier, n even and >= 4.
Circuit booth_radix4_multiplier(std::size_t n, Combiner combiner = Combiner::CsaTree);

Circuit decomposed_multiplier(const MultiplierSpec& spec);

/// Short human-readable label, e.g. "decomposed(16,leaf 4,halving,csa)".
std::string describe(const MultiplierSpec& spec);

namespace detail {

// In-builder forms, used for composing multipliers out of sub-multipliers.
// Each returns exactly a.size() + b.size() product bits.
genlib::BitVec build_array(CircuitBuilder& b, const genlib::BitVec& x, Signedness sx,
                           const genlib::BitVec& y, Signedness sy, Combiner combiner);
genlib::BitVec build_booth_radix4(CircuitBuilder& b, const genlib::BitVec& x,
                                  const genlib::BitVec& y, Combiner combiner);
genlib::BitVec build_decomposed(CircuitBuilder& b, const genlib::BitVec& x, Signedness sx,
                                const genlib::BitVec& y, Signedness sy, std::size_t leaf,
                                Combiner combiner, SplitStyle split);

}  // namespace detail

}  // namespace mulgen
