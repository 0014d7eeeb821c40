#pragma once

/// Arithmetic building blocks shared by the multiplier generators.
///
/// Gate costs are fixed: half adder = XOR2 + AND2, full adder = 2 XOR2 +
/// 2 AND2 + OR2 (carry depth 3 on the unit model).

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mulgen/netlist.hpp"

namespace mulgen::genlib {

/// LSB-first bundle of nets.
using BitVec = std::vector<NetId>;

/// A row of bits whose bit 0 sits at column `weight` (value bits << weight).
/// An empty row is zero.
struct WeightedRow {
  BitVec bits;
  std::size_t weight = 0;
};

enum class Combiner { CsaTree, RippleCascade };

struct SumCarry {
  NetId sum;
  NetId carry;
};

SumCarry half_adder(CircuitBuilder& b, NetId x, NetId y);
SumCarry full_adder(CircuitBuilder& b, NetId x, NetId y, NetId cin);

/// n-bit ripple adder. Returns n + 1 bits; the MSB is the carry out.
/// Without `cin` bit 0 uses a half adder.
BitVec ripple_carry_adder(CircuitBuilder& b, const BitVec& x, const BitVec& y,
                          std::optional<NetId> cin = std::nullopt);

/// Wallace-style 3:2 reduction. Each pass walks the columns in ascending
/// order, compressing every full triple in a column with a full adder;
/// passes repeat until no column holds more than two bits. The two result
/// rows sum to the same value as the input rows. With at most two input
/// rows they are returned unchanged (the second is empty for a single row).
std::pair<WeightedRow, WeightedRow> carry_save_reduce(CircuitBuilder& b,
                                                      const std::vector<WeightedRow>& rows);

/// Bits of a dot diagram, grouped by column.
class Columns {
 public:
  explicit Columns(std::size_t width) : cols_(width) {}

  std::size_t width() const { return cols_.size(); }
  std::vector<NetId>& operator[](std::size_t c) { return cols_[c]; }
  const std::vector<NetId>& operator[](std::size_t c) const { return cols_[c]; }

  /// Adds a row; bits at or above width() are dropped (arithmetic mod 2^width).
  void add(const WeightedRow& row);
  void add(NetId bit, std::size_t column);
  std::size_t max_height() const;

 private:
  std::vector<std::vector<NetId>> cols_;
};

/// Sums every row mod 2^width and returns exactly `width` bits. CsaTree
/// reduces the dot diagram to two rows then finishes with one ripple adder;
/// RippleCascade adds the rows one after another with ripple adders. Both
/// skip gates where a column holds a single bit.
BitVec sum_rows(CircuitBuilder& b, const std::vector<WeightedRow>& rows, std::size_t width,
                Combiner combiner);

}  // namespace mulgen::genlib
