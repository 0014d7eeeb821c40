#include "mulgen/genlib.hpp"

#include <algorithm>

namespace mulgen::genlib {

namespace {

using Sparse = std::vector<std::optional<NetId>>;

// One Wallace pass over every column. Carries that would land at or beyond
// `limit` are dropped, so only the sum half of the adder is built there.
std::vector<std::vector<NetId>> csa_pass(CircuitBuilder& b,
                                         const std::vector<std::vector<NetId>>& cols,
                                         std::optional<std::size_t> limit) {
  std::vector<std::vector<NetId>> next(cols.size() + 1);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& bits = cols[c];
    const bool keep_carry = !limit || c + 1 < *limit;
    std::size_t i = 0;
    for (; i + 3 <= bits.size(); i += 3) {
      if (keep_carry) {
        const auto fa = full_adder(b, bits[i], bits[i + 1], bits[i + 2]);
        next[c].push_back(fa.sum);
        next[c + 1].push_back(fa.carry);
      } else {
        const auto t = b.add_gate(GateKind::Xor2, {bits[i], bits[i + 1]});
        next[c].push_back(b.add_gate(GateKind::Xor2, {t, bits[i + 2]}));
      }
    }
    for (; i < bits.size(); ++i) next[c].push_back(bits[i]);
  }
  while (!next.empty() && next.back().empty()) next.pop_back();
  return next;
}

std::size_t height(const std::vector<std::vector<NetId>>& cols) {
  std::size_t h = 0;
  for (const auto& c : cols) h = std::max(h, c.size());
  return h;
}

// Carry-propagate addition of a dot diagram with at most two bits per
// column. Columns that never receive a bit stay empty.
Sparse ripple_columns(CircuitBuilder& b, const std::vector<std::vector<NetId>>& cols,
                      std::size_t width) {
  Sparse out(width);
  std::optional<NetId> carry;
  for (std::size_t c = 0; c < width; ++c) {
    std::vector<NetId> items;
    if (c < cols.size()) items = cols[c];
    if (carry) items.push_back(*carry);
    carry.reset();
    const bool last = c + 1 == width;
    switch (items.size()) {
      case 0:
        break;
      case 1:
        out[c] = items[0];
        break;
      case 2:
        if (last) {
          out[c] = b.add_gate(GateKind::Xor2, {items[0], items[1]});
        } else {
          const auto ha = half_adder(b, items[0], items[1]);
          out[c] = ha.sum;
          carry = ha.carry;
        }
        break;
      case 3:
        if (last) {
          const auto t = b.add_gate(GateKind::Xor2, {items[0], items[1]});
          out[c] = b.add_gate(GateKind::Xor2, {t, items[2]});
        } else {
          const auto fa = full_adder(b, items[0], items[1], items[2]);
          out[c] = fa.sum;
          carry = fa.carry;
        }
        break;
      default:
        throw Error(ErrorCode::InvalidArgument, "ripple stage given a column with >2 bits");
    }
  }
  return out;
}

BitVec densify(CircuitBuilder& b, const Sparse& bits) {
  BitVec out;
  out.reserve(bits.size());
  for (const auto& bit : bits) out.push_back(bit ? *bit : b.const0());
  return out;
}

}  // namespace

SumCarry half_adder(CircuitBuilder& b, NetId x, NetId y) {
  const auto sum = b.add_gate(GateKind::Xor2, {x, y});
  const auto carry = b.add_gate(GateKind::And2, {x, y});
  return {sum, carry};
}

SumCarry full_adder(CircuitBuilder& b, NetId x, NetId y, NetId cin) {
  const auto p = b.add_gate(GateKind::Xor2, {x, y});
  const auto sum = b.add_gate(GateKind::Xor2, {p, cin});
  const auto g = b.add_gate(GateKind::And2, {x, y});
  const auto t = b.add_gate(GateKind::And2, {cin, p});
  const auto carry = b.add_gate(GateKind::Or2, {g, t});
  return {sum, carry};
}

BitVec ripple_carry_adder(CircuitBuilder& b, const BitVec& x, const BitVec& y,
                          std::optional<NetId> cin) {
  if (x.empty() || x.size() != y.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "ripple_carry_adder needs equal non-zero widths, got " +
                    std::to_string(x.size()) + " and " + std::to_string(y.size()));
  }
  BitVec out;
  out.reserve(x.size() + 1);
  std::optional<NetId> carry = cin;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto sc = carry ? full_adder(b, x[i], y[i], *carry) : half_adder(b, x[i], y[i]);
    out.push_back(sc.sum);
    carry = sc.carry;
  }
  out.push_back(*carry);
  return out;
}

void Columns::add(const WeightedRow& row) {
  for (std::size_t i = 0; i < row.bits.size(); ++i) add(row.bits[i], row.weight + i);
}

void Columns::add(NetId bit, std::size_t column) {
  if (column < cols_.size()) cols_[column].push_back(bit);
}

std::size_t Columns::max_height() const {
  std::size_t h = 0;
  for (const auto& c : cols_) h = std::max(h, c.size());
  return h;
}

std::pair<WeightedRow, WeightedRow> carry_save_reduce(CircuitBuilder& b,
                                                      const std::vector<WeightedRow>& rows) {
  if (rows.empty()) throw Error(ErrorCode::InvalidArgument, "carry_save_reduce needs rows");
  if (rows.size() == 1) return {rows[0], WeightedRow{}};
  if (rows.size() == 2) return {rows[0], rows[1]};

  std::vector<std::vector<NetId>> cols;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.bits.size(); ++i) {
      const auto c = row.weight + i;
      if (cols.size() <= c) cols.resize(c + 1);
      cols[c].push_back(row.bits[i]);
    }
  }
  while (height(cols) > 2) cols = csa_pass(b, cols, std::nullopt);

  // Split columns into two rows; a hole inside a row becomes constant 0.
  auto make_row = [&](std::size_t slot) {
    std::size_t lo = cols.size(), hi = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() > slot) {
        lo = std::min(lo, c);
        hi = c + 1;
      }
    }
    WeightedRow row;
    if (lo >= hi) return row;
    row.weight = lo;
    for (std::size_t c = lo; c < hi; ++c) {
      row.bits.push_back(cols[c].size() > slot ? cols[c][slot] : b.const0());
    }
    return row;
  };
  auto first = make_row(0);
  auto second = make_row(1);
  return {std::move(first), std::move(second)};
}

BitVec sum_rows(CircuitBuilder& b, const std::vector<WeightedRow>& rows, std::size_t width,
                Combiner combiner) {
  if (width == 0) throw Error(ErrorCode::ZeroWidth, "sum_rows needs a non-zero width");

  auto to_cols = [&](const std::vector<WeightedRow>& rs) {
    Columns cols(width);
    for (const auto& r : rs) cols.add(r);
    std::vector<std::vector<NetId>> v(width);
    for (std::size_t c = 0; c < width; ++c) v[c] = cols[c];
    return v;
  };

  if (combiner == Combiner::CsaTree) {
    auto cols = to_cols(rows);
    while (height(cols) > 2) {
      cols = csa_pass(b, cols, width);
      cols.resize(width);
    }
    return densify(b, ripple_columns(b, cols, width));
  }

  // Accumulator has at most one bit per column, a row adds at most one more.
  Sparse acc(width);
  for (const auto& row : rows) {
    auto cols = to_cols({row});
    for (std::size_t c = 0; c < width; ++c) {
      if (acc[c]) cols[c].insert(cols[c].begin(), *acc[c]);
    }
    acc = ripple_columns(b, cols, width);
  }
  return densify(b, acc);
}

}  // namespace mulgen::genlib
