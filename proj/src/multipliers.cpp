#include "mulgen/multipliers.hpp"

#include <bit>
#include <cstdint>
#include <functional>

namespace mulgen {

using genlib::BitVec;
using genlib::WeightedRow;

namespace {

// Accumulates a constant addend mod 2^width and emits it as CONST1 bits.
class ConstantAddend {
 public:
  explicit ConstantAddend(std::size_t width) : width_(width) {}

  void subtract_power(std::size_t exponent) {
    if (exponent < width_) value_ -= std::uint64_t{1} << exponent;
  }
  void add_power(std::size_t exponent) {
    if (exponent < width_) value_ += std::uint64_t{1} << exponent;
  }

  void emit(CircuitBuilder& b, std::vector<WeightedRow>& rows) const {
    const std::uint64_t v = width_ >= 64 ? value_ : value_ & ((std::uint64_t{1} << width_) - 1);
    for (std::size_t c = 0; c < width_; ++c) {
      if ((v >> c) & 1u) rows.push_back(WeightedRow{{b.const1()}, c});
    }
  }

 private:
  std::size_t width_;
  std::uint64_t value_ = 0;
};

// Adds `product` (a two's-complement word when `sign` is Signed) at column
// `weight`. A signed word's top bit -t*2^k is rewritten as (1-t)*2^k - 2^k:
// the complemented bit goes in the row and -2^k into the constant.
void add_product_row(CircuitBuilder& b, const BitVec& product, Signedness sign,
                     std::size_t weight, std::vector<WeightedRow>& rows,
                     ConstantAddend& constant) {
  WeightedRow row{product, weight};
  if (sign == Signedness::Signed) {
    row.bits.back() = b.add_gate(GateKind::Not, {product.back()});
    constant.subtract_power(weight + product.size() - 1);
  }
  rows.push_back(std::move(row));
}

Circuit wrap(std::string name, std::size_t n, Signedness sa, Signedness sb,
             const std::function<BitVec(CircuitBuilder&, const BitVec&, const BitVec&)>& body) {
  CircuitBuilder b(std::move(name));
  const auto a = b.add_input("A", n, sa);
  const auto y = b.add_input("B", n, sb);
  auto p = body(b, a, y);
  b.add_output("P", std::move(p), product_signedness(sa, sb));
  return b.finalize();
}

bool is_power_of_two(std::size_t v) { return v != 0 && std::has_single_bit(v); }

BitVec slice(const BitVec& v, std::size_t from, std::size_t count) {
  return BitVec(v.begin() + static_cast<std::ptrdiff_t>(from),
                v.begin() + static_cast<std::ptrdiff_t>(from + count));
}

const char* combiner_name(Combiner c) { return c == Combiner::CsaTree ? "csa" : "ripple"; }

}  // namespace

Signedness product_signedness(Signedness a, Signedness b) {
  return (a == Signedness::Unsigned && b == Signedness::Unsigned) ? Signedness::Unsigned
                                                                   : Signedness::Signed;
}

void check_spec(const MultiplierSpec& s) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::SpecViolation, msg); };
  if (s.width_a == 0) fail("width must be positive");
  if (s.width_b != s.width_a) fail("width_b must equal width_a (rectangular multipliers unsupported)");
  if (s.width_a > kMaxWidth) fail("width must be at most " + std::to_string(kMaxWidth));
  const bool both_signed = s.sign_a == Signedness::Signed && s.sign_b == Signedness::Signed;
  const bool any_signed = s.sign_a == Signedness::Signed || s.sign_b == Signedness::Signed;
  switch (s.architecture) {
    case Architecture::FlatBW:
      if (!both_signed) fail("Baugh-Wooley requires sign_a = sign_b = signed");
      if (s.width_a < 2) fail("Baugh-Wooley requires width >= 2");
      break;
    case Architecture::FlatUnsignedArray:
      if (any_signed && s.width_a < 2) fail("signed array multipliers require width >= 2");
      break;
    case Architecture::BoothRadix4:
      if (!both_signed) fail("Booth radix-4 requires sign_a = sign_b = signed");
      if (s.width_a < 4 || s.width_a % 2 != 0) fail("Booth radix-4 requires an even width >= 4");
      break;
    case Architecture::Decomposed:
      if (!is_power_of_two(s.width_a)) fail("decomposed width must be a power of two");
      if (s.leaf_width == 0 || s.width_a % s.leaf_width != 0) fail("leaf must divide width");
      if (s.leaf_width >= s.width_a) fail("leaf must be smaller than width");
      if (!is_power_of_two(s.leaf_width)) fail("leaf must be a power of two");
      if (s.leaf_width < 2) fail("leaf must be at least 2");
      break;
  }
}

std::string describe(const MultiplierSpec& s) {
  const auto n = std::to_string(s.width_a);
  const char* c = combiner_name(s.combiner);
  switch (s.architecture) {
    case Architecture::FlatBW:
      return "bw(" + n + "," + c + ")";
    case Architecture::FlatUnsignedArray:
      return "array(" + n + "," + std::string(to_string(s.sign_a)) + "x" +
             std::string(to_string(s.sign_b)) + "," + c + ")";
    case Architecture::BoothRadix4:
      return "booth4(" + n + "," + c + ")";
    case Architecture::Decomposed:
      return "decomposed(" + n + ",leaf " + std::to_string(s.leaf_width) + "," +
             (s.split == SplitStyle::Halving ? "halving" : "grid") + "," + c + ")";
  }
  return "unknown";
}

namespace detail {

BitVec build_array(CircuitBuilder& b, const BitVec& x, Signedness sx, const BitVec& y,
                   Signedness sy, Combiner combiner) {
  const std::size_t m = x.size();
  const std::size_t k = y.size();
  const std::size_t width = m + k;
  const bool x_signed = sx == Signedness::Signed;
  const bool y_signed = sy == Signedness::Signed;

  // a_i*b_j is negative when exactly one factor is a sign bit; such terms
  // enter complemented (NAND) with -2^(i+j) folded into the constant.
  std::vector<WeightedRow> rows;
  ConstantAddend constant(width);
  for (std::size_t j = 0; j < k; ++j) {
    const bool y_top = y_signed && j + 1 == k;
    WeightedRow row{{}, j};
    for (std::size_t i = 0; i < m; ++i) {
      const bool x_top = x_signed && i + 1 == m;
      if (x_top != y_top) {
        row.bits.push_back(b.add_gate(GateKind::Nand2, {x[i], y[j]}));
        constant.subtract_power(i + j);
      } else {
        row.bits.push_back(b.add_gate(GateKind::And2, {x[i], y[j]}));
      }
    }
    rows.push_back(std::move(row));
  }
  constant.emit(b, rows);
  return genlib::sum_rows(b, rows, width, combiner);
}

BitVec build_booth_radix4(CircuitBuilder& b, const BitVec& x, const BitVec& y,
                          Combiner combiner) {
  const std::size_t n = x.size();
  const std::size_t width = 2 * n;
  std::vector<WeightedRow> rows;
  ConstantAddend constant(width);

  for (std::size_t g = 0; g < n / 2; ++g) {
    const NetId hi = x[2 * g + 1];
    const NetId mid = x[2 * g];
    // Digit = -2*hi + mid + lo, lo = x[2g-1] (0 for the first group).
    NetId one = mid;
    if (g > 0) one = b.add_gate(GateKind::Xor2, {mid, x[2 * g - 1]});
    const NetId hi_ne_mid = b.add_gate(GateKind::Xor2, {hi, mid});
    const NetId not_one = b.add_gate(GateKind::Not, {one});
    const NetId two = b.add_gate(GateKind::And2, {hi_ne_mid, not_one});
    const NetId neg = hi;

    // Selected multiple |d|*y as an (n+1)-bit word, complemented when neg.
    WeightedRow row{{}, 2 * g};
    for (std::size_t j = 0; j <= n; ++j) {
      const NetId yj = y[std::min(j, n - 1)];
      NetId sel = b.add_gate(GateKind::And2, {one, yj});
      if (j > 0) {
        const NetId shifted = b.add_gate(GateKind::And2, {two, y[j - 1]});
        sel = b.add_gate(GateKind::Or2, {sel, shifted});
      }
      if (j < n) {
        row.bits.push_back(b.add_gate(GateKind::Xor2, {sel, neg}));
      } else {
        // Sign bit of the row, complemented; -2^(2g+n) goes to the constant.
        row.bits.push_back(b.add_gate(GateKind::Xnor2, {sel, neg}));
        constant.subtract_power(2 * g + n);
      }
    }
    rows.push_back(std::move(row));
    // +1 completes the two's-complement negation.
    rows.push_back(WeightedRow{{neg}, 2 * g});
  }
  constant.emit(b, rows);
  return genlib::sum_rows(b, rows, width, combiner);
}

BitVec build_decomposed(CircuitBuilder& b, const BitVec& x, Signedness sx, const BitVec& y,
                        Signedness sy, std::size_t leaf, Combiner combiner, SplitStyle split) {
  const std::size_t n = x.size();
  const std::size_t width = 2 * n;
  const std::size_t chunk = split == SplitStyle::Halving ? n / 2 : leaf;
  const std::size_t parts = n / chunk;

  auto part_sign = [&](Signedness s, std::size_t i) {
    return i + 1 == parts ? s : Signedness::Unsigned;
  };

  std::vector<WeightedRow> rows;
  ConstantAddend constant(width);
  for (std::size_t j = 0; j < parts; ++j) {
    const auto yj = slice(y, j * chunk, chunk);
    const auto syj = part_sign(sy, j);
    for (std::size_t i = 0; i < parts; ++i) {
      const auto xi = slice(x, i * chunk, chunk);
      const auto sxi = part_sign(sx, i);
      const BitVec product =
          chunk > leaf ? build_decomposed(b, xi, sxi, yj, syj, leaf, combiner, split)
                       : build_array(b, xi, sxi, yj, syj, combiner);
      add_product_row(b, product, product_signedness(sxi, syj), chunk * (i + j), rows, constant);
    }
  }
  constant.emit(b, rows);
  return genlib::sum_rows(b, rows, width, combiner);
}

}  // namespace detail

Circuit unsigned_array_multiplier(std::size_t n, Combiner combiner) {
  check_spec({n, n, Signedness::Unsigned, Signedness::Unsigned, Architecture::FlatUnsignedArray,
              4, combiner});
  return wrap("array" + std::to_string(n), n, Signedness::Unsigned, Signedness::Unsigned,
              [&](CircuitBuilder& b, const BitVec& a, const BitVec& y) {
                return detail::build_array(b, a, Signedness::Unsigned, y, Signedness::Unsigned,
                                           combiner);
              });
}

Circuit baugh_wooley_multiplier(std::size_t n, Combiner combiner) {
  check_spec({n, n, Signedness::Signed, Signedness::Signed, Architecture::FlatBW, 4, combiner});
  return wrap("bw" + std::to_string(n), n, Signedness::Signed, Signedness::Signed,
              [&](CircuitBuilder& b, const BitVec& a, const BitVec& y) {
                return detail::build_array(b, a, Signedness::Signed, y, Signedness::Signed,
                                           combiner);
              });
}

Circuit mixed_sign_multiplier(std::size_t n, Signedness sign_a, Signedness sign_b,
                              Combiner combiner) {
  if (n < 2) throw Error(ErrorCode::SpecViolation, "mixed-sign multiplier requires width >= 2");
  if (sign_a == Signedness::Unsigned && sign_b == Signedness::Unsigned) {
    return unsigned_array_multiplier(n, combiner);
  }
  if (sign_a == Signedness::Signed && sign_b == Signedness::Signed) {
    return baugh_wooley_multiplier(n, combiner);
  }
  check_spec({n, n, sign_a, sign_b, Architecture::FlatUnsignedArray, 4, combiner});
  const std::string tag = sign_a == Signedness::Signed ? "su" : "us";
  return wrap("array_" + tag + std::to_string(n), n, sign_a, sign_b,
              [&](CircuitBuilder& b, const BitVec& a, const BitVec& y) {
                return detail::build_array(b, a, sign_a, y, sign_b, combiner);
              });
}

Circuit booth_radix4_multiplier(std::size_t n, Combiner combiner) {
  check_spec({n, n, Signedness::Signed, Signedness::Signed, Architecture::BoothRadix4, 4,
              combiner});
  return wrap("booth4_" + std::to_string(n), n, Signedness::Signed, Signedness::Signed,
              [&](CircuitBuilder& b, const BitVec& a, const BitVec& y) {
                return detail::build_booth_radix4(b, a, y, combiner);
              });
}

Circuit decomposed_multiplier(const MultiplierSpec& spec) {
  if (spec.architecture != Architecture::Decomposed) {
    throw Error(ErrorCode::SpecViolation, "decomposed_multiplier needs architecture Decomposed");
  }
  check_spec(spec);
  const std::string name = "decomposed" + std::to_string(spec.width_a) + "_leaf" +
                           std::to_string(spec.leaf_width) +
                           (spec.split == SplitStyle::Grid ? "_grid" : "");
  return wrap(name, spec.width_a, spec.sign_a, spec.sign_b,
              [&](CircuitBuilder& b, const BitVec& a, const BitVec& y) {
                return detail::build_decomposed(b, a, spec.sign_a, y, spec.sign_b,
                                                spec.leaf_width, spec.combiner, spec.split);
              });
}

Circuit generate(const MultiplierSpec& spec) {
  check_spec(spec);
  switch (spec.architecture) {
    case Architecture::FlatBW:
      return baugh_wooley_multiplier(spec.width_a, spec.combiner);
    case Architecture::FlatUnsignedArray:
      if (spec.sign_a == Signedness::Unsigned && spec.sign_b == Signedness::Unsigned) {
        return unsigned_array_multiplier(spec.width_a, spec.combiner);
      }
      return mixed_sign_multiplier(spec.width_a, spec.sign_a, spec.sign_b, spec.combiner);
    case Architecture::BoothRadix4:
      return booth_radix4_multiplier(spec.width_a, spec.combiner);
    case Architecture::Decomposed:
      return decomposed_multiplier(spec);
  }
  throw Error(ErrorCode::SpecViolation, "unknown architecture");
}

}  // namespace mulgen
