#include <gtest/gtest.h>

#include <random>

#include "mulgen/multipliers.hpp"
#include "mulgen/sim.hpp"
#include "mulgen/timing.hpp"
#include "mulgen/verify.hpp"
#include "support.hpp"

using namespace mulgen;
using mulgen::testkit::decomposed_spec;
using mulgen::testkit::spec_of;

namespace {

constexpr auto S = Signedness::Signed;
constexpr auto U = Signedness::Unsigned;

std::int64_t mul(const Circuit& c, std::int64_t a, std::int64_t b) {
  return sim::evaluate(c, {{"A", a}, {"B", b}}).at("P");
}

std::vector<bool> p_bits(const Circuit& c, std::int64_t a, std::int64_t b) {
  const auto p = mul(c, a, b);
  const auto* port = c.find_output("P");
  return sim::encode(p, port->width(), port->signedness);
}

std::vector<bool> msb_first(const std::string& s) {
  std::vector<bool> out;
  for (auto it = s.rbegin(); it != s.rend(); ++it) out.push_back(*it == '1');
  return out;
}

void expect_exhaustive(const Circuit& c, const MultiplierSpec& spec) {
  const auto r = verify::verify_exhaustive(c, spec);
  EXPECT_TRUE(r.passed()) << r.to_text();
  EXPECT_EQ(r.total_vectors, std::uint64_t{1} << (2 * spec.width_a));
}

std::string spec_error(const MultiplierSpec& s) {
  try {
    check_spec(s);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SpecViolation);
    return e.what();
  }
  return "";
}

}  // namespace

TEST(UnsignedArray, Examples) {
  const auto c = unsigned_array_multiplier(4);
  EXPECT_EQ(mul(c, 15, 15), 225);
  EXPECT_EQ(mul(c, 0, 13), 0);
  EXPECT_EQ(c.find_output("P")->signedness, U);
}

TEST(UnsignedArray, ExhaustiveAndPartialProductCount) {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (auto comb : {Combiner::CsaTree, Combiner::RippleCascade}) {
      const auto c = unsigned_array_multiplier(n, comb);
      auto spec = spec_of(Architecture::FlatUnsignedArray, n, U, U);
      expect_exhaustive(c, spec);
      EXPECT_EQ(testkit::partial_product_gates(c).size(), n * n);
    }
  }
}

TEST(BaughWooley, FourBitExampleBitPattern) {
  const auto c = baugh_wooley_multiplier(4);
  EXPECT_EQ(mul(c, 4, -4), -16);
  EXPECT_EQ(p_bits(c, 4, -4), msb_first("11110000"));
  EXPECT_EQ(mul(c, -8, -8), 64);
  EXPECT_EQ(mul(c, 0, -5), 0);
}

TEST(BaughWooley, NandCountMatchesSignCrossTerms) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto c = baugh_wooley_multiplier(n);
    std::size_t nands = 0, ands = 0;
    for (auto g : testkit::partial_product_gates(c)) {
      (c.gates()[g].kind == GateKind::Nand2 ? nands : ands) += 1;
    }
    EXPECT_EQ(nands, 2 * (n - 1));
    EXPECT_EQ(ands, (n - 1) * (n - 1) + 1);
  }
}

TEST(BaughWooley, ExhaustiveBothCombiners) {
  for (std::size_t n = 2; n <= 7; ++n) {
    for (auto comb : {Combiner::CsaTree, Combiner::RippleCascade}) {
      expect_exhaustive(baugh_wooley_multiplier(n, comb), spec_of(Architecture::FlatBW, n));
    }
  }
}

TEST(BaughWooley, WidthBelowTwoRejected) {
  EXPECT_THROW(baugh_wooley_multiplier(1), Error);
  EXPECT_NE(spec_error(spec_of(Architecture::FlatBW, 8, U, U)).find("Baugh-Wooley"),
            std::string::npos);
}

TEST(MixedSign, Examples) {
  const auto su = mixed_sign_multiplier(4, S, U);
  EXPECT_EQ(mul(su, -8, 15), -120);
  EXPECT_EQ(p_bits(su, -8, 15), msb_first("10001000"));
  const auto us = mixed_sign_multiplier(4, U, S);
  EXPECT_EQ(mul(us, 15, 7), 105);
  EXPECT_EQ(mul(us, 15, -8), -120);
}

TEST(MixedSign, Exhaustive) {
  for (std::size_t n = 2; n <= 6; ++n) {
    for (auto [sa, sb] : {std::pair{S, U}, std::pair{U, S}, std::pair{S, S}, std::pair{U, U}}) {
      expect_exhaustive(mixed_sign_multiplier(n, sa, sb),
                        spec_of(Architecture::FlatUnsignedArray, n, sa, sb));
    }
  }
}

TEST(Booth, Examples) {
  const auto c = booth_radix4_multiplier(8);
  EXPECT_EQ(mul(c, -128, -128), 16384);
  EXPECT_EQ(mul(c, 0, 77), 0);
  EXPECT_EQ(mul(c, 127, -128), -16256);
}

TEST(Booth, Exhaustive) {
  for (std::size_t n : {4, 6}) {
    for (auto comb : {Combiner::CsaTree, Combiner::RippleCascade}) {
      expect_exhaustive(booth_radix4_multiplier(n, comb), spec_of(Architecture::BoothRadix4, n));
    }
  }
}

TEST(Booth, RejectsOddOrNarrowWidths) {
  EXPECT_THROW(booth_radix4_multiplier(5), Error);
  EXPECT_THROW(booth_radix4_multiplier(2), Error);
  EXPECT_NE(spec_error(spec_of(Architecture::BoothRadix4, 7)).find("Booth"), std::string::npos);
}

TEST(Decomposed, EightBitExample) {
  const auto c = decomposed_multiplier(decomposed_spec(8, 4));
  EXPECT_EQ(mul(c, 127, -128), -16256);
  EXPECT_EQ(p_bits(c, 127, -128), msb_first("1100000010000000"));
  EXPECT_EQ(c.find_output("P")->width(), 16u);
}

TEST(Decomposed, ExhaustiveVariantsAtEightBits) {
  for (std::size_t leaf : {2, 4}) {
    for (auto comb : {Combiner::CsaTree, Combiner::RippleCascade}) {
      for (auto split : {SplitStyle::Halving, SplitStyle::Grid}) {
        const auto spec = decomposed_spec(8, leaf, comb, split);
        expect_exhaustive(decomposed_multiplier(spec), spec);
      }
    }
  }
}

TEST(Decomposed, AllSignednessPairs) {
  for (auto [sa, sb] : {std::pair{S, U}, std::pair{U, S}, std::pair{U, U}}) {
    auto spec = decomposed_spec(8, 4);
    spec.sign_a = sa;
    spec.sign_b = sb;
    expect_exhaustive(generate(spec), spec);
  }
}

TEST(Decomposed, SixteenBitRandom) {
  for (std::size_t leaf : {4, 8}) {
    const auto spec = decomposed_spec(16, leaf);
    const auto r = verify::verify_random(generate(spec), spec, 20000, 42);
    EXPECT_TRUE(r.passed()) << r.to_text();
  }
}

TEST(Decomposed, InvalidSpecsRejected) {
  EXPECT_NE(spec_error(decomposed_spec(8, 3)).find("leaf must divide width"), std::string::npos);
  EXPECT_NE(spec_error(decomposed_spec(8, 8)).find("leaf must be smaller"), std::string::npos);
  EXPECT_NE(spec_error(decomposed_spec(12, 4)).find("power of two"), std::string::npos);
  auto rect = decomposed_spec(8, 4);
  rect.width_b = 16;
  EXPECT_FALSE(spec_error(rect).empty());
  EXPECT_THROW(generate(decomposed_spec(8, 3)), Error);
}

TEST(Decomposed, DepthNotWorseThanFlatAtEightBits) {
  const auto d = timing::depth(generate(decomposed_spec(8, 4)));
  const auto bw = timing::depth(baugh_wooley_multiplier(8));
  EXPECT_LE(d, bw);
}

TEST(CrossArchitecture, EightBitProductsAgreeOnEveryInput) {
  std::vector<Circuit> circuits = {
      baugh_wooley_multiplier(8),
      baugh_wooley_multiplier(8, Combiner::RippleCascade),
      booth_radix4_multiplier(8),
      generate(decomposed_spec(8, 4)),
      generate(decomposed_spec(8, 2, Combiner::RippleCascade)),
      generate(decomposed_spec(8, 2, Combiner::CsaTree, SplitStyle::Grid)),
  };
  std::vector<sim::Assignment> vectors;
  for (std::int64_t a = -128; a < 128; ++a)
    for (std::int64_t b = -128; b < 128; ++b) vectors.push_back({{"A", a}, {"B", b}});
  const auto ref = sim::evaluate_batch(circuits.front(), vectors);
  for (std::size_t i = 1; i < circuits.size(); ++i) {
    EXPECT_EQ(sim::evaluate_batch(circuits[i], vectors), ref) << circuits[i].name();
  }
}

TEST(Generate, DeterministicAndDescribed) {
  const auto spec = decomposed_spec(16, 4, Combiner::CsaTree, SplitStyle::Grid);
  EXPECT_EQ(generate(spec), generate(spec));
  EXPECT_FALSE(describe(spec).empty());
  EXPECT_EQ(product_signedness(U, U), U);
  EXPECT_EQ(product_signedness(S, U), S);
}
