#include <gtest/gtest.h>

#include <random>

#include "mulgen/multipliers.hpp"
#include "mulgen/sim.hpp"
#include "oracles.hpp"

using namespace mulgen;
using namespace mulgen::sim;

namespace {

constexpr auto S = Signedness::Signed;
constexpr auto U = Signedness::Unsigned;

std::vector<bool> msb_first(const std::string& s) {
  std::vector<bool> out;
  for (auto it = s.rbegin(); it != s.rend(); ++it) out.push_back(*it == '1');
  return out;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Encode, WorkedExampleValues) {
  EXPECT_EQ(encode(4, 4, S), msb_first("0100"));
  EXPECT_EQ(encode(-4, 4, S), msb_first("1100"));
  EXPECT_EQ(encode(-8, 4, S), msb_first("1000"));
  EXPECT_EQ(encode(-4, 4, S), (std::vector<bool>{false, false, true, true}));
  EXPECT_EQ(code_of([] { encode(8, 4, S); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([] { encode(-1, 4, U); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([] { encode(16, 4, U); }), ErrorCode::OutOfRange);
}

TEST(Decode, WorkedExampleValues) {
  EXPECT_EQ(decode(msb_first("1100"), S), -4);
  EXPECT_EQ(decode(msb_first("1100"), U), 12);
  EXPECT_EQ(decode(msb_first("0100"), S), 4);
}

TEST(Encode, RangeBounds) {
  EXPECT_EQ(min_value(4, S), -8);
  EXPECT_EQ(max_value(4, S), 7);
  EXPECT_EQ(min_value(4, U), 0);
  EXPECT_EQ(max_value(4, U), 15);
  EXPECT_EQ(max_value(63, U), INT64_MAX);
}

TEST(EncodeProperty, RoundTrip) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10000; ++t) {
    const std::size_t w = 1 + rng() % 63;
    const auto s = (rng() & 1) ? S : U;
    if (s == S && w == 1) continue;
    const auto lo = min_value(w, s), hi = max_value(w, s);
    const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    const auto off = span == UINT64_MAX ? rng() : rng() % (span + 1);
    const auto v = static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + off);
    const auto bits = encode(v, w, s);
    ASSERT_EQ(bits.size(), w);
    ASSERT_EQ(decode(bits, s), v);
  }
}

TEST(Evaluate, BaughWooleyExamples) {
  const auto c = baugh_wooley_multiplier(4);
  EXPECT_EQ(evaluate(c, {{"A", 4}, {"B", -4}}).at("P"), -16);
  EXPECT_EQ(evaluate(c, {{"A", 0}, {"B", 7}}).at("P"), 0);
}

TEST(Evaluate, InputErrors) {
  const auto c = baugh_wooley_multiplier(4);
  EXPECT_EQ(code_of([&] { evaluate(c, {{"A", 1}}); }), ErrorCode::MissingPort);
  EXPECT_EQ(code_of([&] { evaluate(c, {{"A", 8}, {"B", 0}}); }), ErrorCode::OutOfRange);
  EXPECT_THROW(evaluate(c, {{"A", 1}, {"B", 1}, {"Z", 0}}), Error);
  const auto bad = Circuit::assemble_unchecked(
      "bad", {Port{"A", {NetId{0}}, U}}, {Port{"Y", {NetId{1}}, U}}, {}, 2);
  EXPECT_EQ(code_of([&] { evaluate(bad, {{"A", 0}}); }), ErrorCode::InvalidCircuit);
}

TEST(EvaluateProperty, MatchesRecursiveReferenceOnRandomCircuits) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t inputs = 1 + rng() % 5;
    const auto c = testkit::random_dag(rng, inputs, 1 + rng() % 40, 1 + rng() % 3);
    Assignment in;
    std::map<std::string, std::uint64_t> raw;
    for (const auto& p : c.inputs()) {
      const auto v = static_cast<std::int64_t>(rng() & 1);
      in[p.name] = v;
      raw[p.name] = static_cast<std::uint64_t>(v);
    }
    const auto got = evaluate(c, in);
    const auto want = testkit::recursive_eval(c, raw);
    for (const auto& [name, v] : want) ASSERT_EQ(static_cast<std::uint64_t>(got.at(name)), v);
  }
}

TEST(EvaluateBatch, SingleVectorEqualsScalar) {
  const auto c = booth_radix4_multiplier(8);
  const Assignment v = {{"A", -77}, {"B", 103}};
  const auto batch = evaluate_batch(c, {v});
  ASSERT_EQ(batch.size(), 1u);
  EXPECT_EQ(batch[0], evaluate(c, v));
}

TEST(EvaluateBatch, WorkerCountDoesNotChangeResults) {
  const auto c = baugh_wooley_multiplier(8);
  std::vector<Assignment> vectors;
  for (std::int64_t a = -128; a < 128; ++a)
    for (std::int64_t b = -128; b < 128; ++b) vectors.push_back({{"A", a}, {"B", b}});
  const auto one = evaluate_batch(c, vectors, 1);
  const auto four = evaluate_batch(c, vectors, 4);
  EXPECT_EQ(one, four);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    ASSERT_EQ(one[i].at("P"), vectors[i].at("A") * vectors[i].at("B"));
  }
}

TEST(EvaluateBatch, ErrorsNameTheVector) {
  const auto c = baugh_wooley_multiplier(4);
  try {
    evaluate_batch(c, {{{"A", 1}, {"B", 1}}, {{"A", 100}, {"B", 1}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
    EXPECT_NE(std::string(e.what()).find("vector 1"), std::string::npos);
  }
}

TEST(LaneEvaluator, SixtyFourLanesMatchScalar) {
  const auto c = unsigned_array_multiplier(4);
  LaneEvaluator ev(c);
  std::vector<std::vector<std::uint64_t>> in(2, std::vector<std::uint64_t>(4, 0));
  std::mt19937_64 rng(9);
  for (auto& port : in)
    for (auto& lane : port) lane = rng();
  const auto out = ev.run(in);
  for (int lane = 0; lane < 64; ++lane) {
    std::int64_t a = 0, b = 0, p = 0;
    for (int i = 0; i < 4; ++i) {
      a |= static_cast<std::int64_t>((in[0][i] >> lane) & 1) << i;
      b |= static_cast<std::int64_t>((in[1][i] >> lane) & 1) << i;
    }
    for (int i = 0; i < 8; ++i) p |= static_cast<std::int64_t>((out[0][i] >> lane) & 1) << i;
    ASSERT_EQ(p, a * b);
  }
}
