// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mulgen/emit.hpp"
#include "mulgen/genlib.hpp"
#include "mulgen/multipliers.hpp"
#include "mulgen/sim.hpp"
#include "mulgen/timing.hpp"
#include "mulgen/verify.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace mulgen;
using mulgen::testkit::decomposed_spec;
using mulgen::testkit::spec_of;

namespace {

constexpr auto S = Signedness::Signed;
constexpr auto U = Signedness::Unsigned;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome exhaustive_correctness() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<MultiplierSpec> specs;
  for (std::size_t n = 2; n <= 8; ++n) specs.push_back(spec_of(Architecture::FlatBW, n));
  specs.push_back(decomposed_spec(8, 4, Combiner::CsaTree));
  specs.push_back(decomposed_spec(8, 4, Combiner::RippleCascade));
  for (std::size_t n : {4, 6, 8}) specs.push_back(spec_of(Architecture::BoothRadix4, n));
  std::size_t vectors = 0;
  for (const auto& spec : specs) {
    const auto c = generate(spec);
    const auto r = verify::verify_exhaustive(c, spec);
    vectors += r.total_vectors;
    o.require(r.passed() && r.total_vectors == (std::size_t{1} << (2 * spec.width_a)),
              c.name() + ": " + std::to_string(r.failures.size()) + " failures");
  }
  const double s = seconds_since(t0);
  o.require(s < 10.0, fmt("took %.2f s", s));
  if (o.pass) o.detail = fmt("%zu circuits, %zu vectors, 0 failures, %.2f s", specs.size(), vectors, s);
  return o;
}

Outcome mixed_sign() {
  Outcome o;
  for (auto [sa, sb] : {std::pair{S, U}, std::pair{U, S}}) {
    const auto spec = spec_of(Architecture::FlatUnsignedArray, 4, sa, sb);
    const auto c = generate(spec);
    const auto r = verify::verify_exhaustive(c, spec);
    o.require(r.passed() && r.total_vectors == 256,
              c.name() + ": " + std::to_string(r.total_vectors) + " vectors, " +
                  std::to_string(r.failures.size()) + " failures");
  }
  if (o.pass) o.detail = "S x U and U x S at n=4: 256 vectors each, 0 failures";
  return o;
}

Outcome sixteen_bit_structures() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const std::pair<const char*, MultiplierSpec> structures[] = {
      {"leaf-4 (sixteen 4x4)", decomposed_spec(16, 4, Combiner::CsaTree, SplitStyle::Grid)},
      {"leaf-8 (four 8x8)", decomposed_spec(16, 8)},
      {"recursive leaf-8 (four decomposed 8x8)", decomposed_spec(16, 4, Combiner::CsaTree, SplitStyle::Halving)},
  };
  std::string summary;
  for (const auto& [label, spec] : structures) {
    const auto c = generate(spec);
    const auto r = verify::verify_random(c, spec, 1'000'000, 20240101);
    o.require(r.passed(), std::string(label) + ": " + std::to_string(r.failures.size()) + " failures");
    summary += fmt("%s%s %zu vectors", summary.empty() ? "" : ", ", label, r.total_vectors);
  }
  const double s = seconds_since(t0);
  o.require(s < 60.0, fmt("took %.2f s", s));
  if (o.pass) o.detail = summary + fmt(", 0 failures, %.2f s", s);
  return o;
}

Outcome depth_ordering() {
  Outcome o;
  const auto d8 = timing::depth(generate(decomposed_spec(8, 4)));
  const auto bw8 = timing::depth(generate(spec_of(Architecture::FlatBW, 8)));
  const auto d16 = timing::depth(generate(decomposed_spec(16, 4)));
  const auto d16g = timing::depth(generate(decomposed_spec(16, 4, Combiner::CsaTree, SplitStyle::Grid)));
  const auto bw16 = timing::depth(generate(spec_of(Architecture::FlatBW, 16)));
  o.require(d8 <= bw8, fmt("dec8 %zu > bw8 %zu", d8, bw8));
  o.require(d16 <= bw16, fmt("dec16 %zu > bw16 %zu", d16, bw16));
  o.detail = fmt("dec8/leaf4 %zu vs bw8 %zu (ratio %.3f); dec16/leaf4 %zu (grid %zu) vs bw16 %zu (ratio %.3f)",
                 d8, bw8, double(bw8) / double(d8), d16, d16g, bw16, double(bw16) / double(d16)) +
             (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome sta_correctness() {
  Outcome o;
  std::mt19937_64 rng(5150);
  const auto model = timing::DelayModel::tech_demo();
  for (int t = 0; t < 50; ++t) {
    const auto c = testkit::random_dag(rng, 1 + rng() % 4, 1 + rng() % 20, 1 + rng() % 3);
    const auto r = timing::critical_path(c, model);
    const auto brute = testkit::brute_force_longest_path(c, [&](GateKind k) { return model.of(k); });
    o.require(r.critical_delay == brute,
              fmt("dag %d: sta %s vs brute %s", t, r.critical_delay.to_string().c_str(),
                  brute.to_string().c_str()));
    for (Rational k : {Rational(3), Rational(7, 3)}) {
      const auto scaled = timing::critical_path(c, model.scaled(k));
      o.require(scaled.critical_delay == r.critical_delay * k && scaled.critical_path == r.critical_path,
                fmt("dag %d: scaling by %s changed the result", t, k.to_string().c_str()));
    }
  }
  if (o.pass) o.detail = "50 random DAGs (<= 20 gates): exact match, scaling by 3 and 7/3 exact";
  return o;
}

Outcome mutation_sensitivity() {
  Outcome o;
  const auto bw4 = baugh_wooley_multiplier(4);
  const auto spec = spec_of(Architecture::FlatBW, 4);
  const auto pp = testkit::partial_product_gates(bw4);
  o.require(pp.size() >= 16, fmt("only %zu partial-product gates", pp.size()));
  std::size_t caught = 0;
  for (auto g : pp) {
    if (!verify::verify_exhaustive(testkit::flip_and_nand(bw4, g), spec).passed()) ++caught;
    else o.require(false, fmt("mutant of gate %zu survived", g));
  }
  if (o.pass) o.detail = fmt("%zu/%zu mutants caught", caught, pp.size());
  return o;
}

Outcome serialization() {
  Outcome o;
  std::vector<MultiplierSpec> specs;
  for (std::size_t n : {2, 4, 8, 16}) specs.push_back(spec_of(Architecture::FlatBW, n));
  for (auto [sa, sb] : {std::pair{U, U}, std::pair{S, U}, std::pair{U, S}}) {
    specs.push_back(spec_of(Architecture::FlatUnsignedArray, 8, sa, sb));
  }
  for (std::size_t n : {4, 8, 16}) specs.push_back(spec_of(Architecture::BoothRadix4, n));
  for (auto comb : {Combiner::CsaTree, Combiner::RippleCascade}) {
    for (auto split : {SplitStyle::Halving, SplitStyle::Grid}) {
      specs.push_back(decomposed_spec(8, 4, comb, split));
      specs.push_back(decomposed_spec(16, 4, comb, split));
      specs.push_back(decomposed_spec(16, 8, comb, split));
    }
  }
  std::mt19937_64 rng(77);
  for (const auto& spec : specs) {
    const auto c = generate(spec);
    const auto back = emit::from_json(emit::to_json(c));
    o.require(back == c, c.name() + ": JSON round-trip differs");
    o.require(emit::to_verilog(c) == emit::to_verilog(generate(spec)), c.name() + ": Verilog not deterministic");
    std::vector<sim::Assignment> vecs;
    for (int i = 0; i < 1000; ++i) {
      sim::Assignment v;
      for (const char* name : {"A", "B"}) {
        const auto* p = c.find_input(name);
        v[name] = sim::min_value(p->width(), p->signedness) +
                  static_cast<std::int64_t>(rng() % (std::uint64_t{1} << p->width()));
      }
      vecs.push_back(v);
    }
    o.require(sim::evaluate_batch(c, vecs) == sim::evaluate_batch(back, vecs),
              c.name() + ": round-tripped simulation differs");
  }
  o.require(emit::to_verilog(baugh_wooley_multiplier(4)) == read_file(MULGEN_GOLDEN_DIR "/bw4.v"),
            "bw4.v differs from golden");
  o.require(emit::to_verilog(generate(decomposed_spec(16, 4))) == read_file(MULGEN_GOLDEN_DIR "/d16.v"),
            "d16.v differs from golden");
  if (o.pass) o.detail = fmt("%zu circuits round-tripped and simulated on 1000 vectors; golden files match", specs.size());
  return o;
}

Outcome worked_example() {
  Outcome o;
  const std::vector<bool> p4 = {false, false, true, false};  // 0100, LSB first
  const std::vector<bool> m4 = {false, false, true, true};   // 1100
  o.require(sim::encode(4, 4, S) == p4, "encode(+4)");
  o.require(sim::encode(-4, 4, S) == m4, "encode(-4)");
  o.require(sim::decode(p4, S) == 4 && sim::decode(m4, S) == -4, "decode");

  CircuitBuilder b("rca4");
  const auto x = b.add_input("x", 4, U);
  const auto y = b.add_input("y", 4, U);
  b.add_output("s", genlib::ripple_carry_adder(b, x, y), U);
  const auto c = b.finalize();
  const auto s = sim::evaluate(c, {{"x", 0b0100}, {"y", 0b1100}}).at("s");
  o.require(s == 0b10000, fmt("0100 + 1100 = %lld", static_cast<long long>(s)));
  o.require((s & 0xF) == 0, "carry-discarded result not 0000");
  if (o.pass) o.detail = "+4 <-> 0100, -4 <-> 1100, 0100 + 1100 = 10000, discarded carry gives 0000";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"exhaustive functional correctness", exhaustive_correctness},
      {"mixed-sign quadrant correctness", mixed_sign},
      {"16x16 decomposition structures", sixteen_bit_structures},
      {"depth ordering", depth_ordering},
      {"STA correctness", sta_correctness},
      {"mutation sensitivity", mutation_sensitivity},
      {"serialization", serialization},
      {"worked example", worked_example},
  };
  int failed = 0;
  int id = 0;
  for (const auto& [name, run] : criteria) {
    ++id;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
