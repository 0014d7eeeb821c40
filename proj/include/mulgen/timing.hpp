#pragma once

/// Static timing analysis and area accounting over a validated circuit.
///
/// Timing is purely topological: arrival(primary input) = 0 and
/// arrival(gate output) = max(input arrivals) + delay(kind). Delays are
/// abstract units, never nanoseconds.

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mulgen/netlist.hpp"
#include "mulgen/rational.hpp"

namespace mulgen::timing {

struct DelayModel {
  std::string name;
  std::array<Rational, kGateKindCount> delay{};

  Rational of(GateKind kind) const { return delay[static_cast<std::size_t>(kind)]; }

  /// Every non-constant gate costs 1, so the critical delay is the depth.
  static DelayModel unit();
  /// Illustrative: NAND2/NOR2 0.9, AND2/OR2 1.0, XOR2/XNOR2 1.6, NOT/BUF 0.5.
  static DelayModel tech_demo();
  /// "unit" or "tech-demo"; throws Error(InvalidArgument) otherwise.
  static DelayModel by_name(const std::string& name);

  /// Every delay multiplied by k > 0.
  DelayModel scaled(Rational k) const;

  /// Throws unless constants cost 0 and every delay is non-negative.
  void check() const;
};

struct TimingReport {
  std::string model;
  Rational critical_delay;
  /// Output net with the largest arrival (lowest NetId on ties).
  NetId critical_output;
  /// Gate indices from the input side to critical_output.
  std::vector<std::size_t> critical_path;
  /// Indexed by NetId.
  std::vector<Rational> arrival;
};

struct AreaReport {
  std::array<std::size_t, kGateKindCount> counts{};
  std::size_t total_gates = 0;

  std::size_t count(GateKind kind) const { return counts[static_cast<std::size_t>(kind)]; }
};

std::vector<Rational> arrival_times(const Circuit& circuit, const DelayModel& model);

/// Witness path found by walking back through the max-arrival input of each
/// gate, lowest NetId first on ties.
TimingReport critical_path(const Circuit& circuit, const DelayModel& model);

AreaReport area_report(const Circuit& circuit);

/// Depth in gate levels (critical delay under the unit model).
std::size_t depth(const Circuit& circuit);

struct ComparisonTable {
  std::string model;
  std::vector<std::string> labels;
  /// (metric, one value per label)
  std::vector<std::pair<std::string, std::vector<std::string>>> rows;

  std::string to_markdown() const;
  std::string to_csv() const;
};

/// Needs at least two circuits. The ratio row is the first circuit's
/// critical delay divided by each column's, so > 1 means faster than the first.
ComparisonTable compare(const std::vector<std::pair<std::string, const Circuit*>>& circuits,
                        const DelayModel& model);

}  // namespace mulgen::timing
