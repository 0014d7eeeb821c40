#pragma once

/// Gate-level netlist IR.
///
/// A Circuit is an immutable DAG of single-output gates over dense,
/// single-bit nets. Every net has exactly one source: either a gate output
/// or a bit of exactly one input port. Bit 0 of every port is the LSB.
///
/// Circuits are produced by CircuitBuilder::finalize() or
/// Circuit::assemble(); both validate. Circuit::assemble_unchecked() exists
/// so that malformed circuits can be fed to validate().

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mulgen/error.hpp"

namespace mulgen {

struct NetId {
  std::uint32_t index = 0;

  friend constexpr bool operator==(NetId, NetId) = default;
  friend constexpr auto operator<=>(NetId, NetId) = default;
};

enum class GateKind : std::uint8_t {
  Const0,
  Const1,
  Not,
  Buf,
  And2,
  Nand2,
  Or2,
  Nor2,
  Xor2,
  Xnor2,
};

inline constexpr std::size_t kGateKindCount = 10;

inline constexpr GateKind kAllGateKinds[kGateKindCount] = {
    GateKind::Const0, GateKind::Const1, GateKind::Not,  GateKind::Buf,
    GateKind::And2,   GateKind::Nand2,  GateKind::Or2,  GateKind::Nor2,
    GateKind::Xor2,   GateKind::Xnor2,
};

constexpr std::size_t arity(GateKind kind) {
  switch (kind) {
    case GateKind::Const0:
    case GateKind::Const1:
      return 0;
    case GateKind::Not:
    case GateKind::Buf:
      return 1;
    default:
      return 2;
  }
}

/// Canonical upper-case name ("AND2", "CONST0", ...), used by the JSON format.
std::string_view to_string(GateKind kind);
std::optional<GateKind> gate_kind_from_string(std::string_view name);

/// Boolean function of a gate. Unused inputs are ignored.
constexpr bool apply(GateKind kind, bool x, bool y) {
  switch (kind) {
    case GateKind::Const0: return false;
    case GateKind::Const1: return true;
    case GateKind::Not: return !x;
    case GateKind::Buf: return x;
    case GateKind::And2: return x && y;
    case GateKind::Nand2: return !(x && y);
    case GateKind::Or2: return x || y;
    case GateKind::Nor2: return !(x || y);
    case GateKind::Xor2: return x != y;
    case GateKind::Xnor2: return x == y;
  }
  return false;
}

enum class Signedness : std::uint8_t { Unsigned, Signed };

std::string_view to_string(Signedness s);

struct Gate {
  GateKind kind = GateKind::Const0;
  std::vector<NetId> inputs;
  NetId output;

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct Port {
  std::string name;
  std::vector<NetId> bits;  // LSB first
  Signedness signedness = Signedness::Unsigned;

  std::size_t width() const { return bits.size(); }

  friend bool operator==(const Port&, const Port&) = default;
};

enum class ViolationKind : std::uint8_t {
  MultipleDrivers,
  UndrivenNet,
  Cycle,
  ArityMismatch,
  NetOutOfRange,
  BadPort,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
  std::optional<NetId> net;
  std::optional<std::size_t> gate;
};

class Circuit {
 public:
  /// Builds a circuit from raw parts and validates it. Throws
  /// Error(InvalidCircuit) listing every violation. Gates need not be in
  /// topological order; a stable order is computed and cached.
  static Circuit assemble(std::string name, std::vector<Port> inputs,
                          std::vector<Port> outputs, std::vector<Gate> gates,
                          std::size_t net_count);

  /// Same as assemble() without validation. The result is only usable with
  /// validate(); analyses reject it.
  static Circuit assemble_unchecked(std::string name, std::vector<Port> inputs,
                                    std::vector<Port> outputs,
                                    std::vector<Gate> gates,
                                    std::size_t net_count);

  const std::string& name() const { return name_; }
  const std::vector<Port>& inputs() const { return inputs_; }
  const std::vector<Port>& outputs() const { return outputs_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t net_count() const { return net_count_; }

  const Port* find_input(std::string_view name) const;
  const Port* find_output(std::string_view name) const;

  bool is_validated() const { return validated_; }

  /// Gate indices in evaluation order. Identity for builder-made circuits.
  /// Throws Error(InvalidCircuit) on an unvalidated circuit.
  std::span<const std::uint32_t> topological_order() const;

  /// Throws Error(InvalidCircuit) unless the circuit passed validation.
  void require_valid() const;

  /// Structural identity: same name, ports, gates (in order) and net count.
  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.name_ == b.name_ && a.inputs_ == b.inputs_ &&
           a.outputs_ == b.outputs_ && a.gates_ == b.gates_ &&
           a.net_count_ == b.net_count_;
  }

 private:
  Circuit() = default;

  std::string name_;
  std::vector<Port> inputs_;
  std::vector<Port> outputs_;
  std::vector<Gate> gates_;
  std::size_t net_count_ = 0;
  std::vector<std::uint32_t> topo_;
  bool validated_ = false;
};

/// Empty result iff every structural invariant holds.
std::vector<Violation> validate(const Circuit& circuit);

/// Append-only circuit construction. Gates may only reference nets that
/// already exist, so the gate list is topologically ordered by construction.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(std::string name);

  std::vector<NetId> add_input(std::string name, std::size_t width,
                               Signedness signedness);
  void add_output(std::string name, std::vector<NetId> bits,
                  Signedness signedness);

  NetId add_gate(GateKind kind, std::span<const NetId> inputs);
  NetId add_gate(GateKind kind, std::initializer_list<NetId> inputs) {
    return add_gate(kind, std::span<const NetId>(inputs.begin(), inputs.size()));
  }

  /// Shared constant nets, created on first use.
  NetId const0();
  NetId const1();
  NetId constant(bool value) { return value ? const1() : const0(); }

  std::size_t net_count() const { return net_count_; }
  std::size_t gate_count() const { return gates_.size(); }
  const std::string& name() const { return name_; }

  /// Validates and produces the immutable circuit. The builder is left empty.
  Circuit finalize();

 private:
  void check_net(NetId net) const;

  std::string name_;
  std::vector<Port> inputs_;
  std::vector<Port> outputs_;
  std::vector<Gate> gates_;
  std::size_t net_count_ = 0;
  std::optional<NetId> const0_;
  std::optional<NetId> const1_;
};

}  // namespace mulgen
