#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "mulgen/multipliers.hpp"
#include "mulgen/netlist.hpp"

namespace mulgen::testkit {

inline bool is_primary_input(const Circuit& c, NetId n) {
  for (const auto& p : c.inputs()) {
    if (std::find(p.bits.begin(), p.bits.end(), n) != p.bits.end()) return true;
  }
  return false;
}

/// Gates whose two operands are both primary input bits: the partial-product
/// layer of an array multiplier.
inline std::vector<std::size_t> partial_product_gates(const Circuit& c) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    const auto& g = c.gates()[i];
    if (g.inputs.size() == 2 && is_primary_input(c, g.inputs[0]) &&
        is_primary_input(c, g.inputs[1])) {
      out.push_back(i);
    }
  }
  return out;
}

inline Circuit with_gate_kind(const Circuit& c, std::size_t gate, GateKind kind) {
  auto gates = c.gates();
  gates[gate].kind = kind;
  return Circuit::assemble(c.name() + "_mut", c.inputs(), c.outputs(), std::move(gates),
                           c.net_count());
}

/// AND2 <-> NAND2 on one gate.
inline Circuit flip_and_nand(const Circuit& c, std::size_t gate) {
  const GateKind k = c.gates()[gate].kind;
  return with_gate_kind(c, gate, k == GateKind::And2 ? GateKind::Nand2 : GateKind::And2);
}

inline MultiplierSpec spec_of(Architecture arch, std::size_t n, Signedness sa = Signedness::Signed,
                              Signedness sb = Signedness::Signed) {
  MultiplierSpec s;
  s.architecture = arch;
  s.width_a = s.width_b = n;
  s.sign_a = sa;
  s.sign_b = sb;
  return s;
}

inline MultiplierSpec decomposed_spec(std::size_t n, std::size_t leaf,
                                      Combiner comb = Combiner::CsaTree,
                                      SplitStyle split = SplitStyle::Halving) {
  MultiplierSpec s = spec_of(Architecture::Decomposed, n);
  s.leaf_width = leaf;
  s.combiner = comb;
  s.split = split;
  return s;
}

}  // namespace mulgen::testkit
