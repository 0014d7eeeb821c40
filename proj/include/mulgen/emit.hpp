#pragma once

/// Circuit serialization.
///
/// Verilog: one module, vector ports `[n-1:0]` (bit 0 = LSB), one
/// continuous assignment per gate, nets named `n<index>`.
///
/// JSON interchange:
///   {"name", "net_count",
///    "inputs":  [{"name", "width", "signed", "bits": [net...]}],
///    "outputs": [...same...],
///    "gates":   [{"kind": "AND2", "inputs": [net...], "output": net}]}
/// All bit arrays are LSB first. Both formats use LF line endings.

#include <string>
#include <string_view>

#include "mulgen/netlist.hpp"

namespace mulgen::emit {

std::string to_verilog(const Circuit& circuit);

std::string to_json(const Circuit& circuit);

/// Parses and validates. Throws Error(Parse) for malformed documents or
/// unknown gate kinds (message carries the JSON path or byte offset) and
/// Error(InvalidCircuit) naming each violated invariant.
Circuit from_json(std::string_view text);

/// Maps an arbitrary name onto a Verilog identifier.
std::string sanitize_identifier(std::string_view name);

}  // namespace mulgen::emit
