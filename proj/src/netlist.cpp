#include "mulgen/netlist.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>
#include <unordered_set>

namespace mulgen {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyName: return "EmptyName";
    case ErrorCode::DuplicatePort: return "DuplicatePort";
    case ErrorCode::ZeroWidth: return "ZeroWidth";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnknownNet: return "UnknownNet";
    case ErrorCode::InvalidCircuit: return "InvalidCircuit";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::MissingPort: return "MissingPort";
    case ErrorCode::SpecViolation: return "SpecViolation";
    case ErrorCode::WidthCap: return "WidthCap";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

constexpr std::string_view kGateNames[kGateKindCount] = {
    "CONST0", "CONST1", "NOT", "BUF", "AND2", "NAND2", "OR2", "NOR2", "XOR2", "XNOR2",
};

constexpr std::uint32_t kNoDriver = UINT32_MAX;
constexpr std::uint32_t kPortDriver = UINT32_MAX - 1;

std::string describe(const std::vector<Violation>& violations) {
  std::ostringstream os;
  os << "circuit has " << violations.size() << " violation(s)";
  for (const auto& v : violations) {
    os << "; " << to_string(v.kind) << ": " << v.detail;
  }
  return os.str();
}

/// Stable Kahn ordering; lowest gate index first among ready gates.
/// Returns fewer than gates.size() entries when a cycle exists.
std::vector<std::uint32_t> stable_topo_order(const std::vector<Gate>& gates,
                                             std::size_t net_count) {
  std::vector<std::uint32_t> driver(net_count, kNoDriver);
  for (std::uint32_t g = 0; g < gates.size(); ++g) {
    const auto out = gates[g].output.index;
    if (out < net_count && driver[out] == kNoDriver) driver[out] = g;
  }

  bool already_sorted = true;
  for (std::uint32_t g = 0; g < gates.size() && already_sorted; ++g) {
    for (NetId in : gates[g].inputs) {
      if (in.index < net_count && driver[in.index] != kNoDriver &&
          driver[in.index] >= g) {
        already_sorted = false;
        break;
      }
    }
  }
  std::vector<std::uint32_t> order;
  order.reserve(gates.size());
  if (already_sorted) {
    for (std::uint32_t g = 0; g < gates.size(); ++g) order.push_back(g);
    return order;
  }

  std::vector<std::uint32_t> pending(gates.size(), 0);
  std::vector<std::vector<std::uint32_t>> fanout(gates.size());
  for (std::uint32_t g = 0; g < gates.size(); ++g) {
    for (NetId in : gates[g].inputs) {
      if (in.index >= net_count) continue;
      const auto d = driver[in.index];
      if (d == kNoDriver) continue;
      fanout[d].push_back(g);
      ++pending[g];
    }
  }
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
  for (std::uint32_t g = 0; g < gates.size(); ++g) {
    if (pending[g] == 0) ready.push(g);
  }
  while (!ready.empty()) {
    const auto g = ready.top();
    ready.pop();
    order.push_back(g);
    for (auto succ : fanout[g]) {
      if (--pending[succ] == 0) ready.push(succ);
    }
  }
  return order;
}

}  // namespace

std::string_view to_string(GateKind kind) {
  return kGateNames[static_cast<std::size_t>(kind)];
}

std::optional<GateKind> gate_kind_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kGateKindCount; ++i) {
    if (kGateNames[i] == name) return kAllGateKinds[i];
  }
  return std::nullopt;
}

std::string_view to_string(Signedness s) {
  return s == Signedness::Signed ? "signed" : "unsigned";
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::MultipleDrivers: return "MultipleDrivers";
    case ViolationKind::UndrivenNet: return "UndrivenNet";
    case ViolationKind::Cycle: return "Cycle";
    case ViolationKind::ArityMismatch: return "ArityMismatch";
    case ViolationKind::NetOutOfRange: return "NetOutOfRange";
    case ViolationKind::BadPort: return "BadPort";
  }
  return "Unknown";
}

std::vector<Violation> validate(const Circuit& c) {
  std::vector<Violation> out;
  const auto n = c.net_count();
  auto in_range = [&](NetId net) { return net.index < n; };

  auto check_ports = [&](const std::vector<Port>& ports, const char* what) {
    std::unordered_set<std::string> names;
    if (ports.empty()) {
      out.push_back({ViolationKind::BadPort,
                     std::string("circuit must have at least one ") + what + " port",
                     std::nullopt, std::nullopt});
    }
    for (const auto& p : ports) {
      if (p.name.empty()) {
        out.push_back({ViolationKind::BadPort, std::string(what) + " port with empty name",
                       std::nullopt, std::nullopt});
      } else if (!names.insert(p.name).second) {
        out.push_back({ViolationKind::BadPort,
                       std::string("duplicate ") + what + " port '" + p.name + "'",
                       std::nullopt, std::nullopt});
      }
      if (p.bits.empty()) {
        out.push_back({ViolationKind::BadPort,
                       std::string(what) + " port '" + p.name + "' has no bits",
                       std::nullopt, std::nullopt});
      }
      for (NetId b : p.bits) {
        if (!in_range(b)) {
          out.push_back({ViolationKind::NetOutOfRange,
                         "port '" + p.name + "' references net " +
                             std::to_string(b.index) + " >= net_count",
                         b, std::nullopt});
        }
      }
    }
  };
  check_ports(c.inputs(), "input");
  check_ports(c.outputs(), "output");

  std::vector<std::uint32_t> driver(n, kNoDriver);
  auto claim = [&](NetId net, std::uint32_t source, std::optional<std::size_t> gate) {
    if (!in_range(net)) return;
    if (driver[net.index] != kNoDriver) {
      out.push_back({ViolationKind::MultipleDrivers,
                     "net " + std::to_string(net.index) + " has more than one driver", net,
                     gate});
      return;
    }
    driver[net.index] = source;
  };
  for (const auto& p : c.inputs()) {
    for (NetId b : p.bits) claim(b, kPortDriver, std::nullopt);
  }
  const auto& gates = c.gates();
  for (std::uint32_t g = 0; g < gates.size(); ++g) {
    const auto& gate = gates[g];
    if (gate.inputs.size() != arity(gate.kind)) {
      out.push_back({ViolationKind::ArityMismatch,
                     "gate " + std::to_string(g) + " (" + std::string(to_string(gate.kind)) +
                         ") has " + std::to_string(gate.inputs.size()) + " inputs, expected " +
                         std::to_string(arity(gate.kind)),
                     std::nullopt, g});
    }
    if (!in_range(gate.output)) {
      out.push_back({ViolationKind::NetOutOfRange,
                     "gate " + std::to_string(g) + " drives net " +
                         std::to_string(gate.output.index) + " >= net_count",
                     gate.output, g});
    }
    claim(gate.output, g, g);
  }

  for (std::uint32_t g = 0; g < gates.size(); ++g) {
    for (NetId in : gates[g].inputs) {
      if (!in_range(in)) {
        out.push_back({ViolationKind::NetOutOfRange,
                       "gate " + std::to_string(g) + " reads net " + std::to_string(in.index) +
                           " >= net_count",
                       in, g});
      }
    }
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    if (driver[i] == kNoDriver) {
      out.push_back({ViolationKind::UndrivenNet,
                     "net " + std::to_string(i) + " has no driver", NetId{i}, std::nullopt});
    }
  }

  const auto order = stable_topo_order(gates, n);
  if (order.size() != gates.size()) {
    std::vector<bool> done(gates.size(), false);
    for (auto g : order) done[g] = true;
    const auto first =
        static_cast<std::size_t>(std::find(done.begin(), done.end(), false) - done.begin());
    out.push_back({ViolationKind::Cycle,
                   std::to_string(gates.size() - order.size()) +
                       " gate(s) lie on or behind a combinational cycle, first is gate " +
                       std::to_string(first),
                   gates[first].output, first});
  }
  return out;
}

Circuit Circuit::assemble_unchecked(std::string name, std::vector<Port> inputs,
                                    std::vector<Port> outputs, std::vector<Gate> gates,
                                    std::size_t net_count) {
  Circuit c;
  c.name_ = std::move(name);
  c.inputs_ = std::move(inputs);
  c.outputs_ = std::move(outputs);
  c.gates_ = std::move(gates);
  c.net_count_ = net_count;
  return c;
}

Circuit Circuit::assemble(std::string name, std::vector<Port> inputs, std::vector<Port> outputs,
                          std::vector<Gate> gates, std::size_t net_count) {
  Circuit c = assemble_unchecked(std::move(name), std::move(inputs), std::move(outputs),
                                 std::move(gates), net_count);
  if (c.name_.empty()) throw Error(ErrorCode::EmptyName, "circuit name must not be empty");
  auto violations = validate(c);
  if (!violations.empty()) throw Error(ErrorCode::InvalidCircuit, describe(violations));
  c.topo_ = stable_topo_order(c.gates_, c.net_count_);
  c.validated_ = true;
  return c;
}

const Port* Circuit::find_input(std::string_view name) const {
  for (const auto& p : inputs_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

const Port* Circuit::find_output(std::string_view name) const {
  for (const auto& p : outputs_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

void Circuit::require_valid() const {
  if (!validated_) {
    throw Error(ErrorCode::InvalidCircuit,
                "circuit '" + name_ + "' was not validated; analyses need a valid circuit");
  }
}

std::span<const std::uint32_t> Circuit::topological_order() const {
  require_valid();
  return topo_;
}

CircuitBuilder::CircuitBuilder(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw Error(ErrorCode::EmptyName, "circuit name must not be empty");
}

std::vector<NetId> CircuitBuilder::add_input(std::string name, std::size_t width,
                                             Signedness signedness) {
  if (name.empty()) throw Error(ErrorCode::EmptyName, "input port name must not be empty");
  if (width == 0) throw Error(ErrorCode::ZeroWidth, "input port '" + name + "' has width 0");
  for (const auto& p : inputs_) {
    if (p.name == name) throw Error(ErrorCode::DuplicatePort, "duplicate input port '" + name + "'");
  }
  Port port{std::move(name), {}, signedness};
  port.bits.reserve(width);
  for (std::size_t i = 0; i < width; ++i) {
    port.bits.push_back(NetId{static_cast<std::uint32_t>(net_count_++)});
  }
  inputs_.push_back(port);
  return port.bits;
}

void CircuitBuilder::add_output(std::string name, std::vector<NetId> bits, Signedness signedness) {
  if (name.empty()) throw Error(ErrorCode::EmptyName, "output port name must not be empty");
  if (bits.empty()) throw Error(ErrorCode::ZeroWidth, "output port '" + name + "' has width 0");
  for (const auto& p : outputs_) {
    if (p.name == name) {
      throw Error(ErrorCode::DuplicatePort, "duplicate output port '" + name + "'");
    }
  }
  for (NetId b : bits) check_net(b);
  outputs_.push_back(Port{std::move(name), std::move(bits), signedness});
}

void CircuitBuilder::check_net(NetId net) const {
  if (net.index >= net_count_) {
    throw Error(ErrorCode::UnknownNet, "net " + std::to_string(net.index) + " is not allocated");
  }
}

NetId CircuitBuilder::add_gate(GateKind kind, std::span<const NetId> inputs) {
  if (inputs.size() != arity(kind)) {
    throw Error(ErrorCode::ArityMismatch, std::string(to_string(kind)) + " takes " +
                                              std::to_string(arity(kind)) + " input(s), got " +
                                              std::to_string(inputs.size()));
  }
  for (NetId in : inputs) check_net(in);
  const NetId out{static_cast<std::uint32_t>(net_count_++)};
  gates_.push_back(Gate{kind, std::vector<NetId>(inputs.begin(), inputs.end()), out});
  return out;
}

NetId CircuitBuilder::const0() {
  if (!const0_) const0_ = add_gate(GateKind::Const0, {});
  return *const0_;
}

NetId CircuitBuilder::const1() {
  if (!const1_) const1_ = add_gate(GateKind::Const1, {});
  return *const1_;
}

Circuit CircuitBuilder::finalize() {
  if (inputs_.empty() || outputs_.empty()) {
    throw Error(ErrorCode::InvalidCircuit,
                "circuit must have at least one input and at least one output");
  }
  Circuit c = Circuit::assemble(std::move(name_), std::move(inputs_), std::move(outputs_),
                                std::move(gates_), net_count_);
  inputs_.clear();
  outputs_.clear();
  gates_.clear();
  net_count_ = 0;
  const0_.reset();
  const1_.reset();
  return c;
}

}  // namespace mulgen
