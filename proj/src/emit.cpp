#include "mulgen/emit.hpp"

#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace mulgen::emit {

namespace {

using json = nlohmann::ordered_json;

const std::unordered_set<std::string_view>& verilog_keywords() {
  static const std::unordered_set<std::string_view> kw = {
      "always", "and",    "assign",  "begin",   "buf",     "case",   "default", "else",
      "end",    "endcase", "endmodule", "for",  "function", "if",    "initial", "inout",
      "input",  "integer", "module",  "nand",    "nor",     "not",    "or",      "output",
      "parameter", "reg",  "signed",  "supply0", "supply1", "wire",   "xnor",    "xor",
      "logic",  "unsigned", "localparam", "generate", "endgenerate", "posedge", "negedge",
  };
  return kw;
}

bool looks_like_net_name(const std::string& s) {
  return s.size() > 1 && s[0] == 'n' &&
         s.find_first_not_of("0123456789", 1) == std::string::npos;
}

std::string gate_expr(const Gate& g) {
  auto in = [&](std::size_t i) { return "n" + std::to_string(g.inputs[i].index); };
  switch (g.kind) {
    case GateKind::Const0: return "1'b0";
    case GateKind::Const1: return "1'b1";
    case GateKind::Not: return "~" + in(0);
    case GateKind::Buf: return in(0);
    case GateKind::And2: return in(0) + " & " + in(1);
    case GateKind::Nand2: return "~(" + in(0) + " & " + in(1) + ")";
    case GateKind::Or2: return in(0) + " | " + in(1);
    case GateKind::Nor2: return "~(" + in(0) + " | " + in(1) + ")";
    case GateKind::Xor2: return in(0) + " ^ " + in(1);
    case GateKind::Xnor2: return "~(" + in(0) + " ^ " + in(1) + ")";
  }
  return "1'bx";
}

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::Parse, path + ": " + what);
}

const json& member(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) parse_fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) parse_fail(path, std::string("missing field '") + key + "'");
  return *it;
}

std::uint64_t as_index(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    parse_fail(path, "expected a non-negative integer");
  }
  const auto x = v.get<std::uint64_t>();
  if (x > UINT32_MAX) parse_fail(path, "net index too large");
  return x;
}

std::vector<NetId> as_nets(const json& v, const std::string& path) {
  if (!v.is_array()) parse_fail(path, "expected an array of net indices");
  std::vector<NetId> nets;
  for (std::size_t i = 0; i < v.size(); ++i) {
    nets.push_back(NetId{static_cast<std::uint32_t>(as_index(v[i], path + "[" + std::to_string(i) + "]"))});
  }
  return nets;
}

std::vector<Port> as_ports(const json& v, const std::string& path) {
  if (!v.is_array()) parse_fail(path, "expected an array of ports");
  std::vector<Port> ports;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto p = path + "[" + std::to_string(i) + "]";
    Port port;
    const auto& name = member(v[i], p, "name");
    if (!name.is_string()) parse_fail(p + ".name", "expected a string");
    port.name = name.get<std::string>();
    const auto& sign = member(v[i], p, "signed");
    if (!sign.is_boolean()) parse_fail(p + ".signed", "expected a boolean");
    port.signedness = sign.get<bool>() ? Signedness::Signed : Signedness::Unsigned;
    port.bits = as_nets(member(v[i], p, "bits"), p + ".bits");
    if (as_index(member(v[i], p, "width"), p + ".width") != port.bits.size()) {
      parse_fail(p + ".width", "does not match the number of bits");
    }
    ports.push_back(std::move(port));
  }
  return ports;
}

json ports_to_json(const std::vector<Port>& ports) {
  json out = json::array();
  for (const auto& p : ports) {
    json bits = json::array();
    for (NetId b : p.bits) bits.push_back(b.index);
    out.push_back({{"name", p.name},
                   {"width", p.width()},
                   {"signed", p.signedness == Signedness::Signed},
                   {"bits", std::move(bits)}});
  }
  return out;
}

}  // namespace

std::string sanitize_identifier(std::string_view name) {
  std::string out;
  for (char ch : name) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                    (ch >= '0' && ch <= '9') || ch == '_';
    out += ok ? ch : '_';
  }
  if (out.empty() || (out[0] >= '0' && out[0] <= '9')) out.insert(out.begin(), '_');
  if (verilog_keywords().contains(out)) out += '_';
  return out;
}

std::string to_verilog(const Circuit& c) {
  c.require_valid();

  // Port identifiers must not collide with each other or with net names.
  std::set<std::string> taken;
  auto port_id = [&](const std::string& name) {
    std::string id = sanitize_identifier(name);
    if (looks_like_net_name(id)) id += "_p";
    std::string unique = id;
    for (int k = 2; taken.contains(unique); ++k) unique = id + "_" + std::to_string(k);
    taken.insert(unique);
    return unique;
  };
  std::vector<std::string> in_ids, out_ids;
  for (const auto& p : c.inputs()) in_ids.push_back(port_id(p.name));
  for (const auto& p : c.outputs()) out_ids.push_back(port_id(p.name));

  std::ostringstream os;
  os << "module " << sanitize_identifier(c.name()) << " (\n";
  std::vector<std::string> decls;
  for (std::size_t i = 0; i < c.inputs().size(); ++i) {
    decls.push_back("  input  wire " + std::string(c.inputs()[i].signedness == Signedness::Signed ? "signed " : "") +
                    "[" + std::to_string(c.inputs()[i].width() - 1) + ":0] " + in_ids[i]);
  }
  for (std::size_t i = 0; i < c.outputs().size(); ++i) {
    decls.push_back("  output wire " + std::string(c.outputs()[i].signedness == Signedness::Signed ? "signed " : "") +
                    "[" + std::to_string(c.outputs()[i].width() - 1) + ":0] " + out_ids[i]);
  }
  for (std::size_t i = 0; i < decls.size(); ++i) {
    os << decls[i] << (i + 1 < decls.size() ? ",\n" : "\n");
  }
  os << ");\n";

  for (std::size_t i = 0; i < c.inputs().size(); ++i) {
    const auto& p = c.inputs()[i];
    for (std::size_t b = 0; b < p.width(); ++b) {
      os << "  wire n" << p.bits[b].index << " = " << in_ids[i] << "[" << b << "];\n";
    }
  }
  const auto& gates = c.gates();
  for (auto g : c.topological_order()) {
    os << "  wire n" << gates[g].output.index << " = " << gate_expr(gates[g]) << ";\n";
  }
  for (std::size_t i = 0; i < c.outputs().size(); ++i) {
    const auto& p = c.outputs()[i];
    for (std::size_t b = 0; b < p.width(); ++b) {
      os << "  assign " << out_ids[i] << "[" << b << "] = n" << p.bits[b].index << ";\n";
    }
  }
  os << "endmodule\n";
  return os.str();
}

std::string to_json(const Circuit& c) {
  c.require_valid();
  json j;
  j["name"] = c.name();
  j["net_count"] = c.net_count();
  j["inputs"] = ports_to_json(c.inputs());
  j["outputs"] = ports_to_json(c.outputs());
  json gates = json::array();
  for (const auto& g : c.gates()) {
    json ins = json::array();
    for (NetId n : g.inputs) ins.push_back(n.index);
    gates.push_back({{"kind", std::string(to_string(g.kind))},
                     {"inputs", std::move(ins)},
                     {"output", g.output.index}});
  }
  j["gates"] = std::move(gates);
  return j.dump(1) + "\n";
}

Circuit from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  const std::string root = "$";
  const auto& name = member(j, root, "name");
  if (!name.is_string()) parse_fail("$.name", "expected a string");
  const auto net_count = as_index(member(j, root, "net_count"), "$.net_count");
  auto inputs = as_ports(member(j, root, "inputs"), "$.inputs");
  auto outputs = as_ports(member(j, root, "outputs"), "$.outputs");

  const auto& gj = member(j, root, "gates");
  if (!gj.is_array()) parse_fail("$.gates", "expected an array");
  std::vector<Gate> gates;
  gates.reserve(gj.size());
  for (std::size_t i = 0; i < gj.size(); ++i) {
    const auto p = "$.gates[" + std::to_string(i) + "]";
    const auto& kind = member(gj[i], p, "kind");
    if (!kind.is_string()) parse_fail(p + ".kind", "expected a string");
    const auto k = gate_kind_from_string(kind.get<std::string>());
    if (!k) parse_fail(p + ".kind", "unknown gate kind '" + kind.get<std::string>() + "'");
    Gate g;
    g.kind = *k;
    g.inputs = as_nets(member(gj[i], p, "inputs"), p + ".inputs");
    g.output = NetId{static_cast<std::uint32_t>(as_index(member(gj[i], p, "output"), p + ".output"))};
    gates.push_back(std::move(g));
  }
  std::size_t sources = gates.size();
  for (const auto& port : inputs) sources += port.bits.size();
  if (net_count > sources) {
    throw Error(ErrorCode::InvalidCircuit,
                "UndrivenNet: net_count " + std::to_string(net_count) + " exceeds the " +
                    std::to_string(sources) + " available drivers");
  }
  return Circuit::assemble(name.get<std::string>(), std::move(inputs), std::move(outputs),
                           std::move(gates), net_count);
}

}  // namespace mulgen::emit
