#include "mulgen/sim.hpp"

#include <algorithm>
#include <thread>

namespace mulgen::sim {

namespace {

void check_width(std::size_t width) {
  if (width == 0 || width > kMaxIntegerPortWidth) {
    throw Error(ErrorCode::OutOfRange, "integer ports must be 1.." +
                                           std::to_string(kMaxIntegerPortWidth) +
                                           " bits wide, got " + std::to_string(width));
  }
}

constexpr std::uint64_t lane_apply(GateKind kind, std::uint64_t x, std::uint64_t y) {
  switch (kind) {
    case GateKind::Const0: return 0;
    case GateKind::Const1: return ~std::uint64_t{0};
    case GateKind::Not: return ~x;
    case GateKind::Buf: return x;
    case GateKind::And2: return x & y;
    case GateKind::Nand2: return ~(x & y);
    case GateKind::Or2: return x | y;
    case GateKind::Nor2: return ~(x | y);
    case GateKind::Xor2: return x ^ y;
    case GateKind::Xnor2: return ~(x ^ y);
  }
  return 0;
}

std::int64_t checked_value(const Port& port, const Assignment& inputs) {
  const auto it = inputs.find(port.name);
  if (it == inputs.end()) {
    throw Error(ErrorCode::MissingPort, "input port '" + port.name + "' is not assigned");
  }
  const auto v = it->second;
  check_width(port.width());
  if (v < min_value(port.width(), port.signedness) ||
      v > max_value(port.width(), port.signedness)) {
    throw Error(ErrorCode::OutOfRange, "value " + std::to_string(v) + " does not fit " +
                                           std::string(to_string(port.signedness)) + " port '" +
                                           port.name + "' of width " +
                                           std::to_string(port.width()));
  }
  return v;
}

}  // namespace

std::int64_t min_value(std::size_t width, Signedness s) {
  check_width(width);
  return s == Signedness::Signed ? -(std::int64_t{1} << (width - 1)) : 0;
}

std::int64_t max_value(std::size_t width, Signedness s) {
  check_width(width);
  return s == Signedness::Signed ? (std::int64_t{1} << (width - 1)) - 1
                                 : (std::int64_t{1} << width) - 1;
}

std::vector<bool> encode(std::int64_t value, std::size_t width, Signedness s) {
  if (value < min_value(width, s) || value > max_value(width, s)) {
    throw Error(ErrorCode::OutOfRange, std::to_string(value) + " does not fit in " +
                                           std::to_string(width) + " " +
                                           std::string(to_string(s)) + " bits");
  }
  const auto u = static_cast<std::uint64_t>(value);
  std::vector<bool> bits(width);
  for (std::size_t i = 0; i < width; ++i) bits[i] = (u >> i) & 1u;
  return bits;
}

std::int64_t decode(const std::vector<bool>& bits, Signedness s) {
  check_width(bits.size());
  std::int64_t v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) v += std::int64_t{1} << i;
  }
  if (s == Signedness::Signed && bits.back()) v -= std::int64_t{1} << bits.size();
  return v;
}

std::vector<bool> evaluate_nets(const Circuit& c, const std::vector<bool>& input_bits) {
  c.require_valid();
  std::vector<bool> nets(c.net_count(), false);
  std::size_t k = 0;
  for (const auto& port : c.inputs()) {
    for (NetId bit : port.bits) {
      if (k >= input_bits.size()) {
        throw Error(ErrorCode::MissingPort, "too few input bits for circuit '" + c.name() + "'");
      }
      nets[bit.index] = input_bits[k++];
    }
  }
  if (k != input_bits.size()) {
    throw Error(ErrorCode::InvalidArgument, "too many input bits for circuit '" + c.name() + "'");
  }
  const auto& gates = c.gates();
  for (auto g : c.topological_order()) {
    const auto& gate = gates[g];
    const bool x = gate.inputs.size() > 0 && nets[gate.inputs[0].index];
    const bool y = gate.inputs.size() > 1 && nets[gate.inputs[1].index];
    nets[gate.output.index] = apply(gate.kind, x, y);
  }
  return nets;
}

Assignment evaluate(const Circuit& c, const Assignment& inputs) {
  c.require_valid();
  std::vector<bool> bits;
  for (const auto& port : c.inputs()) {
    const auto encoded = encode(checked_value(port, inputs), port.width(), port.signedness);
    bits.insert(bits.end(), encoded.begin(), encoded.end());
  }
  for (const auto& [name, value] : inputs) {
    if (!c.find_input(name)) {
      throw Error(ErrorCode::MissingPort, "circuit '" + c.name() + "' has no input '" + name + "'");
    }
  }
  const auto nets = evaluate_nets(c, bits);
  Assignment out;
  for (const auto& port : c.outputs()) {
    std::vector<bool> word;
    word.reserve(port.width());
    for (NetId bit : port.bits) word.push_back(nets[bit.index]);
    out[port.name] = decode(word, port.signedness);
  }
  return out;
}

LaneEvaluator::LaneEvaluator(const Circuit& c) : circuit_(&c), nets_(c.net_count(), 0) {
  c.require_valid();
  const auto& gates = c.gates();
  program_.reserve(gates.size());
  for (auto g : c.topological_order()) {
    const auto& gate = gates[g];
    const std::uint32_t a = gate.inputs.size() > 0 ? gate.inputs[0].index : 0;
    const std::uint32_t b = gate.inputs.size() > 1 ? gate.inputs[1].index : a;
    program_.push_back(Op{gate.kind, a, b, gate.output.index});
  }
}

std::vector<std::vector<std::uint64_t>> LaneEvaluator::run(
    const std::vector<std::vector<std::uint64_t>>& inputs) {
  const auto& ports = circuit_->inputs();
  if (inputs.size() != ports.size()) {
    throw Error(ErrorCode::MissingPort, "lane input count does not match input ports");
  }
  for (std::size_t p = 0; p < ports.size(); ++p) {
    if (inputs[p].size() != ports[p].width()) {
      throw Error(ErrorCode::InvalidArgument, "lane width mismatch on port '" + ports[p].name + "'");
    }
    for (std::size_t i = 0; i < ports[p].width(); ++i) nets_[ports[p].bits[i].index] = inputs[p][i];
  }
  std::uint64_t* nets = nets_.data();
  for (const auto& op : program_) nets[op.out] = lane_apply(op.kind, nets[op.a], nets[op.b]);

  std::vector<std::vector<std::uint64_t>> out;
  out.reserve(circuit_->outputs().size());
  for (const auto& port : circuit_->outputs()) {
    std::vector<std::uint64_t> words;
    words.reserve(port.width());
    for (NetId bit : port.bits) words.push_back(nets[bit.index]);
    out.push_back(std::move(words));
  }
  return out;
}

std::vector<Assignment> evaluate_batch(const Circuit& c, const std::vector<Assignment>& vectors,
                                       std::size_t workers) {
  c.require_valid();
  for (const auto& port : c.outputs()) check_width(port.width());

  // Validate up front so errors name the vector index regardless of workers.
  std::vector<std::vector<std::uint64_t>> values(vectors.size());
  for (std::size_t v = 0; v < vectors.size(); ++v) {
    try {
      for (const auto& port : c.inputs()) {
        values[v].push_back(static_cast<std::uint64_t>(checked_value(port, vectors[v])));
      }
    } catch (const Error& e) {
      throw Error(e.code(), "vector " + std::to_string(v) + ": " + e.what());
    }
  }

  std::vector<Assignment> results(vectors.size());
  const std::size_t chunks = (vectors.size() + 63) / 64;
  auto run_chunks = [&](std::size_t first, std::size_t last) {
    LaneEvaluator lanes(c);
    for (std::size_t chunk = first; chunk < last; ++chunk) {
      const std::size_t base = chunk * 64;
      const std::size_t count = std::min<std::size_t>(64, vectors.size() - base);
      std::vector<std::vector<std::uint64_t>> in;
      for (std::size_t p = 0; p < c.inputs().size(); ++p) {
        std::vector<std::uint64_t> words(c.inputs()[p].width(), 0);
        for (std::size_t lane = 0; lane < count; ++lane) {
          const auto v = values[base + lane][p];
          for (std::size_t i = 0; i < words.size(); ++i) {
            words[i] |= ((v >> i) & 1u) << lane;
          }
        }
        in.push_back(std::move(words));
      }
      const auto out = lanes.run(in);
      for (std::size_t lane = 0; lane < count; ++lane) {
        Assignment& r = results[base + lane];
        for (std::size_t p = 0; p < c.outputs().size(); ++p) {
          const auto& port = c.outputs()[p];
          std::vector<bool> word(port.width());
          for (std::size_t i = 0; i < word.size(); ++i) word[i] = (out[p][i] >> lane) & 1u;
          r[port.name] = decode(word, port.signedness);
        }
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(chunks, 1));
  if (workers <= 1) {
    run_chunks(0, chunks);
    return results;
  }
  {
    std::vector<std::jthread> pool;
    const std::size_t per = (chunks + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t first = w * per;
      const std::size_t last = std::min(chunks, first + per);
      if (first < last) pool.emplace_back(run_chunks, first, last);
    }
  }
  return results;
}

}  // namespace mulgen::sim
