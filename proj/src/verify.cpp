#include "mulgen/verify.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "mulgen/sim.hpp"

namespace mulgen::verify {

namespace {

// Operand ranges computed here rather than borrowed from sim, so the oracle
// shares no code with the path under test.
std::int64_t lo(std::size_t width, Signedness s) {
  return s == Signedness::Signed ? -(std::int64_t{1} << (width - 1)) : 0;
}
std::int64_t hi(std::size_t width, Signedness s) {
  return s == Signedness::Signed ? (std::int64_t{1} << (width - 1)) - 1
                                 : (std::int64_t{1} << width) - 1;
}

struct Ports {
  std::size_t a_index;
  std::size_t b_index;
  std::size_t p_index;
};

Ports check_ports(const Circuit& c, const MultiplierSpec& spec) {
  c.require_valid();
  const std::size_t n = spec.width_a;
  if (n == 0 || n > kMaxWidth || spec.width_b != n) {
    throw Error(ErrorCode::SpecViolation, "verification needs equal operand widths in 1.." +
                                              std::to_string(kMaxWidth));
  }
  Ports ports{SIZE_MAX, SIZE_MAX, SIZE_MAX};
  const auto& in = c.inputs();
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i].name == "A") ports.a_index = i;
    else if (in[i].name == "B") ports.b_index = i;
    else throw Error(ErrorCode::MissingPort, "unexpected input port '" + in[i].name + "'");
  }
  for (std::size_t i = 0; i < c.outputs().size(); ++i) {
    if (c.outputs()[i].name == "P") ports.p_index = i;
  }
  if (ports.a_index == SIZE_MAX || ports.b_index == SIZE_MAX || ports.p_index == SIZE_MAX) {
    throw Error(ErrorCode::MissingPort, "circuit '" + c.name() + "' must have inputs A, B and output P");
  }
  if (in[ports.a_index].width() != n || in[ports.b_index].width() != n ||
      c.outputs()[ports.p_index].width() != 2 * n) {
    throw Error(ErrorCode::SpecViolation, "circuit '" + c.name() + "' port widths do not match a " +
                                              std::to_string(n) + "x" + std::to_string(n) +
                                              " multiplier");
  }
  return ports;
}

using PairAt = std::function<std::pair<std::int64_t, std::int64_t>(std::size_t)>;

std::vector<Failure> sweep(const Circuit& c, const MultiplierSpec& spec, const Ports& ports,
                           std::size_t total, const PairAt& pair_at, std::size_t workers) {
  const std::size_t n = spec.width_a;
  const Signedness ps = product_signedness(spec.sign_a, spec.sign_b);
  const std::size_t chunks = (total + 63) / 64;

  auto run = [&](std::size_t first, std::size_t last, std::vector<Failure>& found) {
    sim::LaneEvaluator lanes(c);
    std::vector<std::vector<std::uint64_t>> in(c.inputs().size(),
                                               std::vector<std::uint64_t>(n, 0));
    std::int64_t as[64], bs[64];
    for (std::size_t chunk = first; chunk < last; ++chunk) {
      const std::size_t base = chunk * 64;
      const std::size_t count = std::min<std::size_t>(64, total - base);
      for (auto& w : in[ports.a_index]) w = 0;
      for (auto& w : in[ports.b_index]) w = 0;
      for (std::size_t lane = 0; lane < count; ++lane) {
        const auto [a, b] = pair_at(base + lane);
        as[lane] = a;
        bs[lane] = b;
        const auto ua = static_cast<std::uint64_t>(a), ub = static_cast<std::uint64_t>(b);
        for (std::size_t i = 0; i < n; ++i) {
          in[ports.a_index][i] |= ((ua >> i) & 1u) << lane;
          in[ports.b_index][i] |= ((ub >> i) & 1u) << lane;
        }
      }
      const auto out = lanes.run(in);
      const auto& p = out[ports.p_index];
      for (std::size_t lane = 0; lane < count; ++lane) {
        std::vector<bool> word(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) word[i] = (p[i] >> lane) & 1u;
        const auto actual = sim::decode(word, ps);
        const auto expected = oracle_product(as[lane], bs[lane], spec);
        if (actual != expected) found.push_back({as[lane], bs[lane], expected, actual});
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(chunks, 1));
  std::vector<std::vector<Failure>> found(workers);
  if (workers == 1) {
    run(0, chunks, found[0]);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t per = (chunks + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t first = std::min(chunks, w * per);
      const std::size_t last = std::min(chunks, first + per);
      pool.emplace_back(run, first, last, std::ref(found[w]));
    }
  }
  std::vector<Failure> merged;
  for (auto& f : found) merged.insert(merged.end(), f.begin(), f.end());
  std::sort(merged.begin(), merged.end(), [](const Failure& x, const Failure& y) {
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });
  return merged;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::int64_t oracle_product(std::int64_t a, std::int64_t b, const MultiplierSpec& spec) {
  if (spec.width_a == 0 || spec.width_a > kMaxWidth || spec.width_b == 0 ||
      spec.width_b > kMaxWidth) {
    throw Error(ErrorCode::OutOfRange, "operand widths must be 1.." + std::to_string(kMaxWidth));
  }
  if (a < lo(spec.width_a, spec.sign_a) || a > hi(spec.width_a, spec.sign_a)) {
    throw Error(ErrorCode::OutOfRange, "operand A = " + std::to_string(a) + " out of range");
  }
  if (b < lo(spec.width_b, spec.sign_b) || b > hi(spec.width_b, spec.sign_b)) {
    throw Error(ErrorCode::OutOfRange, "operand B = " + std::to_string(b) + " out of range");
  }
  return a * b;
}

std::vector<std::int64_t> boundary_values(std::size_t width, Signedness s) {
  std::vector<std::int64_t> v{0, 1, hi(width, s), lo(width, s)};
  if (s == Signedness::Signed) v.push_back(-1);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

VerifyReport verify_exhaustive(const Circuit& c, const MultiplierSpec& spec, std::size_t cap,
                               std::size_t workers) {
  if (spec.width_a > cap) {
    throw Error(ErrorCode::WidthCap, "exhaustive verification is capped at width " +
                                         std::to_string(cap) + "; use random verification for width " +
                                         std::to_string(spec.width_a));
  }
  const auto ports = check_ports(c, spec);
  const std::size_t n = spec.width_a;
  const auto a0 = lo(n, spec.sign_a);
  const auto b0 = lo(n, spec.sign_b);
  const std::size_t span = std::size_t{1} << n;

  VerifyReport r;
  r.circuit = c.name();
  r.mode = Mode::Exhaustive;
  r.total_vectors = span * span;
  r.failures = sweep(c, spec, ports, r.total_vectors,
                     [&](std::size_t i) {
                       return std::pair(a0 + static_cast<std::int64_t>(i / span),
                                        b0 + static_cast<std::int64_t>(i % span));
                     },
                     workers);
  return r;
}

VerifyReport verify_random(const Circuit& c, const MultiplierSpec& spec, std::size_t count,
                           std::uint64_t seed, std::size_t workers) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "random verification needs count >= 1");
  const auto ports = check_ports(c, spec);
  const std::size_t n = spec.width_a;
  const auto ba = boundary_values(n, spec.sign_a);
  const auto bb = boundary_values(n, spec.sign_b);
  const std::size_t boundary = ba.size() * bb.size();
  const auto a0 = lo(n, spec.sign_a);
  const auto b0 = lo(n, spec.sign_b);
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;

  VerifyReport r;
  r.circuit = c.name();
  r.mode = Mode::Random;
  r.seed = seed;
  r.requested_count = count;
  r.boundary_vectors = boundary;
  r.total_vectors = boundary + count;
  r.failures = sweep(c, spec, ports, r.total_vectors,
                     [&](std::size_t i) {
                       if (i < boundary) return std::pair(ba[i / bb.size()], bb[i % bb.size()]);
                       const std::uint64_t k = i - boundary;
                       const auto ra = static_cast<std::int64_t>(splitmix64(seed, 2 * k) & mask);
                       const auto rb = static_cast<std::int64_t>(splitmix64(seed, 2 * k + 1) & mask);
                       return std::pair(a0 + ra, b0 + rb);
                     },
                     workers);
  return r;
}

std::string VerifyReport::to_text(std::size_t max_witnesses) const {
  std::ostringstream os;
  os << circuit << ": " << total_vectors << " vectors, " << failures.size() << " failures";
  if (mode == Mode::Exhaustive) {
    os << " (exhaustive)";
  } else {
    os << " (random: " << requested_count << " seeded + " << boundary_vectors
       << " boundary, seed " << seed << ", prng " << kPrngAlgorithm << ")";
  }
  os << '\n';
  for (std::size_t i = 0; i < failures.size() && i < max_witnesses; ++i) {
    const auto& f = failures[i];
    os << "  FAIL A=" << f.a << " B=" << f.b << " expected P=" << f.expected << " got P=" << f.actual
       << '\n';
  }
  if (failures.size() > max_witnesses) {
    os << "  ... " << failures.size() - max_witnesses << " more\n";
  }
  return os.str();
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["circuit"] = circuit;
  j["mode"] = mode == Mode::Exhaustive ? "exhaustive" : "random";
  if (mode == Mode::Random) {
    j["seed"] = seed;
    j["prng"] = kPrngAlgorithm;
    j["requested_count"] = requested_count;
    j["boundary_vectors"] = boundary_vectors;
  }
  j["total_vectors"] = total_vectors;
  j["passed"] = passed();
  j["failure_count"] = failures.size();
  auto& list = j["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : failures) {
    list.push_back({{"inputs", {{"A", f.a}, {"B", f.b}}}, {"expected", f.expected}, {"actual", f.actual}});
  }
  return j.dump(2) + "\n";
}

}  // namespace mulgen::verify
