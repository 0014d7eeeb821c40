#include "mulgen/mulgen.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "mulgen/emit.hpp"
#include "mulgen/multipliers.hpp"
#include "mulgen/sim.hpp"
#include "mulgen/timing.hpp"
#include "mulgen/verify.hpp"

struct mulgen_circuit {
  mulgen::Circuit circuit;
};

struct mulgen_verify_report {
  mulgen::verify::VerifyReport report;
};

namespace {

using namespace mulgen;

thread_local std::string g_last_error;

mulgen_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::SpecViolation: return MULGEN_ERR_SPEC;
    case ErrorCode::Parse: return MULGEN_ERR_PARSE;
    case ErrorCode::InvalidCircuit: return MULGEN_ERR_INVALID_CIRCUIT;
    case ErrorCode::OutOfRange: return MULGEN_ERR_OUT_OF_RANGE;
    case ErrorCode::WidthCap: return MULGEN_ERR_WIDTH_CAP;
    default: return MULGEN_ERR_INVALID_ARGUMENT;
  }
}

mulgen_status fail(mulgen_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
mulgen_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return MULGEN_OK;
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MULGEN_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MULGEN_ERR_INTERNAL, e.what());
  }
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.data(), s.size() + 1);
  return p;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

Signedness to_sign(int s) {
  if (s == MULGEN_SIGNED) return Signedness::Signed;
  if (s == MULGEN_UNSIGNED) return Signedness::Unsigned;
  throw Error(ErrorCode::InvalidArgument, "signedness must be MULGEN_SIGNED or MULGEN_UNSIGNED");
}

MultiplierSpec to_spec(const mulgen_spec& s) {
  MultiplierSpec spec;
  spec.width_a = spec.width_b = s.width;
  spec.sign_a = to_sign(s.sign_a);
  spec.sign_b = to_sign(s.sign_b);
  switch (s.architecture) {
    case MULGEN_ARCH_BW: spec.architecture = Architecture::FlatBW; break;
    case MULGEN_ARCH_ARRAY: spec.architecture = Architecture::FlatUnsignedArray; break;
    case MULGEN_ARCH_BOOTH4: spec.architecture = Architecture::BoothRadix4; break;
    case MULGEN_ARCH_DECOMPOSED: spec.architecture = Architecture::Decomposed; break;
    default: throw Error(ErrorCode::InvalidArgument, "unknown architecture");
  }
  spec.leaf_width = s.leaf_width;
  require(s.combiner == MULGEN_COMBINER_CSA || s.combiner == MULGEN_COMBINER_RIPPLE,
          "unknown combiner");
  spec.combiner = s.combiner == MULGEN_COMBINER_CSA ? Combiner::CsaTree : Combiner::RippleCascade;
  require(s.split == MULGEN_SPLIT_HALVING || s.split == MULGEN_SPLIT_GRID, "unknown split style");
  spec.split = s.split == MULGEN_SPLIT_HALVING ? SplitStyle::Halving : SplitStyle::Grid;
  return spec;
}

std::string read_file(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure(std::string("cannot open '") + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

extern "C" {

const char* mulgen_version(void) { return "1.0.0"; }

const char* mulgen_last_error(void) { return g_last_error.c_str(); }

const char* mulgen_status_string(mulgen_status status) {
  switch (status) {
    case MULGEN_OK: return "ok";
    case MULGEN_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MULGEN_ERR_SPEC: return "invalid multiplier spec";
    case MULGEN_ERR_PARSE: return "parse error";
    case MULGEN_ERR_INVALID_CIRCUIT: return "invalid circuit";
    case MULGEN_ERR_OUT_OF_RANGE: return "value out of range";
    case MULGEN_ERR_WIDTH_CAP: return "width above exhaustive cap";
    case MULGEN_ERR_IO: return "i/o error";
    case MULGEN_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* mulgen_gate_kind_name(size_t kind) {
  if (kind >= kGateKindCount) return nullptr;
  return to_string(kAllGateKinds[kind]).data();
}

void mulgen_string_free(char* s) { std::free(s); }

void mulgen_spec_init(mulgen_spec* spec) {
  if (!spec) return;
  *spec = mulgen_spec{8, MULGEN_SIGNED, MULGEN_SIGNED, MULGEN_ARCH_BW, 4, MULGEN_COMBINER_CSA,
                      MULGEN_SPLIT_HALVING};
}

mulgen_status mulgen_spec_parse_arch(const char* token, mulgen_spec* spec) {
  return guarded([&] {
    require(token && spec, "null argument");
    const std::string t = token;
    if (t == "bw") {
      spec->architecture = MULGEN_ARCH_BW;
    } else if (t == "array") {
      spec->architecture = MULGEN_ARCH_ARRAY;
    } else if (t == "booth4") {
      spec->architecture = MULGEN_ARCH_BOOTH4;
    } else if (t == "decomposed" || t.rfind("decomposed:", 0) == 0) {
      spec->architecture = MULGEN_ARCH_DECOMPOSED;
      if (t.size() > 10) {
        std::string rest = t.substr(11);
        std::string split;
        if (const auto colon = rest.find(':'); colon != std::string::npos) {
          split = rest.substr(colon + 1);
          rest = rest.substr(0, colon);
        }
        if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos ||
            rest.size() > 6) {
          throw Error(ErrorCode::Parse, "bad leaf width in '" + t + "'");
        }
        spec->leaf_width = static_cast<uint32_t>(std::stoul(rest));
        if (split.empty() || split == "halving") {
          spec->split = MULGEN_SPLIT_HALVING;
        } else if (split == "grid") {
          spec->split = MULGEN_SPLIT_GRID;
        } else {
          throw Error(ErrorCode::Parse, "bad split style in '" + t + "' (halving|grid)");
        }
      }
    } else {
      throw Error(ErrorCode::Parse,
                  "unknown architecture '" + t + "' (bw|array|booth4|decomposed[:K[:grid]])");
    }
  });
}

mulgen_status mulgen_spec_check(const mulgen_spec* spec) {
  return guarded([&] {
    require(spec, "null spec");
    check_spec(to_spec(*spec));
  });
}

mulgen_status mulgen_spec_describe(const mulgen_spec* spec, char** out) {
  return guarded([&] {
    require(spec && out, "null argument");
    *out = copy_out(describe(to_spec(*spec)));
  });
}

mulgen_status mulgen_generate(const mulgen_spec* spec, mulgen_circuit** out) {
  return guarded([&] {
    require(spec && out, "null argument");
    *out = nullptr;
    auto c = std::make_unique<mulgen_circuit>(mulgen_circuit{generate(to_spec(*spec))});
    *out = c.release();
  });
}

mulgen_status mulgen_circuit_from_json(const char* text, size_t length, mulgen_circuit** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = nullptr;
    auto c = std::make_unique<mulgen_circuit>(
        mulgen_circuit{emit::from_json(std::string_view(text, length))});
    *out = c.release();
  });
}

mulgen_status mulgen_circuit_load(const char* path, mulgen_circuit** out) {
  if (!path || !out) return fail(MULGEN_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    return fail(MULGEN_ERR_IO, e.what());
  }
  return mulgen_circuit_from_json(text.data(), text.size(), out);
}

void mulgen_circuit_free(mulgen_circuit* circuit) { delete circuit; }

const char* mulgen_circuit_name(const mulgen_circuit* c) {
  return c ? c->circuit.name().c_str() : nullptr;
}

size_t mulgen_circuit_gate_count(const mulgen_circuit* c) {
  return c ? c->circuit.gates().size() : 0;
}

size_t mulgen_circuit_net_count(const mulgen_circuit* c) { return c ? c->circuit.net_count() : 0; }

mulgen_status mulgen_circuit_port(const mulgen_circuit* c, const char* name, uint32_t* width,
                                  int* signedness) {
  return guarded([&] {
    require(c && name, "null argument");
    const Port* p = c->circuit.find_input(name);
    if (!p) p = c->circuit.find_output(name);
    if (!p) throw Error(ErrorCode::MissingPort, std::string("no port named '") + name + "'");
    if (width) *width = static_cast<uint32_t>(p->width());
    if (signedness) *signedness = p->signedness == Signedness::Signed ? MULGEN_SIGNED : MULGEN_UNSIGNED;
  });
}

mulgen_status mulgen_circuit_to_json(const mulgen_circuit* c, char** out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = copy_out(emit::to_json(c->circuit));
  });
}

mulgen_status mulgen_circuit_to_verilog(const mulgen_circuit* c, char** out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = copy_out(emit::to_verilog(c->circuit));
  });
}

mulgen_status mulgen_circuit_save(const mulgen_circuit* c, const char* path) {
  if (!c || !path) return fail(MULGEN_ERR_INVALID_ARGUMENT, "null argument");
  const std::string p = path;
  std::string text;
  const auto st = guarded([&] {
    if (ends_with(p, ".json")) {
      text = emit::to_json(c->circuit);
    } else if (ends_with(p, ".v")) {
      text = emit::to_verilog(c->circuit);
    } else {
      throw Error(ErrorCode::InvalidArgument, "output file must end in .json or .v: '" + p + "'");
    }
  });
  if (st != MULGEN_OK) return st;
  std::ofstream os(p, std::ios::binary);
  os << text;
  os.close();
  if (!os) return fail(MULGEN_ERR_IO, "cannot write '" + p + "'");
  return MULGEN_OK;
}

mulgen_status mulgen_circuit_timing(const mulgen_circuit* c, const char* model, mulgen_timing* out) {
  return guarded([&] {
    require(c && model && out, "null argument");
    const auto report = timing::critical_path(c->circuit, timing::DelayModel::by_name(model));
    out->delay_num = report.critical_delay.num();
    out->delay_den = report.critical_delay.den();
    out->delay = report.critical_delay.to_double();
    out->depth = static_cast<uint32_t>(timing::depth(c->circuit));
    out->path_length = report.critical_path.size();
  });
}

mulgen_status mulgen_circuit_area(const mulgen_circuit* c, mulgen_area* out) {
  return guarded([&] {
    require(c && out, "null argument");
    const auto area = timing::area_report(c->circuit);
    for (size_t k = 0; k < kGateKindCount; ++k) out->counts[k] = area.counts[k];
    out->total_gates = area.total_gates;
  });
}

mulgen_status mulgen_evaluate(const mulgen_circuit* c, const char* const* names,
                              const int64_t* values, size_t count, const char* output,
                              int64_t* result) {
  return guarded([&] {
    require(c && output && result && (count == 0 || (names && values)), "null argument");
    sim::Assignment in;
    for (size_t i = 0; i < count; ++i) {
      require(names[i], "null port name");
      in[names[i]] = values[i];
    }
    const auto out = sim::evaluate(c->circuit, in);
    const auto it = out.find(output);
    if (it == out.end()) {
      throw Error(ErrorCode::MissingPort, std::string("no output named '") + output + "'");
    }
    *result = it->second;
  });
}

mulgen_status mulgen_verify(const mulgen_circuit* c, int sign_a, int sign_b, int mode,
                            uint64_t count, uint64_t seed, uint32_t cap,
                            mulgen_verify_report** out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = nullptr;
    const Port* a = c->circuit.find_input("A");
    const Port* b = c->circuit.find_input("B");
    if (!a || !b) throw Error(ErrorCode::MissingPort, "circuit must have inputs A and B");
    MultiplierSpec spec;
    spec.width_a = a->width();
    spec.width_b = b->width();
    spec.sign_a = sign_a == MULGEN_SIGN_FROM_PORT ? a->signedness : to_sign(sign_a);
    spec.sign_b = sign_b == MULGEN_SIGN_FROM_PORT ? b->signedness : to_sign(sign_b);
    auto r = std::make_unique<mulgen_verify_report>();
    if (mode == MULGEN_VERIFY_EXHAUSTIVE) {
      r->report = verify::verify_exhaustive(c->circuit, spec,
                                            cap == 0 ? verify::kDefaultExhaustiveCap : cap);
    } else if (mode == MULGEN_VERIFY_RANDOM) {
      r->report = verify::verify_random(c->circuit, spec, count, seed);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown verification mode");
    }
    *out = r.release();
  });
}

int mulgen_report_passed(const mulgen_verify_report* r) { return r && r->report.passed(); }

uint64_t mulgen_report_total_vectors(const mulgen_verify_report* r) {
  return r ? r->report.total_vectors : 0;
}

size_t mulgen_report_failure_count(const mulgen_verify_report* r) {
  return r ? r->report.failures.size() : 0;
}

mulgen_status mulgen_report_render(const mulgen_verify_report* r, int format, char** out) {
  return guarded([&] {
    require(r && out, "null argument");
    if (format == MULGEN_FORMAT_TEXT) {
      *out = copy_out(r->report.to_text());
    } else if (format == MULGEN_FORMAT_JSON) {
      *out = copy_out(r->report.to_json());
    } else {
      throw Error(ErrorCode::InvalidArgument, "reports render as text or json");
    }
  });
}

void mulgen_report_free(mulgen_verify_report* r) { delete r; }

mulgen_status mulgen_compare(const mulgen_spec* specs, const char* const* labels, size_t count,
                             const char* model, int format, char** out) {
  return guarded([&] {
    require(specs && model && out, "null argument");
    const auto delay_model = timing::DelayModel::by_name(model);
    std::vector<Circuit> circuits;
    circuits.reserve(count);
    std::vector<std::pair<std::string, const Circuit*>> entries;
    for (size_t i = 0; i < count; ++i) {
      const auto spec = to_spec(specs[i]);
      circuits.push_back(generate(spec));
      entries.emplace_back(labels && labels[i] ? std::string(labels[i]) : describe(spec),
                           &circuits.back());
    }
    const auto table = timing::compare(entries, delay_model);
    if (format == MULGEN_FORMAT_MARKDOWN) {
      *out = copy_out(table.to_markdown());
    } else if (format == MULGEN_FORMAT_CSV) {
      *out = copy_out(table.to_csv());
    } else {
      throw Error(ErrorCode::InvalidArgument, "tables render as markdown or csv");
    }
  });
}

}  // extern "C"
