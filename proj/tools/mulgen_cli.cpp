// mulgen command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mulgen/mulgen.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct CircuitDeleter {
  void operator()(mulgen_circuit* c) const { mulgen_circuit_free(c); }
};
struct ReportDeleter {
  void operator()(mulgen_verify_report* r) const { mulgen_report_free(r); }
};
using CircuitPtr = std::unique_ptr<mulgen_circuit, CircuitDeleter>;
using ReportPtr = std::unique_ptr<mulgen_verify_report, ReportDeleter>;

struct CliError {
  int code;
  std::string message;
};

void check(mulgen_status st, const std::string& context) {
  if (st != MULGEN_OK) {
    std::string msg = context + ": " + mulgen_last_error();
    throw CliError{kExitUsage, msg};
  }
}

std::string take(char* s) {
  std::string out = s ? s : "";
  mulgen_string_free(s);
  return out;
}

int parse_sign(const std::string& s) {
  if (s == "signed" || s == "s") return MULGEN_SIGNED;
  if (s == "unsigned" || s == "u") return MULGEN_UNSIGNED;
  throw CliError{kExitUsage, "signedness must be 'signed' or 'unsigned', got '" + s + "'"};
}

const std::map<std::string, int> kCombiners = {{"csa", MULGEN_COMBINER_CSA},
                                               {"ripple", MULGEN_COMBINER_RIPPLE}};

struct GenOptions {
  std::string arch = "bw";
  unsigned width = 8;
  unsigned leaf = 0;
  std::string split;
  std::string combiner = "csa";
  std::string sign_a, sign_b;
  std::string out;
};

mulgen_spec build_spec(const std::string& arch, unsigned width, const GenOptions& o) {
  mulgen_spec spec;
  mulgen_spec_init(&spec);
  check(mulgen_spec_parse_arch(arch.c_str(), &spec), "--arch");
  spec.width = width;
  if (o.leaf != 0) spec.leaf_width = o.leaf;
  if (!o.split.empty()) spec.split = o.split == "grid" ? MULGEN_SPLIT_GRID : MULGEN_SPLIT_HALVING;
  spec.combiner = kCombiners.at(o.combiner);
  const int default_sign = spec.architecture == MULGEN_ARCH_ARRAY ? MULGEN_UNSIGNED : MULGEN_SIGNED;
  spec.sign_a = o.sign_a.empty() ? default_sign : parse_sign(o.sign_a);
  spec.sign_b = o.sign_b.empty() ? default_sign : parse_sign(o.sign_b);
  check(mulgen_spec_check(&spec), "invalid multiplier spec");
  return spec;
}

int cmd_gen(const GenOptions& o) {
  const auto spec = build_spec(o.arch, o.width, o);
  mulgen_circuit* raw = nullptr;
  check(mulgen_generate(&spec, &raw), "generation failed");
  CircuitPtr c(raw);
  if (!o.out.empty()) check(mulgen_circuit_save(c.get(), o.out.c_str()), "cannot write output");

  mulgen_timing t{};
  check(mulgen_circuit_timing(c.get(), "unit", &t), "timing");
  char* label = nullptr;
  check(mulgen_spec_describe(&spec, &label), "describe");
  std::cout << take(label) << ": " << mulgen_circuit_gate_count(c.get()) << " gates, depth "
            << t.depth << " (unit model)";
  if (!o.out.empty()) std::cout << ", wrote " << o.out;
  std::cout << '\n';
  return kExitOk;
}

struct VerifyOptions {
  std::string file;
  std::string sign_a, sign_b;
  bool exhaustive = false;
  std::uint64_t random = 0;
  std::uint64_t seed = 1;
  unsigned cap = 8;
  std::string format = "text";
};

int cmd_verify(const VerifyOptions& o) {
  mulgen_circuit* raw = nullptr;
  check(mulgen_circuit_load(o.file.c_str(), &raw), "cannot load '" + o.file + "'");
  CircuitPtr c(raw);
  const int sa = o.sign_a.empty() ? MULGEN_SIGN_FROM_PORT : parse_sign(o.sign_a);
  const int sb = o.sign_b.empty() ? MULGEN_SIGN_FROM_PORT : parse_sign(o.sign_b);
  const int mode = o.random > 0 ? MULGEN_VERIFY_RANDOM : MULGEN_VERIFY_EXHAUSTIVE;
  mulgen_verify_report* rraw = nullptr;
  check(mulgen_verify(c.get(), sa, sb, mode, o.random, o.seed, o.cap, &rraw), "verification");
  ReportPtr report(rraw);
  char* text = nullptr;
  check(mulgen_report_render(report.get(), o.format == "json" ? MULGEN_FORMAT_JSON : MULGEN_FORMAT_TEXT,
                             &text),
        "render");
  std::cout << take(text);
  return mulgen_report_passed(report.get()) ? kExitOk : kExitVerifyFailed;
}

struct CompareOptions {
  unsigned width = 8;
  std::string model = "unit";
  std::string combiner = "csa";
  std::string format = "markdown";
  std::vector<std::string> archs;
};

int cmd_compare(const CompareOptions& o) {
  if (o.archs.size() < 2) throw CliError{kExitUsage, "compare needs at least two architectures"};
  GenOptions g;
  g.combiner = o.combiner;
  std::vector<mulgen_spec> specs;
  std::vector<const char*> labels;
  for (const auto& a : o.archs) {
    specs.push_back(build_spec(a, o.width, g));
    labels.push_back(a.c_str());
  }
  char* table = nullptr;
  check(mulgen_compare(specs.data(), labels.data(), specs.size(), o.model.c_str(),
                       o.format == "csv" ? MULGEN_FORMAT_CSV : MULGEN_FORMAT_MARKDOWN, &table),
        "compare");
  std::cout << take(table);
  return kExitOk;
}

struct EvalOptions {
  std::string file;
  std::vector<std::string> assignments;
  std::string output = "P";
};

int cmd_eval(const EvalOptions& o) {
  mulgen_circuit* raw = nullptr;
  check(mulgen_circuit_load(o.file.c_str(), &raw), "cannot load '" + o.file + "'");
  CircuitPtr c(raw);
  std::vector<std::string> names;
  std::vector<std::int64_t> values;
  for (const auto& a : o.assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw CliError{kExitUsage, "expected NAME=VALUE, got '" + a + "'"};
    }
    names.push_back(a.substr(0, eq));
    try {
      std::size_t used = 0;
      values.push_back(std::stoll(a.substr(eq + 1), &used, 0));
      if (used != a.size() - eq - 1) throw std::invalid_argument(a);
    } catch (const std::exception&) {
      throw CliError{kExitUsage, "bad integer in '" + a + "'"};
    }
  }
  std::vector<const char*> cnames;
  for (const auto& n : names) cnames.push_back(n.c_str());
  std::int64_t result = 0;
  check(mulgen_evaluate(c.get(), cnames.data(), values.data(), values.size(), o.output.c_str(),
                        &result),
        "evaluation");
  std::cout << o.output << " = " << result << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mulgen: multiplier netlist generator, verifier and timing comparator"};
  app.set_version_flag("--version", mulgen_version());
  app.require_subcommand(1);

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate a multiplier netlist");
  g->add_option("--arch", gen.arch, "bw | array | booth4 | decomposed[:K[:grid]]")->required();
  g->add_option("--width", gen.width, "Operand width N")->required();
  g->add_option("--leaf", gen.leaf, "Leaf multiplier width K (decomposed)");
  g->add_option("--split", gen.split, "Decomposition split style")
      ->check(CLI::IsMember({"halving", "grid"}));
  g->add_option("--combiner", gen.combiner, "Row combiner")->check(CLI::IsMember({"csa", "ripple"}));
  g->add_option("--sign-a", gen.sign_a, "signed | unsigned");
  g->add_option("--sign-b", gen.sign_b, "signed | unsigned");
  g->add_option("--out", gen.out, "Output file (.json or .v)");

  VerifyOptions ver;
  auto* v = app.add_subcommand("verify", "Check a JSON netlist against the integer product");
  v->add_option("file", ver.file, "Netlist in JSON form")->required();
  v->add_option("--sign-a", ver.sign_a, "signed | unsigned (default: port signedness)");
  v->add_option("--sign-b", ver.sign_b, "signed | unsigned (default: port signedness)");
  auto* ex = v->add_flag("--exhaustive", ver.exhaustive, "Sweep every input pair (default)");
  auto* rnd = v->add_option("--random", ver.random, "Number of seeded random vectors");
  ex->excludes(rnd);
  v->add_option("--seed", ver.seed, "Random seed");
  v->add_option("--cap", ver.cap, "Largest width allowed for exhaustive sweeps");
  v->add_option("--format", ver.format, "text | json")->check(CLI::IsMember({"text", "json"}));

  CompareOptions cmp;
  auto* c = app.add_subcommand("compare", "Compare critical delay and gate counts");
  c->add_option("--width", cmp.width, "Operand width N")->required();
  c->add_option("--model", cmp.model, "Delay model")->check(CLI::IsMember({"unit", "tech-demo"}));
  c->add_option("--combiner", cmp.combiner, "Row combiner")->check(CLI::IsMember({"csa", "ripple"}));
  c->add_option("--format", cmp.format, "markdown | csv")->check(CLI::IsMember({"markdown", "csv"}));
  c->add_option("archs", cmp.archs, "Architectures (bw, array, booth4, decomposed:K[:grid])")
      ->required();

  EvalOptions ev;
  auto* e = app.add_subcommand("eval", "Evaluate a JSON netlist on one input vector");
  e->add_option("file", ev.file, "Netlist in JSON form")->required();
  e->add_option("assignments", ev.assignments, "NAME=VALUE per input port")->required();
  e->add_option("--output", ev.output, "Output port to print");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (g->parsed()) return cmd_gen(gen);
    if (v->parsed()) return cmd_verify(ver);
    if (c->parsed()) return cmd_compare(cmp);
    if (e->parsed()) return cmd_eval(ev);
  } catch (const CliError& err) {
    std::cerr << "error: " << err.message << '\n';
    return err.code;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
