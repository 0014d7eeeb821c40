#include "mulgen/timing.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace mulgen::timing {

namespace {

void set(DelayModel& m, GateKind kind, Rational d) { m.delay[static_cast<std::size_t>(kind)] = d; }

std::string ratio_string(Rational baseline, Rational value) {
  if (value == Rational(0)) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", (baseline / value).to_double());
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

DelayModel DelayModel::unit() {
  DelayModel m{"unit", {}};
  for (GateKind k : kAllGateKinds) set(m, k, arity(k) == 0 ? 0 : 1);
  return m;
}

DelayModel DelayModel::tech_demo() {
  DelayModel m{"tech-demo", {}};
  set(m, GateKind::Const0, 0);
  set(m, GateKind::Const1, 0);
  set(m, GateKind::Not, Rational(1, 2));
  set(m, GateKind::Buf, Rational(1, 2));
  set(m, GateKind::And2, 1);
  set(m, GateKind::Or2, 1);
  set(m, GateKind::Nand2, Rational(9, 10));
  set(m, GateKind::Nor2, Rational(9, 10));
  set(m, GateKind::Xor2, Rational(8, 5));
  set(m, GateKind::Xnor2, Rational(8, 5));
  return m;
}

DelayModel DelayModel::by_name(const std::string& name) {
  if (name == "unit") return unit();
  if (name == "tech-demo") return tech_demo();
  throw Error(ErrorCode::InvalidArgument, "unknown delay model '" + name + "' (unit|tech-demo)");
}

DelayModel DelayModel::scaled(Rational k) const {
  if (k <= Rational(0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  DelayModel m = *this;
  for (auto& d : m.delay) d = d * k;
  return m;
}

void DelayModel::check() const {
  for (GateKind k : kAllGateKinds) {
    if (of(k) < Rational(0)) {
      throw Error(ErrorCode::InvalidArgument, "negative delay for " + std::string(to_string(k)));
    }
  }
  if (of(GateKind::Const0) != Rational(0) || of(GateKind::Const1) != Rational(0)) {
    throw Error(ErrorCode::InvalidArgument, "constant gates must have zero delay");
  }
}

std::vector<Rational> arrival_times(const Circuit& c, const DelayModel& model) {
  c.require_valid();
  model.check();
  std::vector<Rational> arrival(c.net_count(), Rational(0));
  const auto& gates = c.gates();
  for (auto g : c.topological_order()) {
    const auto& gate = gates[g];
    Rational latest(0);
    for (NetId in : gate.inputs) latest = std::max(latest, arrival[in.index]);
    arrival[gate.output.index] = latest + model.of(gate.kind);
  }
  return arrival;
}

TimingReport critical_path(const Circuit& c, const DelayModel& model) {
  TimingReport r;
  r.model = model.name;
  r.arrival = arrival_times(c, model);

  bool found = false;
  for (const auto& port : c.outputs()) {
    for (NetId bit : port.bits) {
      const auto a = r.arrival[bit.index];
      if (!found || a > r.critical_delay || (a == r.critical_delay && bit < r.critical_output)) {
        r.critical_delay = a;
        r.critical_output = bit;
        found = true;
      }
    }
  }

  constexpr std::size_t kNone = SIZE_MAX;
  std::vector<std::size_t> driver(c.net_count(), kNone);
  for (std::size_t g = 0; g < c.gates().size(); ++g) driver[c.gates()[g].output.index] = g;

  NetId net = r.critical_output;
  while (driver[net.index] != kNone) {
    const auto g = driver[net.index];
    r.critical_path.push_back(g);
    const auto& inputs = c.gates()[g].inputs;
    if (inputs.empty()) break;
    NetId best = inputs[0];
    for (NetId in : inputs) {
      const auto a = r.arrival[in.index];
      const auto b = r.arrival[best.index];
      if (a > b || (a == b && in < best)) best = in;
    }
    net = best;
  }
  std::reverse(r.critical_path.begin(), r.critical_path.end());
  return r;
}

AreaReport area_report(const Circuit& c) {
  AreaReport r;
  for (const auto& gate : c.gates()) ++r.counts[static_cast<std::size_t>(gate.kind)];
  r.total_gates = c.gates().size();
  return r;
}

std::size_t depth(const Circuit& c) {
  return static_cast<std::size_t>(critical_path(c, DelayModel::unit()).critical_delay.num());
}

ComparisonTable compare(const std::vector<std::pair<std::string, const Circuit*>>& circuits,
                        const DelayModel& model) {
  if (circuits.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "compare needs at least two circuits");
  }
  ComparisonTable t;
  t.model = model.name;

  std::vector<TimingReport> timing;
  std::vector<std::size_t> depths;
  std::vector<AreaReport> areas;
  for (const auto& [label, circuit] : circuits) {
    t.labels.push_back(label);
    timing.push_back(critical_path(*circuit, model));
    depths.push_back(depth(*circuit));
    areas.push_back(area_report(*circuit));
  }

  auto row = [&](std::string metric, auto&& value_of) {
    std::vector<std::string> values;
    for (std::size_t i = 0; i < circuits.size(); ++i) values.push_back(value_of(i));
    t.rows.emplace_back(std::move(metric), std::move(values));
  };
  row("critical delay (" + model.name + " model units)",
      [&](std::size_t i) { return timing[i].critical_delay.to_string(); });
  row("depth (gate levels)", [&](std::size_t i) { return std::to_string(depths[i]); });
  row("total gates", [&](std::size_t i) { return std::to_string(areas[i].total_gates); });
  for (GateKind k : kAllGateKinds) {
    const bool used = std::any_of(areas.begin(), areas.end(),
                                  [&](const AreaReport& a) { return a.count(k) > 0; });
    if (!used) continue;
    row(std::string(to_string(k)) + " gates",
        [&](std::size_t i) { return std::to_string(areas[i].count(k)); });
  }
  row("delay ratio (" + t.labels.front() + " / column)", [&](std::size_t i) {
    return ratio_string(timing.front().critical_delay, timing[i].critical_delay);
  });
  return t;
}

std::string ComparisonTable::to_markdown() const {
  std::ostringstream os;
  os << "| metric [delay model: " << model << "] |";
  for (const auto& l : labels) os << ' ' << l << " |";
  os << "\n|---|";
  for (std::size_t i = 0; i < labels.size(); ++i) os << "---:|";
  os << '\n';
  for (const auto& [metric, values] : rows) {
    os << "| " << metric << " |";
    for (const auto& v : values) os << ' ' << v << " |";
    os << '\n';
  }
  return os.str();
}

std::string ComparisonTable::to_csv() const {
  std::ostringstream os;
  os << csv_field("metric [delay model: " + model + "]");
  for (const auto& l : labels) os << ',' << csv_field(l);
  os << '\n';
  for (const auto& [metric, values] : rows) {
    os << csv_field(metric);
    for (const auto& v : values) os << ',' << csv_field(v);
    os << '\n';
  }
  return os.str();
}

}  // namespace mulgen::timing
