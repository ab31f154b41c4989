#include "kcbs/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "kcbs/bounds.hpp"
#include "kcbs/errors.hpp"
#include "kcbs/hvm.hpp"
#include "kcbs/random.hpp"

namespace kcbs::harness {

namespace {

using json = nlohmann::ordered_json;

constexpr double kSampledSigmas = 5.0;
constexpr double kStateIngestTol = 1e-6;
constexpr double kNearDirection = 1e-6;

double quantum_minimum() { return 5.0 - 4.0 * std::sqrt(5.0); }

template <class T>
T parse_integer(std::string_view text, std::string_view what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw UsageError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

double parse_real(std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw UsageError("invalid vector component: '" + std::string(text) + "'");
  }
  return value;
}

json vec_json(const Vec3& v) { return json{{"x", v.x}, {"y", v.y}, {"z", v.z}}; }

std::string pair_label(int k) { return std::to_string(k) + "-" + std::to_string(k % 5 + 1); }

std::vector<StateVector> resolve_states(const ExperimentConfig& config, const Pentagram& pent) {
  const StateSpec& spec = config.state;
  switch (spec.kind) {
    case StateSpec::Kind::symmetric:
      return {symmetric_state(pent)};
    case StateSpec::Kind::direction:
      return {StateVector::along(pent.at(spec.direction))};
    case StateSpec::Kind::explicit_vector:
      return {StateVector::normalized(spec.vector)};
    case StateSpec::Kind::random:
      return random_states(pent, spec.count, config.seed);
  }
  return {};
}

StateVector single_state(const ExperimentConfig& config, const Pentagram& pent) {
  if (config.state.kind == StateSpec::Kind::random) {
    throw UsageError("command '" + std::string(to_string(config.command)) +
                     "' takes a single state; random:<n> is accepted by verify only");
  }
  return resolve_states(config, pent).front();
}

void stamp(json& j, const ExperimentConfig& config) {
  j["command"] = to_string(config.command);
  j["version"] = kVersion;
  j["seed"] = config.seed;
}

Report pentagram_report(const ExperimentConfig& config) {
  const Pentagram pent = build_pentagram();
  Report r;
  stamp(r.json, config);
  json dirs = json::array();
  json dots = json::array();
  r.table.header = {"label", "x", "y", "z", "dot_next"};
  for (int k = 1; k <= 5; ++k) {
    const Direction& d = pent.at(k);
    const double next = dot(d, pent.at(k + 1));
    r.pass = r.pass && std::abs(next) <= kGeometryTol;
    json entry = vec_json(d.vec());
    entry["label"] = k;
    entry["axis_dot"] = dot(d, pent.axis);
    dirs.push_back(entry);
    json row = json::array();
    for (int m = 1; m <= 5; ++m) row.push_back(dot(d, pent.at(m)));
    dots.push_back(row);
    r.table.rows.push_back(
        {std::to_string(k), format_double(d.x()), format_double(d.y()), format_double(d.z()), format_double(next)});
  }
  r.table.rows.push_back({"axis", format_double(pent.axis.x()), format_double(pent.axis.y()),
                          format_double(pent.axis.z()), ""});
  r.json["directions"] = dirs;
  r.json["axis"] = vec_json(pent.axis.vec());
  r.json["dot_products"] = dots;
  r.json["pass"] = r.pass;
  return r;
}

Report qm_sum_report(const ExperimentConfig& config) {
  const Pentagram pent = build_pentagram();
  const StateVector psi = single_state(config, pent);
  const CorrelationReport qm = pentagram_sum_qm(pent, psi);
  Report r;
  stamp(r.json, config);
  r.json["state"] = vec_json(psi.real_vector());
  r.json["source"] = to_string(qm.source);
  json pairs = json::array();
  r.table.header = {"pair", "correlation"};
  for (int k = 1; k <= 5; ++k) {
    const double v = qm.pair_values[static_cast<std::size_t>(k - 1)];
    pairs.push_back(json{{"pair", pair_label(k)}, {"correlation", v}});
    r.table.rows.push_back({pair_label(k), format_double(v)});
  }
  r.table.rows.push_back({"sum", format_double(qm.sum)});
  r.pass = qm.sum >= quantum_minimum() - config.tolerance;
  r.json["pairs"] = pairs;
  r.json["sum"] = qm.sum;
  r.json["quantum_minimum"] = quantum_minimum();
  r.json["pass"] = r.pass;
  return r;
}

json bound_json(const BoundResult& b) {
  json hist = json::array();
  for (const auto& [sum, count] : b.histogram) hist.push_back(json{{"sum", sum}, {"count", count}});
  return json{{"minimum", b.minimum}, {"maximum", b.maximum}, {"achievers", b.achievers}, {"histogram", hist}};
}

Report bounds_report(const ExperimentConfig& config) {
  const Pentagram pent = build_pentagram();
  const BoundResult nc = noncontextual_bound();
  const BoundResult ctx = contextual_bound();
  const StateVector sym = symmetric_state(pent);
  const ProjectionStats stats = symmetric_projection_stats(pent, sym);
  const double floor = constrained_contextual_floor(stats.q);
  const double qm = pentagram_sum_qm(pent, sym).sum;

  Report r;
  stamp(r.json, config);
  r.pass = nc.minimum == -3 && ctx.minimum == -5 && std::abs(floor - qm) <= config.tolerance;
  r.json["noncontextual"] = bound_json(nc);
  r.json["contextual"] = bound_json(ctx);
  r.json["symmetric"] = json{{"c", stats.c}, {"q", stats.q}, {"constrained_floor", floor}, {"qm_sum", qm},
                             {"difference", floor - qm}};
  r.json["pass"] = r.pass;
  r.table.header = {"quantity", "value"};
  r.table.rows = {
      {"noncontextual_minimum", std::to_string(nc.minimum)},
      {"noncontextual_achievers", std::to_string(nc.achievers)},
      {"contextual_minimum", std::to_string(ctx.minimum)},
      {"contextual_achievers", std::to_string(ctx.achievers)},
      {"c", format_double(stats.c)},
      {"q", format_double(stats.q)},
      {"constrained_floor", format_double(floor)},
      {"qm_sum", format_double(qm)},
  };
  return r;
}

Report hvm_corr_report(const ExperimentConfig& config) {
  const Pentagram pent = build_pentagram();
  const StateVector psi = single_state(config, pent);
  const CorrelationReport hvm = pentagram_sum_hvm(pent, psi);
  const CorrelationReport qm = pentagram_sum_qm(pent, psi);

  Report r;
  stamp(r.json, config);
  r.json["state"] = vec_json(psi.real_vector());
  r.json["source"] = to_string(hvm.source);
  r.table.header = {"pair", "correlation", "qm_correlation", "lambda_ij", "gamma_ij", "lambda_ji", "gamma_ji"};
  json pairs = json::array();
  double max_discrepancy = 0.0;
  for (int k = 1; k <= 5; ++k) {
    const ContextPair pair(pent.at(k), pent.at(k + 1));
    const Thresholds t_ij = thresholds(pair, psi);
    const Thresholds t_ji = thresholds(pair.swapped(), psi);
    const double v = hvm.pair_values[static_cast<std::size_t>(k - 1)];
    const double q = qm.pair_values[static_cast<std::size_t>(k - 1)];
    max_discrepancy = std::max(max_discrepancy, std::abs(v - q));
    pairs.push_back(json{{"pair", pair_label(k)},
                         {"correlation", v},
                         {"qm_correlation", q},
                         {"marginal_ij", marginal_exact(pair, psi)},
                         {"marginal_ji", marginal_exact(pair.swapped(), psi)},
                         {"lambda_ij", t_ij.lambda_t},
                         {"gamma_ij", t_ij.gamma_t},
                         {"lambda_ji", t_ji.lambda_t},
                         {"gamma_ji", t_ji.gamma_t}});
    r.table.rows.push_back({pair_label(k), format_double(v), format_double(q), format_double(t_ij.lambda_t),
                            format_double(t_ij.gamma_t), format_double(t_ji.lambda_t), format_double(t_ji.gamma_t)});
  }
  r.table.rows.push_back({"sum", format_double(hvm.sum), format_double(qm.sum), "", "", "", ""});
  r.pass = max_discrepancy <= config.tolerance;
  r.json["pairs"] = pairs;
  r.json["sum"] = hvm.sum;
  r.json["qm_sum"] = qm.sum;
  r.json["max_discrepancy"] = max_discrepancy;
  r.json["tolerance"] = config.tolerance;
  r.json["pass"] = r.pass;
  return r;
}

std::uint64_t pair_seed(std::uint64_t seed, std::uint64_t state_index, int pair) {
  return CounterRng(seed).substream(state_index * 8 + static_cast<std::uint64_t>(pair)).key();
}

bool within_sigmas(double value, double expected, double std_error) {
  return std::abs(value - expected) <= kSampledSigmas * std_error + 1e-12;
}

// Standard error of a +-1 sample mean if the exact correlation is right. The
// sample estimate collapses to zero whenever every draw agrees, which happens
// for correlations close to +-1 at moderate n.
double expected_std_error(double exact, std::uint64_t n) {
  return std::sqrt(std::max(0.0, 1.0 - exact * exact) / static_cast<double>(n));
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string optional_cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

Report hvm_sample_report(const ExperimentConfig& config) {
  const Pentagram pent = build_pentagram();
  const StateVector psi = single_state(config, pent);
  const std::uint64_t n = config.samples.value_or(kDefaultSamples);
  if (n == 0) throw UsageError("--samples must be at least 1");

  Report r;
  stamp(r.json, config);
  r.json["state"] = vec_json(psi.real_vector());
  r.json["samples"] = n;
  r.json["sigmas"] = kSampledSigmas;
  r.table.header = {"pair",      "n",           "seed",         "exact",   "mean",    "std_error",
                    "p_mm_given_m", "p_mm_std_error", "qm_conditional", "joint_pp", "joint_pm", "joint_mp",
                    "joint_mm"};
  json pairs = json::array();
  for (int k = 1; k <= 5; ++k) {
    const ContextPair pair(pent.at(k), pent.at(k + 1));
    const std::uint64_t seed = pair_seed(config.seed, 0, k);
    const SampleStats stats = sample_correlation(pair, psi, n, seed, config.workers);
    const ConditionalTable table = sample_conditionals(pair, psi, n, seed, config.workers);
    const double exact = correlation_exact(pair, psi);

    std::optional<double> qm_conditional;
    try {
      qm_conditional = conditional_negative(pair.measured(), pair.context(), psi);
    } catch (const UndefinedConditionalError&) {
    }
    const auto p_mm = table.conditional(-1, -1);
    const auto p_mm_se = table.conditional_std_error(-1, -1);

    bool ok = within_sigmas(stats.mean, exact, expected_std_error(exact, n)) && table.plus_plus == 0;
    if (p_mm && qm_conditional) ok = ok && within_sigmas(*p_mm, *qm_conditional, *p_mm_se);
    r.pass = r.pass && ok;

    pairs.push_back(json{{"pair", pair_label(k)},
                         {"n", stats.n},
                         {"seed", stats.seed},
                         {"exact", exact},
                         {"mean", stats.mean},
                         {"std_error", stats.std_error},
                         {"conditionals",
                          json{{"p_minus_given_minus", optional_json(p_mm)},
                               {"p_minus_given_minus_std_error", optional_json(p_mm_se)},
                               {"p_plus_given_minus", optional_json(table.conditional(+1, -1))},
                               {"p_minus_given_plus", optional_json(table.conditional(-1, +1))},
                               {"p_plus_given_plus", optional_json(table.conditional(+1, +1))},
                               {"qm_p_minus_given_minus", optional_json(qm_conditional)}}},
                         {"joint",
                          json{{"pp", table.joint(+1, +1)},
                               {"pm", table.joint(+1, -1)},
                               {"mp", table.joint(-1, +1)},
                               {"mm", table.joint(-1, -1)}}},
                         {"pass", ok}});
    r.table.rows.push_back({pair_label(k), std::to_string(stats.n), std::to_string(stats.seed), format_double(exact),
                            format_double(stats.mean), format_double(stats.std_error), optional_cell(p_mm),
                            optional_cell(p_mm_se), optional_cell(qm_conditional),
                            format_double(table.joint(+1, +1)), format_double(table.joint(+1, -1)),
                            format_double(table.joint(-1, +1)), format_double(table.joint(-1, -1))});
  }
  r.json["pairs"] = pairs;
  r.json["pass"] = r.pass;
  return r;
}

Report verify_report(const ExperimentConfig& config) {
  const Pentagram pent = build_pentagram();
  const std::uint64_t n = config.samples.value_or(kDefaultVerifySamples);
  if (n == 0) throw UsageError("--samples must be at least 1");
  const std::vector<StateVector> states = resolve_states(config, pent);

  Report r;
  stamp(r.json, config);
  r.table.header = {"index", "x", "y", "z", "qm_sum", "hvm_sum", "max_pair_discrepancy", "max_sampled_z"};
  json records = json::array();
  double max_discrepancy = 0.0;
  double max_marginal = 0.0;
  double max_z = 0.0;
  bool sampled_ok = true;
  for (std::size_t s = 0; s < states.size(); ++s) {
    const StateVector& psi = states[s];
    const CorrelationReport qm = pentagram_sum_qm(pent, psi);
    const CorrelationReport hvm = pentagram_sum_hvm(pent, psi);
    double pair_disc = 0.0;
    double state_z = 0.0;
    for (int k = 1; k <= 5; ++k) {
      const auto idx = static_cast<std::size_t>(k - 1);
      pair_disc = std::max(pair_disc, std::abs(qm.pair_values[idx] - hvm.pair_values[idx]));
      const ContextPair pair(pent.at(k), pent.at(k + 1));
      for (const ContextPair& p : {pair, pair.swapped()}) {
        const double c = detection_probability(p.measured(), psi);
        max_marginal = std::max(max_marginal, std::abs(marginal_exact(p, psi) - (2.0 * c - 1.0)));
      }
      const SampleStats stats = sample_correlation(pair, psi, n, pair_seed(config.seed, s + 1, k), config.workers);
      const double exact = hvm.pair_values[idx];
      const double se = expected_std_error(exact, n);
      const double diff = std::abs(stats.mean - exact);
      sampled_ok = sampled_ok && within_sigmas(stats.mean, exact, se);
      if (se > 0.0) state_z = std::max(state_z, diff / se);
    }
    max_discrepancy = std::max(max_discrepancy, pair_disc);
    max_z = std::max(max_z, state_z);
    const Vec3 v = psi.real_vector();
    records.push_back(json{{"state", vec_json(v)},
                           {"qm_sum", qm.sum},
                           {"hvm_sum", hvm.sum},
                           {"max_pair_discrepancy", pair_disc},
                           {"max_sampled_z", state_z}});
    r.table.rows.push_back({std::to_string(s), format_double(v.x), format_double(v.y), format_double(v.z),
                            format_double(qm.sum), format_double(hvm.sum), format_double(pair_disc),
                            format_double(state_z)});
  }
  r.pass = max_discrepancy <= config.tolerance && max_marginal <= config.tolerance && sampled_ok;
  r.json["tolerance"] = config.tolerance;
  r.json["samples_per_pair"] = n;
  r.json["sigmas"] = kSampledSigmas;
  r.json["states"] = records;
  r.json["aggregate"] = json{{"state_count", states.size()},
                             {"max_discrepancy", max_discrepancy},
                             {"max_marginal_discrepancy", max_marginal},
                             {"max_sampled_z", max_z},
                             {"pass", r.pass}};
  r.json["pass"] = r.pass;
  return r;
}

Report sweep_report(const ExperimentConfig& config) {
  if (config.steps == 0) throw UsageError("--steps must be at least 1");
  const Pentagram pent = build_pentagram();
  Report r;
  stamp(r.json, config);
  r.table.header = {"angle", "qm_sum", "hvm_sum"};
  json rows = json::array();
  for (const auto& [angle, psi] : sweep_states(pent, config.steps)) {
    const double qm = pentagram_sum_qm(pent, psi).sum;
    const double hvm = pentagram_sum_hvm(pent, psi).sum;
    r.pass = r.pass && qm >= quantum_minimum() - 1e-9 && std::abs(qm - hvm) <= config.tolerance;
    rows.push_back(json{{"angle", angle}, {"qm_sum", qm}, {"hvm_sum", hvm}});
    r.table.rows.push_back({format_double(angle), format_double(qm), format_double(hvm)});
  }
  r.json["steps"] = config.steps;
  r.json["tolerance"] = config.tolerance;
  r.json["rows"] = rows;
  r.json["pass"] = r.pass;
  return r;
}

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char ch : field) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

}  // namespace

Command parse_command(std::string_view name) {
  for (Command c : {Command::pentagram, Command::qm_sum, Command::bounds, Command::hvm_corr, Command::hvm_sample,
                    Command::verify, Command::sweep}) {
    if (to_string(c) == name) return c;
  }
  throw UsageError("unknown command '" + std::string(name) + "'");
}

std::string_view to_string(Command command) {
  switch (command) {
    case Command::pentagram:
      return "pentagram";
    case Command::qm_sum:
      return "qm-sum";
    case Command::bounds:
      return "bounds";
    case Command::hvm_corr:
      return "hvm-corr";
    case Command::hvm_sample:
      return "hvm-sample";
    case Command::verify:
      return "verify";
    case Command::sweep:
      return "sweep";
  }
  return "unknown";
}

OutputFormat parse_format(std::string_view name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw UsageError("unknown format '" + std::string(name) + "' (expected json or csv)");
}

StateSpec parse_state_spec(std::string_view text) {
  StateSpec spec;
  if (text == "symmetric") return spec;
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw UsageError("invalid state spec '" + std::string(text) + "'");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);

  if (kind == "dir") {
    spec.kind = StateSpec::Kind::direction;
    spec.direction = parse_integer<int>(rest, "direction label");
    if (spec.direction < 1 || spec.direction > 5) throw UsageError("direction label must be 1..5");
    return spec;
  }
  if (kind == "random") {
    spec.kind = StateSpec::Kind::random;
    spec.count = parse_integer<std::uint64_t>(rest, "random state count");
    if (spec.count == 0) throw UsageError("random state count must be at least 1");
    return spec;
  }
  if (kind == "vec") {
    std::array<double, 3> c{};
    std::size_t start = 0;
    for (int k = 0; k < 3; ++k) {
      const auto comma = rest.find(',', start);
      if ((k < 2) == (comma == std::string_view::npos)) {
        throw UsageError("vec: expects exactly three comma-separated components");
      }
      c[static_cast<std::size_t>(k)] = parse_real(rest.substr(start, comma - start));
      start = comma + 1;
    }
    spec.kind = StateSpec::Kind::explicit_vector;
    spec.vector = {c[0], c[1], c[2]};
    if (std::abs(norm(spec.vector) - 1.0) > kStateIngestTol) {
      throw UsageError("vec: state must be normalized within 1e-6");
    }
    return spec;
  }
  throw UsageError("invalid state spec '" + std::string(text) + "'");
}

std::vector<StateVector> random_states(const Pentagram& pent, std::uint64_t count, std::uint64_t seed) {
  const CounterRng rng = CounterRng(seed).substream(0x5747u);
  std::vector<StateVector> states;
  states.reserve(count);
  for (std::uint64_t draw = 0; states.size() < count; ++draw) {
    const Vec3 v = random_unit_vector(rng, draw);
    const bool near_direction = std::any_of(pent.dirs.begin(), pent.dirs.end(), [&](const Direction& d) {
      return std::min(norm(v - d.vec()), norm(v + d.vec())) < kNearDirection;
    });
    if (!near_direction) states.push_back(StateVector::normalized(v));
  }
  return states;
}

std::vector<std::pair<double, StateVector>> sweep_states(const Pentagram& pent, unsigned steps) {
  const Direction& target = pent.at(1);
  const Direction hinge = Direction::normalized(cross(pent.axis, target));
  const double span = std::acos(std::clamp(dot(pent.axis, target), -1.0, 1.0));
  std::vector<std::pair<double, StateVector>> out;
  out.reserve(steps + 1);
  for (unsigned k = 0; k <= steps; ++k) {
    const double angle = span * k / steps;
    out.emplace_back(angle, StateVector::normalized(rotate_about(hinge, angle, pent.axis.vec())));
  }
  return out;
}

Report build_report(const ExperimentConfig& config) {
  switch (config.command) {
    case Command::pentagram:
      return pentagram_report(config);
    case Command::qm_sum:
      return qm_sum_report(config);
    case Command::bounds:
      return bounds_report(config);
    case Command::hvm_corr:
      return hvm_corr_report(config);
    case Command::hvm_sample:
      return hvm_sample_report(config);
    case Command::verify:
      return verify_report(config);
    case Command::sweep:
      return sweep_report(config);
  }
  throw UsageError("unknown command");
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string render_csv(const Table& table) {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) out += ',';
      out += csv_field(cells[k]);
    }
    out += '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
  return out;
}

std::string render(const Report& report, OutputFormat format) {
  if (format == OutputFormat::csv) return render_csv(report.table);
  return report.json.dump(2) + "\n";
}

void emit_report(const Report& report, OutputFormat format, const std::optional<std::string>& path,
                 std::ostream& out) {
  const std::string text = render(report, format);
  if (!path) {
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing report to standard output");
    return;
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output path '" + *path + "'");
  file << text;
  file.close();
  if (!file) throw IoError("failed writing report to '" + *path + "'");
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  Report report;
  try {
    report = build_report(config);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsageError;
  }
  try {
    emit_report(report, config.format, config.output_path, out);
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIoError;
  }
  if (!report.pass) {
    err << to_string(config.command) << ": tolerance violation\n";
    return kToleranceViolation;
  }
  return kPass;
}

}  // namespace kcbs::harness
