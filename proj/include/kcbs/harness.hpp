#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kcbs/geometry.hpp"
#include "kcbs/quantum.hpp"

namespace kcbs::harness {

inline constexpr std::string_view kVersion = "1.0.0";

enum ExitCode : int { kPass = 0, kToleranceViolation = 1, kUsageError = 2, kIoError = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { pentagram, qm_sum, bounds, hvm_corr, hvm_sample, verify, sweep };
enum class OutputFormat { json, csv };

Command parse_command(std::string_view name);
std::string_view to_string(Command command);
OutputFormat parse_format(std::string_view name);

/// --state argument: symmetric | dir:<k> | vec:<x>,<y>,<z> | random:<n>
struct StateSpec {
  enum class Kind { symmetric, direction, explicit_vector, random };
  Kind kind = Kind::symmetric;
  int direction = 1;
  Vec3 vector{};
  std::uint64_t count = 0;
};

/// Throws UsageError for malformed specs, labels outside 1..5, zero counts,
/// and explicit vectors whose norm differs from 1 by more than 1e-6.
StateSpec parse_state_spec(std::string_view text);

struct ExperimentConfig {
  Command command = Command::verify;
  StateSpec state{};
  std::optional<std::uint64_t> samples;  // per-command default when empty
  std::uint64_t seed = 20120710;
  double tolerance = 1e-9;
  OutputFormat format = OutputFormat::json;
  std::optional<std::string> output_path;
  unsigned steps = 20;
  unsigned workers = 1;
};

/// Default Monte Carlo sample counts.
inline constexpr std::uint64_t kDefaultSamples = 1'000'000;
inline constexpr std::uint64_t kDefaultVerifySamples = 10'000;
inline constexpr std::uint64_t kDefaultRandomStates = 1000;

/// Header row plus data rows, already formatted.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  nlohmann::ordered_json json;
  Table table;
  bool pass = true;
};

/// Random real states for sweeps: normalized Gaussian triples from the seeded
/// counter stream, redrawn when within 1e-6 of any pentagram direction.
std::vector<StateVector> random_states(const Pentagram& pent, std::uint64_t count, std::uint64_t seed);

/// The symmetric axis rotated toward direction 1 in `steps` equal angular steps
/// (steps + 1 states, both endpoints included). Returns (angle, state) pairs.
std::vector<std::pair<double, StateVector>> sweep_states(const Pentagram& pent, unsigned steps);

/// Builds the report for a command. Throws UsageError for configs the command
/// cannot use.
Report build_report(const ExperimentConfig& config);

/// Shortest round-trip decimal form.
std::string format_double(double value);

std::string render_csv(const Table& table);
std::string render(const Report& report, OutputFormat format);

/// Writes to `path`, or to `out` when no path is given. Throws IoError.
void emit_report(const Report& report, OutputFormat format, const std::optional<std::string>& path,
                 std::ostream& out);

/// Full pipeline with exit status: 0 pass, 1 tolerance violation, 2 usage, 3 I/O.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace kcbs::harness
