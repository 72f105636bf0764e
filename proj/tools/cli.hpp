#pragma once

// Command-line front end. run_cli is the whole program minus main(), so
// tests can drive it in-process.

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "pseudocp/examples.hpp"

namespace pseudocp::cli {

enum ExitCode : int {
  kPass = 0,
  kVerifyFailed = 1,
  kUsage = 2,
  kPrecondition = 3,
  kIo = 4,
};

struct RunConfig {
  double tau_light = 1e-6;
  double sphere_tol = 1e-10;
  double ode_tol = 1e-3;
  double verify_tol = 1e-4;
  int grid_s = 5, grid_t = 5, grid_leaf = 4;
  std::string out;
  std::string format;
  std::vector<int> examples{1, 2, 3, 4};
};

/// Thrown for malformed flags, configs and input files.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RunConfig load_config(const std::string& path);
void validate(const RunConfig& cfg);

/// "n,p"
Signature parse_signature(const std::string& text);
/// "SxTxL" (also accepts the multiplication sign).
std::array<int, 3> parse_grid(const std::string& text);

/// Curve file: {"signature": {"n","p"}, "kind": "closed_form" | "samples", "data": {...}}.
SampledCurve parse_curve(const nlohmann::json& doc, const RunConfig& cfg);

/// Writes through a temporary file in the same directory, then renames.
void write_atomic(const std::string& path, const std::string& content);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pseudocp::cli
