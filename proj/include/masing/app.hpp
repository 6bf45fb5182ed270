#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "masing/curves.hpp"
#include "masing/error.hpp"
#include "masing/field.hpp"
#include "masing/io.hpp"
#include "masing/march.hpp"

namespace masing::app {

/// Process exit codes. The table is part of the public interface.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,         ///< bad command line or configuration, missing input
  kMultivalued = 3,   ///< image curves not injective: a multivalued solution
  kInstability = 4,   ///< stability monitor abort
  kEllipticity = 5,   ///< D <= 0 reached
  kBoxExit = 6,       ///< state left the field box
  kPrecondition = 7,  ///< roundtrip input is not a regular strictly convex Jordan curve
  kMismatch = 8,      ///< verification or round-trip distance above threshold
  kNonFinite = 9,     ///< non-finite state or coefficient
  kNoGraph = 10,      ///< no level off the axis with J > 0
};

int exit_code_for(ErrorKind kind);

/// Every configuration key with its default value.
io::json default_config();

/// Applies "dotted.key=value"; the value is parsed as JSON when possible and
/// taken as a string otherwise. Throws Error(InvalidArgument) for unknown keys.
void apply_override(io::json& config, const std::string& assignment);

struct ClassifyOptions {
  int n_grid = 1024;
  double tol = kDefaultCurveTolerance;
};

struct RoundtripOptions {
  bool reflect = true;
  double threshold = 1e-3;
  double r0_fraction = 0.8;  ///< r0 = r0_fraction · r_max of the patch
  int radii = 5;
  int n_angles = 256;
  int fit_degree = 32;
};

struct VerifyOptions {
  std::string oracle = "radial-fig1";
  double z_tolerance = 1e-4;
  double gradient_tolerance = 1e-4;
  double limit_tolerance = 1e-6;
  double r0 = 0.1;
};

/// Fully resolved configuration: every referenced file has been read and
/// parsed and every parameter validated.
struct RunConfig {
  std::string command;
  io::json effective;  ///< the merged JSON configuration
  std::string curve_label;
  PeriodicCurve curve;
  CoefficientField field;
  MarchParams march;
  double perturbation = 0.0;  ///< std. deviation of noise added to the axis data
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;
  bool emit_csv = true;
  bool emit_json = true;
  bool emit_svg = false;
  ClassifyOptions classify;
  RoundtripOptions roundtrip;
  VerifyOptions verify;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"construct", "roundtrip", "verify", "plot"};
  return names;
}

/// Merges defaults, the config file (if any) and overrides into one document.
/// Relative paths in the file are resolved against its directory.
io::json effective_config(const std::filesystem::path& config_file,
                          const std::vector<std::string>& overrides);

/// Fail-fast validation. Throws Error with the offending key in the message.
RunConfig resolve_config(const std::string& command, const io::json& effective);

/// Runs one command, writing artifacts under cfg.out_dir; returns the exit code.
int run(const RunConfig& cfg, std::ostream& log);

/// File names written into the output directory.
inline constexpr const char* kStripFile = "strip.csv";
inline constexpr const char* kPatchFile = "patch.csv";
inline constexpr const char* kReportFile = "report.json";
inline constexpr const char* kRecoveredFile = "recovered_curve.json";
inline constexpr const char* kGradientSvg = "gradient_curves.svg";
inline constexpr const char* kImageSvg = "image_curves.svg";
inline constexpr const char* kResidualSvg = "residual_strip.svg";

}  // namespace masing::app
