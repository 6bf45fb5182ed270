#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "masing/curves.hpp"
#include "masing/field.hpp"
#include "masing/spectral.hpp"
#include "masing/state.hpp"

namespace masing {

/// Five periodic fields on one v-level, indexed by Component.
using Level = std::array<std::vector<double>, kNumComponents>;

Level make_level(int n_u);
State5 state_at(const Level& level, int j);

enum class StopPolicy { Raise, Truncate };

struct MarchParams {
  double R = 0.15;            ///< strip height
  int n_u = 128;              ///< periodic grid size, a power of two
  double dv = 1e-3;           ///< step size (> 0; direction set by `backward`)
  FilterParams filter;
  double growth_threshold = 1e-3;  ///< high-mode energy fraction that triggers an abort
  double noise_floor = 1e-9;       ///< amplitude, relative to the level scale, below which spectra are not judged
  StopPolicy on_stop = StopPolicy::Raise;
  bool backward = false;  ///< march towards v < 0

  /// Throws Error(InvalidArgument) on inconsistent parameters.
  void validate(int curve_degree) const;
  int steps() const;
};

enum class StopReason { Completed, BoxExit, Ellipticity, NonFinite, Instability };
std::string_view to_string(StopReason r);

struct LevelDiagnostics {
  double high_mode_fraction = 0.0;  ///< max over the five fields
  double min_D = 0.0;
};

/// Grid solution of Z_v = M̃(Z) Z_u on the strip 0 <= v <= R (or −R <= v <= 0).
struct StripSolution {
  PeriodicCurve curve;
  CoefficientField field;
  MarchParams params;
  std::vector<double> v;         ///< levels; v[0] = 0
  std::vector<Level> levels;
  std::vector<LevelDiagnostics> diagnostics;
  StopReason stop = StopReason::Completed;
  std::string stop_message;

  int n_u() const { return params.n_u; }
  std::size_t num_levels() const { return levels.size(); }
  double u(int j) const { return kTwoPi * j / params.n_u; }
};

/// Z_u by spectral differentiation, then M̃·Z_u row by row:
///   x_v = (B x_u − A y_u − q_u)/√D
///   y_v = (C x_u − B y_u + p_u)/√D
///   z_v = ((Bp + Cq) x_u − (Ap + Bq) y_u + q p_u − p q_u)/√D
///   p_v = (−E y_u + B p_u + C q_u)/√D
///   q_v = (E x_u − A p_u − B q_u)/√D
/// Field errors are rethrown with the offending grid index.
Level assemble_rhs(const Level& level, const CoefficientField& field, Spectral& spectral);
Level assemble_rhs(const Level& level, const CoefficientField& field);

/// M̃·Z_u at one node given Z and Z_u.
State5 rhs_at(const State5& z, const State5& z_u, const FieldValues& f);

struct MonitorReport {
  std::array<double, kNumComponents> fraction{};
  double max_fraction = 0.0;
  bool exceeded = false;
};

/// Energy fraction, per field, in the top third of the retained band. The
/// retained band is 1 <= k <= k_c with σ(k) >= 1/2, the modes the filter
/// passes; fields whose retained energy is under the noise floor score 0.
MonitorReport high_mode_fraction(const Level& level, const MarchParams& params,
                                 Spectral& spectral);

/// Tracks consecutive threshold exceedances; aborts after two in a row.
class StabilityMonitor {
 public:
  explicit StabilityMonitor(const MarchParams& params) : params_(params) {}
  /// Returns the report; `abort()` turns true once two consecutive levels exceed.
  MonitorReport observe(const Level& level, Spectral& spectral);
  bool abort() const { return consecutive_ >= 2; }

 private:
  MarchParams params_;
  int consecutive_ = 0;
};

/// Axis data (0, 0, 0, α(u_j), β(u_j)).
Level initial_level(const PeriodicCurve& curve, int n_u);

/// Classical RK4 in v from the axis data, exponential filter after each step,
/// stability monitor on every accepted level. Throws MarchError on box exit,
/// ellipticity violation, non-finite state or instability unless
/// params.on_stop == Truncate, in which case the strip ends at the last good
/// level and `stop` records why.
StripSolution march(const PeriodicCurve& curve, const CoefficientField& field,
                    const MarchParams& params);

/// Same, from explicit level-0 data (used to inject perturbations).
StripSolution march_from(const PeriodicCurve& curve, const CoefficientField& field,
                         const MarchParams& params, Level initial);

}  // namespace masing
