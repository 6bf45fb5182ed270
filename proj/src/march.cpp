#include "masing/march.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "masing/error.hpp"

namespace masing {

namespace {

constexpr std::size_t kUnknownLevel = std::numeric_limits<std::size_t>::max();

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

StopReason reason_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfBox:
    case ErrorKind::BoxExit: return StopReason::BoxExit;
    case ErrorKind::Ellipticity: return StopReason::Ellipticity;
    case ErrorKind::Instability: return StopReason::Instability;
    default: return StopReason::NonFinite;
  }
}

ErrorKind kind_for(StopReason r) {
  switch (r) {
    case StopReason::BoxExit: return ErrorKind::BoxExit;
    case StopReason::Ellipticity: return ErrorKind::Ellipticity;
    case StopReason::Instability: return ErrorKind::Instability;
    default: return ErrorKind::NonFinite;
  }
}

}  // namespace

Level make_level(int n_u) {
  Level l;
  for (auto& f : l) f.assign(n_u, 0.0);
  return l;
}

State5 state_at(const Level& level, int j) {
  return {level[kX][j], level[kY][j], level[kZ][j], level[kP][j], level[kQ][j]};
}

void MarchParams::validate(int curve_degree) const {
  auto bad = [](const std::string& msg) { throw Error(ErrorKind::InvalidArgument, msg); };
  if (!(R > 0.0) || !std::isfinite(R)) bad("march: R must be positive");
  if (!(dv > 0.0) || !std::isfinite(dv)) bad("march: dv must be positive");
  if (dv > R) bad("march: dv must not exceed R");
  if (!is_power_of_two(n_u) || n_u < 4) bad("march: n_u must be a power of two >= 4");
  if (n_u < 4 * (curve_degree + 1)) {
    bad("march: n_u must be at least 4*(degree+1) = " + std::to_string(4 * (curve_degree + 1)));
  }
  if (!(filter.strength >= 0.0) || filter.order < 1 || !(filter.cutoff_fraction > 0.0) ||
      filter.cutoff_fraction > 1.0) {
    bad("march: invalid filter parameters");
  }
  if (!(growth_threshold > 0.0)) bad("march: growth_threshold must be positive");
  if (!(noise_floor >= 0.0)) bad("march: noise_floor must be non-negative");
}

int MarchParams::steps() const { return static_cast<int>(std::floor(R / dv + 1e-9)); }

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::Completed: return "completed";
    case StopReason::BoxExit: return "box-exit";
    case StopReason::Ellipticity: return "ellipticity-violation";
    case StopReason::NonFinite: return "non-finite";
    case StopReason::Instability: return "instability-abort";
  }
  return "unknown";
}

State5 rhs_at(const State5& z, const State5& zu, const FieldValues& f) {
  const double inv = 1.0 / std::sqrt(f.D);
  State5 out;
  out.x = (f.B * zu.x - f.A * zu.y - zu.q) * inv;
  out.y = (f.C * zu.x - f.B * zu.y + zu.p) * inv;
  out.z = ((f.B * z.p + f.C * z.q) * zu.x - (f.A * z.p + f.B * z.q) * zu.y + z.q * zu.p -
           z.p * zu.q) *
          inv;
  out.p = (-f.E * zu.y + f.B * zu.p + f.C * zu.q) * inv;
  out.q = (f.E * zu.x - f.A * zu.p - f.B * zu.q) * inv;
  return out;
}

Level assemble_rhs(const Level& level, const CoefficientField& field, Spectral& spectral) {
  const int n = spectral.size();
  Level du = make_level(n);
  for (int c = 0; c < kNumComponents; ++c) spectral.derivative(level[c], du[c]);
  Level out = make_level(n);
  for (int j = 0; j < n; ++j) {
    const State5 z = state_at(level, j);
    FieldValues f;
    try {
      f = eval_field(field, z);
    } catch (const Error& e) {
      throw MarchError(e.kind(), std::string(e.what()) + " (grid index " + std::to_string(j) + ")",
                       kUnknownLevel, j);
    }
    const State5 r = rhs_at(z, state_at(du, j), f);
    out[kX][j] = r.x;
    out[kY][j] = r.y;
    out[kZ][j] = r.z;
    out[kP][j] = r.p;
    out[kQ][j] = r.q;
  }
  return out;
}

Level assemble_rhs(const Level& level, const CoefficientField& field) {
  Spectral sp(static_cast<int>(level[0].size()));
  return assemble_rhs(level, field, sp);
}

MonitorReport high_mode_fraction(const Level& level, const MarchParams& params,
                                 Spectral& spectral) {
  const int n = spectral.size();
  int k_retained = 0;
  for (int k = 1; k <= n / 2; ++k) {
    if (params.filter.sigma(k, n) >= 0.5) k_retained = k;
  }
  const double k_top = 2.0 * k_retained / 3.0;

  double scale = 0.0;
  for (const auto& f : level) {
    for (double v : f) scale = std::max(scale, std::abs(v));
  }
  const double floor_amp = params.noise_floor * scale;
  const double floor = floor_amp * floor_amp;

  MonitorReport report;
  for (int c = 0; c < kNumComponents; ++c) {
    const auto e = spectral.mode_energy(level[c]);
    double retained = 0.0;
    double top = 0.0;
    for (int k = 1; k <= k_retained; ++k) {
      retained += e[k];
      if (k > k_top) top += e[k];
    }
    const double denom = std::max(retained, floor);
    report.fraction[c] = denom > 0.0 ? top / denom : 0.0;
    if (!std::isfinite(report.fraction[c])) report.fraction[c] = 1.0;
    report.max_fraction = std::max(report.max_fraction, report.fraction[c]);
  }
  report.exceeded = report.max_fraction > params.growth_threshold;
  return report;
}

MonitorReport StabilityMonitor::observe(const Level& level, Spectral& spectral) {
  auto report = high_mode_fraction(level, params_, spectral);
  consecutive_ = report.exceeded ? consecutive_ + 1 : 0;
  return report;
}

Level initial_level(const PeriodicCurve& curve, int n_u) {
  Level l = make_level(n_u);
  for (int j = 0; j < n_u; ++j) {
    const auto c = eval_curve(curve, kTwoPi * j / n_u);
    l[kP][j] = c.alpha;
    l[kQ][j] = c.beta;
  }
  return l;
}

StripSolution march(const PeriodicCurve& curve, const CoefficientField& field,
                    const MarchParams& params) {
  params.validate(curve.degree());
  return march_from(curve, field, params, initial_level(curve, params.n_u));
}

namespace {

double level_min_D(const Level& level, const CoefficientField& field) {
  double min_d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < level[0].size(); ++j) {
    const State5 s = state_at(level, static_cast<int>(j));
    if (!s.finite()) {
      throw MarchError(ErrorKind::NonFinite, "non-finite state (grid index " + std::to_string(j) + ")",
                       kUnknownLevel, j);
    }
    try {
      min_d = std::min(min_d, eval_field(field, s).D);
    } catch (const Error& e) {
      throw MarchError(e.kind(), std::string(e.what()) + " (grid index " + std::to_string(j) + ")",
                       kUnknownLevel, j);
    }
  }
  return min_d;
}

void compensated_add(double& sum, double& carry, double increment) {
  const double y = increment + carry;
  const double t = sum + y;
  carry = y - (t - sum);
  sum = t;
}

void axpy(Level& out, const Level& base, double h, const Level& k) {
  for (int c = 0; c < kNumComponents; ++c) {
    for (std::size_t j = 0; j < base[c].size(); ++j) out[c][j] = base[c][j] + h * k[c][j];
  }
}

}  // namespace

StripSolution march_from(const PeriodicCurve& curve, const CoefficientField& field,
                         const MarchParams& params, Level initial) {
  params.validate(curve.degree());
  const int n = params.n_u;
  for (const auto& f : initial) {
    if (static_cast<int>(f.size()) != n) {
      throw Error(ErrorKind::InvalidArgument, "march: initial level has the wrong size");
    }
  }

  StripSolution strip;
  strip.curve = curve;
  strip.field = field;
  strip.params = params;

  Spectral spectral(n);
  StabilityMonitor monitor(params);

  // Level 0 must sit inside the box: a precondition, raised regardless of policy.
  double min_d0 = 0.0;
  try {
    min_d0 = level_min_D(initial, field);
  } catch (const MarchError& e) {
    const ErrorKind kind = e.kind() == ErrorKind::OutOfBox ? ErrorKind::BoxExit : e.kind();
    throw MarchError(kind, std::string("initial data: ") + e.what(), 0, e.node());
  }
  const auto report0 = monitor.observe(initial, spectral);
  strip.v.push_back(0.0);
  strip.levels.push_back(std::move(initial));
  strip.diagnostics.push_back({report0.max_fraction, min_d0});

  const int steps = params.steps();
  const double h = params.backward ? -params.dv : params.dv;
  Level stage = make_level(n);
  Level next = make_level(n);
  // Low-order parts lost when adding increments; keeps round-off from growing
  // with the number of steps.
  Level carry = make_level(n);
  std::vector<double> delta(n);

  for (int k = 1; k <= steps; ++k) {
    const Level& y = strip.levels.back();
    try {
      const Level k1 = assemble_rhs(y, field, spectral);
      axpy(stage, y, 0.5 * h, k1);
      const Level k2 = assemble_rhs(stage, field, spectral);
      axpy(stage, y, 0.5 * h, k2);
      const Level k3 = assemble_rhs(stage, field, spectral);
      axpy(stage, y, h, k3);
      const Level k4 = assemble_rhs(stage, field, spectral);
      for (int c = 0; c < kNumComponents; ++c) {
        for (int j = 0; j < n; ++j) {
          next[c][j] = y[c][j];
          compensated_add(next[c][j], carry[c][j],
                          h / 6.0 * (k1[c][j] + 2.0 * k2[c][j] + 2.0 * k3[c][j] + k4[c][j]));
        }
        spectral.filter_correction(next[c], params.filter, delta);
        for (int j = 0; j < n; ++j) compensated_add(next[c][j], carry[c][j], delta[j]);
      }
      const double min_d = level_min_D(next, field);
      const auto report = monitor.observe(next, spectral);
      if (monitor.abort()) {
        throw MarchError(ErrorKind::Instability,
                         "instability abort: high-mode energy fraction " +
                             std::to_string(report.max_fraction) + " above threshold for two levels",
                         k, 0);
      }
      strip.v.push_back(k * h);
      strip.levels.push_back(next);
      strip.diagnostics.push_back({report.max_fraction, min_d});
    } catch (const MarchError& e) {
      const StopReason reason = reason_for(e.kind());
      std::string msg = std::string(to_string(reason)) + " at level " + std::to_string(k) +
                        " (v = " + std::to_string(k * h) + "): " + e.what();
      if (params.on_stop == StopPolicy::Raise) {
        throw MarchError(kind_for(reason), msg, k, e.node());
      }
      strip.stop = reason;
      strip.stop_message = std::move(msg);
      return strip;
    }
  }
  strip.stop = StopReason::Completed;
  return strip;
}

}  // namespace masing
