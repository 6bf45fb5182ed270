#include "masing/app.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>

#include "masing/error.hpp"
#include "masing/geometry.hpp"
#include "masing/graph.hpp"
#include "masing/limit.hpp"
#include "masing/svg.hpp"

namespace masing::app {

namespace fs = std::filesystem;
using io::json;

namespace {

constexpr const char* kReportSchemaId = "ma-singular/report/1";

[[noreturn]] void config_fail(const std::string& key, const std::string& what) {
  throw Error(ErrorKind::InvalidArgument, "config '" + key + "': " + what);
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

/// Rejects keys of `user` that do not appear in `defaults`. Keys whose default
/// is null take any value; their content is validated when resolved.
void check_keys(const json& defaults, const json& user, const std::string& prefix) {
  if (!user.is_object()) config_fail(prefix.empty() ? "<root>" : prefix, "must be an object");
  for (const auto& [key, val] : user.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (!defaults.contains(key)) config_fail(path, "unknown key");
    const auto& d = defaults.at(key);
    if (d.is_object() && !val.is_null()) check_keys(d, val, path);
  }
}

void deep_merge(json& base, const json& patch) {
  for (const auto& [key, val] : patch.items()) {
    if (val.is_object() && base.contains(key) && base[key].is_object()) {
      deep_merge(base[key], val);
    } else {
      base[key] = val;
    }
  }
}

template <typename T>
T get(const json& cfg, const std::string& dotted) {
  const json* node = &cfg;
  std::size_t start = 0;
  while (true) {
    const auto dot = dotted.find('.', start);
    const std::string key = dotted.substr(start, dot - start);
    if (!node->is_object() || !node->contains(key)) config_fail(dotted, "missing");
    node = &node->at(key);
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  try {
    return node->get<T>();
  } catch (const json::exception&) {
    config_fail(dotted, "has the wrong type (" + node->dump() + ")");
  }
}

bool is_set(const json& cfg, const char* section, const char* key) {
  return cfg.at(section).contains(key) && !cfg.at(section).at(key).is_null();
}

PeriodicCurve resolve_curve(const json& cfg, std::string& label) {
  const bool has_file = is_set(cfg, "curve", "file");
  const bool has_literal = is_set(cfg, "curve", "literal");
  if (has_file && has_literal) config_fail("curve", "set at most one of 'file' and 'literal'");
  PeriodicCurve curve;
  try {
    if (has_literal) {
      curve = io::curve_from_json(cfg["curve"]["literal"]);
      label = "literal";
    } else if (has_file) {
      const auto path = get<std::string>(cfg, "curve.file");
      curve = io::curve_from_json(io::read_json_file(path));
      label = path;
    } else {
      label = get<std::string>(cfg, "curve.builtin");
      curve = builtin_curve(label);
    }
  } catch (const Error& e) {
    throw Error(e.kind(), std::string("config 'curve': ") + e.what());
  }
  if (get<bool>(cfg, "curve.primitive")) curve = primitive(curve);
  if (get<bool>(cfg, "curve.orient_negatively")) curve = oriented_negatively(curve);
  return curve;
}

CoefficientField resolve_field(const json& cfg) {
  const bool has_file = is_set(cfg, "field", "file");
  const bool has_literal = is_set(cfg, "field", "literal");
  const bool has_curvature = is_set(cfg, "field", "curvature");
  if (has_file + has_literal + has_curvature > 1) {
    config_fail("field", "set at most one of 'file', 'literal' and 'curvature'");
  }
  try {
    CoefficientField f;
    if (has_literal) {
      f = io::field_from_json(cfg["field"]["literal"], "literal");
    } else if (has_file) {
      const auto path = get<std::string>(cfg, "field.file");
      f = io::field_from_json(io::read_json_file(path), path);
    } else if (has_curvature) {
      f = curvature_to_field(get<std::string>(cfg, "field.curvature"), default_box());
    } else {
      f = builtin_field(get<std::string>(cfg, "field.builtin"));
    }
    if (is_set(cfg, "field", "box")) f.box = io::box_from_json(cfg["field"]["box"]);
    return f;
  } catch (const Error& e) {
    throw Error(e.kind(), std::string("config 'field': ") + e.what());
  }
}

json classification_json(const CurveReport& r) {
  return {{"regularity_margin", number(r.regularity_margin)},
          {"convexity_margin", number(r.convexity_margin)},
          {"convexity_max", number(r.convexity_max)},
          {"u_star", number(r.u_star)},
          {"orientation", to_string(r.orientation)},
          {"regular", r.regular},
          {"strictly_convex", r.strictly_convex},
          {"embedded", r.embedded},
          {"period_divisor", r.period_divisor},
          {"jordan", r.jordan()},
          {"tolerance", r.tolerance}};
}

json error_json(const Error& e) {
  json out = {{"kind", to_string(e.kind())}, {"message", e.what()}};
  if (const auto* m = dynamic_cast<const MarchError*>(&e)) {
    if (m->level() != static_cast<std::size_t>(-1)) out["level"] = m->level();
    out["node"] = m->node();
  }
  return out;
}

int exit_for_stop(StopReason r) {
  switch (r) {
    case StopReason::Completed: return kOk;
    case StopReason::BoxExit: return kBoxExit;
    case StopReason::Ellipticity: return kEllipticity;
    case StopReason::NonFinite: return kNonFinite;
    case StopReason::Instability: return kInstability;
  }
  return kInternal;
}

struct Construction {
  StripSolution strip;
  JacobianField jac;
  GraphPatch patch;
  ResidualReport residual;
};

Level perturbed_axis_data(const RunConfig& cfg, const PeriodicCurve& curve) {
  Level level = initial_level(curve, cfg.march.n_u);
  if (cfg.perturbation > 0.0) {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> noise(0.0, cfg.perturbation);
    for (auto& f : level) {
      for (auto& v : f) v += noise(rng);
    }
  }
  return level;
}

/// march → jacobian → reconstruct_graph → pde_residual, recording each stage in `report`.
Construction construct(const RunConfig& cfg, const PeriodicCurve& curve,
                       const CoefficientField& field, json& report) {
  Construction c;
  c.strip = march_from(curve, field, cfg.march, perturbed_axis_data(cfg, curve));
  double max_fraction = 0.0, min_d = INFINITY;
  for (const auto& d : c.strip.diagnostics) {
    max_fraction = std::max(max_fraction, d.high_mode_fraction);
    min_d = std::min(min_d, d.min_D);
  }
  report["march"] = {{"stop_reason", to_string(c.strip.stop)},
                     {"stop_message", c.strip.stop_message},
                     {"levels", c.strip.num_levels()},
                     {"v_reached", c.strip.v.back()},
                     {"max_high_mode_fraction", number(max_fraction)},
                     {"min_D", number(min_d)}};
  c.jac = jacobian(c.strip);
  report["jacobian"] = {{"min_off_axis", number(c.jac.min_off_axis)},
                        {"v_positive", c.jac.v_positive},
                        {"last_positive_level", c.jac.last_positive_level}};
  c.patch = reconstruct_graph(c.strip);
  report["patch"] = {{"r_min", number(c.patch.r_min)},
                     {"r_max", number(c.patch.r_max)},
                     {"multivalued", c.patch.multivalued},
                     {"levels", c.patch.num_levels()},
                     {"samples", c.patch.samples.size()}};
  c.residual = pde_residual(c.strip, field);
  report["residual"] = {{"max_abs", number(c.residual.max_abs)},
                        {"rms", number(c.residual.rms)},
                        {"count", c.residual.count}};
  return c;
}

void ensure_out_dir(const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create '" + cfg.out_dir.string() + "': " + ec.message());
}

void write_output(const RunConfig& cfg, json& report, const char* name, const std::string& text) {
  io::write_text_file(cfg.out_dir / name, text);
  report["outputs"].push_back(name);
}

void write_plots(const RunConfig& cfg, json& report, const PeriodicCurve& input,
                 const std::optional<PeriodicCurve>& recovered, const GraphPatch& patch) {
  write_output(cfg, report, kGradientSvg, svg::gradient_curves(input, recovered));
  write_output(cfg, report, kImageSvg, svg::image_curves(patch));
  write_output(cfg, report, kResidualSvg, svg::residual_strip(patch));
}

json branch_json(int epsilon, double distance, const LimitGradientResult& lg) {
  return {{"epsilon", epsilon},
          {"hausdorff", number(distance)},
          {"extrapolation_residual", number(lg.extrapolation_residual)},
          {"recovered_curve", io::curve_to_json(lg.curve)},
          {"recovered_classification", classification_json(lg.report)}};
}

LimitGradientResult extract(const RunConfig& cfg, const GraphPatch& patch) {
  const double r0 = cfg.roundtrip.r0_fraction * patch.r_max;
  const auto radii = geometric_radii(r0, cfg.roundtrip.radii);
  if (!(radii.back() > patch.r_min)) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "annulus [%.4g, %.4g] too thin for %d radii from r0 = %.4g", patch.r_min,
                  patch.r_max, cfg.roundtrip.radii, r0);
    throw Error(ErrorKind::Coverage, buf);
  }
  LimitGradientOptions opt;
  opt.n_angles = cfg.roundtrip.n_angles;
  opt.fit_degree = cfg.roundtrip.fit_degree;
  return limit_gradient(patch_sampler(patch), radii, opt);
}

int cmd_construct(const RunConfig& cfg, json& report, std::ostream& log) {
  const auto c = construct(cfg, cfg.curve, cfg.field, report);
  log << "march: " << to_string(c.strip.stop) << ", " << c.strip.num_levels() << " levels\n";
  log << "patch: r in [" << c.patch.r_min << ", " << c.patch.r_max << "], "
      << (c.patch.multivalued ? "multivalued" : "single-valued") << "\n";
  log << "residual: max " << c.residual.max_abs << ", rms " << c.residual.rms << "\n";
  if (cfg.emit_csv) {
    write_output(cfg, report, kStripFile, io::strip_to_csv(c.strip));
    write_output(cfg, report, kPatchFile, io::patch_to_csv(c.patch));
  }
  if (cfg.emit_svg) write_plots(cfg, report, cfg.curve, std::nullopt, c.patch);
  if (c.strip.stop != StopReason::Completed) {
    report["status"] = "truncated";
    return exit_for_stop(c.strip.stop);
  }
  if (c.patch.multivalued) {
    report["status"] = "multivalued";
    return kMultivalued;
  }
  return kOk;
}

int cmd_roundtrip(const RunConfig& cfg, const CurveReport& cls, json& report, std::ostream& log) {
  if (!(cls.jordan() && cls.strictly_convex)) {
    report["status"] = "precondition-failed";
    report["error"] = {{"kind", "precondition"},
                       {"message", "roundtrip needs a regular, strictly convex, negatively "
                                   "oriented Jordan curve"}};
    log << "precondition failed: curve is not a regular strictly convex Jordan curve\n";
    return kPrecondition;
  }
  const auto c = construct(cfg, cfg.curve, cfg.field, report);
  if (c.strip.stop != StopReason::Completed) {
    report["status"] = "truncated";
    return exit_for_stop(c.strip.stop);
  }
  const auto lg = extract(cfg, c.patch);
  const double d0 = curve_hausdorff(cfg.curve, lg.curve);
  log << "epsilon 0: Hausdorff " << d0 << "\n";
  json branches = json::array({branch_json(0, d0, lg)});
  bool ok = d0 <= cfg.roundtrip.threshold;

  if (cfg.roundtrip.reflect) {
    if (!cfg.field.is_pure()) {
      report["roundtrip_note"] = "reflection skipped: field is not pure";
    } else {
      const auto mirrored = reflect_field(cfg.field);
      json sub;
      const auto c1 = construct(cfg, cfg.curve, mirrored, sub);
      const auto reflected = reflect_solution(c1.patch, mirrored);
      const auto lg1 = extract(cfg, reflected);
      const double d1 = curve_hausdorff(cfg.curve, lg1.curve);
      log << "epsilon 1: Hausdorff " << d1 << "\n";
      branches.push_back(branch_json(1, d1, lg1));
      ok = ok && d1 <= cfg.roundtrip.threshold;
    }
  }
  report["roundtrip"] = {{"threshold", cfg.roundtrip.threshold}, {"branches", branches}};
  if (cfg.emit_csv) {
    write_output(cfg, report, kStripFile, io::strip_to_csv(c.strip));
    write_output(cfg, report, kPatchFile, io::patch_to_csv(c.patch));
  }
  if (cfg.emit_json) {
    write_output(cfg, report, kRecoveredFile, io::curve_to_json(lg.curve).dump(2) + "\n");
  }
  if (cfg.emit_svg) write_plots(cfg, report, cfg.curve, lg.curve, c.patch);
  if (!ok) {
    report["status"] = "mismatch";
    return kMismatch;
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg, json& report, std::ostream& log) {
  const auto c = construct(cfg, cfg.curve, cfg.field, report);
  double ez = 0.0, ep = 0.0, eq = 0.0;
  for (const auto& s : c.patch.samples) {
    const double r = std::hypot(s.x, s.y);
    const Vec2 g = radial_fig1_gradient(s.x, s.y);
    ez = std::max(ez, std::abs(s.z - radial_fig1_height(r)));
    ep = std::max(ep, std::abs(s.p - g[0]));
    eq = std::max(eq, std::abs(s.q - g[1]));
  }
  LimitGradientOptions opt;
  opt.n_angles = cfg.roundtrip.n_angles;
  opt.fit_degree = cfg.roundtrip.fit_degree;
  const auto lg =
      limit_gradient(radial_fig1_gradient, geometric_radii(cfg.verify.r0, cfg.roundtrip.radii), opt);
  const double dl = curve_hausdorff(builtin_curve("circle"), lg.curve);
  const bool ok = c.strip.stop == StopReason::Completed && ez <= cfg.verify.z_tolerance &&
                  std::max(ep, eq) <= cfg.verify.gradient_tolerance &&
                  dl <= cfg.verify.limit_tolerance;
  report["verify"] = {{"oracle", cfg.verify.oracle},
                      {"max_z_error", number(ez)},
                      {"max_p_error", number(ep)},
                      {"max_q_error", number(eq)},
                      {"oracle_limit_hausdorff", number(dl)},
                      {"oracle_limit_jordan", lg.report.jordan()},
                      {"z_tolerance", cfg.verify.z_tolerance},
                      {"gradient_tolerance", cfg.verify.gradient_tolerance},
                      {"limit_tolerance", cfg.verify.limit_tolerance},
                      {"passed", ok}};
  log << "verify " << cfg.verify.oracle << ": max|dz| " << ez << ", max|dp| " << ep
      << ", max|dq| " << eq << ", limit Hausdorff " << dl << "\n";
  if (cfg.emit_csv) {
    write_output(cfg, report, kStripFile, io::strip_to_csv(c.strip));
    write_output(cfg, report, kPatchFile, io::patch_to_csv(c.patch));
  }
  if (cfg.emit_svg) write_plots(cfg, report, cfg.curve, lg.curve, c.patch);
  if (!ok) {
    report["status"] = "mismatch";
    return kMismatch;
  }
  return kOk;
}

int cmd_plot(const RunConfig& cfg, std::ostream& log) {
  const auto report_path = cfg.out_dir / kReportFile;
  const auto patch_path = cfg.out_dir / kPatchFile;
  for (const auto& p : {report_path, patch_path}) {
    if (!fs::exists(p)) {
      throw Error(ErrorKind::Io, "plot: missing input '" + p.string() + "' (run construct first)");
    }
  }
  const auto prior = io::read_json_file(report_path);
  if (!prior.contains("input_curve")) throw Error(ErrorKind::Parse, "plot: report has no input_curve");
  const auto input = io::curve_from_json(prior.at("input_curve"));
  std::ifstream in(patch_path, std::ios::binary);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto patch = io::patch_from_csv(text);
  std::optional<PeriodicCurve> recovered;
  if (fs::exists(cfg.out_dir / kRecoveredFile)) {
    recovered = io::curve_from_json(io::read_json_file(cfg.out_dir / kRecoveredFile));
  }
  json dummy;
  write_plots(cfg, dummy, input, recovered, patch);
  for (const auto& name : dummy["outputs"]) log << "wrote " << (cfg.out_dir / name.get<std::string>()).string() << "\n";
  return kOk;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Instability: return kInstability;
    case ErrorKind::Ellipticity: return kEllipticity;
    case ErrorKind::OutOfBox:
    case ErrorKind::BoxExit: return kBoxExit;
    case ErrorKind::NonFinite: return kNonFinite;
    case ErrorKind::SingularJacobian: return kNoGraph;
    case ErrorKind::Coverage: return kMismatch;
    case ErrorKind::DegenerateSpeed: return kPrecondition;
    case ErrorKind::Parse:
    case ErrorKind::UnknownIdentifier:
    case ErrorKind::UnknownName:
    case ErrorKind::Hemisphere:
    case ErrorKind::NonPureField:
    case ErrorKind::InvalidArgument:
    case ErrorKind::Io: return kUsage;
  }
  return kInternal;
}

json default_config() {
  const RoundtripOptions rt;
  const VerifyOptions vf;
  const ClassifyOptions cl;
  return {
      {"curve",
       {{"builtin", "circle"},
        {"file", nullptr},
        {"literal", nullptr},
        {"primitive", false},
        {"orient_negatively", false}}},
      {"field",
       {{"builtin", "pure-one"},
        {"file", nullptr},
        {"literal", nullptr},
        {"curvature", nullptr},
        {"box", nullptr}}},
      {"march", io::params_to_json(MarchParams{})},
      {"perturbation", 0.0},
      {"seed", 0},
      {"output", {{"dir", "out"}, {"csv", true}, {"json", true}, {"svg", false}}},
      {"classify", {{"n_grid", cl.n_grid}, {"tol", cl.tol}}},
      {"roundtrip",
       {{"reflect", rt.reflect},
        {"threshold", rt.threshold},
        {"r0_fraction", rt.r0_fraction},
        {"radii", rt.radii},
        {"n_angles", rt.n_angles},
        {"fit_degree", rt.fit_degree}}},
      {"verify",
       {{"oracle", vf.oracle},
        {"z_tolerance", vf.z_tolerance},
        {"gradient_tolerance", vf.gradient_tolerance},
        {"limit_tolerance", vf.limit_tolerance},
        {"r0", vf.r0}}},
  };
}

void apply_override(json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw Error(ErrorKind::InvalidArgument, "--set expects key=value, got '" + assignment + "'");
  }
  const std::string dotted = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::exception&) {
    value = text;
  }
  const json defaults = default_config();
  const json* def = &defaults;
  json* node = &config;
  std::size_t start = 0;
  while (true) {
    const auto dot = dotted.find('.', start);
    const std::string key = dotted.substr(start, dot - start);
    if (!def->is_object() || !def->contains(key)) config_fail(dotted, "unknown key");
    def = &def->at(key);
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    if (!(*node)[key].is_object()) (*node)[key] = json::object();
    node = &(*node)[key];
    start = dot + 1;
  }
}

json effective_config(const fs::path& config_file, const std::vector<std::string>& overrides) {
  json cfg = default_config();
  if (!config_file.empty()) {
    json user = io::read_json_file(config_file);
    check_keys(default_config(), user, "");
    const fs::path base = config_file.parent_path();
    for (const char* section : {"curve", "field"}) {
      if (user.contains(section) && user[section].is_object() && user[section].contains("file") &&
          user[section]["file"].is_string()) {
        const fs::path p = user[section]["file"].get<std::string>();
        if (p.is_relative()) user[section]["file"] = (base / p).lexically_normal().string();
      }
    }
    deep_merge(cfg, user);
  }
  for (const auto& o : overrides) apply_override(cfg, o);
  return cfg;
}

RunConfig resolve_config(const std::string& command, const json& effective) {
  if (std::find(commands().begin(), commands().end(), command) == commands().end()) {
    throw Error(ErrorKind::InvalidArgument, "unknown command '" + command + "'");
  }
  check_keys(default_config(), effective, "");
  RunConfig cfg;
  cfg.command = command;
  cfg.effective = effective;
  cfg.out_dir = get<std::string>(effective, "output.dir");
  cfg.emit_csv = get<bool>(effective, "output.csv");
  cfg.emit_json = get<bool>(effective, "output.json");
  cfg.emit_svg = get<bool>(effective, "output.svg");
  if (command == "plot") return cfg;

  cfg.curve = resolve_curve(effective, cfg.curve_label);
  cfg.field = resolve_field(effective);
  cfg.march = io::params_from_json(effective.at("march"));
  cfg.march.validate(cfg.curve.degree());
  cfg.perturbation = get<double>(effective, "perturbation");
  if (!(cfg.perturbation >= 0.0)) config_fail("perturbation", "must be >= 0");
  cfg.seed = get<std::uint64_t>(effective, "seed");

  cfg.classify.n_grid = get<int>(effective, "classify.n_grid");
  cfg.classify.tol = get<double>(effective, "classify.tol");
  if (cfg.classify.n_grid < 8 * (cfg.curve.degree() + 1)) {
    config_fail("classify.n_grid", "must be at least 8*(degree+1)");
  }
  if (!(cfg.classify.tol > 0.0)) config_fail("classify.tol", "must be positive");

  auto& rt = cfg.roundtrip;
  rt.reflect = get<bool>(effective, "roundtrip.reflect");
  rt.threshold = get<double>(effective, "roundtrip.threshold");
  rt.r0_fraction = get<double>(effective, "roundtrip.r0_fraction");
  rt.radii = get<int>(effective, "roundtrip.radii");
  rt.n_angles = get<int>(effective, "roundtrip.n_angles");
  rt.fit_degree = get<int>(effective, "roundtrip.fit_degree");
  if (!(rt.threshold > 0.0)) config_fail("roundtrip.threshold", "must be positive");
  if (!(rt.r0_fraction > 0.0 && rt.r0_fraction <= 1.0)) {
    config_fail("roundtrip.r0_fraction", "must lie in (0, 1]");
  }
  if (rt.radii < 2) config_fail("roundtrip.radii", "must be >= 2");
  if (rt.fit_degree < 1 || rt.n_angles <= 2 * rt.fit_degree) {
    config_fail("roundtrip.n_angles", "must exceed 2*fit_degree (fit_degree >= 1)");
  }

  auto& vf = cfg.verify;
  vf.oracle = get<std::string>(effective, "verify.oracle");
  if (vf.oracle != "radial-fig1") config_fail("verify.oracle", "unknown oracle '" + vf.oracle + "'");
  vf.z_tolerance = get<double>(effective, "verify.z_tolerance");
  vf.gradient_tolerance = get<double>(effective, "verify.gradient_tolerance");
  vf.limit_tolerance = get<double>(effective, "verify.limit_tolerance");
  vf.r0 = get<double>(effective, "verify.r0");
  if (!(vf.r0 > 0.0)) config_fail("verify.r0", "must be positive");
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& log) {
  if (cfg.command == "plot") return cmd_plot(cfg, log);

  json report = {{"schema", kReportSchemaId},
                 {"command", cfg.command},
                 {"status", "ok"},
                 {"exit_code", 0},
                 {"config", cfg.effective},
                 {"input_curve", io::curve_to_json(cfg.curve)},
                 {"curve_source", cfg.curve_label},
                 {"field", io::field_to_json(cfg.field)},
                 {"outputs", json::array()}};
  ensure_out_dir(cfg);

  int code = kOk;
  try {
    const auto cls = classify_curve(cfg.curve, cfg.classify.n_grid, cfg.classify.tol);
    report["classification"] = classification_json(cls);
    if (cfg.command == "construct") {
      code = cmd_construct(cfg, report, log);
    } else if (cfg.command == "roundtrip") {
      code = cmd_roundtrip(cfg, cls, report, log);
    } else {
      code = cmd_verify(cfg, report, log);
    }
  } catch (const Error& e) {
    code = exit_code_for(e.kind());
    report["status"] = "error";
    report["error"] = error_json(e);
    log << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
  }
  report["exit_code"] = code;
  if (cfg.emit_json) {
    report["outputs"].push_back(kReportFile);
    io::write_text_file(cfg.out_dir / kReportFile, report.dump(2) + "\n");
  }
  return code;
}

}  // namespace masing::app
