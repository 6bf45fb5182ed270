#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "masing/curves.hpp"
#include "masing/field.hpp"
#include "masing/graph.hpp"
#include "masing/march.hpp"
#include "masing/sphere.hpp"

namespace masing::io {

using nlohmann::json;

/// Decimal text that reads back to the same double.
std::string format_double(double v);

/// {"alpha_cos": [...], "alpha_sin": [...], "beta_cos": [...], "beta_sin": [...]}
json curve_to_json(const PeriodicCurve& curve);
PeriodicCurve curve_from_json(const json& j);

/// {"A": "<expr>", "B": ..., "C": ..., "E": ..., "box": {"x": [lo, hi], ...}}.
/// A missing box means default_box(); a missing A/B/C/E is an error.
json field_to_json(const CoefficientField& field);
CoefficientField field_from_json(const json& j, std::string name = "file");

json box_to_json(const Box& box);
Box box_from_json(const json& j);

json params_to_json(const MarchParams& params);
/// Keys absent from `j` keep their values in `base`.
MarchParams params_from_json(const json& j, MarchParams base = {});

json sphere_curve_to_json(const SphereCurve& curve);
SphereCurve sphere_curve_from_json(const json& j);

/// Reads and parses a JSON file; Error(Io) when unreadable, Error(Parse) when malformed.
json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Strip CSV: '#'-prefixed header lines carrying params, curve, field, stop
/// reason and per-level diagnostics as JSON, then rows
/// level,node,v,u,x,y,z,p,q at 17 significant digits.
std::string strip_to_csv(const StripSolution& strip);
StripSolution strip_from_csv(const std::string& text);

/// Patch CSV: '#'-prefixed header with provenance and layout, then columns
/// x,y,z,p,q,r,s,t,J,residual ("nan" for undefined values).
std::string patch_to_csv(const GraphPatch& patch);
GraphPatch patch_from_csv(const std::string& text);

}  // namespace masing::io
