#include "masing/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "masing/error.hpp"

namespace masing::io {

namespace {

constexpr const char* kStripColumns = "level,node,v,u,x,y,z,p,q";
constexpr const char* kPatchColumns = "x,y,z,p,q,r,s,t,J,residual";

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::Parse, what); }

double parse_double(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) parse_fail("bad number '" + std::string(text) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<double> number_array(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    parse_fail(std::string("missing array '") + key + "'");
  }
  std::vector<double> out;
  for (const auto& x : j.at(key)) {
    if (!x.is_number()) parse_fail(std::string("non-numeric entry in '") + key + "'");
    out.push_back(x.get<double>());
  }
  return out;
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double from_nullable(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

/// Header lines "# key <json>" followed by a column line and data rows.
struct CsvDocument {
  std::map<std::string, json> header;
  std::vector<std::string> rows;
};

CsvDocument read_document(const std::string& text, const char* columns) {
  CsvDocument doc;
  std::istringstream in(text);
  std::string line;
  bool have_columns = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto sp = line.find(' ', 2);
      if (line.size() < 3 || sp == std::string::npos) parse_fail("malformed header line: " + line);
      const std::string key = line.substr(2, sp - 2);
      try {
        doc.header[key] = json::parse(line.substr(sp + 1));
      } catch (const json::exception& e) {
        parse_fail("header '" + key + "': " + e.what());
      }
      continue;
    }
    if (!have_columns) {
      if (line != columns) parse_fail("expected column line '" + std::string(columns) + "'");
      have_columns = true;
      continue;
    }
    doc.rows.push_back(line);
  }
  if (!have_columns) parse_fail("missing column line");
  return doc;
}

const json& header_at(const CsvDocument& doc, const std::string& key) {
  const auto it = doc.header.find(key);
  if (it == doc.header.end()) parse_fail("missing header '" + key + "'");
  return it->second;
}

StopReason stop_from_string(const std::string& s) {
  for (auto r : {StopReason::Completed, StopReason::BoxExit, StopReason::Ellipticity,
                 StopReason::NonFinite, StopReason::Instability}) {
    if (to_string(r) == s) return r;
  }
  parse_fail("unknown stop reason '" + s + "'");
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json curve_to_json(const PeriodicCurve& curve) {
  return {{"alpha_cos", curve.alpha_cos()},
          {"alpha_sin", curve.alpha_sin()},
          {"beta_cos", curve.beta_cos()},
          {"beta_sin", curve.beta_sin()}};
}

PeriodicCurve curve_from_json(const json& j) {
  if (!j.is_object()) parse_fail("curve literal must be a JSON object");
  return PeriodicCurve(number_array(j, "alpha_cos"), number_array(j, "alpha_sin"),
                       number_array(j, "beta_cos"), number_array(j, "beta_sin"));
}

json box_to_json(const Box& box) {
  json out = json::object();
  for (int c = 0; c < kNumComponents; ++c) {
    out[kComponentNames[c]] = {box.bounds[c].lo, box.bounds[c].hi};
  }
  return out;
}

Box box_from_json(const json& j) {
  if (!j.is_object()) parse_fail("box must be a JSON object");
  Box box = default_box();
  for (const auto& [key, val] : j.items()) {
    int c = -1;
    for (int i = 0; i < kNumComponents; ++i) {
      if (key == kComponentNames[i]) c = i;
    }
    if (c < 0) parse_fail("unknown box variable '" + key + "'");
    if (!val.is_array() || val.size() != 2 || !val[0].is_number() || !val[1].is_number()) {
      parse_fail("box bound '" + key + "' must be [lo, hi]");
    }
    const Interval iv{val[0].get<double>(), val[1].get<double>()};
    if (!(iv.lo <= iv.hi)) parse_fail("box bound '" + key + "' has lo > hi");
    box.bounds[c] = iv;
  }
  return box;
}

json field_to_json(const CoefficientField& field) {
  return {{"A", field.A.to_string()}, {"B", field.B.to_string()}, {"C", field.C.to_string()},
          {"E", field.E.to_string()}, {"box", box_to_json(field.box)}, {"name", field.name}};
}

CoefficientField field_from_json(const json& j, std::string name) {
  if (!j.is_object()) parse_fail("field must be a JSON object");
  auto expr = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_string()) {
      parse_fail(std::string("field coefficient '") + key + "' must be an expression string");
    }
    return parse_expr(j.at(key).get<std::string>());
  };
  CoefficientField f{expr("A"), expr("B"), expr("C"), expr("E"),
                     j.contains("box") ? box_from_json(j.at("box")) : default_box(),
                     j.value("name", name)};
  return f;
}

json params_to_json(const MarchParams& p) {
  return {{"R", p.R},
          {"n_u", p.n_u},
          {"dv", p.dv},
          {"filter",
           {{"strength", p.filter.strength},
            {"order", p.filter.order},
            {"cutoff_fraction", p.filter.cutoff_fraction}}},
          {"growth_threshold", p.growth_threshold},
          {"noise_floor", p.noise_floor},
          {"on_stop", p.on_stop == StopPolicy::Raise ? "raise" : "truncate"},
          {"backward", p.backward}};
}

MarchParams params_from_json(const json& j, MarchParams p) {
  if (!j.is_object()) parse_fail("march parameters must be a JSON object");
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "R") p.R = val.get<double>();
      else if (key == "n_u") p.n_u = val.get<int>();
      else if (key == "dv") p.dv = val.get<double>();
      else if (key == "growth_threshold") p.growth_threshold = val.get<double>();
      else if (key == "noise_floor") p.noise_floor = val.get<double>();
      else if (key == "backward") p.backward = val.get<bool>();
      else if (key == "on_stop") {
        const auto s = val.get<std::string>();
        if (s == "raise") p.on_stop = StopPolicy::Raise;
        else if (s == "truncate") p.on_stop = StopPolicy::Truncate;
        else parse_fail("on_stop must be 'raise' or 'truncate'");
      } else if (key == "filter") {
        for (const auto& [fk, fv] : val.items()) {
          if (fk == "strength") p.filter.strength = fv.get<double>();
          else if (fk == "order") p.filter.order = fv.get<int>();
          else if (fk == "cutoff_fraction") p.filter.cutoff_fraction = fv.get<double>();
          else parse_fail("unknown filter key '" + fk + "'");
        }
      } else {
        parse_fail("unknown march key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    parse_fail(std::string("march parameters: ") + e.what());
  }
  return p;
}

json sphere_curve_to_json(const SphereCurve& curve) {
  json samples = json::array();
  for (const auto& s : curve.samples) samples.push_back({s[0], s[1], s[2]});
  return {{"samples", samples},
          {"basis",
           {{"e1", curve.basis.e1}, {"e2", curve.basis.e2}, {"v0", curve.basis.v0}}}};
}

SphereCurve sphere_curve_from_json(const json& j) {
  auto vec3 = [](const json& a, const std::string& what) {
    if (!a.is_array() || a.size() != 3) parse_fail(what + " must be a 3-vector");
    return Vec3{a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
  };
  SphereCurve out;
  try {
    for (const auto& s : j.at("samples")) out.samples.push_back(vec3(s, "sample"));
    if (j.contains("basis")) {
      const auto& b = j.at("basis");
      out.basis = {vec3(b.at("e1"), "e1"), vec3(b.at("e2"), "e2"), vec3(b.at("v0"), "v0")};
    }
  } catch (const json::exception& e) {
    parse_fail(std::string("sphere curve: ") + e.what());
  }
  out.basis.validate();
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, "'" + path.string() + "': " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

std::string strip_to_csv(const StripSolution& strip) {
  std::string out;
  out += "# params " + params_to_json(strip.params).dump() + "\n";
  out += "# curve " + curve_to_json(strip.curve).dump() + "\n";
  out += "# field " + field_to_json(strip.field).dump() + "\n";
  out += "# stop " + json{{"reason", to_string(strip.stop)}, {"message", strip.stop_message}}.dump() +
         "\n";
  json diag = json::array();
  for (const auto& d : strip.diagnostics) {
    diag.push_back({nullable(d.high_mode_fraction), nullable(d.min_D)});
  }
  out += "# diagnostics " + diag.dump() + "\n";
  out += kStripColumns;
  out += '\n';
  for (std::size_t k = 0; k < strip.num_levels(); ++k) {
    for (int j = 0; j < strip.n_u(); ++j) {
      out += std::to_string(k) + ',' + std::to_string(j) + ',' + format_double(strip.v[k]) + ',' +
             format_double(strip.u(j));
      for (int c = 0; c < kNumComponents; ++c) out += ',' + format_double(strip.levels[k][c][j]);
      out += '\n';
    }
  }
  return out;
}

StripSolution strip_from_csv(const std::string& text) {
  const auto doc = read_document(text, kStripColumns);
  StripSolution strip;
  try {
    strip.params = params_from_json(header_at(doc, "params"));
    strip.curve = curve_from_json(header_at(doc, "curve"));
    strip.field = field_from_json(header_at(doc, "field"));
    const auto& stop = header_at(doc, "stop");
    strip.stop = stop_from_string(stop.at("reason").get<std::string>());
    strip.stop_message = stop.at("message").get<std::string>();
    for (const auto& d : header_at(doc, "diagnostics")) {
      strip.diagnostics.push_back({from_nullable(d.at(0)), from_nullable(d.at(1))});
    }
  } catch (const json::exception& e) {
    parse_fail(std::string("strip header: ") + e.what());
  }
  const int n = strip.params.n_u;
  if (n <= 0 || doc.rows.size() % n != 0) parse_fail("strip rows do not fill whole levels");
  const std::size_t levels = doc.rows.size() / n;
  strip.levels.assign(levels, make_level(n));
  strip.v.assign(levels, 0.0);
  for (std::size_t i = 0; i < doc.rows.size(); ++i) {
    const auto cells = split(doc.rows[i], ',');
    if (cells.size() != 9) parse_fail("strip row " + std::to_string(i) + " needs 9 columns");
    const std::size_t k = i / n;
    const int j = static_cast<int>(i % n);
    if (parse_double(cells[0]) != static_cast<double>(k) || parse_double(cells[1]) != j) {
      parse_fail("strip rows out of order at row " + std::to_string(i));
    }
    strip.v[k] = parse_double(cells[2]);
    for (int c = 0; c < kNumComponents; ++c) strip.levels[k][c][j] = parse_double(cells[4 + c]);
  }
  return strip;
}

std::string patch_to_csv(const GraphPatch& patch) {
  std::string out;
  out += "# provenance " + json(patch.provenance).dump() + "\n";
  out += "# layout " +
         json{{"n_u", patch.n_u},
              {"v", patch.v},
              {"r_min", nullable(patch.r_min)},
              {"r_max", nullable(patch.r_max)},
              {"multivalued", patch.multivalued}}
             .dump() +
         "\n";
  out += kPatchColumns;
  out += '\n';
  for (const auto& s : patch.samples) {
    const double vals[10] = {s.x, s.y, s.z, s.p, s.q, s.r, s.s, s.t, s.J, s.residual};
    for (int c = 0; c < 10; ++c) {
      if (c) out += ',';
      out += format_double(vals[c]);
    }
    out += '\n';
  }
  return out;
}

GraphPatch patch_from_csv(const std::string& text) {
  const auto doc = read_document(text, kPatchColumns);
  GraphPatch patch;
  try {
    patch.provenance = header_at(doc, "provenance").get<std::string>();
    const auto& layout = header_at(doc, "layout");
    patch.n_u = layout.at("n_u").get<int>();
    patch.v = layout.at("v").get<std::vector<double>>();
    patch.r_min = from_nullable(layout.at("r_min"));
    patch.r_max = from_nullable(layout.at("r_max"));
    patch.multivalued = layout.at("multivalued").get<bool>();
  } catch (const json::exception& e) {
    parse_fail(std::string("patch header: ") + e.what());
  }
  for (std::size_t i = 0; i < doc.rows.size(); ++i) {
    const auto cells = split(doc.rows[i], ',');
    if (cells.size() != 10) parse_fail("patch row " + std::to_string(i) + " needs 10 columns");
    double v[10];
    for (int c = 0; c < 10; ++c) v[c] = parse_double(cells[c]);
    patch.samples.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9]});
  }
  if (patch.n_u > 0 && patch.samples.size() != patch.v.size() * patch.n_u) {
    parse_fail("patch sample count does not match its layout");
  }
  return patch;
}

}  // namespace masing::io
