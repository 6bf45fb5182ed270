#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "masing/error.hpp"
#include "masing/geometry.hpp"
#include "masing/io.hpp"
#include "support.hpp"

using namespace masing;
using namespace masing::io;

TEST(Io, FormatDoubleRoundTrips) {
  auto g = masing::testing::rng(81);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::ldexp(masing::testing::uniform(g, -1, 1), i % 200 - 100);
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
}

TEST(Io, CurveJson) {
  auto g = masing::testing::rng(82);
  const auto c = masing::testing::random_curve(g, 4, 1.0);
  EXPECT_EQ(curve_from_json(json::parse(curve_to_json(c).dump())), c);
  EXPECT_THROW(curve_from_json(json{{"alpha_cos", {1}}}), Error);
}

TEST(Io, FieldJson) {
  auto field = builtin_field("remark42");
  field.box.bounds[kZ] = {-0.5, 2.0};
  const auto back = field_from_json(field_to_json(field));
  EXPECT_EQ(back.B, field.B);
  EXPECT_EQ(back.E, field.E);
  EXPECT_EQ(back.box, field.box);

  const auto minimal = field_from_json(json{{"A", "0"}, {"B", "0"}, {"C", "0"}, {"E", "exp(z)"}});
  EXPECT_EQ(minimal.box, default_box());
  EXPECT_TRUE(minimal.is_pure());
  EXPECT_THROW(field_from_json(json{{"A", "0"}, {"B", "0"}, {"C", "0"}}), Error);
  try {
    field_from_json(json{{"A", "0"}, {"B", "0"}, {"C", "0"}, {"E", "1 + w"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownIdentifier);
  }
}

TEST(Io, ParamsJson) {
  MarchParams p;
  p.R = 0.05;
  p.n_u = 256;
  p.filter.order = 8;
  p.on_stop = StopPolicy::Truncate;
  p.backward = true;
  const auto back = params_from_json(params_to_json(p));
  EXPECT_EQ(back.R, p.R);
  EXPECT_EQ(back.n_u, 256);
  EXPECT_EQ(back.filter.order, 8);
  EXPECT_EQ(back.on_stop, StopPolicy::Truncate);
  EXPECT_TRUE(back.backward);
  EXPECT_THROW(params_from_json(json{{"Rr", 1}}), Error);
  EXPECT_EQ(params_from_json(json{{"dv", 0.002}}).n_u, 128);
}

TEST(Io, StripCsvRoundTrip) {
  const auto strip = march(builtin_curve("ellipse"), builtin_field("remark42"), [] {
    MarchParams p;
    p.R = 0.01;
    p.n_u = 32;
    return p;
  }());
  const auto back = strip_from_csv(strip_to_csv(strip));
  EXPECT_EQ(back.curve, strip.curve);
  EXPECT_EQ(back.field.E, strip.field.E);
  EXPECT_EQ(back.params.n_u, 32);
  EXPECT_EQ(back.v, strip.v);
  ASSERT_EQ(back.num_levels(), strip.num_levels());
  for (std::size_t k = 0; k < strip.num_levels(); ++k) {
    EXPECT_EQ(back.levels[k], strip.levels[k]);
    EXPECT_EQ(back.diagnostics[k].min_D, strip.diagnostics[k].min_D);
  }
  EXPECT_EQ(back.stop, strip.stop);
}

TEST(Io, PatchCsvRoundTrip) {
  const auto strip = masing::testing::paraboloid_strip(16, 6, 0.01);
  GraphPatch patch;
  patch.n_u = 16;
  patch.v = strip.v;
  for (const auto& level : strip.levels) {
    for (int j = 0; j < 16; ++j) {
      const auto s = state_at(level, j);
      patch.samples.push_back({s.x, s.y, s.z, s.p, s.q, 1.0, 0.0, 1.0, std::exp(-0.1 * j),
                               std::numeric_limits<double>::quiet_NaN()});
    }
  }
  patch.r_min = 0.1;
  patch.r_max = 1.0 / 3.0;
  patch.multivalued = true;
  patch.provenance = "synthetic, with comma";
  const auto back = patch_from_csv(patch_to_csv(patch));
  EXPECT_EQ(back.n_u, 16);
  EXPECT_EQ(back.v, patch.v);
  EXPECT_EQ(back.r_max, patch.r_max);
  EXPECT_TRUE(back.multivalued);
  EXPECT_EQ(back.provenance, patch.provenance);
  ASSERT_EQ(back.samples.size(), patch.samples.size());
  for (std::size_t i = 0; i < patch.samples.size(); ++i) {
    EXPECT_EQ(back.samples[i].state(), patch.samples[i].state());
    EXPECT_EQ(back.samples[i].J, patch.samples[i].J);
    EXPECT_TRUE(std::isnan(back.samples[i].residual));
  }
  EXPECT_THROW(patch_from_csv("x,y\n1,2\n"), Error);
}

TEST(Io, SphereCurveJson) {
  const auto sc = plane_sphere(builtin_curve("ellipse"), 16);
  const auto back = sphere_curve_from_json(json::parse(sphere_curve_to_json(sc).dump()));
  EXPECT_EQ(back.samples, sc.samples);
  EXPECT_EQ(back.basis.v0, sc.basis.v0);
}

TEST(Io, Files) {
  const auto dir = std::filesystem::temp_directory_path() / "masing_io_test";
  std::filesystem::create_directories(dir);
  write_text_file(dir / "a.json", "{\"k\": [1, 2]}");
  EXPECT_EQ(read_json_file(dir / "a.json")["k"][1], 2);
  write_text_file(dir / "bad.json", "{nope");
  try {
    read_json_file(dir / "bad.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
  }
  try {
    read_json_file(dir / "missing.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Io);
  }
  std::filesystem::remove_all(dir);
}
