#include "masing/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace masing::svg {

namespace {

constexpr double kSize = 480.0;
constexpr double kMargin = 40.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

/// Maps a square data window onto the plot area, y up.
struct Frame {
  double cx = 0.0, cy = 0.0, half = 1.0;

  static Frame fit(const std::vector<Vec2>& pts) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& p : pts) {
      xmin = std::min(xmin, p[0]);
      xmax = std::max(xmax, p[0]);
      ymin = std::min(ymin, p[1]);
      ymax = std::max(ymax, p[1]);
    }
    Frame f;
    if (pts.empty()) return f;
    f.cx = 0.5 * (xmin + xmax);
    f.cy = 0.5 * (ymin + ymax);
    f.half = 0.55 * std::max({xmax - xmin, ymax - ymin, 1e-12});
    return f;
  }
  double sx(double x) const { return kMargin + (x - cx + half) / (2 * half) * (kSize - 2 * kMargin); }
  double sy(double y) const { return kSize - kMargin - (y - cy + half) / (2 * half) * (kSize - 2 * kMargin); }
};

std::string header(const std::string& title) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kSize) + "\" height=\"" +
         num(kSize) + "\" viewBox=\"0 0 " + num(kSize) + " " + num(kSize) + "\">\n" +
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" +
         "<text x=\"" + num(kMargin) + "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" +
         title + "</text>\n";
}

std::string axes(const Frame& f) {
  std::string out;
  const double lo = kMargin, hi = kSize - kMargin;
  if (f.cx - f.half <= 0.0 && 0.0 <= f.cx + f.half) {
    out += "<line x1=\"" + num(f.sx(0)) + "\" y1=\"" + num(lo) + "\" x2=\"" + num(f.sx(0)) +
           "\" y2=\"" + num(hi) + "\" stroke=\"#bbb\" stroke-width=\"0.5\"/>\n";
  }
  if (f.cy - f.half <= 0.0 && 0.0 <= f.cy + f.half) {
    out += "<line x1=\"" + num(lo) + "\" y1=\"" + num(f.sy(0)) + "\" x2=\"" + num(hi) +
           "\" y2=\"" + num(f.sy(0)) + "\" stroke=\"#bbb\" stroke-width=\"0.5\"/>\n";
  }
  return out;
}

std::string polygon(const std::vector<Vec2>& pts, const Frame& f, const std::string& style) {
  std::string out = "<polygon fill=\"none\" " + style + " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += num(f.sx(pts[i][0])) + ',' + num(f.sy(pts[i][1]));
  }
  return out + "\"/>\n";
}

std::string legend(int row, const std::string& colour, const std::string& label) {
  const double y = 44.0 + 16.0 * row;
  return "<line x1=\"" + num(kSize - 150) + "\" y1=\"" + num(y - 4) + "\" x2=\"" +
         num(kSize - 130) + "\" y2=\"" + num(y - 4) + "\" stroke=\"" + colour +
         "\" stroke-width=\"2\"/>\n<text x=\"" + num(kSize - 124) + "\" y=\"" + num(y) +
         "\" font-family=\"sans-serif\" font-size=\"12\">" + label + "</text>\n";
}

/// Blue at t = 0 through green to red at t = 1.
std::string ramp(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255 * t));
  const int g = static_cast<int>(std::lround(255 * (1 - std::abs(2 * t - 1)) * 0.8));
  const int b = static_cast<int>(std::lround(255 * (1 - t)));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string gradient_curves(const PeriodicCurve& input, const std::optional<PeriodicCurve>& recovered) {
  const auto a = sample_curve(input, 512);
  std::vector<Vec2> all = a;
  std::vector<Vec2> b;
  if (recovered) {
    b = sample_curve(*recovered, 512);
    all.insert(all.end(), b.begin(), b.end());
  }
  const auto f = Frame::fit(all);
  std::string out = header("limit gradient (p, q)");
  out += axes(f);
  out += polygon(a, f, "stroke=\"#1f4e9c\" stroke-width=\"2\"");
  out += legend(0, "#1f4e9c", "input");
  if (recovered) {
    out += polygon(b, f, "stroke=\"#c0392b\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"");
    out += legend(1, "#c0392b", "recovered");
  }
  return out + "</svg>\n";
}

std::string image_curves(const GraphPatch& patch, int max_curves) {
  std::vector<Vec2> all;
  for (const auto& s : patch.samples) all.push_back({s.x, s.y});
  all.push_back({0.0, 0.0});
  const auto f = Frame::fit(all);
  std::string out = header("image curves (x, y)(u, v_k)");
  out += axes(f);
  const std::size_t L = patch.num_levels();
  if (patch.n_u > 0 && L > 0) {
    const std::size_t stride = std::max<std::size_t>(1, (L + max_curves - 1) / max_curves);
    for (std::size_t k = 0; k < L; k += stride) {
      std::vector<Vec2> pts(patch.n_u);
      for (int j = 0; j < patch.n_u; ++j) pts[j] = {patch.at(k, j).x, patch.at(k, j).y};
      out += polygon(pts, f, "stroke=\"" + ramp(static_cast<double>(k) / std::max<std::size_t>(1, L - 1)) +
                                 "\" stroke-width=\"1\"");
    }
  }
  out += "<circle cx=\"" + num(f.sx(0)) + "\" cy=\"" + num(f.sy(0)) + "\" r=\"2.5\" fill=\"black\"/>\n";
  return out + "</svg>\n";
}

std::string residual_strip(const GraphPatch& patch) {
  std::string out = header("log10 |PDE residual| over (u, v)");
  const std::size_t L = patch.num_levels();
  const int n = patch.n_u;
  if (n <= 0 || L == 0) return out + "</svg>\n";
  constexpr std::size_t kMaxRows = 64;
  constexpr int kMaxCols = 128;
  const std::size_t row_stride = (L + kMaxRows - 1) / kMaxRows;
  const int col_stride = (n + kMaxCols - 1) / kMaxCols;
  const std::size_t rows = (L + row_stride - 1) / row_stride;
  const int cols = (n + col_stride - 1) / col_stride;
  const double lo_exp = -16.0, hi_exp = -2.0;
  const double w = (kSize - 2 * kMargin) / cols;
  const double h = (kSize - 2 * kMargin - 30) / rows;
  for (std::size_t r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double worst = -1.0;
      for (std::size_t k = r * row_stride; k < std::min(L, (r + 1) * row_stride); ++k) {
        for (int j = c * col_stride; j < std::min(n, (c + 1) * col_stride); ++j) {
          const double res = patch.at(k, j).residual;
          if (std::isfinite(res)) worst = std::max(worst, std::abs(res));
        }
      }
      std::string colour = "#cccccc";
      if (worst >= 0.0) {
        const double e = worst > 0.0 ? std::log10(worst) : lo_exp;
        colour = ramp((e - lo_exp) / (hi_exp - lo_exp));
      }
      const double x = kMargin + c * w;
      const double y = kSize - kMargin - (r + 1) * h;
      out += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w + 0.05) +
             "\" height=\"" + num(h + 0.05) + "\" fill=\"" + colour + "\"/>\n";
    }
  }
  out += "<text x=\"" + num(kMargin) + "\" y=\"" + num(kSize - 12) +
         "\" font-family=\"sans-serif\" font-size=\"11\">u (horizontal), v (vertical); blue 1e-16, red 1e-2, grey undefined</text>\n";
  return out + "</svg>\n";
}

}  // namespace masing::svg
