#include "masing/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "masing/error.hpp"

namespace masing {

double FilterParams::sigma(int k, int n) const {
  const double kc = cutoff_fraction * (n / 2);
  const double ak = std::abs(static_cast<double>(k));
  if (ak > kc) return 0.0;
  if (ak == 0.0) return 1.0;
  return std::exp(-strength * std::pow(ak / kc, order));
}

namespace {

// The FFTW planner is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct Spectral::Impl {
  double* real = nullptr;
  fftw_complex* freq = nullptr;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  explicit Impl(int n) {
    std::lock_guard lock(planner_mutex());
    real = fftw_alloc_real(n);
    freq = fftw_alloc_complex(n / 2 + 1);
    r2c = fftw_plan_dft_r2c_1d(n, real, freq, FFTW_ESTIMATE);
    c2r = fftw_plan_dft_c2r_1d(n, freq, real, FFTW_ESTIMATE);
  }
  ~Impl() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
    fftw_free(real);
    fftw_free(freq);
  }
};

Spectral::Spectral(int n) : n_(n) {
  if (n < 4 || n % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument, "spectral grid size must be even and >= 4");
  }
  impl_ = std::make_unique<Impl>(n);
}

Spectral::~Spectral() = default;
Spectral::Spectral(Spectral&&) noexcept = default;
Spectral& Spectral::operator=(Spectral&&) noexcept = default;

void Spectral::forward(std::span<const double> in) {
  if (static_cast<int>(in.size()) != n_) {
    throw Error(ErrorKind::InvalidArgument, "spectral input has the wrong length");
  }
  std::copy(in.begin(), in.end(), impl_->real);
  fftw_execute(impl_->r2c);
}

void Spectral::backward(std::span<double> out) {
  fftw_execute(impl_->c2r);  // destroys freq
  const double inv = 1.0 / n_;
  for (int j = 0; j < n_; ++j) out[j] = impl_->real[j] * inv;
}

void Spectral::derivative(std::span<const double> in, std::span<double> out) {
  forward(in);
  auto* c = impl_->freq;
  for (int k = 0; k <= n_ / 2; ++k) {
    const double re = c[k][0];
    const double im = c[k][1];
    c[k][0] = -k * im;
    c[k][1] = k * re;
  }
  c[n_ / 2][0] = 0.0;
  c[n_ / 2][1] = 0.0;
  backward(out);
}

void Spectral::filter_correction(std::span<const double> values, const FilterParams& params,
                                 std::span<double> delta) {
  forward(values);
  auto* c = impl_->freq;
  for (int k = 0; k <= n_ / 2; ++k) {
    const double s = params.sigma(k, n_) - 1.0;
    c[k][0] *= s;
    c[k][1] *= s;
  }
  backward(delta);
}

void Spectral::filter(std::span<double> values, const FilterParams& params) {
  std::vector<double> delta(n_);
  filter_correction(values, params, delta);
  for (int j = 0; j < n_; ++j) values[j] += delta[j];
}

std::vector<double> Spectral::mode_energy(std::span<const double> values) {
  forward(values);
  const auto* c = impl_->freq;
  const double inv = 1.0 / n_;
  std::vector<double> e(n_ / 2 + 1);
  for (int k = 0; k <= n_ / 2; ++k) {
    const double re = c[k][0] * inv;
    const double im = c[k][1] * inv;
    const double w = (k == 0 || k == n_ / 2) ? 1.0 : 2.0;
    e[k] = w * (re * re + im * im);
  }
  return e;
}

std::vector<std::complex<double>> Spectral::coefficients(std::span<const double> values) {
  forward(values);
  const auto* c = impl_->freq;
  const double inv = 1.0 / n_;
  std::vector<std::complex<double>> out(n_ / 2 + 1);
  for (int k = 0; k <= n_ / 2; ++k) out[k] = {c[k][0] * inv, c[k][1] * inv};
  return out;
}

std::vector<double> spectral_du(std::span<const double> values) {
  Spectral sp(static_cast<int>(values.size()));
  std::vector<double> out(values.size());
  sp.derivative(values, out);
  return out;
}

std::pair<double, double> eval_trig(std::span<const std::complex<double>> coeffs, int n, double u) {
  double f = coeffs[0].real();
  double df = 0.0;
  const int half = n / 2;
  for (int k = 1; k <= half; ++k) {
    const double w = (k == half) ? 1.0 : 2.0;
    const double c = std::cos(k * u);
    const double s = std::sin(k * u);
    const double re = coeffs[k].real();
    const double im = coeffs[k].imag();
    // Re[(re + i·im)(c + i·s)] = re·c − im·s
    f += w * (re * c - im * s);
    // The Nyquist mode has no consistent derivative; omit it.
    if (k != half) df += w * k * (-re * s - im * c);
  }
  return {f, df};
}

}  // namespace masing
