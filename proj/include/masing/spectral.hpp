#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace masing {

/// Exponential filter σ(k) = exp(−strength·(|k|/k_c)^order) for |k| <= k_c,
/// zero above, with k_c = cutoff_fraction · n/2.
struct FilterParams {
  double strength = 36.0;
  int order = 16;
  double cutoff_fraction = 1.0;

  double sigma(int k, int n) const;
};

/// Fourier operations on one periodic grid of n points u_j = 2πj/n.
///
/// Owns FFTW plans and scratch buffers: cheap to reuse, not safe to share
/// between threads. Plans use FFTW_ESTIMATE so results are reproducible
/// bit for bit.
class Spectral {
 public:
  /// n must be even and >= 4.
  explicit Spectral(int n);
  ~Spectral();
  Spectral(Spectral&&) noexcept;
  Spectral& operator=(Spectral&&) noexcept;
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  int size() const { return n_; }

  /// Spectral ∂_u; mode k multiplied by ik, Nyquist mode zeroed.
  void derivative(std::span<const double> in, std::span<double> out);
  void filter(std::span<double> values, const FilterParams& params);
  /// delta = filter(values) − values, computed in Fourier space so that modes
  /// with σ(k) = 1 contribute exactly zero.
  void filter_correction(std::span<const double> values, const FilterParams& params,
                         std::span<double> delta);

  /// Normalized one-sided power spectrum: entry k (0..n/2) holds the energy of
  /// mode ±k, summing to the mean of values² (Parseval).
  std::vector<double> mode_energy(std::span<const double> values);

  /// Normalized complex coefficients c_k, k = 0..n/2, with f(u) = Re Σ w_k c_k e^{iku}
  /// (w_0 = w_{n/2} = 1, otherwise 2).
  std::vector<std::complex<double>> coefficients(std::span<const double> values);

 private:
  void forward(std::span<const double> in);
  void backward(std::span<double> out);

  struct Impl;
  int n_ = 0;
  std::unique_ptr<Impl> impl_;
};

/// Convenience wrapper around Spectral::derivative.
std::vector<double> spectral_du(std::span<const double> values);

/// Evaluates the trigonometric interpolant given by Spectral::coefficients at u,
/// with its first derivative.
std::pair<double, double> eval_trig(std::span<const std::complex<double>> coeffs, int n, double u);

}  // namespace masing
