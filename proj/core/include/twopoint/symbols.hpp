#pragma once

// Boundary symbols sampled on a uniform grid of the unit circle, and the
// trapezoid-rule quadrature built on that grid.

#include <complex>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "twopoint/kernels.hpp"

namespace twopoint {

/// Smallest accepted sample count.
inline constexpr int kMinSamples = 64;

/// True when m is a power of two and at least kMinSamples.
bool valid_sample_count(long m);

/// Node angle 2 pi j / m.
double node_angle(int j, int m);
/// Node e^{i 2 pi j / m}.
cplx node_point(int j, int m);

/// Samples phi(e^{i theta_j}) at theta_j = 2 pi j / M, with metadata.
class BoundarySymbol {
 public:
  /// Throws InvalidArgument if M is not a power of two >= 64, or if
  /// real_valued is requested while some sample has nonzero imaginary part.
  BoundarySymbol(std::vector<cplx> samples, std::string description, bool analytic = false);

  [[nodiscard]] int size() const { return static_cast<int>(samples_.size()); }
  [[nodiscard]] std::span<const cplx> samples() const { return samples_; }
  [[nodiscard]] cplx operator[](int j) const { return samples_[static_cast<size_t>(j)]; }
  [[nodiscard]] bool real_valued() const { return real_valued_; }
  [[nodiscard]] bool analytic() const { return analytic_; }
  [[nodiscard]] const std::string& description() const { return description_; }

  /// max_j |phi_j|
  [[nodiscard]] double sup_norm() const;
  /// True when every sample equals the first to within tol * max(1, |phi_0|).
  [[nodiscard]] bool is_constant(double tol = 1e-14) const;

 private:
  std::vector<cplx> samples_;
  std::string description_;
  bool real_valued_ = false;
  bool analytic_ = false;
};

using AngleFunction = std::function<cplx(double)>;

/// samples[j] = generator(2 pi j / M).
BoundarySymbol sample_symbol(const AngleFunction& generator, int m,
                             std::string description = "sampled", bool analytic = false);

/// Restriction of a function of z to the grid: samples[j] = f(e^{i theta_j}).
BoundarySymbol sample_on_circle(const std::function<cplx(cplx)>& f, int m,
                                std::string description = "sampled", bool analytic = false);

BoundarySymbol constant_symbol(cplx value, int m);
/// cos(theta), real-valued.
BoundarySymbol cosine_symbol(int m);
/// B_{a,b} restricted to the circle, analytic.
BoundarySymbol blaschke_symbol(const DiskPair& pair, int m);

/// (1/M) sum_j f_j conj(g_j).
cplx boundary_inner_product(std::span<const cplx> f, std::span<const cplx> g);
cplx boundary_inner_product(const BoundarySymbol& f, const BoundarySymbol& g);

/// sqrt of the boundary inner product of f with itself.
double boundary_norm(std::span<const cplx> f);

/// Fourier coefficients (1/M) sum_j f_j e^{-i n theta_j} for n_min <= n <= n_max.
/// Requires n_max - n_min < M/2.
std::map<int, cplx> fourier_coefficients(const BoundarySymbol& f, int n_min, int n_max);
std::map<int, cplx> fourier_coefficients(std::span<const cplx> f, int n_min, int n_max);

}  // namespace twopoint
