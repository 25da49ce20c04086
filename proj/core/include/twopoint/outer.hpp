#pragma once

// Outer functions from boundary modulus via the discrete Herglotz integral
//   W(z) = exp( (1/M) sum_j (e^{i theta_j} + z)/(e^{i theta_j} - z) log|w_j| ).

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "twopoint/symbols.hpp"

namespace twopoint {

inline constexpr double kDefaultOuterRadius = 0.95;

class OuterFunction {
 public:
  /// Builds from log|w| samples on the uniform grid; all values must be finite.
  static OuterFunction from_log_modulus(std::vector<double> log_modulus);

  /// Builds from |w| samples (>= 0, grid size a power of two >= 64).
  ///
  /// An isolated zero sample whose neighbours decay like |theta - theta_j|^p
  /// (0 < p <= 8) is a logarithmic singularity: its node value is replaced by
  /// the trapezoid-corrected value avg(log|w_{j-1}|, log|w_{j+1}|) - p log(2 pi).
  /// Any other zero, or a log-modulus whose mean magnitude changes by more than
  /// 10% between the M and M/2 grids, is rejected with InvalidArgument.
  static OuterFunction from_modulus(std::span<const double> modulus);

  [[nodiscard]] int size() const { return static_cast<int>(log_modulus_.size()); }
  [[nodiscard]] std::span<const double> log_modulus() const { return log_modulus_; }

  /// W(z) for |z| <= r_max < 1; throws InvalidArgument outside.
  [[nodiscard]] cplx operator()(cplx z, double r_max = kDefaultOuterRadius) const;

  /// Boundary values on the grid from the discrete conjugate function
  /// (FFT): |W(e^{i theta_j})| = |w_j| up to roundoff.
  [[nodiscard]] std::vector<cplx> boundary_values() const;

 private:
  explicit OuterFunction(std::vector<double> log_modulus, std::vector<size_t> zero_nodes = {})
      : log_modulus_(std::move(log_modulus)), zero_nodes_(std::move(zero_nodes)) {}

  std::vector<double> log_modulus_;
  // Nodes where the modulus sample was exactly zero; their log value above is
  // a quadrature correction, the boundary value itself is zero.
  std::vector<size_t> zero_nodes_;
};

/// Outer function with boundary modulus |modulus| evaluated at z (|z| <= r_max).
/// modulus must be real-valued and nonnegative.
cplx outer_from_modulus(const BoundarySymbol& modulus, cplx z,
                        double r_max = kDefaultOuterRadius);

}  // namespace twopoint
