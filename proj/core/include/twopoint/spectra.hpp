#pragma once

// Finite-section spectral diagnostics: smallest singular values of A - lambda I,
// eigenvalues, pseudospectral portraits, and the analytic-symbol spectrum check.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "twopoint/hull.hpp"
#include "twopoint/toeplitz.hpp"

namespace twopoint {

/// Smallest singular value of A - lambda I.
double sigma_min(const Eigen::MatrixXcd& a, cplx lambda);
double sigma_min(const ToeplitzTruncation& a, cplx lambda);

/// Largest singular value.
double operator_norm(const Eigen::MatrixXcd& a);

inline constexpr int kMaxEigenSize = 512;

struct EigenResult {
  std::vector<cplx> values;
  /// False when the QR iteration on the non-isolated core did not converge;
  /// values then holds the isolated eigenvalues plus whatever the solver returned.
  bool converged = true;
  /// How many eigenvalues were split off exactly by the triangular-structure pass.
  int isolated = 0;
};

/// All eigenvalues of a dense square matrix (N <= 512).
///
/// Entries below 8 eps |A|_F are dropped, eigenvalues sitting on rows or
/// columns that are zero off the diagonal are read off directly, and the rest
/// goes to a complex Schur (QR) solver. The result is backward stable:
/// sigma_min(A - lambda I) = O(eps |A|) for every returned lambda.
EigenResult eigenvalues(const Eigen::MatrixXcd& a);
EigenResult eigenvalues(const ToeplitzTruncation& a);

/// sigma_min(A - lambda I) sampled on a rectangular lattice.
struct SpectralPortrait {
  cplx lower;  // lattice corner with the smallest real and imaginary parts
  cplx upper;
  int steps_re = 0;
  int steps_im = 0;
  /// Row-major: values[i_im * steps_re + i_re].
  std::vector<double> values;

  [[nodiscard]] cplx point(int i_re, int i_im) const;
  [[nodiscard]] double at(int i_re, int i_im) const {
    return values[static_cast<size_t>(i_im * steps_re + i_re)];
  }
};

/// Requires steps >= 2 per direction. threads = 0 uses all hardware threads;
/// every lattice value is computed independently so the output does not
/// depend on the thread count.
SpectralPortrait portrait(const Eigen::MatrixXcd& a, cplx corner0, cplx corner1, int steps_re,
                          int steps_im, unsigned threads = 0);

struct SpectrumCheckOptions {
  double decay_threshold = 1e-3;  // inside probes at the largest N
  double decay_slack = 0.10;      // allowed growth between consecutive N
  double hull_tolerance = 1e-8;   // outside probes
};

struct ProbeResult {
  cplx lambda;
  bool inside = false;
  std::vector<int> sizes;
  std::vector<double> sigma;
  /// dist(lambda, hull) for outside probes; the decay threshold for inside ones.
  double bound = 0.0;
  bool pass = false;
  std::string detail;
};

struct SpectrumCheckReport {
  std::vector<ProbeResult> probes;
  bool pass = true;
  [[nodiscard]] std::vector<const ProbeResult*> failures() const;
};

/// For an analytic non-constant symbol: outside probes must satisfy
/// sigma_min(A_N - lambda) >= dist(lambda, hull) - tol for every N, inside
/// probes must show a nonincreasing sigma_min (up to slack) that ends below
/// the threshold. Throws InvalidArgument on violated preconditions.
SpectrumCheckReport analytic_spectrum_check(const DiskPair& pair, const ExtendedParameter& t,
                                            const BoundarySymbol& phi,
                                            const std::vector<cplx>& probes_inside,
                                            const std::vector<cplx>& probes_outside,
                                            const std::vector<int>& n_schedule,
                                            const SpectrumCheckOptions& options = {});

}  // namespace twopoint
