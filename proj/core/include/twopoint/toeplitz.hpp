#pragma once

// Dense truncations of T^t_phi in the orthonormal basis of H^2_t.

#include <Eigen/Dense>
#include <span>
#include <string>

#include "twopoint/kernels.hpp"
#include "twopoint/symbols.hpp"

namespace twopoint {

struct TruncationMeta {
  DiskPair pair;
  ExtendedParameter t;
  int n = 0;  // matrix size N
  int m = 0;  // quadrature nodes M
  std::string symbol;
};

/// A[j][k] = <phi e_k, e_j> for 0 <= j, k < N.
struct ToeplitzTruncation {
  Eigen::MatrixXcd matrix;
  TruncationMeta meta;
};

/// Expansion of a boundary function in e_0 .. e_{N-1}.
struct CoefficientVector {
  Eigen::VectorXcd coefficients;
  /// Boundary L2 norm of f - sum_n c_n e_n.
  double residual = 0.0;

  [[nodiscard]] double norm() const { return coefficients.norm(); }
  /// False when the residual exceeds kExpansionWarnResidual.
  [[nodiscard]] bool well_represented() const;
};

inline constexpr double kExpansionWarnResidual = 1e-6;

/// max(1024, 8N) rounded up to a power of two.
int default_quadrature_size(int n);

/// Columns e_0 .. e_{N-1} sampled on the M-node grid (M x N).
Eigen::MatrixXcd basis_samples(const ConstrainedSpace& space, int n, int m);

/// Requires N >= 2 and M = phi.size() >= 8N. Propagates DegenerateParameter.
ToeplitzTruncation truncate(const DiskPair& pair, const ExtendedParameter& t,
                            const BoundarySymbol& phi, int n);

/// <phi k^t_a, k^t_a> / |k^t_a|^2 for finite nonzero t.
cplx berezin_at_a(const DiskPair& pair, const ExtendedParameter& t, const BoundarySymbol& phi);

/// coefficient[n] = <f, e_n> by quadrature on the grid of f.
CoefficientVector expand_in_onb(const DiskPair& pair, const ExtendedParameter& t,
                                std::span<const cplx> f, int n);
CoefficientVector expand_in_onb(const DiskPair& pair, const ExtendedParameter& t,
                                const BoundarySymbol& f, int n);

}  // namespace twopoint
