#include "twopoint/toeplitz.hpp"

#include <algorithm>
#include <cmath>

#include "twopoint/errors.hpp"

namespace twopoint {

bool CoefficientVector::well_represented() const {
  return residual <= kExpansionWarnResidual;
}

int default_quadrature_size(int n) {
  int m = 1024;
  while (m < 8 * n) m *= 2;
  return m;
}

Eigen::MatrixXcd basis_samples(const ConstrainedSpace& space, int n, int m) {
  if (n < 1) throw InvalidArgument("basis size must be positive");
  if (m < 1) throw InvalidArgument("grid size must be positive");
  Eigen::MatrixXcd e(m, n);
  const bool head = space.has_head();
  const double head_norm = head ? std::sqrt(space.head_norm_sq()) : 1.0;
  for (int j = 0; j < m; ++j) {
    const cplx z = node_point(j, m);
    int col = 0;
    if (head) {
      e(j, col++) = space.head(z) / head_norm;
    }
    cplx tail = eval_blaschke_pair(space.pair(), z);
    for (; col < n; ++col) {
      e(j, col) = tail;
      tail *= z;
    }
  }
  return e;
}

ToeplitzTruncation truncate(const DiskPair& pair, const ExtendedParameter& t,
                            const BoundarySymbol& phi, int n) {
  if (n < 2) throw InvalidArgument("truncation size N must be at least 2");
  const int m = phi.size();
  if (m < 8 * n) {
    throw InvalidArgument("quadrature resolution guard: need M >= 8N (M=" +
                          std::to_string(m) + ", N=" + std::to_string(n) + ")");
  }
  const ConstrainedSpace space(pair, t);
  const Eigen::MatrixXcd e = basis_samples(space, n, m);

  Eigen::VectorXcd weights(m);
  for (int j = 0; j < m; ++j) weights(j) = phi[j];

  ToeplitzTruncation out{
      .matrix = (e.adjoint() * (weights.asDiagonal() * e)) / static_cast<double>(m),
      .meta = {pair, t, n, m, phi.description()},
  };
  return out;
}

cplx berezin_at_a(const DiskPair& pair, const ExtendedParameter& t, const BoundarySymbol& phi) {
  if (t.is_infinite() || t.is_zero()) {
    throw DegenerateParameter("Berezin transform at a needs finite nonzero t");
  }
  const ConstrainedSpace space(pair, t);
  const int m = phi.size();
  cplx acc{};
  for (int j = 0; j < m; ++j) {
    const cplx k = space.head_kernel(node_point(j, m));
    acc += phi[j] * std::norm(k);
  }
  return acc / static_cast<double>(m) / space.head_kernel_norm_sq();
}

CoefficientVector expand_in_onb(const DiskPair& pair, const ExtendedParameter& t,
                                std::span<const cplx> f, int n) {
  const int m = static_cast<int>(f.size());
  if (n < 1) throw InvalidArgument("expansion size must be positive");
  if (m < 2 * n) {
    throw InvalidArgument("expansion needs at least 2N boundary samples");
  }
  const ConstrainedSpace space(pair, t);
  const Eigen::MatrixXcd e = basis_samples(space, n, m);
  const Eigen::Map<const Eigen::VectorXcd> fv(f.data(), m);

  CoefficientVector out;
  out.coefficients = e.adjoint() * fv / static_cast<double>(m);
  const Eigen::VectorXcd rest = fv - e * out.coefficients;
  out.residual = rest.norm() / std::sqrt(static_cast<double>(m));
  return out;
}

CoefficientVector expand_in_onb(const DiskPair& pair, const ExtendedParameter& t,
                                const BoundarySymbol& f, int n) {
  return expand_in_onb(pair, t, f.samples(), n);
}

}  // namespace twopoint
