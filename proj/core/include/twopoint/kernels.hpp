#pragma once

// Reproducing kernels and the orthonormal basis of the constrained Hardy
// spaces H^2_t = { f in H^2 : f(a) = t f(b) }.

#include <complex>
#include <optional>

namespace twopoint {

using cplx = std::complex<double>;

/// Tolerance used when accepting points on the unit circle: |z| <= 1 + kCircleSlack.
inline constexpr double kCircleSlack = 1e-12;

/// The two constraint points a != b of the open unit disk.
class DiskPair {
 public:
  /// Throws InvalidArgument unless |a| < 1, |b| < 1 and a != b.
  DiskPair(cplx a, cplx b);

  [[nodiscard]] cplx a() const { return a_; }
  [[nodiscard]] cplx b() const { return b_; }

 private:
  cplx a_;
  cplx b_;
};

/// A point of the extended complex plane C u {inf}, selecting H^2_t.
class ExtendedParameter {
 public:
  static ExtendedParameter finite(cplx value) { return ExtendedParameter(value); }
  static ExtendedParameter infinity() { return ExtendedParameter(); }

  [[nodiscard]] bool is_infinite() const { return !value_.has_value(); }
  [[nodiscard]] bool is_zero() const { return value_.has_value() && *value_ == cplx{}; }
  /// Throws InvalidArgument for the point at infinity.
  [[nodiscard]] cplx value() const;

  friend bool operator==(const ExtendedParameter&, const ExtendedParameter&) = default;

 private:
  ExtendedParameter() = default;
  explicit ExtendedParameter(cplx v) : value_(v) {}

  std::optional<cplx> value_;
};

/// Szego kernel k_w(z) = 1 / (1 - conj(w) z). Requires |w| < 1, |z| <= 1.
cplx eval_szego(cplx w, cplx z);

/// Single Blaschke factor B_a(z) = (z - a) / (1 - conj(a) z).
cplx eval_blaschke(cplx a, cplx z);

/// B_{a,b} = B_a B_b.
cplx eval_blaschke_pair(const DiskPair& pair, cplx z);

/// u = k_a - k_b = conj(a - b) z / ((1 - conj(a) z)(1 - conj(b) z)).
cplx u_eval(const DiskPair& pair, cplx z);

/// Kernel and basis data for one space H^2_t.
///
/// The space splits as C h (+) B_{a,b} H^2 with a one-dimensional head h:
///   - finite t != 0: h = k^t_a, the reproducing kernel at a,
///   - t = 0:         h = B_a k_b (H^2_0 = B_a H^2),
///   - t = inf:       no head (H^2_inf = B_{a,b} H^2).
/// The basis is e_0 = h / |h|, e_n = B_{a,b} z^{n-1} (n >= 1); without a head
/// it is e_n = B_{a,b} z^n.
class ConstrainedSpace {
 public:
  /// Throws DegenerateParameter when the kernel formula is singular for t.
  ConstrainedSpace(DiskPair pair, ExtendedParameter t);

  [[nodiscard]] const DiskPair& pair() const { return pair_; }
  [[nodiscard]] const ExtendedParameter& parameter() const { return t_; }
  [[nodiscard]] bool has_head() const { return !t_.is_infinite(); }

  /// tau = (k_a(a) - t k_a(b)) / (k_b(a) - t k_b(b)); finite nonzero t only.
  [[nodiscard]] cplx tau() const;

  /// k^t_a for finite t != 0. Throws DegenerateParameter otherwise.
  [[nodiscard]] cplx head_kernel(cplx z) const;
  /// |k^t_a|^2 = k^t_a(a).
  [[nodiscard]] double head_kernel_norm_sq() const;

  /// Unnormalised head function h (see class comment). Zero for t = inf.
  [[nodiscard]] cplx head(cplx z) const;
  [[nodiscard]] double head_norm_sq() const { return head_norm_sq_; }

  /// Reproducing kernel k^t_w(z).
  [[nodiscard]] cplx kernel(cplx w, cplx z) const;

  /// n-th orthonormal basis element evaluated at z.
  [[nodiscard]] cplx basis(int n, cplx z) const;

 private:
  DiskPair pair_;
  ExtendedParameter t_;
  // head = alpha k_a + beta k_b (finite t != 0) or B_a k_b (t = 0).
  cplx head_alpha_{};
  cplx head_beta_{};
  cplx tau_{};
  double head_norm_sq_ = 0.0;
};

/// k^t_w(z); throws DegenerateParameter as ConstrainedSpace.
cplx eval_constrained_kernel(const DiskPair& pair, const ExtendedParameter& t, cplx w,
                             cplx z);

/// n-th basis element of H^2_t at z.
cplx onb_element(const DiskPair& pair, const ExtendedParameter& t, int n, cplx z);

}  // namespace twopoint
