#pragma once

// Relative eigenvalues of T^t_phi for real-valued symbols.
//
// Every relative eigenvalue lambda of a real symbol has an outer eigenfunction
// G with (phi - lambda)|G|^2 = 2 Re(c u) on the circle, u = k_a - k_b. The
// positivity arcs S_c^+- of 2 Re(c u) decide which lambda are admissible.

#include <algorithm>
#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twopoint/kernels.hpp"
#include "twopoint/symbols.hpp"
#include "twopoint/toeplitz.hpp"

namespace twopoint {

/// The constant c in c(k_a - k_b) + conj(c(k_a - k_b)); never zero.
class KernelDifferenceConstant {
 public:
  explicit KernelDifferenceConstant(cplx c);
  [[nodiscard]] cplx value() const { return c_; }

 private:
  cplx c_;
};

/// 2 Re(c u(z)).
double kernel_difference_density(const DiskPair& pair, const KernelDifferenceConstant& c, cplx z);

/// 2 Re(c u) on the M-node grid.
std::vector<double> kernel_difference_samples(const DiskPair& pair,
                                              const KernelDifferenceConstant& c, int m);

/// Open arc of angles (start, end), start in (-pi, pi], 0 < end - start < 2 pi.
struct AngleArc {
  double start = 0.0;
  double end = 0.0;

  [[nodiscard]] double length() const { return end - start; }
  /// theta strictly inside, at least tol away from both ends.
  [[nodiscard]] bool contains(double theta, double tol = 0.0) const;
  /// Closure of this arc contains other, up to tol at the ends.
  [[nodiscard]] bool includes(const AngleArc& other, double tol = 0.0) const;
};

struct ArcSet {
  AngleArc plus;   // 2 Re(c u) > 0
  AngleArc minus;  // 2 Re(c u) < 0
  std::array<double, 2> zeros{};  // sorted, in [0, 2 pi)
};

inline constexpr int kArcSamples = 4096;

/// Zeros of Re(c u(e^{i theta})) by dense sampling plus bisection (1e-12 in
/// angle). Throws NumericalBreakdown unless exactly two sign changes are seen.
ArcSet positivity_arcs(const DiskPair& pair, const KernelDifferenceConstant& c,
                       int samples = kArcSamples);

/// Real symbol equal to hi where 2 Re(c u) > 0 on the grid and lo elsewhere;
/// the jumps fall between nodes.
BoundarySymbol step_symbol(const DiskPair& pair, const KernelDifferenceConstant& c, double hi,
                           double lo, int m);

struct IntervalOptions {
  /// |m|, |M| below this count as zero.
  double zero_tolerance = 1e-10;
  /// Grid nodes with |2 Re(c u)| <= zero_set_rel * max are on the zero set
  /// of the density and are ignored in the arc statistics.
  double zero_set_rel = 1e-12;
  /// Allowed relative change of an integral between the M/2 and M grids.
  double refinement_tolerance = 0.10;
};

struct IntervalPrediction {
  cplx a, b, c;
  double beta = 0.0;
  double m = 0.0;      // sup of phi - beta over S_c^-
  double m_sup = 0.0;  // inf of phi - beta over S_c^+ (the "M" constant)
  /// (m + beta, M + beta); meaningful when nonempty.
  std::array<double, 2> interval{};
  bool nonempty = false;
  /// {integrable at M + beta, integrable at m + beta}
  std::array<bool, 2> endpoint_flags{};
  std::optional<double> degenerate_point;

  [[nodiscard]] double lower() const { return interval[0]; }
  [[nodiscard]] double upper() const { return interval[1]; }
};

/// Grid realisation of esssup/essinf over the arcs. Throws HypothesisFailed
/// unless m < 0 < M or both vanish (the single-point case).
IntervalPrediction interval_predict(const DiskPair& pair, const KernelDifferenceConstant& c,
                                    const BoundarySymbol& phi, double beta,
                                    const IntervalOptions& options = {});

struct OuterEigenpair {
  double lambda = 0.0;  // the eigenvalue beta + lambda
  std::vector<double> psi;
  std::vector<cplx> g_boundary;  // outer G on the grid, |G|^2 = psi
  CoefficientVector g_coeffs;    // G in the basis of H^2_s
  cplx s{};                      // G(a) / G(b)
  double residual = 0.0;         // |A_N g - lambda g| / |g| for T^s_phi
  int n = 0;
  int m = 0;
};

/// Builds the outer eigenfunction for eigenvalue beta + lambda and measures
/// it against the truncation of T^s_phi.
///
/// Throws SignFailure when psi < -1e-6 max|psi| somewhere, and
/// IntegrabilityFailure at an excluded endpoint or where phi equals the
/// eigenvalue on a set the density does not vanish on.
OuterEigenpair construct_eigenpair(const DiskPair& pair, const KernelDifferenceConstant& c,
                                   const BoundarySymbol& phi, double beta, double lambda, int n,
                                   const IntervalOptions& options = {});

/// Least-squares f ~ d1 u + conj(d2 u) on the grid.
struct AnnihilatorFit {
  cplx d1, d2;
  double residual = 0.0;  // root-mean-square misfit
};
AnnihilatorFit annihilator_fit(std::span<const cplx> f, const DiskPair& pair);
AnnihilatorFit annihilator_fit(const BoundarySymbol& f, const DiskPair& pair);

struct AnnihilatorReport {
  /// max_n |<f, p_n>| and max_n |int f p_n| with p_n = z^n (z - a)(z - b).
  double conj_witness = 0.0;
  double witness = 0.0;
  /// |mean f|, the pairing with the constant function.
  double mean = 0.0;
  /// max over n >= 1 of |f^(n+2) - conj(a+b) f^(n+1) + conj(ab) f^(n)| and of
  /// the mirrored |f^(-n-2) - (a+b) f^(-n-1) + ab f^(-n)|.
  double positive_defect = 0.0;
  double negative_defect = 0.0;

  [[nodiscard]] double witness_max() const { return std::max({conj_witness, witness, mean}); }
  [[nodiscard]] double recurrence_defect() const {
    return std::max(positive_defect, negative_defect);
  }
};
AnnihilatorReport annihilator_verify(std::span<const cplx> f, const DiskPair& pair, int n_max);
AnnihilatorReport annihilator_verify(const BoundarySymbol& f, const DiskPair& pair, int n_max);

enum class ArcRelation { Equal, DInsideC, CInsideD, Neither };
std::string to_string(ArcRelation r);

struct ContainmentReport {
  ArcSet arcs_c;
  ArcSet arcs_d;
  bool d_in_c = false;
  bool c_in_d = false;
  ArcRelation relation = ArcRelation::Neither;
  /// Positive multiples share arcs; anything else must give Neither.
  ArcRelation expected = ArcRelation::Neither;
  [[nodiscard]] bool consistent() const { return relation == expected; }
};

inline constexpr double kArcCoincidence = 1e-9;

ContainmentReport containment_check(const DiskPair& pair, const KernelDifferenceConstant& c,
                                    const KernelDifferenceConstant& d);

}  // namespace twopoint
