#include "twopoint/relative_spectrum.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "twopoint/errors.hpp"
#include "twopoint/outer.hpp"

namespace twopoint {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_positive(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

double wrap_signed(double theta) {
  // into (-pi, pi]
  double r = wrap_positive(theta);
  if (r > std::numbers::pi) r -= kTwoPi;
  return r;
}

AngleArc make_arc(double from, double to) {
  // ccw from `from` to `to`
  const double len = wrap_positive(to - from);
  const double start = wrap_signed(from);
  return {start, start + len};
}

struct ArcSplit {
  std::vector<int> plus;
  std::vector<int> minus;
  std::vector<int> zero;
  double density_max = 0.0;
};

ArcSplit split_nodes(std::span<const double> q, double zero_set_rel) {
  ArcSplit out;
  for (double v : q) out.density_max = std::max(out.density_max, std::abs(v));
  const double cut = zero_set_rel * out.density_max;
  for (size_t j = 0; j < q.size(); ++j) {
    if (q[j] > cut) out.plus.push_back(static_cast<int>(j));
    else if (q[j] < -cut) out.minus.push_back(static_cast<int>(j));
    else out.zero.push_back(static_cast<int>(j));
  }
  return out;
}

// A node on the zero set of the density belongs to the closure of the arc of
// sign `side` when phi has no jump there as seen from that arc: the step to
// the arc-side neighbour is at most twice the next step inside the arc.
bool continuous_from(std::span<const double> phi, std::span<const double> q, int j,
                     double side) {
  const int m = static_cast<int>(phi.size());
  auto at = [m](int k) { return static_cast<size_t>(((k % m) + m) % m); };
  for (int dir : {-1, 1}) {
    const size_t n1 = at(j + dir);
    const size_t n2 = at(j + 2 * dir);
    if (q[n1] * side <= 0.0 || q[n2] * side <= 0.0) continue;
    const double step = std::abs(phi[at(j)] - phi[n1]);
    const double next = std::abs(phi[n1] - phi[n2]);
    return step <= 2.0 * next + 1e-14 * std::max(1.0, std::abs(phi[n1]));
  }
  return false;
}

std::vector<double> real_parts(const BoundarySymbol& phi, const char* who) {
  if (!phi.real_valued()) {
    throw InvalidArgument(std::string(who) + ": symbol must be real-valued");
  }
  std::vector<double> out(static_cast<size_t>(phi.size()));
  for (int j = 0; j < phi.size(); ++j) out[static_cast<size_t>(j)] = phi[j].real();
  return out;
}

// Whether q / (phi - endpoint) is integrable, judged on the grid.
bool endpoint_integrable(std::span<const double> q, std::span<const double> phi,
                         double endpoint, const IntervalOptions& options) {
  const size_t m = q.size();
  double qmax = 0.0;
  double scale = 0.0;
  for (size_t j = 0; j < m; ++j) {
    qmax = std::max(qmax, std::abs(q[j]));
    scale = std::max(scale, std::abs(phi[j] - endpoint));
  }
  const double cut = options.zero_set_rel * qmax;
  const double hit = 1e-14 * std::max(1.0, scale);
  double fine = 0.0;
  double coarse = 0.0;
  for (size_t j = 0; j < m; ++j) {
    if (std::abs(q[j]) <= cut) continue;
    const double den = std::abs(phi[j] - endpoint);
    if (den <= hit) return false;
    const double v = std::abs(q[j]) / den;
    fine += v;
    if (j % 2 == 0) coarse += v;
  }
  fine /= static_cast<double>(m);
  coarse /= static_cast<double>(m / 2);
  if (!std::isfinite(fine) || !std::isfinite(coarse)) return false;
  return std::abs(fine - coarse) <= options.refinement_tolerance * std::max(fine, coarse);
}

}  // namespace

KernelDifferenceConstant::KernelDifferenceConstant(cplx c) : c_(c) {
  if (c == cplx{} || !std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw InvalidArgument("kernel-difference constant c must be finite and nonzero");
  }
}

double kernel_difference_density(const DiskPair& pair, const KernelDifferenceConstant& c,
                                 cplx z) {
  return 2.0 * (c.value() * u_eval(pair, z)).real();
}

std::vector<double> kernel_difference_samples(const DiskPair& pair,
                                              const KernelDifferenceConstant& c, int m) {
  std::vector<double> q(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) q[static_cast<size_t>(j)] = kernel_difference_density(pair, c, node_point(j, m));
  return q;
}

bool AngleArc::contains(double theta, double tol) const {
  const double off = wrap_positive(theta - start);
  return off > tol && off < length() - tol;
}

bool AngleArc::includes(const AngleArc& other, double tol) const {
  double off = wrap_positive(other.start - start);
  if (off > kTwoPi - tol) off -= kTwoPi;
  return off >= -tol && off + other.length() <= length() + tol;
}

ArcSet positivity_arcs(const DiskPair& pair, const KernelDifferenceConstant& c, int samples) {
  if (samples < 8) throw InvalidArgument("positivity_arcs: too few samples");
  auto f = [&](double theta) {
    return (c.value() * u_eval(pair, std::polar(1.0, theta))).real();
  };
  std::vector<bool> positive(static_cast<size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    positive[static_cast<size_t>(k)] = f(node_angle(k, samples)) > 0.0;
  }
  std::vector<int> changes;
  for (int k = 0; k < samples; ++k) {
    if (positive[static_cast<size_t>(k)] != positive[static_cast<size_t>((k + 1) % samples)]) {
      changes.push_back(k);
    }
  }
  if (changes.size() != 2) {
    throw NumericalBreakdown("positivity_arcs: expected exactly two sign changes of Re(c u), saw " +
                             std::to_string(changes.size()));
  }

  std::array<double, 2> zeros{};
  for (size_t i = 0; i < 2; ++i) {
    const int k = changes[i];
    double lo = node_angle(k, samples);
    double hi = node_angle(k + 1, samples);
    const bool lo_positive = positive[static_cast<size_t>(k)];
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      if ((f(mid) > 0.0) == lo_positive) lo = mid;
      else hi = mid;
    }
    zeros[i] = wrap_positive(0.5 * (lo + hi));
  }
  std::sort(zeros.begin(), zeros.end());

  // Sign on the ccw arc from zeros[0] to zeros[1], probed at its midpoint.
  const double probe = 0.5 * (zeros[0] + zeros[1]);
  const bool first_positive = f(probe) > 0.0;

  ArcSet out;
  out.zeros = zeros;
  const AngleArc first = make_arc(zeros[0], zeros[1]);
  const AngleArc second = make_arc(zeros[1], zeros[0]);
  out.plus = first_positive ? first : second;
  out.minus = first_positive ? second : first;
  return out;
}

BoundarySymbol step_symbol(const DiskPair& pair, const KernelDifferenceConstant& c, double hi,
                           double lo, int m) {
  if (!valid_sample_count(m)) {
    throw InvalidArgument("step_symbol: M must be a power of two >= 64");
  }
  const std::vector<double> q = kernel_difference_samples(pair, c, m);
  std::vector<cplx> samples(static_cast<size_t>(m));
  for (size_t j = 0; j < samples.size(); ++j) samples[j] = q[j] > 0.0 ? hi : lo;
  return BoundarySymbol(std::move(samples), "step:" + std::to_string(hi) + "," +
                                                std::to_string(lo) + "," +
                                                std::to_string(c.value().real()) + "," +
                                                std::to_string(c.value().imag()));
}

IntervalPrediction interval_predict(const DiskPair& pair, const KernelDifferenceConstant& c,
                                    const BoundarySymbol& phi, double beta,
                                    const IntervalOptions& options) {
  const std::vector<double> values = real_parts(phi, "interval_predict");
  const std::vector<double> q = kernel_difference_samples(pair, c, phi.size());
  const ArcSplit split = split_nodes(q, options.zero_set_rel);
  if (split.plus.empty() || split.minus.empty()) {
    throw NumericalBreakdown("interval_predict: grid misses one of the positivity arcs");
  }

  IntervalPrediction out;
  out.a = pair.a();
  out.b = pair.b();
  out.c = c.value();
  out.beta = beta;
  out.m = -std::numeric_limits<double>::infinity();
  for (int j : split.minus) out.m = std::max(out.m, values[static_cast<size_t>(j)] - beta);
  out.m_sup = std::numeric_limits<double>::infinity();
  for (int j : split.plus) out.m_sup = std::min(out.m_sup, values[static_cast<size_t>(j)] - beta);
  for (int j : split.zero) {
    if (continuous_from(values, q, j, -1.0)) out.m = std::max(out.m, values[static_cast<size_t>(j)] - beta);
    if (continuous_from(values, q, j, +1.0)) out.m_sup = std::min(out.m_sup, values[static_cast<size_t>(j)] - beta);
  }
  out.interval = {out.m + beta, out.m_sup + beta};

  const double tol = options.zero_tolerance;
  if (std::abs(out.m) <= tol && std::abs(out.m_sup) <= tol) {
    out.degenerate_point = beta;
    out.nonempty = false;
    const bool flag = endpoint_integrable(q, values, beta, options);
    out.endpoint_flags = {flag, flag};
    return out;
  }
  if (!(out.m < -tol && out.m_sup > tol)) {
    throw HypothesisFailed("interval_predict: need sup over S_c^- of phi - beta < 0 < inf over "
                           "S_c^+ (m=" + std::to_string(out.m) +
                           ", M=" + std::to_string(out.m_sup) + ")");
  }
  out.nonempty = true;
  out.endpoint_flags = {endpoint_integrable(q, values, out.interval[1], options),
                        endpoint_integrable(q, values, out.interval[0], options)};
  return out;
}

OuterEigenpair construct_eigenpair(const DiskPair& pair, const KernelDifferenceConstant& c,
                                   const BoundarySymbol& phi, double beta, double lambda, int n,
                                   const IntervalOptions& options) {
  const std::vector<double> values = real_parts(phi, "construct_eigenpair");
  const int m = phi.size();
  const double eig = beta + lambda;

  // Endpoint bookkeeping only applies when the symbol satisfies the hypothesis.
  std::optional<IntervalPrediction> prediction;
  try {
    prediction = interval_predict(pair, c, phi, beta, options);
  } catch (const HypothesisFailed&) {
  }
  if (prediction && prediction->nonempty) {
    const double scale = std::max(1.0, std::abs(eig));
    const double at = 1e-12 * scale;
    if (std::abs(eig - prediction->upper()) <= at && !prediction->endpoint_flags[0]) {
      throw IntegrabilityFailure("construct_eigenpair: upper endpoint " +
                                 std::to_string(prediction->upper()) + " is excluded");
    }
    if (std::abs(eig - prediction->lower()) <= at && !prediction->endpoint_flags[1]) {
      throw IntegrabilityFailure("construct_eigenpair: lower endpoint " +
                                 std::to_string(prediction->lower()) + " is excluded");
    }
  }

  const std::vector<double> q = kernel_difference_samples(pair, c, m);
  double qmax = 0.0;
  double dmax = 0.0;
  for (int j = 0; j < m; ++j) {
    qmax = std::max(qmax, std::abs(q[static_cast<size_t>(j)]));
    dmax = std::max(dmax, std::abs(values[static_cast<size_t>(j)] - eig));
  }
  const double zero_cut = options.zero_set_rel * qmax;
  const double hit = 1e-14 * std::max(1.0, dmax);

  std::vector<double> psi(static_cast<size_t>(m), 0.0);
  std::vector<int> removable;
  for (int j = 0; j < m; ++j) {
    const auto jj = static_cast<size_t>(j);
    const double d = values[jj] - eig;
    if (std::abs(q[jj]) <= zero_cut) {
      // Node on a zero of 2 Re(c u): either a genuine zero of psi or 0/0.
      if (std::abs(d) <= 1e-8 * std::max(1.0, dmax)) removable.push_back(j);
      continue;
    }
    if (std::abs(d) <= hit) {
      throw IntegrabilityFailure("construct_eigenpair: phi equals " + std::to_string(eig) +
                                 " where 2 Re(c u) does not vanish");
    }
    psi[jj] = q[jj] / d;
  }
  for (int j : removable) {
    const auto prev = static_cast<size_t>((j - 1 + m) % m);
    const auto next = static_cast<size_t>((j + 1) % m);
    psi[static_cast<size_t>(j)] = 0.5 * (psi[prev] + psi[next]);
  }

  double psi_max = 0.0;
  for (double v : psi) psi_max = std::max(psi_max, std::abs(v));
  if (!(psi_max > 0.0) || !std::isfinite(psi_max)) {
    throw IntegrabilityFailure("construct_eigenpair: density psi is not finite and nonzero");
  }
  for (double& v : psi) {
    if (v < -1e-6 * psi_max) {
      throw SignFailure("construct_eigenpair: psi changes sign, " + std::to_string(eig) +
                        " is not an admissible relative eigenvalue for this c");
    }
    v = std::max(v, 0.0);
  }

  std::vector<double> modulus(psi.size());
  for (size_t j = 0; j < psi.size(); ++j) modulus[j] = std::sqrt(psi[j]);

  const OuterFunction g = [&] {
    try {
      return OuterFunction::from_modulus(modulus);
    } catch (const InvalidArgument& e) {
      throw IntegrabilityFailure(std::string("construct_eigenpair: ") + e.what());
    }
  }();
  const cplx ga = g(pair.a(), 1.0 - 1e-12);
  const cplx gb = g(pair.b(), 1.0 - 1e-12);

  OuterEigenpair out;
  out.lambda = eig;
  out.psi = std::move(psi);
  out.s = ga / gb;
  out.g_boundary = g.boundary_values();
  out.n = n;
  out.m = m;

  const ExtendedParameter s = ExtendedParameter::finite(out.s);
  out.g_coeffs = expand_in_onb(pair, s, out.g_boundary, n);
  const Eigen::MatrixXcd a = truncate(pair, s, phi, n).matrix;
  const Eigen::VectorXcd& coeffs = out.g_coeffs.coefficients;
  out.residual = (a * coeffs - eig * coeffs).norm() / coeffs.norm();
  return out;
}

AnnihilatorFit annihilator_fit(std::span<const cplx> f, const DiskPair& pair) {
  const int m = static_cast<int>(f.size());
  if (m < 8) throw InvalidArgument("annihilator_fit: too few samples");
  Eigen::MatrixXcd basis(m, 2);
  Eigen::VectorXcd rhs(m);
  for (int j = 0; j < m; ++j) {
    const cplx u = u_eval(pair, node_point(j, m));
    basis(j, 0) = u;
    basis(j, 1) = std::conj(u);
    rhs(j) = f[static_cast<size_t>(j)];
  }
  const Eigen::VectorXcd sol = basis.colPivHouseholderQr().solve(rhs);
  AnnihilatorFit out;
  out.d1 = sol(0);
  out.d2 = std::conj(sol(1));  // conj(d2 u) = conj(d2) conj(u)
  out.residual = (rhs - basis * sol).norm() / std::sqrt(static_cast<double>(m));
  return out;
}

AnnihilatorFit annihilator_fit(const BoundarySymbol& f, const DiskPair& pair) {
  return annihilator_fit(f.samples(), pair);
}

AnnihilatorReport annihilator_verify(std::span<const cplx> f, const DiskPair& pair, int n_max) {
  if (n_max < 0) throw InvalidArgument("annihilator_verify: n_max must be nonnegative");
  const int top = n_max + 2;
  const auto coeff = fourier_coefficients(f, -top, top);
  auto fh = [&](int n) { return coeff.at(n); };

  const cplx s = pair.a() + pair.b();
  const cplx p = pair.a() * pair.b();
  AnnihilatorReport out;
  out.mean = std::abs(fh(0));
  for (int n = 0; n <= n_max; ++n) {
    // <f, p_n> = int f conj(p_n),  int f p_n
    const cplx conj_pair = fh(n + 2) - std::conj(s) * fh(n + 1) + std::conj(p) * fh(n);
    const cplx pair_int = fh(-n - 2) - s * fh(-n - 1) + p * fh(-n);
    out.conj_witness = std::max(out.conj_witness, std::abs(conj_pair));
    out.witness = std::max(out.witness, std::abs(pair_int));
    if (n >= 1) {
      out.positive_defect = std::max(out.positive_defect, std::abs(conj_pair));
      out.negative_defect = std::max(out.negative_defect, std::abs(pair_int));
    }
  }
  return out;
}

AnnihilatorReport annihilator_verify(const BoundarySymbol& f, const DiskPair& pair, int n_max) {
  return annihilator_verify(f.samples(), pair, n_max);
}

std::string to_string(ArcRelation r) {
  switch (r) {
    case ArcRelation::Equal: return "equal";
    case ArcRelation::DInsideC: return "d_in_c";
    case ArcRelation::CInsideD: return "c_in_d";
    case ArcRelation::Neither: return "neither";
  }
  return "neither";
}

ContainmentReport containment_check(const DiskPair& pair, const KernelDifferenceConstant& c,
                                    const KernelDifferenceConstant& d) {
  ContainmentReport out;
  out.arcs_c = positivity_arcs(pair, c);
  out.arcs_d = positivity_arcs(pair, d);
  out.d_in_c = out.arcs_c.plus.includes(out.arcs_d.plus, kArcCoincidence);
  out.c_in_d = out.arcs_d.plus.includes(out.arcs_c.plus, kArcCoincidence);
  if (out.d_in_c && out.c_in_d) out.relation = ArcRelation::Equal;
  else if (out.d_in_c) out.relation = ArcRelation::DInsideC;
  else if (out.c_in_d) out.relation = ArcRelation::CInsideD;
  else out.relation = ArcRelation::Neither;

  const cplx cross = c.value() * std::conj(d.value());
  const double scale = std::abs(c.value()) * std::abs(d.value());
  const bool positive_multiple = std::abs(cross.imag()) <= kArcCoincidence * scale && cross.real() > 0.0;
  out.expected = positive_multiple ? ArcRelation::Equal : ArcRelation::Neither;
  return out;
}

}  // namespace twopoint
