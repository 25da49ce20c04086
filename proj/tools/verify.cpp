#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numbers>
#include <random>

#include "twopoint/errors.hpp"
#include "twopoint/hull.hpp"
#include "twopoint/outer.hpp"
#include "twopoint/relative_spectrum.hpp"
#include "twopoint/spectra.hpp"
#include "twopoint/toeplitz.hpp"

namespace twopoint::cli {
namespace {

constexpr int kGrid = 1024;

struct Setting {
  DiskPair pair;
  ExtendedParameter t;
};

std::vector<Setting> settings() {
  std::vector<Setting> out;
  for (const DiskPair& p : {DiskPair({0.5, 0}, {-0.5, 0}), DiskPair({0.3, 0.2}, {0, -0.4})}) {
    for (const ExtendedParameter& t :
         {ExtendedParameter::finite(1), ExtendedParameter::finite({2, 1}),
          ExtendedParameter::finite(0), ExtendedParameter::infinity()}) {
      out.push_back({p, t});
    }
  }
  return out;
}

Check make(std::string name, double measured, double bound) {
  return {std::move(name), measured, bound, measured <= bound};
}

std::vector<cplx> samples_of(const std::function<cplx(cplx)>& f) {
  std::vector<cplx> v(kGrid);
  for (int j = 0; j < kGrid; ++j) v[static_cast<size_t>(j)] = f(node_point(j, kGrid));
  return v;
}

// <f, k^t_w> against f(w) over basis functions and the head kernel.
double reproducing_defect() {
  double worst = 0.0;
  for (const auto& s : settings()) {
    const ConstrainedSpace space(s.pair, s.t);
    std::vector<std::function<cplx(cplx)>> fs;
    for (int n = 0; n <= 8; ++n) {
      fs.emplace_back([&, n](cplx z) { return eval_blaschke_pair(s.pair, z) * std::pow(z, n); });
    }
    if (space.has_head()) fs.emplace_back([&](cplx z) { return space.head(z); });
    for (const auto& f : fs) {
      const auto fv = samples_of(f);
      for (int i = 0; i < 5; ++i) {
        for (int k = 0; k < 5; ++k) {
          const cplx w{-0.56 + 0.28 * i, -0.56 + 0.28 * k};
          const auto kv = samples_of([&](cplx z) { return space.kernel(w, z); });
          worst = std::max(worst, std::abs(boundary_inner_product(fv, kv) - f(w)));
        }
      }
    }
  }
  return worst;
}

double kernel_identity_defect() {
  double worst = 0.0;
  for (const auto& s : settings()) {
    if (s.t.is_infinite()) continue;
    const ConstrainedSpace space(s.pair, s.t);
    for (int j = 0; j < 16; ++j) {
      const cplx z = 0.9 * node_point(j, 16);
      const cplx ka = space.kernel(s.pair.a(), z);
      const cplx kb = space.kernel(s.pair.b(), z);
      worst = std::max(worst, std::abs(ka - std::conj(s.t.value()) * kb));
    }
  }
  return worst;
}

double gram_defect() {
  double worst = 0.0;
  for (const auto& s : settings()) {
    const Eigen::MatrixXcd e = basis_samples(ConstrainedSpace(s.pair, s.t), 16, kGrid);
    const Eigen::MatrixXcd g = e.adjoint() * e / static_cast<double>(kGrid);
    worst = std::max(worst, (g - Eigen::MatrixXcd::Identity(16, 16)).cwiseAbs().maxCoeff());
  }
  return worst;
}

double hermitian_defect() {
  double worst = 0.0;
  const BoundarySymbol phi = cosine_symbol(kGrid);
  for (const auto& s : settings()) {
    const Eigen::MatrixXcd a = truncate(s.pair, s.t, phi, 32).matrix;
    worst = std::max(worst, (a - a.adjoint()).cwiseAbs().maxCoeff());
  }
  return worst;
}

// ||A_N|| - sup|phi|, and the numerical range of a Hermitian truncation
// inside [min phi, max phi].
double norm_excess() {
  double worst = -1.0;
  const DiskPair p({0.5, 0}, {-0.5, 0});
  for (const BoundarySymbol& phi : {cosine_symbol(kGrid), blaschke_symbol(p, kGrid)}) {
    for (const auto& s : settings()) {
      const Eigen::MatrixXcd a = truncate(s.pair, s.t, phi, 32).matrix;
      worst = std::max(worst, operator_norm(a) - phi.sup_norm());
    }
  }
  return worst;
}

double hull_violation(unsigned threads) {
  const DiskPair p({0.5, 0}, {-0.5, 0});
  const BoundarySymbol phi = cosine_symbol(kGrid);
  const HullPolygon hull = essential_range_hull(phi);
  const Eigen::MatrixXcd a = truncate(p, ExtendedParameter::finite(1), phi, 64).matrix;
  const SpectralPortrait pt = portrait(a, {-2, -1}, {2, 1}, 9, 5, threads);
  double worst = -1.0;
  for (int i = 0; i < pt.steps_im; ++i) {
    for (int r = 0; r < pt.steps_re; ++r) {
      const double d = hull.distance(pt.point(r, i));
      if (d >= 0.25) worst = std::max(worst, d - pt.at(r, i));
    }
  }
  return worst;
}

double analytic_eigen_defect() {
  const DiskPair p({0.5, 0}, {-0.5, 0});
  const BoundarySymbol phi = blaschke_symbol(p, kGrid);
  const EigenResult ev = eigenvalues(truncate(p, ExtendedParameter::finite(1), phi, 8));
  if (!ev.converged || ev.values.size() != 8) return 1.0;
  std::vector<cplx> v = ev.values;
  std::sort(v.begin(), v.end(), [](cplx x, cplx y) { return x.real() > y.real(); });
  double worst = std::abs(v[0]);
  for (size_t k = 1; k < v.size(); ++k) worst = std::max(worst, std::abs(v[k] + 0.25));
  return worst;
}

double berezin_defect() {
  const DiskPair p({0.5, 0}, {-0.5, 0});
  return std::abs(berezin_at_a(p, ExtendedParameter::finite(1), blaschke_symbol(p, kGrid)));
}

// Counts how many of the expected failures did not fire.
template <class Expected>
double missing_failures(const std::vector<double>& lambdas, const BoundarySymbol& phi,
                        const DiskPair& p, const KernelDifferenceConstant& c) {
  double missing = 0.0;
  for (double l : lambdas) {
    try {
      (void)construct_eigenpair(p, c, phi, 0.0, l, 32);
      missing += 1.0;
    } catch (const Expected&) {
    } catch (const Error&) {
      missing += 1.0;
    }
  }
  return missing;
}

double arc_failures(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  double failures = 0.0;
  for (int i = 0; i < count; ++i) {
    const cplx a = std::polar(0.9 * std::sqrt(std::abs(u(rng))), ang(rng));
    cplx b = std::polar(0.9 * std::sqrt(std::abs(u(rng))), ang(rng));
    if (std::abs(a - b) < 1e-3) b = -a + cplx(0.01, 0);
    const cplx c{u(rng), u(rng)};
    try {
      const ArcSet arcs = positivity_arcs(DiskPair(a, b), KernelDifferenceConstant(c));
      const double total = arcs.plus.length() + arcs.minus.length();
      if (std::abs(total - 2.0 * std::numbers::pi) > 1e-9) failures += 1.0;
    } catch (const Error&) {
      failures += 1.0;
    }
  }
  return failures;
}

double containment_failures(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const DiskPair p({0.3, 0.2}, {0, -0.4});
  double failures = 0.0;
  for (int i = 0; i < count; ++i) {
    const cplx c{u(rng), u(rng)};
    const cplx d{u(rng), u(rng)};
    if (std::abs((c * std::conj(d)).imag()) < 1e-3 * std::abs(c) * std::abs(d)) continue;
    try {
      if (!containment_check(p, KernelDifferenceConstant(c), KernelDifferenceConstant(d))
               .consistent()) {
        failures += 1.0;
      }
    } catch (const Error&) {
      failures += 1.0;
    }
  }
  return failures;
}

// |G|^2 against psi on the grid for the closed-form eigenpair.
double outer_modulus_defect() {
  const DiskPair p({0.5, 0}, {-0.5, 0});
  const OuterEigenpair e =
      construct_eigenpair(p, KernelDifferenceConstant(2.0 / 3.0), cosine_symbol(kGrid), 0, 0, 32);
  const double scale = *std::max_element(e.psi.begin(), e.psi.end());
  double worst = 0.0;
  for (size_t j = 0; j < e.psi.size(); ++j) {
    worst = std::max(worst, std::abs(std::norm(e.g_boundary[j]) - e.psi[j]) / scale);
  }
  return worst;
}

}  // namespace

std::vector<Check> invariant_suite(unsigned threads) {
  std::vector<Check> out;
  out.push_back(make("kernel.reproducing", reproducing_defect(), 1e-10));
  out.push_back(make("kernel.identity_ka_conj_t_kb", kernel_identity_defect(), 1e-12));
  out.push_back(make("onb.gram_identity", gram_defect(), 1e-10));
  out.push_back(make("toeplitz.hermitian_real_symbol", hermitian_defect(), 1e-12));
  out.push_back(make("toeplitz.norm_le_sup", norm_excess(), 1e-10));
  out.push_back(make("spectra.hull_bound", hull_violation(threads), 1e-8));
  out.push_back(make("analytic.berezin_zero", berezin_defect(), 1e-10));
  out.push_back(make("analytic.truncation_eigenvalues", analytic_eigen_defect(), 1e-8));

  const DiskPair p({0.5, 0}, {-0.5, 0});
  const KernelDifferenceConstant c23(2.0 / 3.0);
  const BoundarySymbol cosine = cosine_symbol(kGrid);
  const IntervalPrediction cp = interval_predict(p, c23, cosine, 0.0);
  out.push_back(make("relspec.cos_degenerate_point",
                     cp.degenerate_point ? std::abs(*cp.degenerate_point) : 1.0, 1e-10));
  const OuterEigenpair ce = construct_eigenpair(p, c23, cosine, 0, 0, 32);
  out.push_back(make("relspec.cos_s_equals_1", std::abs(ce.s - 1.0), 1e-8));
  out.push_back(make("relspec.cos_residual", ce.residual, 1e-6));
  out.push_back(make("outer.modulus_matches_psi", outer_modulus_defect(), 1e-8));

  const KernelDifferenceConstant c1(1.0);
  const BoundarySymbol step = step_symbol(p, c1, 1.0, -1.0, 4096);
  const IntervalPrediction sp = interval_predict(p, c1, step, 0.0);
  const double interval_err =
      sp.nonempty ? std::max(std::abs(sp.lower() + 1.0), std::abs(sp.upper() - 1.0)) : 1.0;
  out.push_back(make("relspec.step_interval", interval_err, 1e-12));
  out.push_back(make("relspec.step_endpoints_excluded",
                     (sp.endpoint_flags[0] ? 1.0 : 0.0) + (sp.endpoint_flags[1] ? 1.0 : 0.0), 0.0));
  out.push_back(make("relspec.step_sign_failures",
                     missing_failures<SignFailure>({-1.25, 1.25}, step, p, c1), 0.0));
  out.push_back(make("relspec.step_integrability_failures",
                     missing_failures<IntegrabilityFailure>({-1.0, 1.0}, step, p, c1), 0.0));

  std::vector<cplx> f(kGrid);
  const cplx d1{2, 0}, d2{0, 3};
  for (int j = 0; j < kGrid; ++j) {
    const cplx uu = u_eval(p, node_point(j, kGrid));
    f[static_cast<size_t>(j)] = d1 * uu + std::conj(d2 * uu);
  }
  const AnnihilatorFit fit = annihilator_fit(f, p);
  out.push_back(make("annihilator.recovery", std::max(std::abs(fit.d1 - d1), std::abs(fit.d2 - d2)),
                     1e-10));
  out.push_back(make("annihilator.recurrence", annihilator_verify(f, p, 16).recurrence_defect(),
                     1e-10));
  std::vector<cplx> cs(kGrid);
  for (int j = 0; j < kGrid; ++j) cs[static_cast<size_t>(j)] = std::cos(node_angle(j, kGrid));
  out.push_back(make("annihilator.cos_witness",
                     std::abs(annihilator_verify(cs, p, 1).conj_witness - 0.125), 1e-10));

  std::mt19937_64 rng(20240611);
  out.push_back(make("arcs.two_sign_changes", arc_failures(rng, 100), 0.0));
  out.push_back(make("arcs.non_containment", containment_failures(rng, 50), 0.0));
  return out;
}

std::string report_json(const std::vector<Check>& checks) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  bool pass = true;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    pass = pass && c.pass;
    nlohmann::ordered_json item;
    item["name"] = c.name;
    item["measured"] = c.measured;
    item["bound"] = c.bound;
    item["pass"] = c.pass;
    arr.push_back(std::move(item));
  }
  j["pass"] = pass;
  j["checks"] = std::move(arr);
  return j.dump(2) + "\n";
}

}  // namespace twopoint::cli
