#include "twopoint/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "twopoint/errors.hpp"

namespace twopoint {

double sigma_min(const Eigen::MatrixXcd& a, cplx lambda) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw InvalidArgument("sigma_min needs a nonempty square matrix");
  }
  Eigen::MatrixXcd shifted = a;
  shifted.diagonal().array() -= lambda;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(shifted);
  return svd.singularValues().minCoeff();
}

double sigma_min(const ToeplitzTruncation& a, cplx lambda) {
  return sigma_min(a.matrix, lambda);
}

double operator_norm(const Eigen::MatrixXcd& a) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues().maxCoeff();
}

EigenResult eigenvalues(const Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || n == 0) {
    throw InvalidArgument("eigenvalues need a nonempty square matrix");
  }
  if (n > kMaxEigenSize) {
    throw InvalidArgument("eigenvalues: matrix larger than 512");
  }

  const double tol = 8.0 * std::numeric_limits<double>::epsilon() * a.norm();
  Eigen::MatrixXcd b = a;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (i != j && std::abs(b(i, j)) <= tol) b(i, j) = 0.0;

  EigenResult out;
  std::vector<Eigen::Index> active(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) active[static_cast<size_t>(i)] = i;

  // Peel off eigenvalues whose row or column is empty within the active block.
  bool changed = true;
  while (changed && !active.empty()) {
    changed = false;
    for (size_t p = 0; p < active.size(); ++p) {
      const Eigen::Index i = active[p];
      bool row_empty = true;
      bool col_empty = true;
      for (Eigen::Index j : active) {
        if (j == i) continue;
        if (b(i, j) != cplx{}) row_empty = false;
        if (b(j, i) != cplx{}) col_empty = false;
        if (!row_empty && !col_empty) break;
      }
      if (row_empty || col_empty) {
        out.values.push_back(b(i, i));
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(p));
        changed = true;
        break;
      }
    }
  }
  out.isolated = static_cast<int>(out.values.size());

  if (!active.empty()) {
    const auto k = static_cast<Eigen::Index>(active.size());
    Eigen::MatrixXcd core(k, k);
    for (Eigen::Index r = 0; r < k; ++r)
      for (Eigen::Index c = 0; c < k; ++c)
        core(r, c) = b(active[static_cast<size_t>(r)], active[static_cast<size_t>(c)]);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(core, /*computeEigenvectors=*/false);
    out.converged = solver.info() == Eigen::Success;
    if (out.converged) {
      for (Eigen::Index r = 0; r < k; ++r) out.values.push_back(solver.eigenvalues()(r));
    }
  }
  return out;
}

EigenResult eigenvalues(const ToeplitzTruncation& a) { return eigenvalues(a.matrix); }

cplx SpectralPortrait::point(int i_re, int i_im) const {
  const double x = lower.real() + (upper.real() - lower.real()) * i_re / (steps_re - 1);
  const double y = lower.imag() + (upper.imag() - lower.imag()) * i_im / (steps_im - 1);
  return {x, y};
}

SpectralPortrait portrait(const Eigen::MatrixXcd& a, cplx corner0, cplx corner1, int steps_re,
                          int steps_im, unsigned threads) {
  if (steps_re < 2 || steps_im < 2) {
    throw InvalidArgument("portrait needs at least 2 lattice steps per direction");
  }
  SpectralPortrait out;
  out.lower = {std::min(corner0.real(), corner1.real()), std::min(corner0.imag(), corner1.imag())};
  out.upper = {std::max(corner0.real(), corner1.real()), std::max(corner0.imag(), corner1.imag())};
  out.steps_re = steps_re;
  out.steps_im = steps_im;
  out.values.assign(static_cast<size_t>(steps_re) * static_cast<size_t>(steps_im), 0.0);

  const int total = steps_re * steps_im;
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(total));

  auto work = [&](unsigned w) {
    for (int idx = static_cast<int>(w); idx < total; idx += static_cast<int>(workers)) {
      const int i_re = idx % steps_re;
      const int i_im = idx / steps_re;
      out.values[static_cast<size_t>(idx)] = sigma_min(a, out.point(i_re, i_im));
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  return out;
}

std::vector<const ProbeResult*> SpectrumCheckReport::failures() const {
  std::vector<const ProbeResult*> out;
  for (const auto& p : probes)
    if (!p.pass) out.push_back(&p);
  return out;
}

SpectrumCheckReport analytic_spectrum_check(const DiskPair& pair, const ExtendedParameter& t,
                                            const BoundarySymbol& phi,
                                            const std::vector<cplx>& probes_inside,
                                            const std::vector<cplx>& probes_outside,
                                            const std::vector<int>& n_schedule,
                                            const SpectrumCheckOptions& options) {
  if (!phi.analytic()) {
    throw InvalidArgument("analytic_spectrum_check: symbol is not flagged analytic");
  }
  if (phi.is_constant()) {
    throw InvalidArgument("analytic_spectrum_check: symbol must be non-constant");
  }
  if (n_schedule.empty() || !std::is_sorted(n_schedule.begin(), n_schedule.end()) ||
      std::adjacent_find(n_schedule.begin(), n_schedule.end()) != n_schedule.end()) {
    throw InvalidArgument("analytic_spectrum_check: N schedule must be strictly increasing");
  }
  const HullPolygon hull = essential_range_hull(phi);
  for (cplx lambda : probes_outside) {
    if (!(hull.distance(lambda) > 0.0)) {
      throw InvalidArgument("analytic_spectrum_check: outside probe lies in the symbol hull");
    }
  }

  std::vector<Eigen::MatrixXcd> truncs;
  truncs.reserve(n_schedule.size());
  for (int n : n_schedule) truncs.push_back(truncate(pair, t, phi, n).matrix);

  SpectrumCheckReport report;
  for (cplx lambda : probes_outside) {
    ProbeResult r;
    r.lambda = lambda;
    r.inside = false;
    r.sizes = n_schedule;
    r.bound = hull.distance(lambda);
    r.pass = true;
    std::ostringstream why;
    for (size_t i = 0; i < truncs.size(); ++i) {
      const double s = sigma_min(truncs[i], lambda);
      r.sigma.push_back(s);
      if (s < r.bound - options.hull_tolerance) {
        r.pass = false;
        why << "N=" << n_schedule[i] << ": sigma_min " << s << " < hull distance " << r.bound
            << "; ";
      }
    }
    r.detail = why.str();
    report.pass = report.pass && r.pass;
    report.probes.push_back(std::move(r));
  }

  for (cplx lambda : probes_inside) {
    ProbeResult r;
    r.lambda = lambda;
    r.inside = true;
    r.sizes = n_schedule;
    r.bound = options.decay_threshold;
    r.pass = true;
    std::ostringstream why;
    for (size_t i = 0; i < truncs.size(); ++i) {
      r.sigma.push_back(sigma_min(truncs[i], lambda));
      if (i > 0 && r.sigma[i] > (1.0 + options.decay_slack) * r.sigma[i - 1]) {
        r.pass = false;
        why << "sigma_min grows from " << r.sigma[i - 1] << " (N=" << n_schedule[i - 1]
            << ") to " << r.sigma[i] << " (N=" << n_schedule[i] << "); ";
      }
    }
    if (r.sigma.back() > options.decay_threshold) {
      r.pass = false;
      why << "final sigma_min " << r.sigma.back() << " above threshold "
          << options.decay_threshold << "; ";
    }
    r.detail = why.str();
    report.pass = report.pass && r.pass;
    report.probes.push_back(std::move(r));
  }
  return report;
}

}  // namespace twopoint
