#include "twopoint/outer.hpp"

#include <unsupported/Eigen/FFT>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "twopoint/errors.hpp"

namespace twopoint {
namespace {

constexpr double kMaxZeroOrder = 8.0;
constexpr double kRefinementTolerance = 0.10;

double mean_abs(std::span<const double> v, size_t stride) {
  double acc = 0.0;
  size_t count = 0;
  for (size_t j = 0; j < v.size(); j += stride, ++count) acc += std::abs(v[j]);
  return acc / static_cast<double>(count);
}

}  // namespace

OuterFunction OuterFunction::from_log_modulus(std::vector<double> log_modulus) {
  if (!valid_sample_count(static_cast<long>(log_modulus.size()))) {
    throw InvalidArgument("outer function: grid size must be a power of two >= 64");
  }
  for (double v : log_modulus) {
    if (!std::isfinite(v)) {
      throw InvalidArgument("outer function: log-modulus samples must be finite");
    }
  }
  return OuterFunction(std::move(log_modulus));
}

OuterFunction OuterFunction::from_modulus(std::span<const double> modulus) {
  const size_t m = modulus.size();
  if (!valid_sample_count(static_cast<long>(m))) {
    throw InvalidArgument("outer function: grid size must be a power of two >= 64");
  }
  std::vector<double> v(m);
  std::vector<size_t> zeros;
  for (size_t j = 0; j < m; ++j) {
    const double w = modulus[j];
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidArgument("outer function: modulus samples must be finite and >= 0");
    }
    if (w == 0.0) {
      zeros.push_back(j);
    } else {
      v[j] = std::log(w);
    }
  }

  auto at = [&](size_t j, long off) -> size_t {
    return static_cast<size_t>((static_cast<long>(j) + off + static_cast<long>(m)) %
                               static_cast<long>(m));
  };
  auto is_zero = [&](size_t j) { return modulus[j] == 0.0; };
  for (size_t j : zeros) {
    for (long off : {-2L, -1L, 1L, 2L}) {
      if (is_zero(at(j, off))) {
        throw InvalidArgument(
            "outer function: modulus vanishes on more than an isolated node (not "
            "log-integrable)");
      }
    }
    const double order = ((v[at(j, 2)] - v[at(j, 1)]) + (v[at(j, -2)] - v[at(j, -1)])) /
                         (2.0 * std::numbers::ln2);
    if (!(order > 0.0 && order <= kMaxZeroOrder)) {
      throw InvalidArgument("outer function: sampled zero is not of logarithmic type");
    }
    v[j] = 0.5 * (v[at(j, -1)] + v[at(j, 1)]) - order * std::log(2.0 * std::numbers::pi);
  }

  const double fine = mean_abs(v, 1);
  const double coarse = mean_abs(v, 2);
  if (std::abs(fine - coarse) > kRefinementTolerance * std::max(fine, coarse) + 1e-12) {
    throw InvalidArgument("outer function: log-modulus quadrature does not settle under refinement");
  }
  return OuterFunction(std::move(v), std::move(zeros));
}

cplx OuterFunction::operator()(cplx z, double r_max) const {
  if (!(r_max < 1.0)) throw InvalidArgument("outer function: r_max must be < 1");
  if (!(std::abs(z) <= r_max)) {
    throw InvalidArgument("outer function: evaluation point outside |z| <= r_max");
  }
  const int m = size();
  cplx acc{};
  for (int j = 0; j < m; ++j) {
    const cplx zeta = node_point(j, m);
    acc += (zeta + z) / (zeta - z) * log_modulus_[static_cast<size_t>(j)];
  }
  return std::exp(acc / static_cast<double>(m));
}

std::vector<cplx> OuterFunction::boundary_values() const {
  const size_t m = log_modulus_.size();
  Eigen::FFT<double> fft;
  std::vector<cplx> spectrum;
  fft.fwd(spectrum, log_modulus_);
  spectrum.resize(m);

  // Analytic completion: keep n = 0 and M/2 once, double 0 < n < M/2, drop n > M/2.
  std::vector<cplx> half(m, cplx{});
  half[0] = spectrum[0];
  for (size_t n = 1; n < m / 2; ++n) half[n] = 2.0 * spectrum[n];
  half[m / 2] = spectrum[m / 2];

  std::vector<cplx> log_values;
  fft.inv(log_values, half);  // scaled by 1/M
  std::vector<cplx> out(m);
  for (size_t j = 0; j < m; ++j) out[j] = std::exp(log_values[j]);
  for (size_t j : zero_nodes_) out[j] = 0.0;
  return out;
}

cplx outer_from_modulus(const BoundarySymbol& modulus, cplx z, double r_max) {
  if (!modulus.real_valued()) {
    throw InvalidArgument("outer_from_modulus: modulus must be real-valued");
  }
  std::vector<double> w(static_cast<size_t>(modulus.size()));
  for (int j = 0; j < modulus.size(); ++j) w[static_cast<size_t>(j)] = modulus[j].real();
  return OuterFunction::from_modulus(w)(z, r_max);
}

}  // namespace twopoint
