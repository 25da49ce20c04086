#include "twopoint/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "twopoint/errors.hpp"

namespace twopoint {

bool valid_sample_count(long m) {
  return m >= kMinSamples && (m & (m - 1)) == 0;
}

double node_angle(int j, int m) {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
}

cplx node_point(int j, int m) {
  return std::polar(1.0, node_angle(j, m));
}

BoundarySymbol::BoundarySymbol(std::vector<cplx> samples, std::string description,
                               bool analytic)
    : samples_(std::move(samples)), description_(std::move(description)), analytic_(analytic) {
  if (!valid_sample_count(static_cast<long>(samples_.size()))) {
    throw InvalidArgument("sample count must be a power of two >= 64, got " +
                          std::to_string(samples_.size()));
  }
  real_valued_ = std::all_of(samples_.begin(), samples_.end(),
                             [](cplx v) { return v.imag() == 0.0; });
}

double BoundarySymbol::sup_norm() const {
  double m = 0.0;
  for (cplx v : samples_) m = std::max(m, std::abs(v));
  return m;
}

bool BoundarySymbol::is_constant(double tol) const {
  const cplx first = samples_.front();
  const double scale = std::max(1.0, std::abs(first));
  return std::all_of(samples_.begin(), samples_.end(),
                     [&](cplx v) { return std::abs(v - first) <= tol * scale; });
}

BoundarySymbol sample_symbol(const AngleFunction& generator, int m, std::string description,
                             bool analytic) {
  if (!valid_sample_count(m)) {
    throw InvalidArgument("sample count must be a power of two >= 64, got " +
                          std::to_string(m));
  }
  std::vector<cplx> samples(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) {
    samples[static_cast<size_t>(j)] = generator(node_angle(j, m));
  }
  return BoundarySymbol(std::move(samples), std::move(description), analytic);
}

BoundarySymbol sample_on_circle(const std::function<cplx(cplx)>& f, int m,
                                std::string description, bool analytic) {
  return sample_symbol([&](double theta) { return f(std::polar(1.0, theta)); }, m,
                       std::move(description), analytic);
}

BoundarySymbol constant_symbol(cplx value, int m) {
  return sample_symbol([value](double) { return value; }, m,
                       "const:" + std::to_string(value.real()) + "," +
                           std::to_string(value.imag()),
                       true);
}

BoundarySymbol cosine_symbol(int m) {
  return sample_symbol([](double theta) { return cplx(std::cos(theta), 0.0); }, m, "coszeta");
}

BoundarySymbol blaschke_symbol(const DiskPair& pair, int m) {
  return sample_on_circle([&](cplx z) { return eval_blaschke_pair(pair, z); }, m, "blaschke",
                          true);
}

cplx boundary_inner_product(std::span<const cplx> f, std::span<const cplx> g) {
  if (f.size() != g.size()) {
    throw InvalidArgument("inner product of sample vectors with different lengths");
  }
  if (f.empty()) {
    throw InvalidArgument("inner product of empty sample vectors");
  }
  cplx acc{};
  for (size_t j = 0; j < f.size(); ++j) acc += f[j] * std::conj(g[j]);
  return acc / static_cast<double>(f.size());
}

cplx boundary_inner_product(const BoundarySymbol& f, const BoundarySymbol& g) {
  return boundary_inner_product(f.samples(), g.samples());
}

double boundary_norm(std::span<const cplx> f) {
  double acc = 0.0;
  for (cplx v : f) acc += std::norm(v);
  return std::sqrt(acc / static_cast<double>(f.size()));
}

std::map<int, cplx> fourier_coefficients(std::span<const cplx> f, int n_min, int n_max) {
  const long m = static_cast<long>(f.size());
  if (n_max < n_min) {
    throw InvalidArgument("fourier_coefficients: empty frequency range");
  }
  if (2L * (static_cast<long>(n_max) - n_min) >= m) {
    throw InvalidArgument("fourier_coefficients: range n_max - n_min must be < M/2");
  }
  std::map<int, cplx> out;
  for (int n = n_min; n <= n_max; ++n) {
    cplx acc{};
    for (long j = 0; j < m; ++j) {
      // reduce n*j mod M before forming the angle to keep the phase exact
      long k = (static_cast<long>(n) * j) % m;
      if (k < 0) k += m;
      acc += f[static_cast<size_t>(j)] * std::conj(node_point(static_cast<int>(k), static_cast<int>(m)));
    }
    out.emplace(n, acc / static_cast<double>(m));
  }
  return out;
}

std::map<int, cplx> fourier_coefficients(const BoundarySymbol& f, int n_min, int n_max) {
  return fourier_coefficients(f.samples(), n_min, n_max);
}

}  // namespace twopoint
