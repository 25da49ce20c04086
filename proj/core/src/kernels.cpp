#include "twopoint/kernels.hpp"

#include <cmath>
#include <string>

#include "twopoint/errors.hpp"

namespace twopoint {
namespace {

void require_closed_disk(cplx z, const char* what) {
  if (!(std::abs(z) <= 1.0 + kCircleSlack)) {
    throw InvalidArgument(std::string(what) + " must satisfy |z| <= 1");
  }
}

void require_open_disk(cplx w, const char* what) {
  if (!(std::abs(w) < 1.0)) {
    throw InvalidArgument(std::string(what) + " must lie in the open unit disk");
  }
}

// Relative size below which a formula denominator is treated as zero.
constexpr double kDegenerateRel = 1e-13;

cplx ipow(cplx z, int n) {
  cplx result{1.0, 0.0};
  cplx base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

}  // namespace

DiskPair::DiskPair(cplx a, cplx b) : a_(a), b_(b) {
  require_open_disk(a, "a");
  require_open_disk(b, "b");
  if (a == b) {
    throw InvalidArgument("constraint points a and b must be distinct");
  }
}

cplx ExtendedParameter::value() const {
  if (!value_) {
    throw InvalidArgument("t = inf has no finite value");
  }
  return *value_;
}

cplx eval_szego(cplx w, cplx z) {
  require_open_disk(w, "kernel point w");
  require_closed_disk(z, "evaluation point z");
  return 1.0 / (1.0 - std::conj(w) * z);
}

cplx eval_blaschke(cplx a, cplx z) {
  require_open_disk(a, "Blaschke zero");
  require_closed_disk(z, "evaluation point z");
  return (z - a) / (1.0 - std::conj(a) * z);
}

cplx eval_blaschke_pair(const DiskPair& pair, cplx z) {
  return eval_blaschke(pair.a(), z) * eval_blaschke(pair.b(), z);
}

cplx u_eval(const DiskPair& pair, cplx z) {
  require_closed_disk(z, "evaluation point z");
  const cplx a = pair.a();
  const cplx b = pair.b();
  return std::conj(a - b) * z / ((1.0 - std::conj(a) * z) * (1.0 - std::conj(b) * z));
}

ConstrainedSpace::ConstrainedSpace(DiskPair pair, ExtendedParameter t)
    : pair_(pair), t_(t) {
  const cplx a = pair_.a();
  const cplx b = pair_.b();
  if (t_.is_infinite()) {
    return;
  }
  if (t_.is_zero()) {
    // |B_a k_b| = |k_b| since B_a is inner.
    head_norm_sq_ = 1.0 / (1.0 - std::norm(b));
    return;
  }

  const cplx tv = t_.value();
  const cplx kaa = eval_szego(a, a);
  const cplx kab = eval_szego(a, b);  // k_a(b)
  const cplx kba = eval_szego(b, a);  // k_b(a)
  const cplx kbb = eval_szego(b, b);

  const cplx den = kba - tv * kbb;
  if (std::abs(den) <= kDegenerateRel * (std::abs(kba) + std::abs(tv) * std::abs(kbb))) {
    throw DegenerateParameter("k_b(a) - t k_b(b) vanishes for this t");
  }
  tau_ = (kaa - tv * kab) / den;

  const cplx tbar = std::conj(tv);
  const cplx scale_den = tbar - tau_;
  if (std::abs(scale_den) <= kDegenerateRel * (std::abs(tbar) + std::abs(tau_))) {
    throw DegenerateParameter("conj(t) - tau vanishes for this t");
  }
  head_alpha_ = tbar / scale_den;
  head_beta_ = -head_alpha_ * tau_;
  head_norm_sq_ = head_kernel(a).real();
  if (!(head_norm_sq_ > 0.0) || !std::isfinite(head_norm_sq_)) {
    throw DegenerateParameter("head kernel has non-positive norm");
  }
}

cplx ConstrainedSpace::tau() const {
  if (t_.is_infinite() || t_.is_zero()) {
    throw DegenerateParameter("tau is defined for finite nonzero t only");
  }
  return tau_;
}

cplx ConstrainedSpace::head_kernel(cplx z) const {
  if (t_.is_infinite() || t_.is_zero()) {
    throw DegenerateParameter("k^t_a is used for finite nonzero t only");
  }
  return head_alpha_ * eval_szego(pair_.a(), z) + head_beta_ * eval_szego(pair_.b(), z);
}

double ConstrainedSpace::head_kernel_norm_sq() const {
  if (t_.is_infinite() || t_.is_zero()) {
    throw DegenerateParameter("k^t_a is used for finite nonzero t only");
  }
  return head_norm_sq_;
}

cplx ConstrainedSpace::head(cplx z) const {
  if (t_.is_infinite()) {
    return {};
  }
  if (t_.is_zero()) {
    return eval_blaschke(pair_.a(), z) * eval_szego(pair_.b(), z);
  }
  return head_kernel(z);
}

cplx ConstrainedSpace::kernel(cplx w, cplx z) const {
  require_open_disk(w, "kernel point w");
  const cplx tail = std::conj(eval_blaschke_pair(pair_, w)) * eval_blaschke_pair(pair_, z) *
                    eval_szego(w, z);
  if (!has_head()) {
    return tail;
  }
  return std::conj(head(w)) * head(z) / head_norm_sq_ + tail;
}

cplx ConstrainedSpace::basis(int n, cplx z) const {
  if (n < 0) {
    throw InvalidArgument("basis index must be nonnegative");
  }
  if (has_head()) {
    if (n == 0) {
      return head(z) / std::sqrt(head_norm_sq_);
    }
    --n;
  }
  return eval_blaschke_pair(pair_, z) * ipow(z, n);
}

cplx eval_constrained_kernel(const DiskPair& pair, const ExtendedParameter& t, cplx w,
                             cplx z) {
  return ConstrainedSpace(pair, t).kernel(w, z);
}

cplx onb_element(const DiskPair& pair, const ExtendedParameter& t, int n, cplx z) {
  return ConstrainedSpace(pair, t).basis(n, z);
}

}  // namespace twopoint
