// SPDX-License-Identifier: Apache-2.0
#include "bergmap/repcoord.hpp"

#include <cmath>
#include <limits>

namespace bergmap {

RepCoordinate RepCoordinate::build(std::shared_ptr<const KernelSource> src,
                                   Complex p) {
  RepCoordinate rc;
  rc.src_ = std::move(src);
  rc.p_ = p;
  const Domain& dom = rc.src_->domain();
  if (!dom.contains(p))
    fail(ErrorKind::ConfigError, "anchor must lie inside the domain");
  rc.inradius_ = dom.boundary_distance(p);
  rc.g_p_ = metric_g(*rc.src_, p);
  Complex k00 = rc.src_->kernel(p, p, 0, 0);
  Complex k01 = rc.src_->kernel(p, p, 0, 1);
  rc.offset_ = k01 / k00;  // d_tbar log K(t,t)|_p
  rc.image_radius_ = std::sqrt(2.0 / rc.g_p_);

  if (auto hint = rc.src_->constant_curvature_hint()) {
    rc.constant_curvature_ = *hint;
  } else {
    // curvature detector: sample kappa on two small rings around the anchor
    double rad = 0.35 * rc.inradius_;
    MetricPolicy pol;
    pol.boundary_margin = std::min(0.02, 0.25 * rc.inradius_);
    double worst = 0;
    for (double rr : {0.5 * rad, rad})
      for (int a = 0; a < 6; ++a) {
        Complex z = p + rr * std::polar(1.0, 2 * kPi * a / 6 + 0.1);
        MetricSample m = metric_sample(*rc.src_, z, pol);
        worst = std::max(worst, std::abs(m.kappa + 2.0));
      }
    rc.constant_curvature_ = worst <= 5e-4;
  }
  rc.c2_ = 1.0;  // kappa = -2 convention for planar constant curvature
  return rc;
}

void RepCoordinate::guard(Complex z, Complex kzp) const {
  double kzz = src_->kernel(z, z, 0, 0).real();
  double kpp = src_->kernel(p_, p_, 0, 0).real();
  if (std::abs(kzp) < kZeroGuard * std::sqrt(std::max(kzz, 0.0) * std::max(kpp, 0.0)))
    fail(ErrorKind::NearKernelZero,
         "kernel modulus below the zero guard; representative coordinate "
         "undefined here");
}

Complex RepCoordinate::map(Complex z) const {
  Complex kzp = src_->kernel(z, p_, 0, 0);
  guard(z, kzp);
  Complex dk = src_->kernel(z, p_, 0, 1);
  return (dk / kzp - offset_) / g_p_;
}

Complex RepCoordinate::derivative(Complex z) const {
  Complex kzp = src_->kernel(z, p_, 0, 0);
  guard(z, kzp);
  Complex dk = src_->kernel(z, p_, 0, 1);
  Complex dz_k = src_->kernel(z, p_, 1, 0);
  Complex dz_dk = src_->kernel(z, p_, 1, 1);
  return (kzp * dz_dk - dz_k * dk) / (kzp * kzp * g_p_);
}

DiastasisValue RepCoordinate::diastasis(Complex z) const {
  DiastasisValue v;
  v.z = z;
  double kzz = src_->kernel(z, z, 0, 0).real();
  double kpp = src_->kernel(p_, p_, 0, 0).real();
  Complex kzp = src_->kernel(z, p_, 0, 0);
  guard(z, kzp);
  v.phi = std::log(kzz) + std::log(kpp) - 2.0 * std::log(std::abs(kzp));
  if (constant_curvature_) {
    double Q = g_p_ * std::norm(map(z));
    double arg = 1.0 - 0.5 * c2_ * Q;
    if (arg > 0) {
      v.prediction = (-2.0 / c2_) * std::log(arg);
      v.residual = std::abs(v.phi - *v.prediction);
    } else {
      v.prediction = std::numeric_limits<double>::infinity();
      v.residual = std::numeric_limits<double>::infinity();
    }
  }
  return v;
}

double RepCoordinate::green(Complex z) const {
  if (!constant_curvature_)
    fail(ErrorKind::NotApplicable,
         "Green's function construction requires constant curvature");
  if (z == p_) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(map(z))) + 0.5 * std::log(g_p_ / 2.0);
}

double RepCoordinate::capacity() const {
  if (!constant_curvature_)
    fail(ErrorKind::NotApplicable,
         "capacity from T requires constant curvature");
  return std::sqrt(g_p_ / 2.0);
}

Complex RepCoordinate::invert(Complex w, Complex seed) const {
  Complex z = seed;
  double best = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 40; ++it) {
    Complex f = map(z) - w;
    double res = std::abs(f);
    if (res <= 1e-12) return z;
    Complex step = f / derivative(z);
    // damped steps when the residual stagnates
    for (int d = 0; d < 8; ++d) {
      Complex zn = z - step;
      bool ok = src_->domain().contains(zn);
      if (ok && std::abs(map(zn) - w) < res) {
        z = zn;
        break;
      }
      step *= 0.5;
      if (d == 7) z = zn;  // accept the tiny step and keep iterating
    }
    best = std::min(best, std::abs(map(z) - w));
  }
  if (std::abs(map(z) - w) <= 1e-10) return z;
  fail(ErrorKind::InversionFailure, "Newton inversion did not converge");
}

Complex RepCoordinate::invert(Complex w) const {
  if (std::abs(w) < 1e-15) return p_;
  if (std::abs(w) >= image_radius_ && constant_curvature_)
    fail(ErrorKind::ConfigError, "target lies outside the image disc");
  Complex dir = w / std::abs(w);
  for (int s = 1; s <= 8; ++s) {
    Complex seed = p_ + (0.1 * s) * inradius_ * dir;
    if (!src_->domain().contains(seed)) continue;
    try {
      return invert(w, seed);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InversionFailure &&
          e.kind() != ErrorKind::NearKernelZero)
        throw;
    }
  }
  fail(ErrorKind::InversionFailure,
       "Newton inversion failed from all ray seeds");
}

Complex rep_coordinate(const RepCoordinate& rc, Complex z) { return rc.map(z); }
Complex rep_derivative(const RepCoordinate& rc, Complex z) {
  return rc.derivative(z);
}
DiastasisValue diastasis(const RepCoordinate& rc, Complex z) {
  return rc.diastasis(z);
}
double green_function(const RepCoordinate& rc, Complex z) {
  return rc.green(z);
}
double capacity_from_T(const RepCoordinate& rc) { return rc.capacity(); }
Complex invert(const RepCoordinate& rc, Complex w, Complex seed) {
  return rc.invert(w, seed);
}

}  // namespace bergmap
