// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>

#include "bergmap/kernel.hpp"
#include "bergmap/types.hpp"

namespace bergmap {

struct DiastasisValue {
  Complex z;
  double phi = 0;                 // log[K(z,z)K(p,p)/|K(z,p)|^2]
  std::optional<double> prediction;  // (-2/c^2) log(1 - (c^2/2) Q(z))
  double residual = 0;            // |phi - prediction| when defined
};

/// Bergman representative coordinate relative to an anchor p (planar case):
/// w(z) = g(p)^{-1} [K(z,p)^{-1} d_tbar K(z,t)|_{t=p} - d_tbar log K(t,t)|_{t=p}],
/// normalized so that w(p)=0 and T'(p)=1.
class RepCoordinate {
 public:
  static RepCoordinate build(std::shared_ptr<const KernelSource> src, Complex p);

  Complex anchor() const { return p_; }
  const KernelSource& source() const { return *src_; }
  double anchor_metric() const { return g_p_; }
  /// sqrt(2/g(p)): the radius of the image disc on constant-curvature
  /// domains.
  double image_radius() const { return image_radius_; }
  bool constant_curvature() const { return constant_curvature_; }
  double c2() const { return c2_; }

  Complex map(Complex z) const;         // w(z)
  Complex derivative(Complex z) const;  // T'(z)
  DiastasisValue diastasis(Complex z) const;
  /// F(z) = log|T(z)| + (1/2) log(g(p)/2): the Green's function of
  /// constant-curvature domains.
  double green(Complex z) const;
  /// c_beta(p) = sqrt(g(p)/2) on constant-curvature domains.
  double capacity() const;
  Complex invert(Complex w, Complex seed) const;
  Complex invert(Complex w) const;  // seeds on the ray from p, per policy

  /// Relative kernel-zero guard |K(z,p)| >= guard sqrt(K(z,z) K(p,p)).
  static constexpr double kZeroGuard = 1e-10;

 private:
  RepCoordinate() = default;
  std::shared_ptr<const KernelSource> src_;
  Complex p_{};
  double g_p_ = 0;
  Complex offset_{};  // d_tbar log K(t,t) at p
  bool constant_curvature_ = false;
  double c2_ = 1.0;
  double image_radius_ = 0;
  double inradius_ = 0;

  void guard(Complex z, Complex kzp) const;
};

// Spec-parity free functions.
Complex rep_coordinate(const RepCoordinate& rc, Complex z);
Complex rep_derivative(const RepCoordinate& rc, Complex z);
DiastasisValue diastasis(const RepCoordinate& rc, Complex z);
double green_function(const RepCoordinate& rc, Complex z);
double capacity_from_T(const RepCoordinate& rc);
Complex invert(const RepCoordinate& rc, Complex w, Complex seed);

}  // namespace bergmap
