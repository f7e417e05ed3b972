// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "bergmap/kernel.hpp"
#include "bergmap/types.hpp"

namespace bergmap {

/// Value and first three derivatives of a holomorphic function at a point.
struct Jet3 {
  Complex f, d1, d2, d3;
};

/// Composition (outer o inner), outer jet taken at inner.f.
Jet3 compose(const Jet3& outer, const Jet3& inner);

/// Riemann map with derivative and inverse; jets carry three derivatives so
/// conformal-image kernels can supply second-order kernel derivatives.
class ConformalMap {
 public:
  ConformalMap(std::string id, std::function<Jet3(Complex)> jet,
               std::function<Complex(Complex)> inverse);

  Jet3 jet(Complex z) const { return jet_(z); }
  Complex operator()(Complex z) const { return jet_(z).f; }
  Complex derivative(Complex z) const { return jet_(z).d1; }
  Complex inverse(Complex w) const { return inverse_(w); }
  const std::string& id() const { return id_; }

 private:
  std::string id_;
  std::function<Jet3(Complex)> jet_;
  std::function<Complex(Complex)> inverse_;
};

/// Disc automorphism z -> (z-p)/(1 - conj(p) z).
ConformalMap mobius(Complex p);
/// Riemann map of {r e^{i theta}: 0<r<1, pi/2<theta<2pi} onto the unit disc:
/// rotation, power map zeta^{2/3}, then the half-disc-to-disc composition.
ConformalMap kerzman_map();
ConformalMap identity_map(const std::string& id = "identity");
/// Registry: "mobius:<re>[,<im>]", "kerzman", "slit_disc", "identity".
ConformalMap map_registry(const std::string& id);
/// The geometric domain a registered map is defined on.
Domain map_domain(const std::string& id);

/// Closed-form planar kernels behind the KernelSource surface.
class AnalyticKernel : public KernelSource {
 public:
  enum class Kind { Disc, Annulus, ConformalImage };

  static AnalyticKernel disc(double radius);
  static AnalyticKernel annulus(double r, double R, int laurent_M = 400);
  /// K(z,w) = f'(z) conj(f'(w)) K_disc(f(z), f(w)) for f mapping the domain
  /// onto the unit disc.
  static AnalyticKernel conformal_image(const ConformalMap& f, Domain domain);

  Complex kernel(Complex z, Complex w, int dz_order,
                 int dwbar_order) const override;
  const Domain& domain() const override { return *domain_; }
  std::string source_id() const override { return "oracle:" + domain_->id(); }
  std::optional<bool> constant_curvature_hint() const override;

  Kind oracle_kind() const { return kind_; }
  const ConformalMap* map() const { return map_ ? &*map_ : nullptr; }
  double laurent_tail(Complex z, Complex w) const;
  int laurent_truncation() const { return M_; }

 private:
  AnalyticKernel() = default;
  Kind kind_ = Kind::Disc;
  std::shared_ptr<const Domain> domain_;
  double r_ = 1, R_ = 1;
  int M_ = 80;
  std::optional<ConformalMap> map_;
};

/// Analytic source for a planar domain spec, when one exists.
std::optional<AnalyticKernel> analytic_oracle(const Domain& domain);

/// Green's function. Simply-connected oracles use conformal invariance
/// G(z,p) = log |m_{f(p)}(f(z))|; the annulus uses the classical
/// prime-function log series.
double oracle_green(const AnalyticKernel& oracle, Complex z, Complex p);

struct Capacities {
  double c_beta = 0;
  double c_B = 0;
};
/// Logarithmic and analytic capacity at p (equal on simply-connected
/// domains).
Capacities oracle_capacities(const AnalyticKernel& oracle, Complex p);

/// Classical annulus Green's function and capacity for {r < |z| < R},
/// truncated Schottky-Klein prime-function products (oracle-of-oracle for the
/// strict Suita inequality).
double annulus_green(double r, double R, Complex z, Complex p, int terms = 100);
double annulus_cbeta(double r, double R, Complex p, int terms = 100);

/// Unit ball in C^n: K(z,w) = n!/pi^n (1 - <z,w>)^{-(n+1)}, metric, rep
/// coordinate, diastasis. Supported for n <= 4.
class BallOracle {
 public:
  using Vec = Eigen::VectorXcd;
  explicit BallOracle(int n);

  int dimension() const { return n_; }
  double c2() const { return 2.0 / (n_ + 1); }

  Complex kernel(const Vec& z, const Vec& w) const;
  /// d/d conj(t_j) K(z,t) at t=p.
  Complex kernel_dwbar(const Vec& z, const Vec& p, int j) const;
  Eigen::MatrixXcd metric(const Vec& p) const;        // g_{alpha beta-bar}
  Vec dlogK_offset(const Vec& p) const;               // d/d conj(t_j) log K(t,t)
  Vec rep_coordinate(const Vec& p, const Vec& z) const;
  /// Q(w) = sum w_a g_{a b-bar}(p) conj(w_b).
  double quadratic_form(const Vec& p, const Vec& w) const;
  double diastasis(const Vec& p, const Vec& z) const;
  /// Gaussian curvature of the metric restricted to the complex line
  /// {t e_1}, by finite differences; holomorphic sectional curvature is half
  /// of it.
  double slice_gaussian_curvature(Complex t) const;

 private:
  int n_;
  double norm_const_;  // n!/pi^n
};

}  // namespace bergmap
