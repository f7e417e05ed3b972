// SPDX-License-Identifier: Apache-2.0
#include "bergmap/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace bergmap {

Complex kernel_from_evals(const BasisEval& at_z, const BasisEval& at_w,
                          int dz_order, int dwbar_order) {
  auto pick = [](const BasisEval& e, int order) -> const Eigen::VectorXcd& {
    switch (order) {
      case 0: return e.values;
      case 1: return e.d1;
      default: return e.d2;
    }
  };
  const Eigen::VectorXcd& a = pick(at_z, dz_order);
  const Eigen::VectorXcd& b = pick(at_w, dwbar_order);
  Complex s = 0;
  for (int k = 0; k < a.size(); ++k) s += a[k] * std::conj(b[k]);
  return s;
}

KernelField::KernelField(std::shared_ptr<const Domain> domain,
                         std::shared_ptr<const OrthonormalBasis> basis)
    : domain_(std::move(domain)), basis_(std::move(basis)) {}

Complex KernelField::kernel(Complex z, Complex w, int dz_order,
                            int dwbar_order) const {
  if (dz_order < 0 || dz_order > 2 || dwbar_order < 0 || dwbar_order > 2)
    fail(ErrorKind::ConfigError, "derivative orders must be in {0,1,2}");
  BasisEval ez = basis_->eval(z);
  BasisEval ew = basis_->eval(w);
  return kernel_from_evals(ez, ew, dz_order, dwbar_order);
}

std::string KernelField::source_id() const {
  return "numeric:" + basis_->domain_id() + ":N" + std::to_string(basis_->degree());
}

double KernelField::truncation_probe(Complex z) const {
  BasisEval e = basis_->eval(z);
  int n = static_cast<int>(e.values.size());
  double total = 0, tail = 0;
  for (int k = 0; k < n; ++k) {
    double m = std::norm(e.values[k]);
    total += m;
    if (k > basis_->degree() - 5) tail += m;
  }
  return total > 0 ? tail / total : 0.0;
}

double metric_g(const KernelSource& src, Complex z) {
  Complex k00 = src.kernel(z, z, 0, 0);
  Complex k10 = src.kernel(z, z, 1, 0);
  Complex k01 = src.kernel(z, z, 0, 1);
  Complex k11 = src.kernel(z, z, 1, 1);
  if (std::abs(k00) < 1e-300)
    fail(ErrorKind::Underflow, "kernel underflow on the diagonal");
  Complex num = k00 * k11 - k10 * k01;
  double g = (num / (k00 * k00)).real();
  if (!(g > 0))
    fail(ErrorKind::IllConditionedBasis, "nonpositive Bergman metric value");
  return g;
}

MetricSample metric_sample(const KernelSource& src, Complex z,
                           const MetricPolicy& policy) {
  const Domain& dom = src.domain();
  if (!dom.contains(z))
    fail(ErrorKind::ConfigError, "metric evaluation point must be interior");
  double dist = dom.boundary_distance(z);
  if (dist < policy.boundary_margin)
    fail(ErrorKind::ConfigError, "metric evaluation too close to the boundary");

  MetricSample s;
  s.z = z;
  s.K = src.kernel(z, z, 0, 0);
  s.K_z = src.kernel(z, z, 1, 0);
  s.K_wbar = src.kernel(z, z, 0, 1);
  s.K_zwbar = src.kernel(z, z, 1, 1);
  if (std::abs(s.K) < 1e-300)
    fail(ErrorKind::Underflow, "kernel underflow on the diagonal");
  s.logK = std::log(s.K.real());
  Complex num = s.K * s.K_zwbar - s.K_z * s.K_wbar;
  s.g = (num / (s.K * s.K)).real();
  if (!(s.g > 0))
    fail(ErrorKind::IllConditionedBasis, "nonpositive Bergman metric value");

  // kappa = -(2/g) d^2_{z zbar} log g, the log g Laplacian by 5-point
  // differences of the analytically computed g
  double h = std::clamp(policy.fd_step_scale * dist, policy.fd_step_floor,
                        0.2 * dist);
  double fE = std::log(metric_g(src, z + h));
  double fW = std::log(metric_g(src, z - h));
  double fN = std::log(metric_g(src, z + Complex(0, h)));
  double fS = std::log(metric_g(src, z - Complex(0, h)));
  double lap = (fE + fW + fN + fS - 4.0 * std::log(s.g)) / (h * h);
  s.kappa = -lap / (2.0 * s.g);
  return s;
}

KernelField build_field(const Domain& domain, Complex center, int N,
                        int panels, int order) {
  auto dom = std::make_shared<Domain>(domain);
  QuadratureRule rule = boundary_quadrature(*dom, panels, order);
  auto basis =
      std::make_shared<OrthonormalBasis>(build_basis(*dom, center, N, rule));
  return KernelField(dom, basis);
}

}  // namespace bergmap
