// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <string>

#include "bergmap/geometry.hpp"
#include "bergmap/orthobasis.hpp"
#include "bergmap/types.hpp"

namespace bergmap {

/// Anything that can evaluate a planar Bergman kernel and its holomorphic /
/// antiholomorphic derivatives: truncated numeric fields and closed-form
/// oracles share this surface so the representative-coordinate and check
/// machinery runs identically on both.
class KernelSource {
 public:
  virtual ~KernelSource() = default;
  /// sum_k q_k^(dz)(z) conj(q_k^(dwbar)(w)) or the closed-form equivalent;
  /// orders in {0,1,2}.
  virtual Complex kernel(Complex z, Complex w, int dz_order,
                         int dwbar_order) const = 0;
  virtual const Domain& domain() const = 0;
  virtual std::string source_id() const = 0;
  /// Oracles that know their curvature analytically may short-circuit the
  /// numeric detector.
  virtual std::optional<bool> constant_curvature_hint() const {
    return std::nullopt;
  }
};

struct MetricSample {
  Complex z;
  double g = 0;      // Bergman metric coefficient, d^2_{z zbar} log K(z,z)
  double kappa = 0;  // Gaussian curvature of g dz dzbar
  double logK = 0;
  Complex K, K_z, K_wbar, K_zwbar;
};

struct MetricPolicy {
  double boundary_margin = 0.02;
  // FD step for the curvature term: clamp(1e-4 * dist, floor, 0.2 * dist).
  double fd_step_scale = 1e-4;
  double fd_step_floor = 1.2e-4;
};

/// Metric coefficient only (no curvature), from the analytic derivative block.
double metric_g(const KernelSource& src, Complex z);

/// Full sample; kappa uses 5-point finite differences of g.
MetricSample metric_sample(const KernelSource& src, Complex z,
                           const MetricPolicy& policy = {});

/// Truncated numeric field over an OrthonormalBasis.
class KernelField : public KernelSource {
 public:
  KernelField(std::shared_ptr<const Domain> domain,
              std::shared_ptr<const OrthonormalBasis> basis);

  Complex kernel(Complex z, Complex w, int dz_order,
                 int dwbar_order) const override;
  const Domain& domain() const override { return *domain_; }
  std::string source_id() const override;

  const OrthonormalBasis& basis() const { return *basis_; }

  /// Tail indicator t_N(z) = sum_{k>N-5} |q_k|^2 / sum_k |q_k|^2.
  double truncation_probe(Complex z) const;

 private:
  std::shared_ptr<const Domain> domain_;
  std::shared_ptr<const OrthonormalBasis> basis_;
};

/// Kernel value from precomputed basis evaluations (grid sweeps).
Complex kernel_from_evals(const BasisEval& at_z, const BasisEval& at_w,
                          int dz_order, int dwbar_order);

/// Convenience: build rule + basis + field with the module defaults
/// (N=60, panels=12, order=16).
KernelField build_field(const Domain& domain, Complex center, int N = 60,
                        int panels = 12, int order = 16);

}  // namespace bergmap
