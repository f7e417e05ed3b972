// SPDX-License-Identifier: Apache-2.0
#include "bergmap/orthobasis.hpp"

#include <algorithm>
#include <cmath>

namespace bergmap {

namespace {

const Complex kHalfOverI(0.0, -0.5);  // 1/(2i)

// <f, g> = (1/2i) oint f conj(G) dz with G the antiderivative of g,
// both given nodewise.
Complex contour_inner(const QuadratureRule& rule,
                      const std::vector<Complex>& f_values,
                      const std::vector<Complex>& g_anti) {
  Complex s = 0;
  for (size_t i = 0; i < rule.nodes.size(); ++i)
    s += f_values[i] * std::conj(g_anti[i]) * rule.nodes[i].dz;
  return kHalfOverI * s;
}

}  // namespace

Complex monomial_inner_product(const QuadratureRule& rule, int j, int k) {
  if (j < 0 || k < 0) fail(ErrorKind::ConfigError, "exponents must be >= 0");
  auto one_sided = [&](int a, int b) {
    // (1/(2i(b+1))) oint z^a conj(z)^{b+1} dz
    Complex s = 0;
    for (const auto& n : rule.nodes)
      s += std::pow(n.z, a) * std::pow(std::conj(n.z), b + 1) * n.dz;
    return kHalfOverI * s / double(b + 1);
  };
  return 0.5 * (one_sided(j, k) + std::conj(one_sided(k, j)));
}

Complex laurent_inner_product(const QuadratureRule& rule, int j, int k) {
  auto one_sided = [&](int a, int b) {
    Complex s = 0;
    for (const auto& n : rule.nodes)
      s += std::pow(n.z, a) * std::pow(std::conj(n.z), b + 1) * n.dz;
    return kHalfOverI * s / double(b + 1);
  };
  if (k != -1) return one_sided(j, k);
  if (j != -1) return std::conj(one_sided(k, j));
  fail(ErrorKind::NotApplicable,
       "<z^-1, z^-1> has no single-valued contour reduction; use the closed form");
}

int OrthonormalBasis::size() const {
  return kind_ == Kind::Arnoldi ? degree_ + 1 : degree_ - min_power_ + 1;
}

const Eigen::MatrixXcd& OrthonormalBasis::hessenberg() const {
  if (kind_ != Kind::Arnoldi)
    fail(ErrorKind::NotApplicable, "Laurent basis has no Hessenberg data");
  return hess_;
}

OrthonormalBasis build_basis(const Domain& domain, Complex center, int N,
                             const QuadratureRule& rule) {
  if (!domain.is_planar())
    fail(ErrorKind::UnsupportedDomain, "basis construction requires a planar domain");
  if (N < 1) fail(ErrorKind::ConfigError, "basis degree must be >= 1");
  if (domain.tag().kind == DomainTag::Annulus) {
    auto basis = laurent_basis(domain.tag().r, domain.tag().R, N);
    basis.domain_id_ = domain.id();
    return basis;
  }
  if (!domain.contains(center))
    fail(ErrorKind::ConfigError, "basis center must lie inside the domain");

  const size_t M = rule.nodes.size();
  OrthonormalBasis basis;
  basis.kind_ = OrthonormalBasis::Kind::Arnoldi;
  basis.center_ = center;
  basis.domain_id_ = domain.id();

  std::vector<std::vector<Complex>> q_vals, q_anti;
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(N + 1, N);

  // q_0 = 1 / sqrt(Area)
  std::vector<Complex> v(M, Complex(1.0, 0.0));
  std::vector<Complex> anti = rule.antiderivative(v);
  double area = contour_inner(rule, v, anti).real();
  if (!(area > 0))
    fail(ErrorKind::DegenerateGeometry, "nonpositive area from boundary rule");
  basis.area_ = area;
  double inv = 1.0 / std::sqrt(area);
  for (auto& x : v) x *= inv;
  for (auto& x : anti) x *= inv;
  q_vals.push_back(v);
  q_anti.push_back(anti);

  int achieved = 0;
  for (int k = 0; k < N; ++k) {
    std::vector<Complex> w(M), w_anti;
    for (size_t i = 0; i < M; ++i) w[i] = (rule.nodes[i].z - center) * q_vals[k][i];
    w_anti = rule.antiderivative(w);
    // modified Gram-Schmidt with one reorthogonalization pass
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j <= k; ++j) {
        Complex h = contour_inner(rule, w, q_anti[j]);
        for (size_t i = 0; i < M; ++i) {
          w[i] -= h * q_vals[j][i];
          w_anti[i] -= h * q_anti[j][i];
        }
        H(j, k) += h;
      }
    }
    double beta2 = contour_inner(rule, w, w_anti).real();
    double beta = beta2 > 0 ? std::sqrt(beta2) : 0.0;
    if (beta < 1e-14) {
      basis.warnings_.push_back(
          "Gram breakdown at degree " + std::to_string(k + 1) +
          "; basis truncated");
      break;
    }
    H(k + 1, k) = beta;
    for (auto& x : w) x /= beta;
    for (auto& x : w_anti) x /= beta;
    q_vals.push_back(std::move(w));
    q_anti.push_back(std::move(w_anti));
    achieved = k + 1;
  }
  // store the z-form recurrence: z q_k = (z-center) q_k + center q_k
  for (int k = 0; k < achieved; ++k) H(k, k) += center;
  basis.degree_ = achieved;
  basis.hess_ = H.topLeftCorner(achieved + 1, achieved);
  return basis;
}

OrthonormalBasis laurent_basis(double r, double R, int N) {
  if (!(0 < r && r < R)) fail(ErrorKind::ConfigError, "need 0 < r < R");
  OrthonormalBasis basis;
  basis.kind_ = OrthonormalBasis::Kind::Laurent;
  basis.center_ = 0.0;
  basis.degree_ = N;
  basis.min_power_ = -N;
  basis.area_ = kPi * (R * R - r * r);
  basis.norms_.resize(2 * N + 1);
  for (int k = -N; k <= N; ++k) {
    double n2;
    if (k == -1)
      n2 = 2 * kPi * std::log(R / r);
    else
      n2 = kPi * (std::pow(R, 2 * k + 2) - std::pow(r, 2 * k + 2)) / (k + 1);
    basis.norms_[k + N] = std::sqrt(n2);
  }
  return basis;
}

BasisEval OrthonormalBasis::eval(Complex z) const { return eval_prefix(z, size()); }

BasisEval OrthonormalBasis::eval_prefix(Complex z, int count) const {
  count = std::min(count, size());
  BasisEval out;
  out.values.resize(count);
  out.d1.resize(count);
  out.d2.resize(count);
  if (kind_ == Kind::Laurent) {
    for (int idx = 0; idx < count; ++idx) {
      int k = min_power_ + idx;
      double nk = norms_[idx];
      out.values[idx] = std::pow(z, k) / nk;
      out.d1[idx] = double(k) * std::pow(z, k - 1) / nk;
      out.d2[idx] = double(k) * double(k - 1) * std::pow(z, k - 2) / nk;
    }
    return out;
  }
  if (count == 0) return out;
  out.values[0] = 1.0 / std::sqrt(area_);
  out.d1[0] = 0.0;
  out.d2[0] = 0.0;
  for (int k = 0; k + 1 < count; ++k) {
    Complex acc0 = z * out.values[k];
    Complex acc1 = out.values[k] + z * out.d1[k];
    Complex acc2 = 2.0 * out.d1[k] + z * out.d2[k];
    for (int j = 0; j <= k; ++j) {
      Complex h = hess_(j, k);
      acc0 -= h * out.values[j];
      acc1 -= h * out.d1[j];
      acc2 -= h * out.d2[j];
    }
    Complex beta = hess_(k + 1, k);
    out.values[k + 1] = acc0 / beta;
    out.d1[k + 1] = acc1 / beta;
    out.d2[k + 1] = acc2 / beta;
  }
  return out;
}

double orthonormality_residual(const OrthonormalBasis& basis,
                               const Domain& domain, int panels, int order) {
  QuadratureRule rule = boundary_quadrature(domain, panels, order);
  const size_t M = rule.nodes.size();
  const int n = basis.size();
  std::vector<std::vector<Complex>> vals(n, std::vector<Complex>(M));
  for (size_t i = 0; i < M; ++i) {
    BasisEval e = basis.eval(rule.nodes[i].z);
    for (int k = 0; k < n; ++k) vals[k][i] = e.values[k];
  }
  double worst = 0;
  if (basis.kind() == OrthonormalBasis::Kind::Laurent) {
    // contour-reducible entries; the (-1,-1) diagonal has a closed form
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int j = basis.min_power() + a, k = basis.min_power() + b;
        if (j == -1 && k == -1) continue;
        Complex g = laurent_inner_product(rule, j, k) /
                    (basis.laurent_norms()[a] * basis.laurent_norms()[b]);
        worst = std::max(worst, std::abs(g - (a == b ? 1.0 : 0.0)));
      }
    return worst;
  }
  std::vector<std::vector<Complex>> anti(n);
  for (int k = 0; k < n; ++k) anti[k] = rule.antiderivative(vals[k]);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b <= a; ++b) {
      Complex g = contour_inner(rule, vals[a], anti[b]);
      worst = std::max(worst, std::abs(g - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}

Eigen::VectorXcd expand_in_basis(const OrthonormalBasis& basis,
                                 const QuadratureRule& rule,
                                 const std::vector<Complex>& f_values) {
  const size_t M = rule.nodes.size();
  const int n = basis.size();
  std::vector<std::vector<Complex>> vals(n, std::vector<Complex>(M));
  for (size_t i = 0; i < M; ++i) {
    BasisEval e = basis.eval(rule.nodes[i].z);
    for (int k = 0; k < n; ++k) vals[k][i] = e.values[k];
  }
  Eigen::VectorXcd c(n);
  for (int k = 0; k < n; ++k)
    c[k] = contour_inner(rule, f_values, rule.antiderivative(vals[k]));
  return c;
}

}  // namespace bergmap
