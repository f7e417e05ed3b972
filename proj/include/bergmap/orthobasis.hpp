// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "bergmap/geometry.hpp"
#include "bergmap/types.hpp"

namespace bergmap {

/// Values and first two derivatives of every basis member at one point.
struct BasisEval {
  Eigen::VectorXcd values;
  Eigen::VectorXcd d1;
  Eigen::VectorXcd d2;
};

/// Orthonormal basis of the Bergman space A^2(Omega).
///
/// Simply-connected domains use Arnoldi orthonormalization of
/// {1, (z-center) q_0, ...} with area inner products reduced to contour
/// integrals; the recurrence is kept as an upper Hessenberg matrix H with
/// z q_k = sum_{j<=k+1} H(j,k) q_j and real positive subdiagonal.
/// Annuli use the explicit Laurent family z^k, k = -N..N, with closed-form
/// norms (diagonal Gram), no Arnoldi.
class OrthonormalBasis {
 public:
  enum class Kind { Arnoldi, Laurent };

  Kind kind() const { return kind_; }
  Complex center() const { return center_; }
  int degree() const { return degree_; }
  /// Number of basis members (degree+1 for Arnoldi, degree-min_power+1 for
  /// Laurent).
  int size() const;
  double area() const { return area_; }
  const Eigen::MatrixXcd& hessenberg() const;
  int min_power() const { return min_power_; }
  const std::vector<double>& laurent_norms() const { return norms_; }
  const std::string& domain_id() const { return domain_id_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  BasisEval eval(Complex z) const;
  /// First `count` members only, same operation order as a full eval.
  BasisEval eval_prefix(Complex z, int count) const;

 private:
  friend OrthonormalBasis build_basis(const Domain&, Complex, int,
                                      const QuadratureRule&);
  friend OrthonormalBasis laurent_basis(double, double, int);
  Kind kind_ = Kind::Arnoldi;
  Complex center_{};
  int degree_ = 0;
  Eigen::MatrixXcd hess_;       // (N+1) x N
  double area_ = 0;
  int min_power_ = 0;           // Laurent only
  std::vector<double> norms_;   // Laurent only: ||z^k||, k = min_power..degree
  std::string domain_id_;
  std::vector<std::string> warnings_;
};

/// <z^j, z^k>_{A^2} via the Green's-theorem contour reduction
/// (1/(2i(k+1))) oint z^j conj(z)^{k+1} dz, conjugate-symmetrized.
Complex monomial_inner_product(const QuadratureRule& rule, int j, int k);

/// Same reduction for Laurent exponents (annulus); the antiderivative is
/// taken on whichever side has exponent != -1.
Complex laurent_inner_product(const QuadratureRule& rule, int j, int k);

OrthonormalBasis build_basis(const Domain& domain, Complex center, int N,
                             const QuadratureRule& rule);

OrthonormalBasis laurent_basis(double r, double R, int N);

inline BasisEval eval_basis(const OrthonormalBasis& basis, Complex z) {
  return basis.eval(z);
}

/// Max |Gram - I| of `basis` re-evaluated with an independent quadrature.
/// For Laurent bases the (-1,-1) entry is checked against its closed form and
/// all contour-reducible entries against the rule.
double orthonormality_residual(const OrthonormalBasis& basis,
                               const Domain& domain, int panels, int order);

/// <f, q_k> for nodewise values of f under `rule` (used by reproducing tests
/// and the meta probes).
Eigen::VectorXcd expand_in_basis(const OrthonormalBasis& basis,
                                 const QuadratureRule& rule,
                                 const std::vector<Complex>& f_values);

}  // namespace bergmap
