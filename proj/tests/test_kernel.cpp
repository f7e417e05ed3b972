// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bergmap/kernel.hpp"
#include "bergmap/oracles.hpp"

using namespace bergmap;

namespace {

const KernelField& disc_field() {
  static KernelField field = build_field(Domain::disc(1.0), 0.0);
  return field;
}

}  // namespace

TEST_CASE("numeric disc kernel against the closed form") {
  const KernelField& f = disc_field();
  // K(z, 0) = 1/pi
  CHECK(std::abs(f.kernel(Complex(0.3, 0), 0.0, 0, 0) - 1.0 / kPi) < 1e-10);
  // d/d conj(w) K(z,w)|_{w=0} = 2z/pi
  CHECK(std::abs(f.kernel(Complex(0.3, 0), 0.0, 0, 1) - 2.0 * 0.3 / kPi) <
        1e-9);
  // generic off-diagonal value
  Complex z(0.5, 0.3), w(-0.2, 0.4);
  Complex expect = 1.0 / (kPi * std::pow(1.0 - z * std::conj(w), 2));
  CHECK(std::abs(f.kernel(z, w, 0, 0) - expect) < 1e-10 * std::abs(expect));
}

TEST_CASE("Hermitian adjoint symmetry is exact by construction") {
  const KernelField& f = disc_field();
  for (auto [z, w] : {std::pair<Complex, Complex>{{0.3, 0.2}, {-0.5, 0.1}},
                      {{0.9, 0.0}, {0.2, -0.7}},
                      {{0.1, 0.1}, {0.1, 0.1}}}) {
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; b <= 2; ++b) {
        Complex lhs = f.kernel(z, w, a, b);
        Complex rhs = std::conj(f.kernel(w, z, b, a));
        CHECK(lhs == rhs);  // identical floating-point values
      }
  }
}

TEST_CASE("metric samples on the disc") {
  const KernelField& f = disc_field();
  MetricSample m0 = metric_sample(f, 0.0);
  CHECK(std::abs(m0.g - 2.0) < 1e-10);
  CHECK(std::abs(m0.kappa + 2.0) < 1e-6);
  MetricSample m5 = metric_sample(f, Complex(0.5, 0));
  CHECK(std::abs(m5.g - 2.0 / 0.5625) < 1e-8);
  CHECK(std::abs(m5.kappa + 2.0) < 1e-6);
  // metric numerator is real up to rounding
  Complex num = m5.K * m5.K_zwbar - m5.K_z * m5.K_wbar;
  CHECK(std::abs(num.imag()) < 1e-10 * std::abs(num.real()));
}

TEST_CASE("annulus curvature: exponentially near-constant at modulus 0.5, "
          "visibly non-constant at modulus 0.05") {
  // A(0.5,1) deviates from -2 by only ~1.6e-10 (theta-modular scale): the
  // finite-difference value must land within its noise floor of -2.
  AnalyticKernel mid = AnalyticKernel::annulus(0.5, 1.0);
  MetricSample m = metric_sample(mid, Complex(0.75, 0));
  CHECK(std::abs(m.kappa + 2.0) < 1e-5);
  // A(0.05,1) near the inner boundary genuinely deviates by ~0.45.
  AnalyticKernel thin = AnalyticKernel::annulus(0.05, 1.0);
  MetricSample t = metric_sample(thin, Complex(0.2, 0));
  CHECK(std::abs(t.kappa + 2.0) > 0.1);
}

TEST_CASE("curvature constancy separates disc from a thin-inner annulus") {
  std::vector<double> disc_kappa, ann_kappa;
  AnalyticKernel ann = AnalyticKernel::annulus(0.05, 1.0);
  for (Complex z : interior_grid(Domain::disc(1.0), 0.15, 0.3))
    disc_kappa.push_back(metric_sample(disc_field(), z).kappa);
  MetricPolicy pol;
  pol.boundary_margin = 0.05;
  for (Complex z : interior_grid(Domain::annulus(0.05, 1.0), 0.08, 0.05))
    ann_kappa.push_back(metric_sample(ann, z, pol).kappa);
  auto stdev = [](const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m += x;
    m /= v.size();
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / v.size());
  };
  CHECK(stdev(disc_kappa) <= 1e-5);
  CHECK(stdev(ann_kappa) >= 1e-2);
}

TEST_CASE("truncation probe: interior decay, rim flag, anchor zero") {
  const KernelField& f = disc_field();
  CHECK(f.truncation_probe(Complex(0.5, 0)) < 1e-12);
  CHECK(f.truncation_probe(Complex(0.95, 0)) > 1e-4);
  // q_k(center) = 0 for k >= 1 up to quadrature rounding in the recurrence
  // coefficients, so the tail indicator at the anchor is zero to roundoff
  CHECK(f.truncation_probe(0.0) < 1e-24);
}

TEST_CASE("reproducing property for random polynomials") {
  Domain disc = Domain::disc(1.0);
  QuadratureRule rule = boundary_quadrature(disc, 12, 16);
  auto basis = std::make_shared<OrthonormalBasis>(
      build_basis(disc, 0.0, 30, rule));
  KernelField field(std::make_shared<Domain>(disc), basis);

  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    int deg = 1 + trial % 28;  // <= N - 2
    std::vector<Complex> coef(deg + 1);
    for (auto& c : coef) c = Complex(u(rng), u(rng));
    auto poly = [&](Complex z) {
      Complex acc = 0;
      for (int k = deg; k >= 0; --k) acc = acc * z + coef[k];
      return acc;
    };
    std::vector<Complex> vals(rule.nodes.size());
    for (size_t i = 0; i < rule.nodes.size(); ++i)
      vals[i] = poly(rule.nodes[i].z);
    Eigen::VectorXcd c = expand_in_basis(*basis, rule, vals);
    Complex w(0.4 * u(rng), 0.4 * u(rng));
    BasisEval ew = basis->eval(w);
    Complex reproduced = 0;
    for (int k = 0; k < c.size(); ++k) reproduced += ew.values[k] * c[k];
    CHECK(std::abs(reproduced - poly(w)) < 1e-8);
  }
}

TEST_CASE("diagonal positivity: K(z,z) >= 1/Area") {
  const KernelField& f = disc_field();
  for (Complex z : interior_grid(Domain::disc(1.0), 0.2, 0.02)) {
    double kzz = f.kernel(z, z, 0, 0).real();
    CHECK(kzz > 0.0);
    CHECK(kzz >= 1.0 / f.basis().area() - 1e-15);
  }
}

TEST_CASE("numeric metric matches the analytic oracle on |z| <= 0.8") {
  AnalyticKernel oracle = AnalyticKernel::disc(1.0);
  for (Complex z : interior_grid(Domain::disc(1.0), 0.2, 0.2)) {
    if (std::abs(z) > 0.8) continue;
    MetricSample a = metric_sample(disc_field(), z);
    MetricSample b = metric_sample(oracle, z);
    CHECK(std::abs(a.g - b.g) < 1e-7 * b.g);
    CHECK(std::abs(a.K.real() - b.K.real()) < 1e-7 * b.K.real());
  }
}

TEST_CASE("metric evaluation rejects boundary-adjacent points") {
  const KernelField& f = disc_field();
  CHECK_THROWS_AS(metric_sample(f, Complex(0.999, 0)), Error);
  CHECK_THROWS_AS(metric_sample(f, Complex(1.5, 0)), Error);
}

TEST_CASE("kernel orders are validated") {
  CHECK_THROWS_AS(disc_field().kernel(0.0, 0.0, 3, 0), Error);
}
