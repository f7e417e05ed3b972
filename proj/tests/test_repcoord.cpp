// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bergmap/oracles.hpp"
#include "bergmap/repcoord.hpp"

using namespace bergmap;

namespace {

std::shared_ptr<const KernelSource> disc_oracle_src() {
  return std::make_shared<AnalyticKernel>(AnalyticKernel::disc(1.0));
}

std::shared_ptr<const KernelSource> disc_field_src(Complex anchor) {
  return std::make_shared<KernelField>(build_field(Domain::disc(1.0), anchor));
}

Complex normalized_mobius(Complex p, Complex z) {
  return (1.0 - std::norm(p)) * (z - p) / (1.0 - std::conj(p) * z);
}

}  // namespace

TEST_CASE("representative coordinate on the disc oracle") {
  auto src = disc_oracle_src();
  RepCoordinate rc0 = RepCoordinate::build(src, 0.0);
  for (Complex z : {Complex(0.3, 0.2), Complex(-0.7, 0.1), Complex(0.0, 0.5)})
    CHECK(std::abs(rc0.map(z) - z) < 1e-13);  // T = id at the origin

  RepCoordinate rc5 = RepCoordinate::build(src, Complex(0.5, 0));
  CHECK(std::abs(rc5.map(Complex(0.0, 0)) - Complex(-0.375, 0)) < 1e-13);
  for (Complex z : {Complex(0.2, 0.3), Complex(-0.5, -0.4)})
    CHECK(std::abs(rc5.map(z) - normalized_mobius(0.5, z)) < 1e-13);
  // image radius sqrt(2/g(p)) = 1 - |p|^2
  CHECK(std::abs(rc5.image_radius() - 0.75) < 1e-12);
  // anchor normalization: w(p) = 0, T'(p) = 1
  CHECK(std::abs(rc5.map(Complex(0.5, 0))) < 1e-13);
  CHECK(std::abs(rc5.derivative(Complex(0.5, 0)) - 1.0) < 1e-12);
}

TEST_CASE("rep coordinate from the numeric field matches the Mobius form") {
  for (Complex p : {Complex(0, 0), Complex(0.3, 0), Complex(0.5, 0.2)}) {
    CAPTURE(p.real());
    CAPTURE(p.imag());
    auto src = disc_field_src(p);
    RepCoordinate rc = RepCoordinate::build(src, p);
    double worst = 0;
    for (Complex z : interior_grid(Domain::disc(1.0), 0.1, 0.05))
      worst = std::max(worst, std::abs(rc.map(z) - normalized_mobius(p, z)));
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("rep derivative: identity, quotient rule value, FD consistency") {
  auto src = disc_oracle_src();
  RepCoordinate rc0 = RepCoordinate::build(src, 0.0);
  for (Complex z : {Complex(0.4, 0.1), Complex(-0.2, -0.6)})
    CHECK(std::abs(rc0.derivative(z) - 1.0) < 1e-13);

  RepCoordinate rc5 = RepCoordinate::build(src, Complex(0.5, 0));
  CHECK(std::abs(rc5.derivative(0.0) - 0.5625) < 1e-13);

  Complex z(0.2, 0.35);
  std::vector<double> errs;
  for (double h : {1e-4, 1e-5}) {
    Complex fd = (rc5.map(z + h) - rc5.map(z - h)) / (2 * h);
    errs.push_back(std::abs(fd - rc5.derivative(z)));
  }
  CHECK(std::log10(errs[0] / errs[1]) >= 1.9);
}

TEST_CASE("diastasis: value, closed-form prediction, vanishing at anchor") {
  auto src = disc_oracle_src();
  RepCoordinate rc = RepCoordinate::build(src, 0.0);
  DiastasisValue dv = rc.diastasis(Complex(0.5, 0));
  CHECK(std::abs(dv.phi - (-2.0 * std::log(0.75))) < 1e-13);
  REQUIRE(dv.prediction.has_value());
  CHECK(dv.residual < 1e-12);
  DiastasisValue at_p = rc.diastasis(0.0);
  CHECK(std::abs(at_p.phi) < 1e-13);
  // numeric field: the diagonal kernel tail at N=60 caps the reachable
  // accuracy; |z| <= 0.85 keeps the truncation below 1e-7
  auto nsrc = disc_field_src(Complex(0.3, 0));
  RepCoordinate nrc = RepCoordinate::build(nsrc, Complex(0.3, 0));
  for (Complex z : interior_grid(Domain::disc(1.0), 0.15, 0.15))
    CHECK(nrc.diastasis(z).residual <= 1e-7);
}

TEST_CASE("Green's function from T: pole expansion, negativity, rigidity") {
  auto src = disc_oracle_src();
  RepCoordinate rc0 = RepCoordinate::build(src, 0.0);
  for (Complex z : {Complex(0.3, 0.2), Complex(-0.8, 0.1)})
    CHECK(std::abs(rc0.green(z) - std::log(std::abs(z))) < 1e-13);

  RepCoordinate rc5 = RepCoordinate::build(src, Complex(0.5, 0));
  Complex z = Complex(0.5, 0) + Complex(1e-6, 0);
  double limit = rc5.green(z) - std::log(std::abs(z - Complex(0.5, 0)));
  CHECK(std::abs(limit - std::log(4.0 / 3.0)) < 1e-5);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  int tested = 0;
  AnalyticKernel oracle = AnalyticKernel::disc(1.0);
  while (tested < 100) {
    Complex w(u(rng), u(rng));
    if (std::abs(w) >= 0.95 || std::abs(w - Complex(0.5, 0)) < 1e-3) continue;
    ++tested;
    double F = rc5.green(w);
    CHECK(F < 0.0);
    CHECK(std::abs(F - oracle_green(oracle, w, Complex(0.5, 0))) < 1e-12);
  }
}

TEST_CASE("Green rigidity on the numeric field and the Kerzman oracle") {
  // numeric disc field vs the conformal-invariance oracle
  auto nsrc = disc_field_src(Complex(0.5, 0));
  RepCoordinate nrc = RepCoordinate::build(nsrc, Complex(0.5, 0));
  AnalyticKernel disc = AnalyticKernel::disc(1.0);
  double worst = 0;
  for (Complex z : interior_grid(Domain::disc(1.0), 0.15, 0.05)) {
    if (std::abs(z - Complex(0.5, 0)) < 1e-6) continue;
    worst = std::max(
        worst, std::abs(nrc.green(z) - oracle_green(disc, z, Complex(0.5, 0))));
  }
  CHECK(worst <= 1e-7);

  // Kerzman sector through its conformal-image oracle
  auto ksrc = std::make_shared<AnalyticKernel>(*analytic_oracle(
      Domain::sector_complement(1.0, kPi / 2, 2 * kPi)));
  Complex p(-0.5, 0);
  RepCoordinate krc = RepCoordinate::build(ksrc, p);
  double kworst = 0;
  for (Complex z : interior_grid(ksrc->domain(), 0.17, 0.05)) {
    if (std::abs(z - p) < 1e-6) continue;
    kworst = std::max(kworst,
                      std::abs(krc.green(z) - oracle_green(*ksrc, z, p)));
  }
  CHECK(kworst <= 1e-7);
}

TEST_CASE("capacity from T equals the Mobius-derivative capacity") {
  auto src = disc_oracle_src();
  RepCoordinate rc0 = RepCoordinate::build(src, 0.0);
  CHECK(std::abs(rc0.capacity() - 1.0) < 1e-13);
  RepCoordinate rc5 = RepCoordinate::build(src, Complex(0.5, 0));
  CHECK(std::abs(rc5.capacity() - 4.0 / 3.0) < 1e-12);
  // pi K(p,p) = c_beta(p)^2 within 1e-10 on the disc
  double piK = kPi * src->kernel(Complex(0.5, 0), Complex(0.5, 0), 0, 0).real();
  CHECK(std::abs(piK - rc5.capacity() * rc5.capacity()) < 1e-10);
}

TEST_CASE("Newton inversion: fixed points and round trips") {
  auto src = disc_oracle_src();
  RepCoordinate rc0 = RepCoordinate::build(src, 0.0);
  CHECK(std::abs(rc0.invert(Complex(0.3, 0)) - Complex(0.3, 0)) < 1e-10);
  RepCoordinate rc5 = RepCoordinate::build(src, Complex(0.5, 0));
  CHECK(std::abs(rc5.invert(Complex(0, 0)) - Complex(0.5, 0)) < 1e-10);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  int tested = 0;
  while (tested < 50) {
    Complex z(u(rng), u(rng));
    if (std::abs(z) >= 0.9) continue;
    ++tested;
    Complex back = rc5.invert(rc5.map(z), z + Complex(0.05, -0.02));
    CHECK(std::abs(back - z) <= 1e-9);
  }
}

TEST_CASE("image containment: Q(z) < 2/c^2 on constant-curvature domains") {
  for (auto& [dom, p] :
       std::vector<std::pair<Domain, Complex>>{
           {Domain::disc(1.0), Complex(0.3, 0.1)},
           {Domain::slit_disc(0.0, 1.0), Complex(-0.5, 0)},
           {Domain::sector_complement(1.0, kPi / 2, 2 * kPi), Complex(-0.5, 0)}}) {
    CAPTURE(dom.id());
    std::shared_ptr<const KernelSource> src;
    if (dom.tag().kind == DomainTag::Disc)
      src = disc_field_src(p);
    else
      src = std::make_shared<AnalyticKernel>(*analytic_oracle(dom));
    RepCoordinate rc = RepCoordinate::build(src, p);
    REQUIRE(rc.constant_curvature());
    for (Complex z : interior_grid(dom, 0.12, 0.03)) {
      double Q = rc.anchor_metric() * std::norm(rc.map(z));
      CHECK(Q < 2.0 / rc.c2());
    }
  }
}

TEST_CASE("transformation identity and the derivative bound") {
  // single numeric field: K(z,p) = (g(p)/2pi) T'(z) and
  // |T'| <= (2pi/g(p)) |K| with equality (simply-connected)
  Complex p(0.3, 0);
  auto src = disc_field_src(p);
  RepCoordinate rc = RepCoordinate::build(src, p);
  double g = rc.anchor_metric();
  double worst_rel = 0, worst_eq = 0, min_gap = 1e300;
  for (Complex z : interior_grid(Domain::disc(1.0), 0.12, 0.05)) {
    Complex K = src->kernel(z, p, 0, 0);
    Complex Tp = rc.derivative(z);
    worst_rel = std::max(worst_rel,
                         std::abs(K - g / (2 * kPi) * Tp) / std::abs(K));
    double bound = 2 * kPi / g * std::abs(K);
    min_gap = std::min(min_gap, bound - std::abs(Tp));
    worst_eq = std::max(worst_eq, std::abs(bound - std::abs(Tp)));
  }
  CHECK(worst_rel <= 1e-7);
  CHECK(min_gap >= -1e-7);
  CHECK(worst_eq <= 1e-7);
}

TEST_CASE("slit-disc T equals the disc T (polar sets are invisible)") {
  Complex p(-0.5, 0);
  auto ds = disc_field_src(p);
  auto ss = std::make_shared<KernelField>(
      build_field(Domain::slit_disc(0.0, 1.0), p));
  RepCoordinate rd = RepCoordinate::build(ds, p);
  RepCoordinate rs = RepCoordinate::build(ss, p);
  for (Complex z : interior_grid(Domain::slit_disc(0.0, 1.0), 0.15, 0.05))
    CHECK(std::abs(rd.map(z) - rs.map(z)) <= 1e-9);
}

TEST_CASE("annulus T evaluates but carries no constant-curvature contract") {
  auto src = std::make_shared<AnalyticKernel>(AnalyticKernel::annulus(0.5, 1.0));
  RepCoordinate rc = RepCoordinate::build(src, Complex(0.75, 0));
  CHECK_FALSE(rc.constant_curvature());
  CHECK(std::isfinite(std::abs(rc.map(Complex(0.6, 0.2)))));
  CHECK_THROWS_AS(rc.green(Complex(0.6, 0.2)), Error);
  CHECK_THROWS_AS(rc.capacity(), Error);
}

TEST_CASE("kernel-zero guard trips near a certified annulus zero") {
  auto src = std::make_shared<AnalyticKernel>(AnalyticKernel::annulus(0.5, 1.0));
  // bisect the sign change of K(z, w) along real w at fixed z
  double z = 0.55;
  auto kval = [&](double w) {
    return src->kernel(Complex(z, 0), Complex(w, 0), 0, 0).real();
  };
  double lo = -0.99, hi = -0.51;
  // locate a bracketing interval first
  double prev = kval(lo), wprev = lo;
  double a = 0, b = 0;
  for (int i = 1; i <= 96; ++i) {
    double w = lo + (hi - lo) * i / 96;
    double v = kval(w);
    if (prev * v < 0) {
      a = wprev;
      b = w;
      break;
    }
    prev = v;
    wprev = w;
  }
  REQUIRE(a != b);
  for (int i = 0; i < 80; ++i) {
    double m = 0.5 * (a + b);
    (kval(a) * kval(m) <= 0 ? b : a) = m;
  }
  Complex anchor(0.5 * (a + b), 0);
  RepCoordinate rc = RepCoordinate::build(src, anchor);
  CHECK_THROWS_AS(rc.map(Complex(z, 0)), Error);
}
