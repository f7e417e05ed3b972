// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bergmap/checks.hpp"

using namespace bergmap;

namespace {

std::shared_ptr<const KernelSource> disc_field_src(Complex anchor) {
  static std::map<std::pair<double, double>,
                  std::shared_ptr<const KernelSource>>
      cache;
  auto key = std::make_pair(anchor.real(), anchor.imag());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto src = std::make_shared<KernelField>(build_field(Domain::disc(1.0), anchor));
  cache[key] = src;
  return src;
}

std::shared_ptr<const KernelSource> kerzman_src() {
  static auto src = std::make_shared<AnalyticKernel>(*analytic_oracle(
      Domain::sector_complement(1.0, kPi / 2, 2 * kPi)));
  return src;
}

void check_accounting(const CheckReport& rep) {
  CHECK(rep.points_attempted ==
        rep.points_evaluated + rep.guard_trips + rep.margin_exclusions);
}

}  // namespace

TEST_CASE("suita: equalities on the disc, resolution-bounded gap on annuli") {
  auto src = disc_field_src(0.0);
  CheckReport rep = check_suita(*src, {Complex(0, 0), Complex(0.3, 0.2)}, 1e-8);
  CHECK(rep.verdict == "pass");
  CHECK(rep.residual_max <= 1e-8);
  CHECK(rep.stat("max_equality_residual_cbeta") <= 1e-8);
  CHECK(rep.stat("max_equality_residual_ghalf") <= 1e-8);
  CHECK(!rep.citation.empty());
  check_accounting(rep);

  AnalyticKernel ann = AnalyticKernel::annulus(0.5, 1.0);
  std::vector<Complex> radii;
  for (int i = 1; i <= 10; ++i) radii.push_back(Complex(0.5 + 0.5 * i / 11, 0));
  CheckReport arep = check_suita(ann, radii, 1e-10);
  CHECK(arep.verdict == "pass");
  CHECK(arep.stat("min_piK_minus_cbeta2") >= -1e-9);
  check_accounting(arep);

  // thin-inner annulus: the gap is macroscopic at inner radii
  AnalyticKernel thin = AnalyticKernel::annulus(0.05, 1.0);
  std::vector<Complex> inner;
  for (int i = 0; i < 10; ++i) inner.push_back(Complex(0.16 + 0.014 * i, 0));
  CheckReport trep = check_suita(thin, inner, 1e-10);
  CHECK(trep.stat("min_piK_minus_ghalf") > 1e-3);
  CHECK(trep.stat("min_piK_minus_cbeta2") > 1e-3);
}

TEST_CASE("condition (B): stabilizes on the disc, diverges on the sector") {
  ConditionBEstimate est;
  CheckReport rep = check_condition_b(*disc_field_src(0.0), 0.0, 0.5, &est);
  CHECK(rep.verdict == "pass");
  CHECK(est.stabilized);
  CHECK(est.constant <= 2.0 + 1e-6);
  CHECK(est.ladder.size() == 6);
  CHECK(est.anchors.size() >= 20);
  check_accounting(rep);

  CheckReport krep = check_condition_b(*kerzman_src(), Complex(-0.5, 0), 0.15);
  CHECK(krep.verdict == "trend");
  CHECK(krep.stat("last_over_first") >= 2.0);
  // still growing: final rung above the previous one
  CHECK(krep.ladder[5].value > krep.ladder[4].value);
  check_accounting(krep);
}

TEST_CASE("kernel comparison radius on disc and ball") {
  CheckReport rep = check_kernel_similar(*disc_field_src(0.0), 0.0);
  CHECK(rep.verdict == "pass");
  CHECK(std::abs(rep.stat("passing_rho") - 0.2929) <= 0.02);
  check_accounting(rep);

  BallOracle b2(2);
  CheckReport brep = check_kernel_similar_ball(b2);
  CHECK(brep.verdict == "pass");
  CHECK(brep.stat("passing_rho") >= 0.1);
}

TEST_CASE("transformation check bundles the five identities") {
  auto src = disc_field_src(Complex(0.3, 0));
  RepCoordinate rc = RepCoordinate::build(src, Complex(0.3, 0));
  CheckReport rep = check_transformation(rc, 0.1, 0.05, 1e-7);
  CHECK(rep.verdict == "pass");
  CHECK(rep.stat("max_transformation_residual") <= 1e-7);
  CHECK(rep.stat("min_derivative_gap") >= -1e-7);
  CHECK(rep.stat("max_derivative_equality_residual") <= 1e-7);
  CHECK(rep.stat("max_diastasis_residual") <= 1e-7);
  CHECK(rep.stat("max_green_value") < 0.0);
  CHECK(rep.stat("max_green_rigidity_error") <= 1e-7);
  check_accounting(rep);

  // oracle tolerances on the slit-disc completion oracle
  auto ss = std::make_shared<AnalyticKernel>(
      *analytic_oracle(Domain::slit_disc(0.0, 1.0)));
  RepCoordinate rs = RepCoordinate::build(ss, Complex(-0.5, 0));
  CheckReport orep = check_transformation(rs, 0.1, 0.05, 1e-12);
  CHECK(orep.verdict == "pass");
}

TEST_CASE("transformation is skipped without constant curvature") {
  auto src = std::make_shared<AnalyticKernel>(AnalyticKernel::annulus(0.5, 1.0));
  RepCoordinate rc = RepCoordinate::build(src, Complex(0.75, 0));
  CheckReport rep = check_transformation(rc, 0.1, 0.05, 1e-7);
  CHECK(rep.verdict == "skip");
}

TEST_CASE("curvature constancy: disc passes, annuli fail for the right reasons") {
  CheckReport rep =
      check_curvature_constancy(*disc_field_src(0.0), 0.1, 0.3, 1e-5);
  CHECK(rep.verdict == "pass");
  CHECK(rep.stat("kappa_stdev") <= 1e-5);
  CHECK(std::abs(rep.stat("c2") - 1.0) < 1e-5);
  CHECK(std::abs(rep.stat("implied_n") - 1.0) < 1e-4);
  CHECK(rep.stat("kernel_zero_found") == 0.0);

  // moderate modulus: curvature numerically constant, zero scan certifies
  AnalyticKernel mid = AnalyticKernel::annulus(0.5, 1.0);
  CheckReport mrep = check_curvature_constancy(mid, 0.08, 0.05, 1e-5);
  CHECK(mrep.verdict == "fail");
  CHECK(mrep.stat("kernel_zero_found") == 1.0);
  CHECK(mrep.stat("kappa_stdev") <= 1e-5);  // the 1e-10 deviation is invisible

  // thin inner radius: the deviation is directly measurable
  AnalyticKernel thin = AnalyticKernel::annulus(0.05, 1.0);
  CheckReport trep = check_curvature_constancy(thin, 0.08, 0.05, 1e-5);
  CHECK(trep.verdict == "fail");
  CHECK(trep.stat("kappa_stdev") >= 1e-2);
}

TEST_CASE("ball curvature check reports the dimension relation") {
  BallOracle b3(3);
  CheckReport rep = check_curvature_constancy_ball(b3, 1e-5);
  CHECK(rep.verdict == "pass");
  CHECK(std::abs(rep.stat("hol_sectional_curvature") - (-0.5)) < 1e-6);
  CHECK(std::abs(rep.stat("implied_n") - 3.0) < 1e-4);
}

TEST_CASE("boundary extension: disc and sector shrink, slit disc separates") {
  auto dsrc = disc_field_src(0.0);
  RepCoordinate rd = RepCoordinate::build(dsrc, 0.0);
  CheckReport rep = check_boundary_extension(rd, Complex(1, 0));
  CHECK(rep.verdict == "trend");
  CHECK(rep.ladder.size() == 4);
  CHECK(rep.stat("osc_ratio_min") >= 1.5);
  CHECK_FALSE(rep.has_stat("straddle_gap_min"));

  RepCoordinate rk = RepCoordinate::build(kerzman_src(), Complex(-0.5, 0));
  CheckReport krep =
      check_boundary_extension(rk, std::polar(1.0, 1.25 * kPi));
  CHECK(krep.stat("osc_ratio_min") >= 1.5);

  auto ss = std::make_shared<KernelField>(
      build_field(Domain::slit_disc(0.0, 1.0), Complex(-0.5, 0)));
  RepCoordinate rs = RepCoordinate::build(ss, Complex(-0.5, 0));
  CheckReport srep = check_boundary_extension(rs, Complex(0.5, 0));
  CHECK(srep.has_stat("straddle_gap_min"));
  CHECK(srep.stat("straddle_gap_min") >= 0.1);
  check_accounting(srep);
}

TEST_CASE("local connectivity: disc and square corner pass, slit fails") {
  CheckReport rep = check_local_connectivity(Domain::disc(1.0), Complex(1, 0));
  for (const auto& lp : rep.ladder) CHECK(lp.value <= 3.0 * lp.param);
  CHECK(rep.stat("max_len_over_eps") <= 4.0);

  CheckReport sq =
      check_local_connectivity(Domain::rect(-1, 1, -1, 1), Complex(1, 1));
  CHECK(sq.stat("max_len_over_eps") <= 4.0);

  CheckReport slit =
      check_local_connectivity(Domain::slit_disc(0.0, 1.0), Complex(0.5, 0));
  CHECK(slit.stat("final_max_len") >= 0.8);
}

TEST_CASE("kernel infimum ladders") {
  auto src0 = disc_field_src(0.0);
  RepCoordinate r0 = RepCoordinate::build(src0, 0.0);
  CheckReport rep = check_kernel_infimum(r0);
  // |K(z,0)| = 1/pi at every rung
  for (const auto& lp : rep.ladder) CHECK(std::abs(lp.value - 1.0 / kPi) < 1e-9);
  CHECK(rep.stat("min_K_final") >= 0.5 * rep.stat("min_K_first"));

  auto src5 = disc_field_src(Complex(0.5, 0));
  RepCoordinate r5 = RepCoordinate::build(src5, Complex(0.5, 0));
  CheckReport rep5 = check_kernel_infimum(r5);
  // min over |z| <= 1 of |K(z, 0.5)| approaches 1/(pi |1+0.5|^2) ~ 0.1415
  CHECK(rep5.stat("min_K_final") > 0.14);
  CHECK(rep5.stat("min_K_final") < 0.15);

  // at the conformal-center anchor f(p)=0 the corner term dominates every
  // rung and the blow-up factor over five halvings is (2^5)^(1/3) ~ 3.17
  Complex canonical = kerzman_map().inverse(0.0);
  RepCoordinate rk = RepCoordinate::build(kerzman_src(), canonical);
  CheckReport krep = check_kernel_infimum(rk);
  CHECK(krep.stat("max_K_growth") >= 3.0);
  CHECK(krep.stat("min_K_final") > 0.0);
  CHECK(krep.stat("max_K_monotone") == 1.0);
  // a generic anchor still shows the blow-up finding, slightly damped
  RepCoordinate rg = RepCoordinate::build(kerzman_src(), Complex(-0.5, 0));
  CHECK(check_kernel_infimum(rg).stat("max_K_growth") >= 2.0);
}

TEST_CASE("bounded representative coordinate") {
  auto src = disc_field_src(0.0);
  RepCoordinate rc = RepCoordinate::build(src, 0.0);
  CheckReport rep = check_bounded_repcoord(rc, 0.29);
  CHECK(rep.verdict == "pass");
  CHECK(std::abs(rep.stat("C_p") - std::sqrt(2.0)) < 1e-9);
  CHECK(rep.stat("bound") > 8.0);
  CHECK(rep.stat("max_abs_w") < 1.0);

  BallOracle b2(2);
  CheckReport brep = check_bounded_repcoord_ball(b2, 0.2);
  CHECK(brep.verdict == "pass");
  CHECK(brep.stat("max_abs_w") < 1.0);
}

TEST_CASE("run_checks: disc produces 9 expected reports in id order") {
  CheckSuiteConfig cfg;
  cfg.anchor = 0.0;
  std::vector<CheckReport> reps = run_checks(Domain::disc(1.0), cfg);
  REQUIRE(reps.size() == 9);
  for (size_t i = 1; i < reps.size(); ++i)
    CHECK(reps[i - 1].check_id < reps[i].check_id);
  for (const auto& r : reps) {
    CAPTURE(r.check_id);
    CHECK(r.expected);
    CHECK(!r.citation.empty());
  }
}

TEST_CASE("run_checks: ball domain runs the analytic subset") {
  CheckSuiteConfig cfg;
  std::vector<CheckReport> reps = run_checks(Domain::ball(2), cfg);
  REQUIRE(reps.size() == 9);
  int passed = 0, skipped = 0;
  for (const auto& r : reps) {
    CHECK(r.expected);
    if (r.verdict == "pass") ++passed;
    if (r.verdict == "skip") ++skipped;
  }
  CHECK(passed >= 4);  // curvature, kernel_similar, transformation, bounded
  CHECK(passed + skipped == 9);
}

TEST_CASE("run_checks rejects unknown ids") {
  CheckSuiteConfig cfg;
  cfg.check_ids = {"nope"};
  CHECK_THROWS_AS(run_checks(Domain::disc(1.0), cfg), Error);
}
