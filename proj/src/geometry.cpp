// SPDX-License-Identifier: Apache-2.0
#include "bergmap/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>

namespace bergmap {

namespace {

double wrap_angle(double a, double lo) {
  double t = std::fmod(a - lo, 2 * kPi);
  if (t < 0) t += 2 * kPi;
  return lo + t;
}

double point_segment_distance(Complex z, Complex a, Complex b) {
  Complex d = b - a;
  double len2 = std::norm(d);
  if (len2 == 0) return std::abs(z - a);
  double t = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + t * d));
}

int orient_sign(Complex a, Complex b, Complex c, double eps) {
  double v = (b.real() - a.real()) * (c.imag() - a.imag()) -
             (b.imag() - a.imag()) * (c.real() - a.real());
  if (v > eps) return 1;
  if (v < -eps) return -1;
  return 0;
}

bool segments_intersect(Complex a, Complex b, Complex c, Complex d) {
  double scale = std::abs(b - a) + std::abs(d - c) + 1e-30;
  double eps = 1e-14 * scale * scale;
  int o1 = orient_sign(a, b, c, eps), o2 = orient_sign(a, b, d, eps);
  int o3 = orient_sign(c, d, a, eps), o4 = orient_sign(c, d, b, eps);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0)
    return true;
  // collinear / touching cases: treat near-touch as an intersection
  double tol = 1e-12 * scale;
  if (o1 == 0 && point_segment_distance(c, a, b) < tol) return true;
  if (o2 == 0 && point_segment_distance(d, a, b) < tol) return true;
  if (o3 == 0 && point_segment_distance(a, c, d) < tol) return true;
  if (o4 == 0 && point_segment_distance(b, c, d) < tol) return true;
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// BoundaryCurve

BoundaryCurve BoundaryCurve::arc(Complex center, double radius, double angle0,
                                 double angle1) {
  BoundaryCurve c;
  c.kind_ = CurveKind::CircularArc;
  c.center_ = center;
  c.radius_ = radius;
  c.angle0_ = angle0;
  c.angle1_ = angle1;
  return c;
}

BoundaryCurve BoundaryCurve::segment(Complex a, Complex b) {
  BoundaryCurve c;
  c.kind_ = CurveKind::LineSegment;
  c.a_ = a;
  c.b_ = b;
  return c;
}

BoundaryCurve BoundaryCurve::parametric(std::function<Complex(double)> point,
                                        std::function<Complex(double)> deriv,
                                        int resolution) {
  BoundaryCurve c;
  c.kind_ = CurveKind::Parametric;
  c.fpoint_ = std::move(point);
  c.fderiv_ = std::move(deriv);
  c.polyline_.reserve(resolution + 1);
  for (int i = 0; i <= resolution; ++i)
    c.polyline_.push_back(c.fpoint_(double(i) / resolution));
  return c;
}

Complex BoundaryCurve::point(double t) const {
  switch (kind_) {
    case CurveKind::CircularArc: {
      double a = angle0_ + t * (angle1_ - angle0_);
      return center_ + radius_ * std::polar(1.0, a);
    }
    case CurveKind::LineSegment:
      return a_ + t * (b_ - a_);
    case CurveKind::Parametric:
      return fpoint_(t);
  }
  return {};
}

Complex BoundaryCurve::derivative(double t) const {
  switch (kind_) {
    case CurveKind::CircularArc: {
      double a = angle0_ + t * (angle1_ - angle0_);
      return Complex(0, 1) * (angle1_ - angle0_) * radius_ * std::polar(1.0, a);
    }
    case CurveKind::LineSegment:
      return b_ - a_;
    case CurveKind::Parametric:
      return fderiv_(t);
  }
  return {};
}

double BoundaryCurve::length() const {
  switch (kind_) {
    case CurveKind::CircularArc:
      return std::abs(angle1_ - angle0_) * radius_;
    case CurveKind::LineSegment:
      return std::abs(b_ - a_);
    case CurveKind::Parametric: {
      double L = 0;
      for (size_t i = 1; i < polyline_.size(); ++i)
        L += std::abs(polyline_[i] - polyline_[i - 1]);
      return L;
    }
  }
  return 0;
}

double BoundaryCurve::distance(Complex z) const {
  switch (kind_) {
    case CurveKind::CircularArc: {
      Complex d = z - center_;
      double r = std::abs(d);
      double lo = std::min(angle0_, angle1_), hi = std::max(angle0_, angle1_);
      double psi = (r == 0) ? lo : wrap_angle(std::arg(d), lo);
      if (psi <= hi) return std::abs(r - radius_);
      return std::min(std::abs(z - point(0.0)), std::abs(z - point(1.0)));
    }
    case CurveKind::LineSegment:
      return point_segment_distance(z, a_, b_);
    case CurveKind::Parametric: {
      double best = std::numeric_limits<double>::max();
      for (size_t i = 1; i < polyline_.size(); ++i)
        best = std::min(best,
                        point_segment_distance(z, polyline_[i - 1], polyline_[i]));
      return best;
    }
  }
  return 0;
}

bool BoundaryCurve::intersects_segment(Complex a, Complex b) const {
  switch (kind_) {
    case CurveKind::LineSegment:
      return segments_intersect(a, b, a_, b_);
    case CurveKind::CircularArc: {
      Complex d = b - a, f = a - center_;
      double A = std::norm(d);
      if (A == 0) return std::abs(distance(a)) < 1e-12;
      double B = 2 * (f * std::conj(d)).real();
      double C = std::norm(f) - radius_ * radius_;
      double disc = B * B - 4 * A * C;
      if (disc < 0) return false;
      double sq = std::sqrt(disc);
      double lo = std::min(angle0_, angle1_), hi = std::max(angle0_, angle1_);
      for (double t : {(-B - sq) / (2 * A), (-B + sq) / (2 * A)}) {
        if (t < -1e-12 || t > 1 + 1e-12) continue;
        Complex p = a + t * d;
        double psi = wrap_angle(std::arg(p - center_), lo);
        if (psi <= hi + 1e-12) return true;
      }
      return false;
    }
    case CurveKind::Parametric: {
      for (size_t i = 1; i < polyline_.size(); ++i)
        if (segments_intersect(a, b, polyline_[i - 1], polyline_[i]))
          return true;
      return false;
    }
  }
  return false;
}

double BoundaryCurve::winding_angle_piece(Complex z, double t0, double t1,
                                          int depth) const {
  Complex p0 = point(t0), p1 = point(t1);
  Complex m = point(0.5 * (t0 + t1));
  double dev = std::abs(m - 0.5 * (p0 + p1));
  double dist = std::min({std::abs(p0 - z), std::abs(p1 - z), std::abs(m - z)});
  // Subdivide until the piece is chord-like relative to its distance from z
  // and subtends less than pi/2, so the principal-branch argument is exact.
  Complex r0 = p0 - z, r1 = p1 - z;
  double turn = std::arg(r1 / r0);
  if (depth < 48 &&
      (dev > 0.25 * dist || std::abs(turn) > 1.2 ||
       std::abs(p1 - p0) > 2.0 * dist)) {
    double tm = 0.5 * (t0 + t1);
    return winding_angle_piece(z, t0, tm, depth + 1) +
           winding_angle_piece(z, tm, t1, depth + 1);
  }
  return turn;
}

double BoundaryCurve::winding_angle(Complex z) const {
  if (kind_ == CurveKind::LineSegment)
    return std::arg((b_ - z) / (a_ - z));
  return winding_angle_piece(z, 0.0, 1.0, 0);
}

// ---------------------------------------------------------------------------
// Domain factories

namespace {

void add_circle(std::vector<BoundaryCurve>& cs, Complex center, double radius,
                bool ccw) {
  // quarter arcs: keeps composite Gauss panels short relative to the
  // oscillation of high-degree basis integrands
  for (int q = 0; q < 4; ++q) {
    double a0 = q * kPi / 2, a1 = (q + 1) * kPi / 2;
    if (!ccw) std::swap(a0, a1);
    cs.push_back(BoundaryCurve::arc(center, radius, a0, a1));
  }
  if (!ccw) std::reverse(cs.end() - 4, cs.end());
}

BBox bbox_of(const std::vector<BoundaryCurve>& cs) {
  BBox b{1e300, -1e300, 1e300, -1e300};
  for (const auto& c : cs)
    for (int i = 0; i <= 64; ++i) {
      Complex p = c.point(i / 64.0);
      b.xmin = std::min(b.xmin, p.real());
      b.xmax = std::max(b.xmax, p.real());
      b.ymin = std::min(b.ymin, p.imag());
      b.ymax = std::max(b.ymax, p.imag());
    }
  return b;
}

std::string fmt_num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

Domain Domain::disc(double radius) {
  if (radius <= 0) fail(ErrorKind::DegenerateGeometry, "disc radius must be positive");
  Domain d;
  add_circle(d.curves_, 0.0, radius, true);
  d.tag_.kind = DomainTag::Disc;
  d.tag_.r = radius;
  d.bbox_ = {-radius, radius, -radius, radius};
  d.id_ = "disc:" + fmt_num(radius);
  return d;
}

Domain Domain::annulus(double r, double R) {
  if (!(0 < r && r < R))
    fail(ErrorKind::DegenerateGeometry, "annulus requires 0 < r < R");
  Domain d;
  add_circle(d.curves_, 0.0, R, true);
  add_circle(d.curves_, 0.0, r, false);  // inner boundary, negative orientation
  d.tag_.kind = DomainTag::Annulus;
  d.tag_.r = r;
  d.tag_.R = R;
  d.bbox_ = {-R, R, -R, R};
  d.id_ = "annulus:" + fmt_num(r) + ":" + fmt_num(R);
  return d;
}

Domain Domain::sector_complement(double r_max, double theta_min,
                                 double theta_max) {
  if (!(r_max > 0) || !(theta_min < theta_max) ||
      theta_max - theta_min >= 2 * kPi)
    fail(ErrorKind::DegenerateGeometry, "invalid sector parameters");
  Domain d;
  d.curves_.push_back(
      BoundaryCurve::segment(0.0, r_max * std::polar(1.0, theta_min)));
  // split the arc so each piece spans at most pi/2
  int pieces = std::max(1, (int)std::ceil((theta_max - theta_min) / (kPi / 2)));
  for (int i = 0; i < pieces; ++i) {
    double a0 = theta_min + (theta_max - theta_min) * i / pieces;
    double a1 = theta_min + (theta_max - theta_min) * (i + 1) / pieces;
    d.curves_.push_back(BoundaryCurve::arc(0.0, r_max, a0, a1));
  }
  d.curves_.push_back(
      BoundaryCurve::segment(r_max * std::polar(1.0, theta_max), 0.0));
  d.tag_.kind = DomainTag::SectorComplement;
  d.tag_.R = r_max;
  d.tag_.theta_min = theta_min;
  d.tag_.theta_max = theta_max;
  d.bbox_ = bbox_of(d.curves_);
  d.id_ = "sector_complement:" + fmt_num(r_max) + ":" + fmt_num(theta_min) +
          ":" + fmt_num(theta_max);
  return d;
}

Domain Domain::slit_disc(double slit_from, double slit_to) {
  if (!(slit_from < slit_to) || slit_to > 1.0 || slit_from < -1.0)
    fail(ErrorKind::DegenerateGeometry, "slit must lie in [-1,1] on the real axis");
  Domain d;
  add_circle(d.curves_, 0.0, 1.0, true);
  // the slit is traversed twice with opposite orientation; the two
  // traversals cancel in every contour integral of a slit-continuous function
  d.curves_.push_back(BoundaryCurve::segment(slit_to, slit_from));
  d.curves_.push_back(BoundaryCurve::segment(slit_from, slit_to));
  d.tag_.kind = DomainTag::SlitDisc;
  d.tag_.slit_from = slit_from;
  d.tag_.slit_to = slit_to;
  d.bbox_ = {-1, 1, -1, 1};
  d.id_ = "slit_disc:" + fmt_num(slit_from) + ":" + fmt_num(slit_to);
  return d;
}

Domain Domain::rect(double xmin, double xmax, double ymin, double ymax) {
  if (!(xmin < xmax && ymin < ymax))
    fail(ErrorKind::DegenerateGeometry, "empty rectangle");
  Domain d;
  Complex c00(xmin, ymin), c10(xmax, ymin), c11(xmax, ymax), c01(xmin, ymax);
  for (auto [a, b] : {std::pair{c00, c10}, {c10, c11}, {c11, c01}, {c01, c00}})
    d.curves_.push_back(BoundaryCurve::segment(a, b));
  d.tag_.kind = DomainTag::Rect;
  d.bbox_ = {xmin, xmax, ymin, ymax};
  d.id_ = "rect:" + fmt_num(xmin) + ":" + fmt_num(xmax) + ":" + fmt_num(ymin) +
          ":" + fmt_num(ymax);
  return d;
}

Domain Domain::ball(int n) {
  if (n < 1) fail(ErrorKind::DegenerateGeometry, "ball dimension must be >= 1");
  Domain d;
  d.tag_.kind = DomainTag::Ball;
  d.tag_.ball_n = n;
  d.bbox_ = {-1, 1, -1, 1};
  d.id_ = "ball:" + std::to_string(n);
  return d;
}

Domain Domain::conformal_image(const std::string& map_id) {
  // geometry is resolved by the oracle registry; this factory only exists for
  // id bookkeeping when a caller builds the Domain directly
  Domain d;
  d.tag_.kind = DomainTag::ConformalImage;
  d.tag_.map_id = map_id;
  d.id_ = "conformal_image:" + map_id;
  return d;
}

Domain Domain::from_curves(std::vector<BoundaryCurve> curves,
                           const std::string& id) {
  if (curves.empty()) fail(ErrorKind::DegenerateGeometry, "no boundary curves");
  Domain d;
  d.curves_ = std::move(curves);
  d.bbox_ = bbox_of(d.curves_);
  d.id_ = id;
  return d;
}

bool Domain::contains(Complex z) const {
  if (!is_planar())
    fail(ErrorKind::UnsupportedDomain, "contains() requires a planar domain");
  if (boundary_distance(z) <= kBoundaryBand) return false;
  double total = 0;
  for (const auto& c : curves_) total += c.winding_angle(z);
  return std::lround(total / (2 * kPi)) == 1;
}

double Domain::boundary_distance(Complex z) const {
  double best = std::numeric_limits<double>::max();
  for (const auto& c : curves_) best = std::min(best, c.distance(z));
  return best;
}

double Domain::boundary_length() const {
  double L = 0;
  for (const auto& c : curves_) L += c.length();
  return L;
}

bool Domain::segment_blocked(Complex a, Complex b) const {
  for (const auto& c : curves_)
    if (c.intersects_segment(a, b)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Quadrature

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double z1, pp;
    do {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      z1 = z;
      z = z1 - p1 / pp;
    } while (std::abs(z - z1) > 1e-15);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

namespace {

double legendre_value(int k, double x) {
  if (k == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int j = 1; j < k; ++j) {
    double p2 = ((2.0 * j + 1.0) * x * p1 - j * p0) / (j + 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// S[i][j]: integral of the degree-(n-1) interpolant from -1 to x_i, as a map
// on values at the Gauss-Legendre points.
std::vector<double> cumulative_operator(const std::vector<double>& x) {
  int n = static_cast<int>(x.size());
  Eigen::MatrixXd A(n, n), B(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      A(i, k) = legendre_value(k, x[i]);
      if (k == 0)
        B(i, k) = x[i] + 1.0;
      else
        B(i, k) = (legendre_value(k + 1, x[i]) - legendre_value(k - 1, x[i])) /
                  (2.0 * k + 1.0);
    }
  Eigen::MatrixXd S = B * A.inverse();
  std::vector<double> out(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i * n + j] = S(i, j);
  return out;
}

// Dyadic grading toward flagged endpoints, `levels` halvings deep.
std::vector<double> graded_breaks(int panels, bool gs, bool ge, int levels) {
  std::vector<double> breaks{0.0, 1.0};
  if (gs)
    for (int i = 1; i <= levels; ++i) breaks.push_back(std::ldexp(1.0, -i));
  if (ge)
    for (int i = 1; i <= levels; ++i) breaks.push_back(1.0 - std::ldexp(1.0, -i));
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  while (static_cast<int>(breaks.size()) - 1 > panels) {
    // panel budget smaller than the grading depth: merge the narrowest pair
    size_t narrow = 1;
    double wmin = 1e300;
    for (size_t i = 1; i + 1 < breaks.size(); ++i)
      if (breaks[i + 1] - breaks[i - 1] < wmin) {
        wmin = breaks[i + 1] - breaks[i - 1];
        narrow = i;
      }
    breaks.erase(breaks.begin() + narrow);
  }
  while (static_cast<int>(breaks.size()) - 1 < panels) {
    // split the widest panel (leftmost tie)
    size_t widest = 0;
    double wmax = 0;
    for (size_t i = 0; i + 1 < breaks.size(); ++i)
      if (breaks[i + 1] - breaks[i] > wmax + 1e-15) {
        wmax = breaks[i + 1] - breaks[i];
        widest = i;
      }
    breaks.insert(breaks.begin() + widest + 1,
                  0.5 * (breaks[widest] + breaks[widest + 1]));
  }
  return breaks;
}

}  // namespace

QuadratureRule boundary_quadrature(const Domain& domain, int panels_per_curve,
                                   int order) {
  if (!domain.is_planar())
    fail(ErrorKind::UnsupportedDomain, "quadrature requires a planar domain");
  if (order < 2) fail(ErrorKind::ConfigError, "quadrature order must be >= 2");
  QuadratureRule rule;
  rule.order = order;
  rule.panels_per_curve = panels_per_curve;
  rule.curve_count = static_cast<int>(domain.curves().size());
  std::vector<double> gx, gw;
  gauss_legendre(order, gx, gw);
  rule.gl_weights = gw;
  rule.cumulative_matrix = cumulative_operator(gx);
  // boundary loops: a curve continues the current loop when it starts where
  // the previous curve ended
  int loop = -1;
  Complex prev_end{};
  for (size_t i = 0; i < domain.curves().size(); ++i) {
    Complex start = domain.curves()[i].point(0.0);
    if (loop < 0 || std::abs(start - prev_end) > 1e-9) ++loop;
    rule.curve_loop.push_back(loop);
    prev_end = domain.curves()[i].point(1.0);
  }
  for (const auto& curve : domain.curves()) {
    if (curve.length() < 1e-14)
      fail(ErrorKind::DegenerateGeometry, "zero-length boundary curve");
    auto breaks =
        graded_breaks(panels_per_curve, curve.grade_start, curve.grade_end, 6);
    for (size_t p = 0; p + 1 < breaks.size(); ++p) {
      rule.panel_offsets.push_back(static_cast<int>(rule.nodes.size()));
      double u0 = breaks[p], u1 = breaks[p + 1];
      double jac = 0.5 * (u1 - u0), mid = 0.5 * (u0 + u1);
      for (int i = 0; i < order; ++i) {
        QuadNode node;
        double t = mid + jac * gx[i];
        node.z = curve.point(t);
        Complex dzdt = curve.derivative(t) * jac;
        node.dz = dzdt * gw[i];
        node.tangent = dzdt / std::abs(dzdt);
        node.curve = static_cast<int>(&curve - domain.curves().data());
        node.panel = static_cast<int>(p);
        rule.nodes.push_back(node);
      }
    }
  }
  return rule;
}

Complex QuadratureRule::integrate(const std::vector<Complex>& values) const {
  Complex s = 0;
  for (size_t i = 0; i < nodes.size(); ++i) s += values[i] * nodes[i].dz;
  return s;
}

std::vector<Complex> QuadratureRule::antiderivative(
    const std::vector<Complex>& values) const {
  std::vector<Complex> out(nodes.size());
  Complex acc = 0;
  int prev_loop = -1;
  for (int p = 0; p < panel_count(); ++p) {
    int off = panel_offsets[p];
    int loop = curve_loop.empty() ? 0 : curve_loop[nodes[off].curve];
    if (loop != prev_loop) {
      acc = 0;  // antiderivative constant restarts on each boundary loop
      prev_loop = loop;
    }
    for (int i = 0; i < order; ++i) {
      Complex c = 0;
      for (int j = 0; j < order; ++j) {
        Complex dzdt = nodes[off + j].dz / gl_weights[j];
        c += cumulative_matrix[i * order + j] * values[off + j] * dzdt;
      }
      out[off + i] = acc + c;
    }
    Complex panel_total = 0;
    for (int j = 0; j < order; ++j)
      panel_total += values[off + j] * nodes[off + j].dz;
    acc += panel_total;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Grids and paths

std::vector<Complex> interior_grid(const Domain& domain, double spacing,
                                   double boundary_margin) {
  if (!(spacing > 0)) fail(ErrorKind::ConfigError, "spacing must be positive");
  if (boundary_margin < 0) fail(ErrorKind::ConfigError, "margin must be >= 0");
  const BBox& bb = domain.bbox();
  double cx = 0.5 * (bb.xmin + bb.xmax), cy = 0.5 * (bb.ymin + bb.ymax);
  std::vector<Complex> out;
  long kx0 = std::lround(std::ceil((bb.xmin - cx) / spacing - 1e-12));
  long kx1 = std::lround(std::floor((bb.xmax - cx) / spacing + 1e-12));
  long ky0 = std::lround(std::ceil((bb.ymin - cy) / spacing - 1e-12));
  long ky1 = std::lround(std::floor((bb.ymax - cy) / spacing + 1e-12));
  for (long kx = kx0; kx <= kx1; ++kx)
    for (long ky = ky0; ky <= ky1; ++ky) {
      Complex z(cx + kx * spacing, cy + ky * spacing);
      if (!domain.contains(z)) continue;
      if (boundary_margin > 0 && domain.boundary_distance(z) < boundary_margin)
        continue;
      out.push_back(z);
    }
  return out;  // (re, im) lexicographic by construction
}

GridGraph::GridGraph(const Domain& domain, double step)
    : domain_(&domain), step_(step) {
  if (!(step > 0)) fail(ErrorKind::ConfigError, "step must be positive");
  const BBox& bb = domain.bbox();
  cx_ = 0.5 * (bb.xmin + bb.xmax);
  cy_ = 0.5 * (bb.ymin + bb.ymax);
  long kx0 = std::lround(std::ceil((bb.xmin - cx_) / step - 1e-12));
  long kx1 = std::lround(std::floor((bb.xmax - cx_) / step + 1e-12));
  long ky0 = std::lround(std::ceil((bb.ymin - cy_) / step - 1e-12));
  long ky1 = std::lround(std::floor((bb.ymax - cy_) / step + 1e-12));
  for (long kx = kx0; kx <= kx1; ++kx)
    for (long ky = ky0; ky <= ky1; ++ky) {
      Complex z(cx_ + kx * step, cy_ + ky * step);
      if (!domain.contains(z)) continue;
      index_[{kx, ky}] = static_cast<int>(pts_.size());
      pts_.push_back(z);
      keys_.push_back({kx, ky});
    }
}

InnerPath GridGraph::path(Complex x, Complex y) const {
  if (!domain_->contains(x) || !domain_->contains(y))
    fail(ErrorKind::ConfigError, "path endpoints must lie inside the domain");
  if (x == y) return InnerPath{{x}, 0.0};

  std::vector<Complex> pts = pts_;
  int n_grid = static_cast<int>(pts.size());
  int ix = n_grid, iy = n_grid + 1;
  pts.push_back(x);
  pts.push_back(y);

  auto edge_ok = [&](Complex a, Complex b) {
    if (domain_->segment_blocked(a, b)) return false;
    return domain_->contains(0.5 * (a + b));
  };

  std::vector<std::vector<int>> extra(pts.size());
  auto link = [&](int a, int b) {
    extra[a].push_back(b);
    extra[b].push_back(a);
  };
  for (int e : {ix, iy}) {
    Complex z = pts[e];
    long kx = std::lround((z.real() - cx_) / step_);
    long ky = std::lround((z.imag() - cy_) / step_);
    for (long dx = -2; dx <= 2; ++dx)
      for (long dy = -2; dy <= 2; ++dy) {
        auto it = index_.find({kx + dx, ky + dy});
        if (it != index_.end() && edge_ok(z, pts[it->second]))
          link(e, it->second);
      }
  }
  if (edge_ok(x, y)) link(ix, iy);

  std::vector<double> dist(pts.size(), std::numeric_limits<double>::infinity());
  std::vector<int> prev(pts.size(), -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[ix] = 0;
  pq.push({0.0, ix});

  auto relax = [&](int u, int v) {
    double nd = dist[u] + std::abs(pts[u] - pts[v]);
    if (nd < dist[v] - 1e-15) {
      dist[v] = nd;
      prev[v] = u;
      pq.push({nd, v});
    }
  };

  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u] + 1e-15) continue;
    if (u == iy) break;
    if (u < n_grid) {
      auto [kx, ky] = keys_[u];
      for (long dx = -1; dx <= 1; ++dx)
        for (long dy = -1; dy <= 1; ++dy) {
          if (dx == 0 && dy == 0) continue;
          auto it = index_.find({kx + dx, ky + dy});
          if (it == index_.end()) continue;
          if (edge_ok(pts[u], pts[it->second])) relax(u, it->second);
        }
    }
    for (int v : extra[u]) relax(u, v);
  }
  if (!std::isfinite(dist[iy]))
    fail(ErrorKind::DisconnectedAtResolution,
         "endpoints not connected on the grid at this step");
  InnerPath path;
  for (int v = iy; v != -1; v = prev[v]) path.vertices.push_back(pts[v]);
  std::reverse(path.vertices.begin(), path.vertices.end());
  path.length = dist[iy];
  return path;
}

InnerPath shortest_inner_path(const Domain& domain, Complex x, Complex y,
                              double step) {
  return GridGraph(domain, step).path(x, y);
}

std::vector<Complex> offset_band_samples(const Domain& domain, double dist,
                                         int per_curve) {
  std::vector<Complex> out;
  for (const auto& curve : domain.curves()) {
    for (int j = 0; j < per_curve; ++j) {
      double t = (j + 0.5) / per_curve;
      Complex b = curve.point(t);
      Complex tau = curve.derivative(t);
      tau /= std::abs(tau);
      Complex z = b + dist * Complex(0, 1) * tau;  // inward normal
      if (!domain.contains(z)) continue;
      double d = domain.boundary_distance(z);
      if (std::abs(d - dist) > 0.3 * dist) continue;
      out.push_back(z);
    }
    // corner fans at curve endpoints (reflex corners are missed by offsets)
    for (double te : {0.0, 1.0}) {
      Complex c = curve.point(te);
      for (int a = 0; a < 32; ++a) {
        Complex z = c + dist * std::polar(1.0, 2 * kPi * a / 32);
        if (!domain.contains(z)) continue;
        double d = domain.boundary_distance(z);
        if (std::abs(d - dist) > 0.3 * dist) continue;
        out.push_back(z);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

}  // namespace bergmap
