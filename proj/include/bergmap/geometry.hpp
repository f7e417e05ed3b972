// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bergmap/types.hpp"

namespace bergmap {

enum class CurveKind { CircularArc, LineSegment, Parametric };

/// One oriented piecewise-smooth boundary piece, parametrized over t in [0,1]
/// with nonvanishing derivative. Orientation is baked into the parameter
/// direction: the domain lies on the left of the tangent.
class BoundaryCurve {
 public:
  static BoundaryCurve arc(Complex center, double radius, double angle0,
                           double angle1);
  static BoundaryCurve segment(Complex a, Complex b);
  static BoundaryCurve parametric(std::function<Complex(double)> point,
                                  std::function<Complex(double)> derivative,
                                  int resolution = 512);

  CurveKind kind() const { return kind_; }
  Complex point(double t) const;
  Complex derivative(double t) const;
  double length() const;

  /// Shortest Euclidean distance from z to the curve.
  double distance(Complex z) const;
  /// True if the open segment (a,b) crosses or touches the curve.
  bool intersects_segment(Complex a, Complex b) const;
  /// Signed subtended-angle contribution of this curve to the winding number
  /// about z (in radians).
  double winding_angle(Complex z) const;

  /// Dyadic panel grading toward an endpoint (corners of the domain).
  bool grade_start = false;
  bool grade_end = false;

  // Arc accessors (valid for kind()==CircularArc).
  Complex arc_center() const { return center_; }
  double arc_radius() const { return radius_; }

 private:
  BoundaryCurve() = default;
  CurveKind kind_ = CurveKind::LineSegment;
  // arc
  Complex center_{};
  double radius_ = 0, angle0_ = 0, angle1_ = 0;
  // segment
  Complex a_{}, b_{};
  // parametric
  std::function<Complex(double)> fpoint_, fderiv_;
  std::vector<Complex> polyline_;  // dense cache for distance/intersection

  double winding_angle_piece(Complex z, double t0, double t1, int depth) const;
};

struct BBox {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
};

struct DomainTag {
  enum Kind {
    None,
    Disc,
    Annulus,
    SectorComplement,
    SlitDisc,
    ConformalImage,
    Ball,
    Rect
  } kind = None;
  double r = 0, R = 0;           // disc/annulus radii
  double theta_min = 0, theta_max = 0;
  double slit_from = 0, slit_to = 0;
  int ball_n = 0;
  std::string map_id;            // conformal images
};

/// Bounded planar domain described by oriented boundary curves, or an
/// analytic-only ball tag in C^n.
class Domain {
 public:
  static Domain disc(double radius);
  static Domain annulus(double r, double R);
  static Domain sector_complement(double r_max, double theta_min,
                                  double theta_max);
  static Domain slit_disc(double slit_from, double slit_to);
  static Domain rect(double xmin, double xmax, double ymin, double ymax);
  static Domain ball(int n);
  static Domain conformal_image(const std::string& map_id);
  /// Custom boundary (curves must form closed positively-oriented loops).
  static Domain from_curves(std::vector<BoundaryCurve> curves,
                            const std::string& id);

  bool is_planar() const { return tag_.kind != DomainTag::Ball; }
  const DomainTag& tag() const { return tag_; }
  const std::string& id() const { return id_; }
  const BBox& bbox() const { return bbox_; }
  const std::vector<BoundaryCurve>& curves() const { return curves_; }

  bool contains(Complex z) const;
  double boundary_distance(Complex z) const;
  double boundary_length() const;
  bool segment_blocked(Complex a, Complex b) const;

 private:
  std::vector<BoundaryCurve> curves_;
  BBox bbox_;
  DomainTag tag_;
  std::string id_;
};

struct QuadNode {
  Complex z;        // boundary point
  Complex dz;       // complex contour weight: gamma'(t) * panel jacobian * w_gl
  Complex tangent;  // unit tangent
  int curve = 0;
  int panel = 0;
};

/// Composite Gauss-Legendre contour rule over all boundary curves, with
/// per-panel data retained so antiderivatives can be accumulated spectrally.
struct QuadratureRule {
  std::vector<QuadNode> nodes;
  int order = 0;
  int panels_per_curve = 0;
  int curve_count = 0;
  std::vector<int> panel_offsets;  // start index of each panel in nodes
  std::vector<int> curve_loop;     // boundary-loop id of each curve
  // Spectral integration operator on the GL points of one panel:
  // (cumulative integral from panel start to node i) = sum_j S[i][j] f_j * jac.
  std::vector<double> cumulative_matrix;  // order x order, row-major
  std::vector<double> gl_weights;         // reference GL weights

  int panel_count() const { return static_cast<int>(panel_offsets.size()); }

  /// Contour integral of nodewise values against dz weights.
  Complex integrate(const std::vector<Complex>& values) const;
  /// Nodewise values of the cumulative antiderivative of `values` along the
  /// boundary (per loop, starting from 0 at each loop's first node). Valid
  /// when `values` samples a function holomorphic on the closed domain.
  std::vector<Complex> antiderivative(const std::vector<Complex>& values) const;
};

QuadratureRule boundary_quadrature(const Domain& domain, int panels_per_curve,
                                   int order);

/// Gauss-Legendre nodes/weights on [-1,1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

/// Deterministic lattice of interior points (lattice through the bbox center,
/// sorted by (re, im)); all points pass contains() and keep the requested
/// boundary margin.
std::vector<Complex> interior_grid(const Domain& domain, double spacing,
                                   double boundary_margin);

struct InnerPath {
  std::vector<Complex> vertices;
  double length = 0;
};

/// Reusable 8-connected interior lattice for repeated shortest-path queries
/// on one domain at one step. Edges are validated against the boundary
/// (segment crossing and midpoint membership) lazily during the search.
class GridGraph {
 public:
  GridGraph(const Domain& domain, double step);
  /// Shortest polyline from x to y through the lattice (plus a direct x-y
  /// edge when unobstructed). Ties broken by lexicographic node index.
  InnerPath path(Complex x, Complex y) const;
  int lattice_size() const { return static_cast<int>(pts_.size()); }

 private:
  const Domain* domain_;
  double step_;
  std::vector<Complex> pts_;
  std::vector<std::pair<long, long>> keys_;
  std::map<std::pair<long, long>, int> index_;
  double cx_ = 0, cy_ = 0;
};

InnerPath shortest_inner_path(const Domain& domain, Complex x, Complex y,
                              double step);

/// Interior samples at (approximately) distance `dist` from the boundary;
/// used by boundary-refinement ladders.
std::vector<Complex> offset_band_samples(const Domain& domain, double dist,
                                         int per_curve);

}  // namespace bergmap
