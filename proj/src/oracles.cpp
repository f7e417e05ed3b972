// SPDX-License-Identifier: Apache-2.0
#include "bergmap/oracles.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace bergmap {

Jet3 compose(const Jet3& o, const Jet3& i) {
  Jet3 r;
  r.f = o.f;
  r.d1 = o.d1 * i.d1;
  r.d2 = o.d2 * i.d1 * i.d1 + o.d1 * i.d2;
  r.d3 = o.d3 * i.d1 * i.d1 * i.d1 + 3.0 * o.d2 * i.d1 * i.d2 + o.d1 * i.d3;
  return r;
}

ConformalMap::ConformalMap(std::string id, std::function<Jet3(Complex)> jet,
                           std::function<Complex(Complex)> inverse)
    : id_(std::move(id)), jet_(std::move(jet)), inverse_(std::move(inverse)) {}

ConformalMap mobius(Complex p) {
  if (std::abs(p) >= 1)
    fail(ErrorKind::ConfigError, "mobius parameter must satisfy |p| < 1");
  std::ostringstream os;
  os << "mobius:" << p.real();
  if (p.imag() != 0) os << "," << p.imag();
  Complex pc = std::conj(p);
  auto jet = [p, pc](Complex z) {
    Complex d = 1.0 - pc * z;
    double opp = 1.0 - std::norm(p);
    Jet3 j;
    j.f = (z - p) / d;
    j.d1 = opp / (d * d);
    j.d2 = 2.0 * pc * opp / (d * d * d);
    j.d3 = 6.0 * pc * pc * opp / (d * d * d * d);
    return j;
  };
  auto inv = [p, pc](Complex w) { return (w + p) / (1.0 + pc * w); };
  return ConformalMap(os.str(), jet, inv);
}

ConformalMap identity_map(const std::string& id) {
  return ConformalMap(
      id, [](Complex z) { return Jet3{z, 1.0, 0.0, 0.0}; },
      [](Complex w) { return w; });
}

namespace {

// Angle of z measured in (pi/2, 2 pi); points outside that range are off the
// sector and hit the branch cut.
double kerzman_angle(Complex z) {
  double a = std::arg(z);
  if (a > kPi / 2 && a <= kPi) return a;
  if (a < 0) return a + 2 * kPi;
  fail(ErrorKind::BranchError,
       "point lies on or beyond the excluded rays of the sector domain");
}

Jet3 kerzman_jet(Complex z) {
  if (z == 0.0) fail(ErrorKind::BranchError, "corner point");
  double theta = kerzman_angle(z);
  double phi = theta - kPi / 2;  // in (0, 3pi/2) after rotating by -i
  // eta = (-i z)^(2/3) on the continuous branch
  Complex eta = std::exp((2.0 / 3.0) * (std::log(std::abs(z)) + Complex(0, phi)));
  Jet3 je;
  je.f = eta;
  je.d1 = (2.0 / 3.0) * eta / z;
  je.d2 = -(2.0 / 9.0) * eta / (z * z);
  je.d3 = (8.0 / 27.0) * eta / (z * z * z);
  // u = -(eta + 1/eta)/2 maps the upper half-disc onto the upper half-plane
  Complex e2 = eta * eta;
  Jet3 ju;
  ju.f = -0.5 * (eta + 1.0 / eta);
  ju.d1 = -0.5 * (1.0 - 1.0 / e2);
  ju.d2 = -1.0 / (e2 * eta);
  ju.d3 = 3.0 / (e2 * e2);
  // Cayley transform (u - i)/(u + i)
  Complex den = ju.f + Complex(0, 1);
  Jet3 jc;
  jc.f = (ju.f - Complex(0, 1)) / den;
  jc.d1 = Complex(0, 2) / (den * den);
  jc.d2 = Complex(0, -4) / (den * den * den);
  jc.d3 = Complex(0, 12) / (den * den * den * den);
  return compose(compose(jc, ju), je);
}

Complex kerzman_inverse(Complex w) {
  Complex u = Complex(0, 1) * (1.0 + w) / (1.0 - w);
  // eta^2 + 2 u eta + 1 = 0; the roots multiply to 1, take the one inside
  Complex s = std::sqrt(u * u - 1.0);
  Complex e1 = -u + s, e2 = -u - s;
  Complex eta = std::abs(e1) < std::abs(e2) ? e1 : e2;
  double ae = std::arg(eta);
  if (ae < 0) ae += 2 * kPi;  // branch continuity for arguments near pi
  Complex zeta = std::exp(1.5 * (std::log(std::abs(eta)) + Complex(0, ae)));
  return Complex(0, 1) * zeta;
}

}  // namespace

ConformalMap kerzman_map() {
  return ConformalMap("kerzman", kerzman_jet, kerzman_inverse);
}

ConformalMap map_registry(const std::string& id) {
  if (id == "kerzman") return kerzman_map();
  if (id == "slit_disc") return identity_map("slit_disc");
  if (id == "identity") return identity_map();
  if (id.rfind("mobius:", 0) == 0) {
    std::string rest = id.substr(7);
    double re = 0, im = 0;
    size_t comma = rest.find(',');
    try {
      re = std::stod(rest.substr(0, comma));
      if (comma != std::string::npos) im = std::stod(rest.substr(comma + 1));
    } catch (const std::exception&) {
      fail(ErrorKind::ConfigError, "bad mobius map id: " + id);
    }
    return mobius(Complex(re, im));
  }
  fail(ErrorKind::ConfigError, "unknown map id: " + id);
}

Domain map_domain(const std::string& id) {
  if (id == "kerzman") return Domain::sector_complement(1.0, kPi / 2, 2 * kPi);
  if (id == "slit_disc") return Domain::slit_disc(0.0, 1.0);
  if (id == "identity" || id.rfind("mobius:", 0) == 0) return Domain::disc(1.0);
  fail(ErrorKind::ConfigError, "unknown map id: " + id);
}

// ---------------------------------------------------------------------------
// AnalyticKernel

namespace {

double rising(double s, int m) {
  double v = 1;
  for (int i = 0; i < m; ++i) v *= s + i;
  return v;
}

double factorial_ratio(int a, int m) {  // a! / (a-m)!
  double v = 1;
  for (int i = 0; i < m; ++i) v *= a - i;
  return v;
}

double binom(int n, int k) {
  double v = 1;
  for (int i = 1; i <= k; ++i) v *= double(n - k + i) / i;
  return v;
}

// d^a/du^a d^b/dvbar^b of (1 - lambda u vbar)^(-s).
Complex pow_kernel_deriv(double s, double lambda, Complex u, Complex v, int a,
                         int b) {
  Complex vb = std::conj(v);
  Complex base = 1.0 - lambda * u * vb;
  if (std::abs(base) < 1e-14)
    fail(ErrorKind::PoleError, "kernel pole: boundary contact <z,w> = 1");
  Complex total = 0;
  for (int m = 0; m <= std::min(a, b); ++m) {
    Complex term = binom(b, m) * factorial_ratio(a, m) * rising(s, a) *
                   rising(s + a, b - m);
    term *= std::pow(lambda, a + b - m) * std::pow(vb, a - m) *
            std::pow(u, b - m) * std::pow(base, -s - a - b + double(m));
    total += term;
  }
  return total;
}

}  // namespace

AnalyticKernel AnalyticKernel::disc(double radius) {
  AnalyticKernel k;
  k.kind_ = Kind::Disc;
  k.r_ = radius;
  k.domain_ = std::make_shared<Domain>(Domain::disc(radius));
  return k;
}

AnalyticKernel AnalyticKernel::annulus(double r, double R, int laurent_M) {
  AnalyticKernel k;
  k.kind_ = Kind::Annulus;
  k.r_ = r;
  k.R_ = R;
  k.M_ = laurent_M;
  k.domain_ = std::make_shared<Domain>(Domain::annulus(r, R));
  return k;
}

AnalyticKernel AnalyticKernel::conformal_image(const ConformalMap& f,
                                               Domain domain) {
  AnalyticKernel k;
  k.kind_ = Kind::ConformalImage;
  k.map_ = f;
  k.domain_ = std::make_shared<Domain>(std::move(domain));
  return k;
}

std::optional<bool> AnalyticKernel::constant_curvature_hint() const {
  switch (kind_) {
    case Kind::Disc:
    case Kind::ConformalImage:
      return true;
    case Kind::Annulus:
      return false;
  }
  return std::nullopt;
}

Complex AnalyticKernel::kernel(Complex z, Complex w, int a, int b) const {
  if (a < 0 || a > 2 || b < 0 || b > 2)
    fail(ErrorKind::ConfigError, "derivative orders must be in {0,1,2}");
  switch (kind_) {
    case Kind::Disc: {
      // K_r(z,w) = 1/(pi r^2) (1 - z wbar / r^2)^(-2)
      double lam = 1.0 / (r_ * r_);
      return pow_kernel_deriv(2.0, lam, z, w, a, b) / (kPi * r_ * r_);
    }
    case Kind::Annulus: {
      Complex wb = std::conj(w);
      auto term = [&](int k) -> Complex {
        double n2;
        if (k == -1)
          n2 = 2 * kPi * std::log(R_ / r_);
        else
          n2 = kPi * (std::pow(R_, 2 * k + 2) - std::pow(r_, 2 * k + 2)) /
               (k + 1);
        if (!std::isfinite(n2)) return 0.0;
        Complex zi = factorial_ratio(k, a) * std::pow(z, k - a);
        Complex wi = factorial_ratio(k, b) * std::pow(wb, k - b);
        return zi * wi / n2;
      };
      // sum outward from k = 0; both directions decay geometrically inside
      // the annulus
      Complex s = term(0);
      for (int dir : {1, -1}) {
        int quiet = 0;
        for (int k = dir; std::abs(k) <= M_; k += dir) {
          Complex t = term(k);
          s += t;
          if (std::abs(t) < 1e-17 * std::abs(s)) {
            if (++quiet >= 3) break;
          } else {
            quiet = 0;
          }
        }
      }
      return s;
    }
    case Kind::ConformalImage: {
      Jet3 jz = map_->jet(z), jw = map_->jet(w);
      Complex cz[3] = {jz.d1, 0, 0};
      Complex cw[3] = {jw.d1, 0, 0};
      auto fill = [](Complex c[3], const Jet3& j, int ord) {
        if (ord >= 1) {
          c[0] = j.d2;
          c[1] = j.d1 * j.d1;
        }
        if (ord >= 2) {
          c[0] = j.d3;
          c[1] = 3.0 * j.d1 * j.d2;
          c[2] = j.d1 * j.d1 * j.d1;
        }
      };
      fill(cz, jz, a);
      fill(cw, jw, b);
      Complex total = 0;
      for (int al = 0; al <= a; ++al)
        for (int be = 0; be <= b; ++be) {
          Complex k0 =
              pow_kernel_deriv(2.0, 1.0, jz.f, jw.f, al, be) / kPi;
          total += cz[al] * std::conj(cw[be]) * k0;
        }
      return total;
    }
  }
  return 0;
}

double AnalyticKernel::laurent_tail(Complex z, Complex w) const {
  if (kind_ != Kind::Annulus) return 0.0;
  double num = 0, den = std::abs(kernel(z, w, 0, 0));
  for (int k : {M_, -M_}) {
    double n2 = kPi *
                (std::pow(R_, 2 * k + 2) - std::pow(r_, 2 * k + 2)) / (k + 1);
    num += std::abs(std::pow(z, k) * std::pow(std::conj(w), k)) / n2;
  }
  return den > 0 ? num / den : 0.0;
}

std::optional<AnalyticKernel> analytic_oracle(const Domain& domain) {
  switch (domain.tag().kind) {
    case DomainTag::Disc:
      return AnalyticKernel::disc(domain.tag().r);
    case DomainTag::Annulus:
      return AnalyticKernel::annulus(domain.tag().r, domain.tag().R);
    case DomainTag::SlitDisc:
      // kernel of the completion: the slit is invisible to A^2 polynomials
      return AnalyticKernel::conformal_image(identity_map("slit_disc"), domain);
    case DomainTag::SectorComplement: {
      const DomainTag& t = domain.tag();
      if (std::abs(t.R - 1.0) < 1e-12 &&
          std::abs(t.theta_min - kPi / 2) < 1e-9 &&
          std::abs(t.theta_max - 2 * kPi) < 1e-9)
        return AnalyticKernel::conformal_image(kerzman_map(), domain);
      return std::nullopt;
    }
    case DomainTag::ConformalImage:
      return AnalyticKernel::conformal_image(map_registry(domain.tag().map_id),
                                             map_domain(domain.tag().map_id));
    default:
      return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Green's functions and capacities

namespace {

// Map onto the unit disc for simply-connected oracle kinds.
ConformalMap disc_uniformizer(const AnalyticKernel& oracle) {
  switch (oracle.oracle_kind()) {
    case AnalyticKernel::Kind::Disc: {
      double r = oracle.domain().tag().r;
      return ConformalMap(
          "scale", [r](Complex z) { return Jet3{z / r, 1.0 / r, 0.0, 0.0}; },
          [r](Complex w) { return w * r; });
    }
    case AnalyticKernel::Kind::ConformalImage:
      return *oracle.map();
    default:
      fail(ErrorKind::UnsupportedDomain,
           "no disc uniformizer for a multiply-connected oracle");
  }
}

// Schottky-Klein prime function of the annulus {rho < |x| < 1}:
// P(x) = (1-x) prod_{k>=1} (1 - rho^{2k} x)(1 - rho^{2k}/x).
Complex prime_function(Complex x, double rho, int terms) {
  Complex p = 1.0 - x;
  double q = rho * rho, qk = 1.0;
  for (int k = 1; k <= terms; ++k) {
    qk *= q;
    p *= (1.0 - qk * x) * (1.0 - qk / x);
    if (qk < 1e-300) break;
  }
  return p;
}

double prime_product_constant(double rho, int terms) {
  double v = 1.0, q = rho * rho, qk = 1.0;
  for (int k = 1; k <= terms; ++k) {
    qk *= q;
    v *= (1.0 - qk);
    if (qk < 1e-300) break;
  }
  return v;
}

}  // namespace

double annulus_green(double r, double R, Complex z, Complex p, int terms) {
  // scale to {rho < |x| < 1}
  double rho = r / R;
  Complex x = z / R, a = p / R;
  if (std::abs(x - a) < 1e-300) return -std::numeric_limits<double>::infinity();
  double la = std::log(std::abs(a));
  double g = la + std::log(std::abs(prime_function(x / a, rho, terms))) -
             std::log(std::abs(prime_function(x * std::conj(a), rho, terms))) -
             la / std::log(rho) * std::log(std::abs(x));
  return g;
}

double annulus_cbeta(double r, double R, Complex p, int terms) {
  double rho = r / R;
  Complex a = p / R;
  double la = std::log(std::abs(a));
  double pp = prime_product_constant(rho, terms);
  double c = pp * pp /
             std::abs(prime_function(Complex(std::norm(a), 0.0), rho, terms)) *
             std::exp(-la * la / std::log(rho));
  return c / R;  // local coordinate rescaling
}

double oracle_green(const AnalyticKernel& oracle, Complex z, Complex p) {
  if (oracle.oracle_kind() == AnalyticKernel::Kind::Annulus)
    fail(ErrorKind::UnsupportedDomain,
         "use annulus_green for the annulus series oracle");
  ConformalMap f = disc_uniformizer(oracle);
  Complex fz = f(z), fp = f(p);
  return std::log(std::abs((fz - fp) / (1.0 - std::conj(fp) * fz)));
}

Capacities oracle_capacities(const AnalyticKernel& oracle, Complex p) {
  if (oracle.oracle_kind() == AnalyticKernel::Kind::Annulus)
    fail(ErrorKind::UnsupportedDomain,
         "capacity oracle is simply-connected only; use annulus_cbeta");
  ConformalMap f = disc_uniformizer(oracle);
  Complex fp = f(p);
  double c = std::abs(f.derivative(p)) / (1.0 - std::norm(fp));
  return Capacities{c, c};
}

// ---------------------------------------------------------------------------
// BallOracle

BallOracle::BallOracle(int n) : n_(n) {
  if (n < 1 || n > 4)
    fail(ErrorKind::UnsupportedDomain, "ball oracle supports 1 <= n <= 4");
  double fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  norm_const_ = fact / std::pow(kPi, n);
}

Complex BallOracle::kernel(const Vec& z, const Vec& w) const {
  Complex ip = 0;
  for (int j = 0; j < n_; ++j) ip += z[j] * std::conj(w[j]);
  Complex base = 1.0 - ip;
  if (std::abs(base) < 1e-14)
    fail(ErrorKind::PoleError, "kernel pole: boundary contact <z,w> = 1");
  return norm_const_ * std::pow(base, -double(n_ + 1));
}

Complex BallOracle::kernel_dwbar(const Vec& z, const Vec& p, int j) const {
  Complex ip = 0;
  for (int k = 0; k < n_; ++k) ip += z[k] * std::conj(p[k]);
  Complex base = 1.0 - ip;
  return norm_const_ * double(n_ + 1) * z[j] * std::pow(base, -double(n_ + 2));
}

Eigen::MatrixXcd BallOracle::metric(const Vec& p) const {
  double d = 1.0 - p.squaredNorm();
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(n_, n_) / d;
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) g(a, b) += std::conj(p[a]) * p[b] / (d * d);
  return double(n_ + 1) * g;
}

BallOracle::Vec BallOracle::dlogK_offset(const Vec& p) const {
  double d = 1.0 - p.squaredNorm();
  return double(n_ + 1) / d * p;
}

BallOracle::Vec BallOracle::rep_coordinate(const Vec& p, const Vec& z) const {
  Complex ip = 0;
  for (int k = 0; k < n_; ++k) ip += z[k] * std::conj(p[k]);
  Vec b(n_);
  double d = 1.0 - p.squaredNorm();
  for (int j = 0; j < n_; ++j)
    b[j] = double(n_ + 1) * (z[j] / (1.0 - ip) - p[j] / d);
  // w_alpha = sum_j g^{jbar alpha}(p) b_j with [g^{jbar alpha}] the inverse of
  // [g_{alpha jbar}]
  Eigen::MatrixXcd A = metric(p);
  return A.transpose().colPivHouseholderQr().solve(b);
}

double BallOracle::quadratic_form(const Vec& p, const Vec& w) const {
  Eigen::MatrixXcd A = metric(p);
  Complex q = (w.transpose() * A * w.conjugate())(0, 0);
  return q.real();
}

double BallOracle::diastasis(const Vec& p, const Vec& z) const {
  double kzz = std::log(std::abs(kernel(z, z)));
  double kpp = std::log(std::abs(kernel(p, p)));
  double kzp = std::log(std::abs(kernel(z, p)));
  return kzz + kpp - 2.0 * kzp;
}

double BallOracle::slice_gaussian_curvature(Complex t) const {
  auto lam = [this](Complex s) {
    Vec v = Vec::Zero(n_);
    v[0] = s;
    return std::log(metric(v)(0, 0).real());
  };
  double h = 1.2e-4;
  double lap = (lam(t + h) + lam(t - h) + lam(t + Complex(0, h)) +
                lam(t - Complex(0, h)) - 4.0 * lam(t)) /
               (h * h);
  Vec v = Vec::Zero(n_);
  v[0] = t;
  double g = metric(v)(0, 0).real();
  return -lap / (2.0 * g);
}

}  // namespace bergmap
