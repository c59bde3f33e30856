#include "leglab/contact_form.hpp"

#include "leglab/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

namespace leglab {

namespace {

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 8> kGLx = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                        -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                        0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGLw = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                        0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                        0.2223810344533745, 0.1012285362903763};

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

int poly_degree(const std::vector<PolyTerm>& t) {
  int d = 0;
  for (const auto& m : t) {
    if (m.px < 0 || m.py < 0) throw ValidationError("polynomial exponents must be non-negative");
    d = std::max(d, m.px + m.py);
  }
  return d;
}

}  // namespace

Domain Domain::rect(double xmin, double xmax, double ymin, double ymax) {
  if (!(xmin < xmax && ymin < ymax)) throw ValidationError("rectangle domain needs xmin < xmax and ymin < ymax");
  Domain d;
  d.kind = Kind::Rect;
  d.xmin = xmin;
  d.xmax = xmax;
  d.ymin = ymin;
  d.ymax = ymax;
  return d;
}

Domain Domain::annulus(const Vec2& center, double r_inner, double r_outer) {
  if (!(r_inner >= 0.0 && r_inner < r_outer)) throw ValidationError("annulus domain needs 0 <= r_inner < r_outer");
  Domain d;
  d.kind = Kind::Annulus;
  d.center = center;
  d.r_inner = r_inner;
  d.r_outer = r_outer;
  return d;
}

bool Domain::contains(const Vec2& p) const {
  switch (kind) {
    case Kind::Plane:
      return p.allFinite();
    case Kind::Rect:
      return p.x() >= xmin && p.x() <= xmax && p.y() >= ymin && p.y() <= ymax;
    case Kind::Annulus: {
      const double r = (p - center).norm();
      return r >= r_inner && r <= r_outer;
    }
  }
  return false;
}

bool Domain::contains_segment(const Vec2& p, const Vec2& q) const {
  if (!contains(p) || !contains(q)) return false;
  if (kind == Kind::Annulus && r_inner > 0.0) return segment_distance<2>(p, q, center, center) >= r_inner;
  return true;
}

std::vector<Vec2> Domain::sample_points(int per_axis) const {
  std::vector<Vec2> pts;
  double x0 = -4, x1 = 4, y0 = -4, y1 = 4;
  if (kind == Kind::Rect) {
    x0 = xmin;
    x1 = xmax;
    y0 = ymin;
    y1 = ymax;
  }
  if (kind == Kind::Annulus) {
    for (int i = 0; i < per_axis; ++i) {
      const double r = r_inner + (r_outer - r_inner) * (i + 0.5) / per_axis;
      for (int j = 0; j < per_axis; ++j) {
        const double th = 2.0 * M_PI * j / per_axis;
        pts.push_back(center + r * Vec2(std::cos(th), std::sin(th)));
      }
    }
    return pts;
  }
  for (int i = 0; i < per_axis; ++i)
    for (int j = 0; j < per_axis; ++j)
      pts.emplace_back(x0 + (x1 - x0) * i / (per_axis - 1), y0 + (y1 - y0) * j / (per_axis - 1));
  return pts;
}

double eval_poly(const std::vector<PolyTerm>& terms, const Vec2& p) {
  double s = 0.0;
  for (const auto& t : terms) s += t.coef * ipow(p.x(), t.px) * ipow(p.y(), t.py);
  return s;
}

Vec2 eval_poly_gradient(const std::vector<PolyTerm>& terms, const Vec2& p) {
  Vec2 g = Vec2::Zero();
  for (const auto& t : terms) {
    if (t.px > 0) g.x() += t.coef * t.px * ipow(p.x(), t.px - 1) * ipow(p.y(), t.py);
    if (t.py > 0) g.y() += t.coef * t.py * ipow(p.x(), t.px) * ipow(p.y(), t.py - 1);
  }
  return g;
}

ContactForm::ContactForm(std::string kind, Scalar a, Scalar b, Gradient grad_a, Gradient grad_b, Domain domain,
                         int polynomial_degree)
    : kind_(std::move(kind)),
      a_(std::move(a)),
      b_(std::move(b)),
      da_(std::move(grad_a)),
      db_(std::move(grad_b)),
      domain_(domain),
      degree_(polynomial_degree) {
  if (!a_ || !b_ || !da_ || !db_) throw ValidationError("contact form needs a, b and their gradients");
  int sign = 0;
  for (const Vec2& p : domain_.sample_points(21)) {
    const double f = dbeta(p);
    const int s = f > 0.0 ? 1 : (f < 0.0 ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign))
      throw ValidationError("contact condition fails: d(beta) vanishes or changes sign on the domain");
    sign = s;
  }
  sign_ = sign;

  // Gradient evaluators must match central differences.
  std::mt19937_64 rng(0x5eed);
  Vec2 lo = domain_.sample_points(9)[0], hi = lo;
  for (const auto& p : domain_.sample_points(9)) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  std::uniform_real_distribution<double> ux(lo.x(), hi.x()), uy(lo.y(), hi.y());
  int checked = 0;
  for (int k = 0; k < 1000 && checked < 100; ++k) {
    const Vec2 p(ux(rng), uy(rng));
    const double h = 1e-5 * std::max(1.0, p.norm());
    const Vec2 ex(h, 0), ey(0, h);
    if (!domain_.contains(p - ex) || !domain_.contains(p + ex) || !domain_.contains(p - ey) ||
        !domain_.contains(p + ey))
      continue;
    ++checked;
    const Vec2 fa((a_(p + ex) - a_(p - ex)) / (2 * h), (a_(p + ey) - a_(p - ey)) / (2 * h));
    const Vec2 fb((b_(p + ex) - b_(p - ex)) / (2 * h), (b_(p + ey) - b_(p - ey)) / (2 * h));
    const Vec2 ga = da_(p), gb = db_(p);
    const double scale = std::max({1.0, ga.norm(), gb.norm()});
    if ((fa - ga).norm() > 1e-6 * scale || (fb - gb).norm() > 1e-6 * scale)
      throw ValidationError("contact form gradient disagrees with finite differences");
  }
}

ContactForm ContactForm::xdy(const Domain& d) {
  ContactForm f(
      "xdy", [](const Vec2&) { return 0.0; }, [](const Vec2& p) { return p.x(); },
      [](const Vec2&) { return Vec2(0, 0); }, [](const Vec2&) { return Vec2(1, 0); }, d, 1);
  f.b_terms_ = {{1.0, 1, 0}};
  return f;
}

ContactForm ContactForm::minus_ydx(const Domain& d) {
  ContactForm f(
      "minus_ydx", [](const Vec2& p) { return -p.y(); }, [](const Vec2&) { return 0.0; },
      [](const Vec2&) { return Vec2(0, -1); }, [](const Vec2&) { return Vec2(0, 0); }, d, 1);
  f.a_terms_ = {{-1.0, 0, 1}};
  return f;
}

ContactForm ContactForm::rot(const Domain& d) {
  ContactForm f(
      "rot", [](const Vec2& p) { return -p.y(); }, [](const Vec2& p) { return p.x(); },
      [](const Vec2&) { return Vec2(0, -1); }, [](const Vec2&) { return Vec2(1, 0); }, d, 1);
  f.a_terms_ = {{-1.0, 0, 1}};
  f.b_terms_ = {{1.0, 1, 0}};
  return f;
}

ContactForm ContactForm::poly(std::vector<PolyTerm> a_terms, std::vector<PolyTerm> b_terms, const Domain& d) {
  const int deg = std::max(poly_degree(a_terms), poly_degree(b_terms));
  ContactForm f(
      "poly", [a_terms](const Vec2& p) { return eval_poly(a_terms, p); },
      [b_terms](const Vec2& p) { return eval_poly(b_terms, p); },
      [a_terms](const Vec2& p) { return eval_poly_gradient(a_terms, p); },
      [b_terms](const Vec2& p) { return eval_poly_gradient(b_terms, p); }, d, deg);
  f.a_terms_ = std::move(a_terms);
  f.b_terms_ = std::move(b_terms);
  return f;
}

double ContactForm::segment_integral(const Vec2& p, const Vec2& q) const {
  if (!domain_.contains_segment(p, q)) throw DomainError("segment leaves the contact form domain");
  const Vec2 d = q - p;
  if (d.x() == 0.0 && d.y() == 0.0) return 0.0;
  auto gl = [&](double t0, double t1) {
    const double half = 0.5 * (t1 - t0), mid = 0.5 * (t1 + t0);
    double s = 0.0;
    for (int k = 0; k < 8; ++k) {
      const Vec2 x = p + (mid + half * kGLx[k]) * d;
      s += kGLw[k] * (a_(x) * d.x() + b_(x) * d.y());
    }
    return s * half;
  };
  // Gauss-Legendre with 8 nodes integrates degree <= 15 exactly.
  if (degree_ >= 0 && degree_ <= 15) return gl(0.0, 1.0);

  const double floor_scale =
      1e-12 * d.norm() * std::max({1.0, beta(p).norm(), beta(q).norm(), beta(0.5 * (p + q)).norm()});
  std::function<double(double, double, double, int)> adapt = [&](double t0, double t1, double whole, int depth) {
    const double m = 0.5 * (t0 + t1);
    const double left = gl(t0, m), right = gl(m, t1);
    const double both = left + right;
    if (depth >= 30 || std::abs(both - whole) <= std::max(1e-12 * std::abs(both), floor_scale * (t1 - t0)))
      return both;
    return adapt(t0, m, left, depth + 1) + adapt(m, t1, right, depth + 1);
  };
  return adapt(0.0, 1.0, gl(0.0, 1.0), 0);
}

BetaIntegral line_integral_beta(const ContactForm& form, const PlaneCurve& curve) {
  BetaIntegral out;
  const std::size_t m = curve.edge_count();
  out.cumulative.assign(m + 1, 0.0);
  for (std::size_t e = 0; e < m; ++e)
    out.cumulative[e + 1] = out.cumulative[e] + form.segment_integral(curve.edge_start(e), curve.edge_end(e));
  out.total = out.cumulative[m];
  return out;
}

std::vector<double> edge_alpha(const ContactForm& form, const SpaceCurve& curve) {
  const std::size_t m = curve.edge_count();
  std::vector<double> out(m);
  for (std::size_t e = 0; e < m; ++e) {
    const Vec3& p = curve.edge_start(e);
    const Vec3& q = curve.edge_end(e);
    out[e] = (q.z() - p.z()) + form.segment_integral(p.head<2>(), q.head<2>());
  }
  return out;
}

std::vector<double> line_integral_alpha(const ContactForm& form, const SpaceCurve& curve) {
  const std::vector<double> per = edge_alpha(form, curve);
  std::vector<double> cum(per.size() + 1, 0.0);
  for (std::size_t e = 0; e < per.size(); ++e) cum[e + 1] = cum[e] + per[e];
  return cum;
}

namespace {

template <int D>
double sup_alpha_like(const ContactForm& form, const Polyline<D>& curve, bool with_dz) {
  double best = 0.0;
  auto probe = [&](const Vec2& x) {
    const Vec2 bt = form.beta(x);
    const double n = with_dz ? std::sqrt(bt.squaredNorm() + 1.0) : bt.norm();
    best = std::max(best, n);
  };
  for (std::size_t e = 0; e < curve.edge_count(); ++e) {
    const Vec2 p = curve.edge_start(e).template head<2>();
    const Vec2 q = curve.edge_end(e).template head<2>();
    probe(p);
    for (double xi : kGLx) probe(p + 0.5 * (1.0 + xi) * (q - p));
  }
  probe(curve.vertices().back().template head<2>());
  return best;
}

}  // namespace

double sup_beta_norm(const ContactForm& form, const PlaneCurve& curve) {
  return sup_alpha_like(form, curve, false);
}

std::vector<AngleRow> angle_profile(const ContactForm& form, const SpaceCurve& curve,
                                    const std::vector<double>& radii) {
  if (radii.empty()) throw ValidationError("angle profile needs at least one radius");
  const auto& v = curve.vertices();
  const std::size_t n = v.size();
  std::vector<Vec3> normal(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 bt = form.beta(v[i].head<2>());
    normal[i] = Vec3(bt.x(), bt.y(), 1.0).normalized();
  }
  std::vector<AngleRow> rows;
  std::vector<Vec3> ball;
  for (double r : radii) {
    if (!(r > 0.0)) throw ValidationError("angle profile radii must be positive");
    AngleRow row;
    row.radius = r;
    for (std::size_t p = 0; p < n; ++p) {
      // Each edge clipped to the ball contributes its two end points.
      ball.clear();
      for (std::size_t e = 0; e < curve.edge_count(); ++e) {
        const Vec3& a = curve.edge_start(e);
        const Vec3 d = curve.edge_end(e) - a;
        const Vec3 w = a - v[p];
        const double qa = d.squaredNorm(), qb = w.dot(d), qc = w.squaredNorm() - r * r;
        const double disc = qb * qb - qa * qc;
        if (disc < 0.0) continue;
        const double sq = std::sqrt(disc);
        const double t0 = std::max(0.0, (-qb - sq) / qa), t1 = std::min(1.0, (-qb + sq) / qa);
        if (t0 > t1) continue;
        // Consecutive edges share an end point inside the ball; keep one copy.
        const Vec3 q0 = a + t0 * d;
        if (ball.empty() || ball.back() != q0) ball.push_back(q0);
        ball.push_back(a + t1 * d);
      }
      for (std::size_t i = 0; i < ball.size(); ++i) {
        for (std::size_t j = i + 1; j < ball.size(); ++j) {
          const Vec3 c = ball[j] - ball[i];
          const double cn = c.norm();
          if (!(cn > 0.0)) continue;
          const double s = std::min(1.0, std::abs(c.dot(normal[p])) / cn);
          const double ang = std::asin(s);
          if (ang > row.epsilon || row.vertex == npos) {
            row.epsilon = ang;
            row.vertex = p;
          }
        }
      }
    }
    rows.push_back(row);
  }
  return rows;
}

LegendrianVerdict legendrian_residual(const ContactForm& form, const SpaceCurve& curve, double tolerance,
                                      const std::vector<double>& radii) {
  if (!(tolerance > 0.0)) throw ValidationError("Legendrian tolerance must be positive");
  LegendrianVerdict out;
  const std::vector<double> cum = line_integral_alpha(form, curve);
  const auto [mn, mx] = std::minmax_element(cum.begin(), cum.end());
  out.residual = *mx - *mn;
  out.arc_length = arc_length(curve);
  out.sup_alpha = sup_alpha_like(form, curve, true);
  out.relative_residual = out.residual / (out.arc_length * out.sup_alpha);
  out.tolerance = tolerance;
  out.legendrian = out.relative_residual <= tolerance;
  if (!radii.empty()) out.angle_profile = angle_profile(form, curve, radii);
  return out;
}

ScalarField3 polynomial_field(std::vector<PolyTerm3> terms) {
  for (const auto& t : terms)
    if (t.px < 0 || t.py < 0 || t.pz < 0) throw ValidationError("polynomial exponents must be non-negative");
  ScalarField3 f;
  f.value = [terms](const Vec3& p) {
    double s = 0.0;
    for (const auto& t : terms) s += t.coef * ipow(p.x(), t.px) * ipow(p.y(), t.py) * ipow(p.z(), t.pz);
    return s;
  };
  f.gradient = [terms](const Vec3& p) {
    Vec3 g = Vec3::Zero();
    for (const auto& t : terms) {
      const double x = ipow(p.x(), t.px), y = ipow(p.y(), t.py), z = ipow(p.z(), t.pz);
      if (t.px > 0) g.x() += t.coef * t.px * ipow(p.x(), t.px - 1) * y * z;
      if (t.py > 0) g.y() += t.coef * t.py * x * ipow(p.y(), t.py - 1) * z;
      if (t.pz > 0) g.z() += t.coef * t.pz * x * y * ipow(p.z(), t.pz - 1);
    }
    return g;
  };
  return f;
}

VectorField3 hamiltonian_field(const ContactForm& form, const ScalarField3& H) {
  if (!H.value || !H.gradient) throw ValidationError("Hamiltonian needs a value and a gradient evaluator");
  return [form, H](const Vec3& p) -> Vec3 {
    const Vec2 xy = p.head<2>();
    const double a = form.a(xy), b = form.b(xy);
    const double f = form.dbeta(xy);
    const Vec3 g = H.gradient(p);
    const double hx = g.x(), hy = g.y(), hz = g.z();
    Vec3 x((hz * b - hy) / f, (hx - hz * a) / f, (a * hy - b * hx) / f);
    x.z() += H.value(p);
    return x;
  };
}

template <int D>
std::vector<Eigen::Matrix<double, D, 1>> flow(
    const std::function<Eigen::Matrix<double, D, 1>(const Eigen::Matrix<double, D, 1>&)>& field,
    std::vector<Eigen::Matrix<double, D, 1>> points, double t, double step,
    const std::function<bool(const Eigen::Matrix<double, D, 1>&)>& inside) {
  using P = Eigen::Matrix<double, D, 1>;
  if (!(step > 0.0)) throw ValidationError("flow step must be positive");
  if (!std::isfinite(t)) throw ValidationError("flow time must be finite");
  if (t == 0.0) return points;
  const long n = std::max(1L, static_cast<long>(std::ceil(std::abs(t) / step - 1e-12)));
  const double h = t / static_cast<double>(n);
  for (auto& x : points) {
    for (long k = 0; k < n; ++k) {
      const P k1 = field(x);
      const P k2 = field(x + 0.5 * h * k1);
      const P k3 = field(x + 0.5 * h * k2);
      const P k4 = field(x + h * k3);
      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (inside && !inside(x)) throw DomainError("flow trajectory left the domain");
    }
  }
  return points;
}

template std::vector<Vec2> flow<2>(const std::function<Vec2(const Vec2&)>&, std::vector<Vec2>, double, double,
                                   const std::function<bool(const Vec2&)>&);
template std::vector<Vec3> flow<3>(const std::function<Vec3(const Vec3&)>&, std::vector<Vec3>, double, double,
                                   const std::function<bool(const Vec3&)>&);

}  // namespace leglab
