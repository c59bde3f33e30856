#include "leglab/gallery.hpp"

#include "leglab/errors.hpp"
#include "leglab/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace leglab {

SpaceCurve cusp_curve(double t0, double t1, int samples) {
  if (!(t0 < t1)) throw ValidationError("cusp_curve needs t0 < t1");
  if (samples < 2) throw ValidationError("cusp_curve needs at least 2 samples");
  std::vector<Vec3> pts;
  pts.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = i + 1 == samples ? t1 : t0 + (t1 - t0) * i / (samples - 1);
    pts.emplace_back(t * t * t, t * t, -0.4 * std::pow(t, 5));
  }
  return SpaceCurve(std::move(pts), false);
}

SpaceCurve spiral_leaf(double r0, double r1, int samples) {
  if (!(r0 > 0.0)) throw DomainError("spiral_leaf needs r0 > 0");
  if (!(r0 < r1)) throw ValidationError("spiral_leaf needs r0 < r1");
  if (samples < 2) throw ValidationError("spiral_leaf needs at least 2 samples");
  std::vector<Vec3> pts;
  pts.reserve(samples);
  const double l0 = std::log(r0), l1 = std::log(r1);
  for (int i = 0; i < samples; ++i) {
    const double lr = i + 1 == samples ? l1 : l0 + (l1 - l0) * i / (samples - 1);
    const double r = std::exp(lr);
    const double phi = -2.0 * lr;
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), r * r);
  }
  return SpaceCurve(std::move(pts), false);
}

double default_s_rule(int n) { return 1.0 / ((n + 1.0) * (n + 1.0)); }

namespace {

struct LanceBuilder {
  const LanceThomasLevel& lv;
  std::vector<Vec2>& verts;
  std::vector<std::vector<LanceSquare>>& squares;

  // level is 1-based; squares at level n+1 are crossed by their diagonal.
  void build(const Vec2& corner, int level) {
    LanceSquare sq;
    sq.corner = corner;
    sq.first = verts.size();
    const double a = lv.a[level - 1];
    if (level == lv.n + 1) {
      verts.push_back(corner);
      verts.push_back(corner + Vec2(a, a));
    } else {
      const double sub = lv.a[level];
      const double off = a - sub;  // sub + cross width
      build(corner, level + 1);
      build(corner + Vec2(off, 0.0), level + 1);
      build(corner + Vec2(0.0, off), level + 1);
      build(corner + Vec2(off, off), level + 1);
    }
    sq.last = verts.size() - 1;
    squares[level - 1].push_back(sq);
  }
};

}  // namespace

LanceThomasLevel lance_thomas_projection(int n, const SRule& s_rule, double K) {
  if (n < 1) throw ValidationError("Lance-Thomas level must be >= 1");
  if (n > 10) throw ValidationError("Lance-Thomas level above 10 is not supported (4^n squares)");
  if (!s_rule) throw ValidationError("Lance-Thomas construction needs an s rule");
  if (!(K >= 0.0) || !std::isfinite(K)) throw ValidationError("K must be finite and non-negative");
  LanceThomasLevel lv;
  lv.n = n;
  lv.K = K;
  lv.a.push_back(1.0);
  lv.k.push_back(K);
  for (int j = 1; j <= n; ++j) {
    const double s = s_rule(j);
    if (!(s > 0.0 && s < 1.0)) throw ValidationError("s_" + std::to_string(j) + " must lie in (0, 1)");
    lv.s.push_back(s);
    lv.a.push_back((1.0 - s) * lv.a.back() / 2.0);
    lv.k.push_back(lv.k.back() / ((1.0 - s) * (1.0 - s)));
  }
  lv.squares.assign(n + 1, {});
  std::vector<Vec2> verts;
  verts.reserve(std::size_t{2} << (2 * n));
  LanceBuilder{lv, verts, lv.squares}.build(Vec2::Zero(), 1);
  // build() appends a square after its children; restore curve order per level.
  for (auto& level : lv.squares)
    std::sort(level.begin(), level.end(), [](const LanceSquare& x, const LanceSquare& y) { return x.first < y.first; });
  lv.curve = PlaneCurve(std::move(verts), false);
  return lv;
}

LanceThomasUnknot lance_thomas_unknot(int n, double K, const SRule& s_rule) {
  if (!(K > 0.5))
    throw ValidationError("return path collides with the unit square: needs K > 1/2, got " + std::to_string(K));
  LanceThomasUnknot u;
  u.level = lance_thomas_projection(n, s_rule, K);
  const auto& v = u.level.curve.vertices();
  const std::size_t m = v.size();
  const double jump = u.level.k.back() * u.level.a.back() * u.level.a.back();

  u.z.assign(m, 0.0);
  u.delta_z.assign(m, 0.0);
  for (std::size_t i = 1; i < m; ++i) {
    u.z[i] = u.z[i - 1] + (v[i].x() - v[i - 1].x()) * 0.5 * (v[i].y() + v[i - 1].y());
    // Even -> odd vertex is a diagonal; odd -> even is a cross segment.
    u.delta_z[i] = u.delta_z[i - 1] + (i % 2 == 1 ? jump : 0.0);
  }
  u.endpoint_z = u.z.back() + u.delta_z.back();

  const double a1 = u.level.a.front();
  u.c = std::min(0.05, (K - 0.5) / 2.0) * a1;
  u.h = u.endpoint_z / (a1 + u.c);

  std::vector<Vec3> pts;
  pts.reserve(m + 3);
  for (std::size_t i = 0; i < m; ++i) pts.emplace_back(v[i].x(), v[i].y(), u.z[i] + u.delta_z[i]);
  // Along the return path dz = y dx.
  double z = u.endpoint_z;
  pts.emplace_back(a1, u.h, z);
  z += (-u.c - a1) * u.h;
  pts.emplace_back(-u.c, u.h, z);
  pts.emplace_back(-u.c, 0.0, z);
  u.closure_defect = std::abs(z - pts.front().z());
  u.curve = SpaceCurve(std::move(pts), true);
  return u;
}

LanceThomasBounds lance_thomas_bounds(const LanceThomasUnknot& u) {
  LanceThomasBounds b;
  const auto& lv = u.level;
  const auto& v = lv.curve.vertices();
  const double a1 = lv.a.front();
  b.in_square_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < lv.squares.size(); ++j) {
    const double a = lv.a[j];
    for (const LanceSquare& sq : lv.squares[j]) {
      ++b.squares_checked;
      const Vec2& c0 = v[sq.first];
      const double z0 = u.z[sq.first];
      double lo = z0, hi = z0, lo_t = z0 + u.delta_z[sq.first], hi_t = lo_t;
      for (std::size_t i = sq.first; i <= sq.last; ++i) {
        ++b.corners_checked;
        const double f = u.z[i] - z0 - (v[i].x() - c0.x()) * c0.y();
        b.in_square_excess = std::max(b.in_square_excess, std::abs(f) - 0.5 * a * a);
        lo = std::min(lo, u.z[i]);
        hi = std::max(hi, u.z[i]);
        const double zt = u.z[i] + u.delta_z[i];
        lo_t = std::min(lo_t, zt);
        hi_t = std::max(hi_t, zt);
      }
      b.corner_pair_ratio = std::max(b.corner_pair_ratio, (hi - lo) / (6.0 * a1 * a));
      b.corner_pair_ratio_total = std::max(b.corner_pair_ratio_total, (hi_t - lo_t) / (6.0 * a1 * a));
    }
  }
  return b;
}

Vec3 log_spiral_contactomorphism(const Vec3& p) {
  const double rho = std::hypot(p.x(), p.y());
  if (!(rho > 0.0)) throw DomainError("log-spiral map is undefined on the z-axis");
  const double phi = std::atan2(p.y(), p.x()) + std::log(rho);
  return {rho * std::cos(phi), rho * std::sin(phi), p.z() - 0.5 * rho * rho};
}

Vec3 log_spiral_inverse(const Vec3& p) {
  const double rho = std::hypot(p.x(), p.y());
  if (!(rho > 0.0)) throw DomainError("log-spiral map is undefined on the z-axis");
  const double phi = std::atan2(p.y(), p.x()) - std::log(rho);
  return {rho * std::cos(phi), rho * std::sin(phi), p.z() + 0.5 * rho * rho};
}

Vec3 cylinder_contact_isotopy(const Vec3& p, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw ValidationError("isotopy time must lie in [0, 1]");
  const double rho = std::hypot(p.x(), p.y());
  if (!(rho <= 1.0)) throw DomainError("point lies outside the unit cylinder");
  if (rho >= t) {
    if (!(rho > 0.0)) throw DomainError("isotopy at t = 0 is undefined on the z-axis");
    const double phi = std::atan2(p.y(), p.x()) + std::log(rho);
    return {rho * std::cos(phi), rho * std::sin(phi), p.z() - 0.5 * rho * rho + 0.5 * t * t};
  }
  const double lt = std::log(t);
  const double c = std::cos(lt), s = std::sin(lt);
  return {c * p.x() - s * p.y(), s * p.x() + c * p.y(), p.z()};
}

namespace {

std::vector<Vec2> straight(const Vec2& p, const Vec2& q, int pieces) {
  std::vector<Vec2> out;
  out.reserve(pieces + 1);
  for (int i = 0; i <= pieces; ++i) out.push_back(i == pieces ? q : p + (q - p) * (double(i) / pieces));
  return out;
}

double path_integral(const ContactForm& form, const std::vector<Vec2>& pts) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) s += form.segment_integral(pts[i], pts[i + 1]);
  return s;
}

}  // namespace

LiftedMap::LiftedMap(ContactForm form, PlaneMap h, PlaneMap h_inv, const Vec2& base, double base_z,
                     const LiftMapOptions& opt)
    : form_(std::move(form)), h_(std::move(h)), h_inv_(std::move(h_inv)), base_(base), base_z_(base_z), opt_(opt) {
  if (!h_ || !h_inv_) throw ValidationError("lifted map needs the planar map and its inverse");
  if (opt_.subdivision < 1 || !(opt_.tol > 0.0) || !(opt_.test_radius > 0.0))
    throw ValidationError("lifted map options must be positive");

  std::mt19937_64 rng(opt_.seed);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI), rad(0.0, opt_.test_radius);
  auto random_point = [&] {
    const double r = rad(rng), a = ang(rng);
    return Vec2(base_ + r * Vec2(std::cos(a), std::sin(a)));
  };

  for (int k = 0; k < opt_.test_polygons; ++k) {
    const std::vector<Vec2> tri{random_point(), random_point(), random_point()};
    std::vector<Vec2> loop;
    for (int e = 0; e < 3; ++e) {
      auto seg = straight(tri[e], tri[(e + 1) % 3], opt_.subdivision);
      loop.insert(loop.end(), seg.begin() + (e == 0 ? 0 : 1), seg.end());
    }
    const double before = path_integral(form_, loop);
    std::vector<Vec2> img;
    for (const auto& p : loop) img.push_back(h_(p));
    const double after = path_integral(form_, img);
    loop_defect_ = std::max(loop_defect_, std::abs(before - after) / std::max(1.0, std::abs(before)));
  }
  if (loop_defect_ > opt_.tol)
    throw PreconditionError("planar map does not preserve the beta-integral of closed loops (defect " +
                            std::to_string(loop_defect_) + ")");

  for (int k = 0; k < opt_.path_pairs; ++k) {
    const Vec2 q = random_point(), mid = random_point();
    const double direct = height_change(straight(base_, q, opt_.subdivision));
    auto via = straight(base_, mid, opt_.subdivision);
    const auto second = straight(mid, q, opt_.subdivision);
    via.insert(via.end(), second.begin() + 1, second.end());
    const double bent = height_change(via);
    path_defect_ = std::max(path_defect_, std::abs(direct - bent) / std::max(1.0, std::abs(direct)));
  }
  if (path_defect_ > opt_.tol)
    throw PreconditionError("lifted height depends on the path (defect " + std::to_string(path_defect_) + ")");
}

double LiftedMap::height_change(const std::vector<Vec2>& path) const {
  std::vector<Vec2> img;
  img.reserve(path.size());
  for (const auto& p : path) img.push_back(h_(p));
  return path_integral(form_, path) - path_integral(form_, img);
}

Vec3 LiftedMap::operator()(const Vec3& q) const {
  const Vec2 xy(q.x(), q.y());
  const Vec2 img = h_(xy);
  const double dz = height_change(straight(base_, xy, opt_.subdivision));
  return {img.x(), img.y(), base_z_ + q.z() + dz};
}

Vec3 LiftedMap::inverse(const Vec3& q) const {
  const Vec2 xy = h_inv_(Vec2(q.x(), q.y()));
  const double dz = height_change(straight(base_, xy, opt_.subdivision));
  return {xy.x(), xy.y(), q.z() - base_z_ - dz};
}

SpaceCurve figure_eight_unknot(int samples) {
  if (samples < 8 || samples % 2 != 0) throw ValidationError("figure-eight needs an even sample count >= 8");
  std::vector<Vec2> pts;
  pts.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    // Half-step offset keeps the double point off the vertices.
    const double s = 2.0 * M_PI * (k + 0.5) / samples;
    pts.emplace_back(std::sin(s), std::sin(s) * std::cos(s));
  }
  const PlaneCurve diagram = PlaneCurve::immersed(std::move(pts), true);
  const LiftResult lr = lift(ContactForm::xdy(), diagram, 0.0, 1);
  if (!lr.curve.closed()) throw NumericalError("figure-eight lift did not close");
  return lr.curve;
}

BypassDemo bypass_demo(int arc_samples) {
  if (arc_samples < 3) throw ValidationError("bypass demo needs at least 3 arc samples");
  BypassDemo d;
  const double r = 0.5;
  std::vector<Vec2> pts;
  pts.emplace_back(-4.0, -2.0);  // A
  pts.emplace_back(4.0, 2.0);    // B
  d.base = 1;
  pts.emplace_back(4.0, r);
  d.attach.first = pts.size() - 1;
  // Right bump: half circle through (4.5, 0), top to bottom.
  for (int i = 1; i + 1 < arc_samples; ++i) {
    const double th = M_PI / 2.0 - M_PI * i / (arc_samples - 1);
    pts.emplace_back(4.0 + r * std::cos(th), r * std::sin(th));
  }
  pts.emplace_back(4.0, -r);
  d.attach.last = pts.size() - 1;
  pts.emplace_back(4.0, -2.0);  // C
  pts.emplace_back(-4.0, 2.0);  // D
  pts.emplace_back(-4.0, 1.0);
  d.correction_arc.first = pts.size() - 1;
  pts.emplace_back(-4.0, r);
  // Left bump, the mirror image, so the total beta-integral vanishes.
  for (int i = 1; i + 1 < arc_samples; ++i) {
    const double th = M_PI / 2.0 + M_PI * i / (arc_samples - 1);
    pts.emplace_back(-4.0 + r * std::cos(th), r * std::sin(th));
  }
  pts.emplace_back(-4.0, -r);
  pts.emplace_back(-4.0, -1.0);
  d.correction_arc.last = pts.size() - 1;
  d.curve = PlaneCurve::immersed(std::move(pts), true);
  d.chart = DiskChart(Vec2(4.0, 0.0), r, -M_PI / 2.0);
  d.square = CorrectionSquare(Vec2(-4.0, 0.0), Eigen::Matrix2d::Identity(), -0.6, 0.5);
  return d;
}

}  // namespace leglab
