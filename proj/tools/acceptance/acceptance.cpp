#include "acceptance.hpp"

#include "leglab/contact_form.hpp"
#include "leglab/errors.hpp"
#include "leglab/gallery.hpp"
#include "leglab/geometry.hpp"
#include "leglab/invariants.hpp"
#include "leglab/lifting.hpp"
#include "leglab/moves.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <sstream>
#include <string>

namespace leglab::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Check cmp(std::string name, double value, double bound, const std::string& rel) {
  Check c;
  c.name = std::move(name);
  c.value = value;
  c.bound = bound;
  c.relation = rel;
  if (rel == "<=") c.pass = value <= bound;
  else if (rel == "<") c.pass = value < bound;
  else if (rel == ">=") c.pass = value >= bound;
  else if (rel == "==") c.pass = value == bound;
  return c;
}

Check timing(double seconds, double limit) {
  Check c = cmp("runtime_s", seconds, limit, "<");
  c.timing = true;
  return c;
}

using Rng = std::mt19937_64;

double uni(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
int uni_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Embedded polyline leaving p with increasing vertex distance from p, inside a cone.
std::vector<Vec2> radial_arc(Rng& rng, const Vec2& p, double theta, double half_width, int m) {
  for (;;) {
    std::vector<Vec2> pts{p};
    double r = 0.0;
    for (int i = 0; i < m; ++i) {
      r += uni(rng, 0.2, 1.0);
      const double a = theta + uni(rng, -half_width, half_width);
      pts.push_back(p + r * Vec2(std::cos(a), std::sin(a)));
    }
    if (PlaneCurve::immersed(pts, false).embedded()) return pts;
  }
}

// Simple closed polygon: jittered angles, random radii.
std::vector<Vec2> star_polygon(Rng& rng, const Vec2& c, int k, double rmin, double rmax) {
  std::vector<Vec2> pts;
  const double phase = uni(rng, 0.0, 2.0 * M_PI);
  for (int i = 0; i < k; ++i) {
    const double a = phase + 2.0 * M_PI * (i + uni(rng, -0.3, 0.3)) / k;
    pts.push_back(c + uni(rng, rmin, rmax) * Vec2(std::cos(a), std::sin(a)));
  }
  return pts;
}

double polyline_beta(const ContactForm& form, const std::vector<Vec2>& pts, bool closed) {
  double s = 0.0;
  const std::size_t m = closed ? pts.size() : pts.size() - 1;
  for (std::size_t i = 0; i < m; ++i) s += form.segment_integral(pts[i], pts[(i + 1) % pts.size()]);
  return s;
}

// Signed area by fan triangulation from the first vertex.
double fan_area(const std::vector<Vec2>& pts) {
  double a = 0.0;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) a += 0.5 * cross2(pts[i] - pts[0], pts[i + 1] - pts[0]);
  return a;
}

ContactForm random_form(Rng& rng, bool linear_only) {
  const int k = uni_int(rng, 0, linear_only ? 2 : 3);
  if (k == 0) return ContactForm::xdy();
  if (k == 1) return ContactForm::rot();
  if (k == 2) return ContactForm::minus_ydx();
  // a = 0.05 y^2, b = x + 0.1 x^3: d(beta) = 1 + 0.3 x^2 - 0.1 y >= 0.5 on the domain.
  return ContactForm::poly({{0.05, 0, 2}}, {{1.0, 1, 0}, {0.1, 3, 0}}, Domain::rect(-5, 5, -5, 5));
}

CriterionResult c1_lance_thomas_tb(double s) {
  CriterionResult r;
  double closure = 0.0, resid = 0.0, t4 = 0.0;
  int tb_abs = 0;
  const ContactForm form = ContactForm::minus_ydx();
  for (int n : {2, 3, 4}) {
    const auto t0 = Clock::now();
    const LanceThomasUnknot u = lance_thomas_unknot(n, 1.0);
    const LegendrianVerdict v = legendrian_residual(form, u.curve);
    TbOptions opt;
    opt.check_legendrian = false;
    const TbResult tb = thurston_bennequin(form, u.curve, opt);
    if (n == 4) t4 = since(t0);
    closure = std::max({closure, u.closure_defect, std::abs(u.endpoint_z - 1.5)});
    resid = std::max(resid, v.relative_residual);
    tb_abs = std::max(tb_abs, std::abs(tb.tb));
  }
  r.checks.push_back(cmp("closure_defect", closure, 1e-12 * s, "<="));
  r.checks.push_back(cmp("relative_residual", resid, 1e-10 * s, "<="));
  r.checks.push_back(cmp("max_abs_tb", tb_abs, 0, "=="));
  r.checks.push_back(timing(t4, 10.0));
  return r;
}

CriterionResult c2_fractal_bounds(double s) {
  CriterionResult r;
  const auto t0 = Clock::now();
  double excess = -1.0, ratio = 0.0;
  std::size_t squares = 0;
  for (int n = 1; n <= 5; ++n) {
    const LanceThomasBounds b = lance_thomas_bounds(lance_thomas_unknot(n, 1.0));
    excess = std::max(excess, b.in_square_excess);
    ratio = std::max(ratio, b.corner_pair_ratio_total);
    squares += b.squares_checked;
  }
  r.checks.push_back(cmp("in_square_excess", excess, 1e-12 * s, "<="));
  r.checks.push_back(cmp("corner_pair_over_6a1an", ratio, 1.0, "<="));
  r.checks.push_back(cmp("squares_checked", static_cast<double>(squares), 1.0, ">="));
  r.checks.push_back(timing(since(t0), 30.0));
  return r;
}

CriterionResult c3_bypass_metrics(double s) {
  CriterionResult r;
  const auto t0 = Clock::now();
  const int samples = 257, grid = 33;
  auto arc = [&](double t) {
    std::vector<Vec2> pts;
    for (int k = 0; k < samples; ++k) {
      const double u = k + 1 == samples ? 1.0 : -1.0 + 2.0 * k / (samples - 1);
      const auto w = mobius_arc(u, t);
      pts.emplace_back(w.real(), w.imag());
    }
    return PlaneCurve(std::move(pts), false);
  };
  const PlaneCurve arc0 = arc(0.0);
  double ca = 0.0, bl = 0.0;
  for (int j = 0; j < grid; ++j) {
    const double t = j + 1 == grid ? 1.0 : double(j) / (grid - 1);
    const PlaneCurve at = arc(t);
    ca = std::max(ca, chord_arc_constant(at).constant);
    bl = std::max(bl, bilipschitz_constant(arc0, at));
  }
  r.checks.push_back(cmp("chord_arc", ca, M_PI / 2.0 + 1e-6 * s, "<="));
  r.checks.push_back(cmp("bilipschitz", bl, M_PI + 1e-6 * s, "<="));
  r.checks.push_back(timing(since(t0), 5.0));
  return r;
}

CriterionResult c4_lemma_suite(double s) {
  CriterionResult r;
  const auto t0 = Clock::now();
  const double slack = 1e-9 * s;
  const int instances = 100;
  Rng rng(0xacce4);

  int concat_bad = 0;
  for (int i = 0; i < instances; ++i) {
    const double th1 = uni(rng, 0.0, 2.0 * M_PI);
    const double th2 = th1 + uni(rng, 70.0, 290.0) * M_PI / 180.0;
    const double hw = 30.0 * M_PI / 180.0;
    const auto l1 = radial_arc(rng, Vec2::Zero(), th1, hw, uni_int(rng, 2, 8));
    const auto l2 = radial_arc(rng, Vec2::Zero(), th2, hw, uni_int(rng, 2, 8));
    const double c1 = chord_arc_constant(PlaneCurve(l1, false)).constant;
    const double c2 = chord_arc_constant(PlaneCurve(l2, false)).constant;
    const auto s1 = cumulative_length(PlaneCurve(l1, false));
    const auto s2 = cumulative_length(PlaneCurve(l2, false));
    for (std::size_t a = 1; a < l1.size(); ++a)
      for (std::size_t b = 1; b < l2.size(); ++b) {
        const double alpha = angle_between(l1[a], l2[b]);
        const double len = s1[a] + s2[b];
        const double bound = (c1 + c2) / std::sin(alpha / 2.0) * (l1[a] - l2[b]).norm();
        if (len > bound * (1.0 + slack)) ++concat_bad;
      }
  }

  int semi_bad = 0;
  for (int i = 0; i < instances; ++i) {
    PlaneCurve c;
    if (i % 2 == 0) {
      c = PlaneCurve(radial_arc(rng, Vec2::Zero(), uni(rng, 0, 2 * M_PI), uni(rng, 0.1, 1.4), uni_int(rng, 3, 10)),
                     false);
    } else {
      c = PlaneCurve(star_polygon(rng, Vec2::Zero(), uni_int(rng, 3, 12), 0.2, 1.0), true);
    }
    const double C = chord_arc_constant(c).constant;
    const CornerAngle ang = min_corner_angle(c);
    if (ang.vertex != npos && ang.angle < 2.0 * std::asin(1.0 / C) - slack) ++semi_bad;
  }

  int proj_bad = 0;
  for (int i = 0; i < instances; ++i) {
    const ContactForm form = random_form(rng, false);
    const Vec2 p(uni(rng, -1, 1), uni(rng, -1, 1));
    const auto pts = radial_arc(rng, p, uni(rng, 0, 2 * M_PI), uni(rng, 0.2, 1.2), uni_int(rng, 2, 5));
    std::vector<Vec2> scaled;
    for (const auto& q : pts) scaled.push_back(p + 0.4 * (q - p));
    const LiftResult lr = lift(form, PlaneCurve(scaled, false), uni(rng, -1, 1), 4);
    const ProjectionBoundsReport rep = projection_bounds_check(form, lr.curve);
    if (rep.worst_margin < -slack) ++proj_bad;
  }

  int whitney_bad = 0;
  for (int i = 0; i < instances; ++i) {
    const ContactForm form = random_form(rng, true);
    const bool closed = i % 2 == 1;
    const auto base = closed ? star_polygon(rng, Vec2(uni(rng, -1, 1), uni(rng, -1, 1)), uni_int(rng, 4, 10), 0.3, 1.2)
                             : radial_arc(rng, Vec2(uni(rng, -1, 1), uni(rng, -1, 1)), uni(rng, 0, 2 * M_PI), 0.6,
                                          uni_int(rng, 3, 8));
    const PlaneCurve L(base, closed);
    struct Wave {
      double eps, a1, b1, c1, a2, b2, c2;
      Vec2 operator()(const Vec2& p) const {
        return p + eps * Vec2(std::sin(a1 * p.x() + b1 * p.y() + c1), std::cos(a2 * p.x() + b2 * p.y() + c2));
      }
    };
    auto wave = [&] {
      return Wave{uni(rng, 0.005, 0.1), uni(rng, -2, 2), uni(rng, -2, 2), uni(rng, 0, 6),
                  uni(rng, -2, 2),      uni(rng, -2, 2), uni(rng, 0, 6)};
    };
    const Wave f1 = wave(), f2 = wave();
    std::vector<Vec2> p1, p2;
    for (const auto& q : base) {
      p1.push_back(f1(q));
      p2.push_back(f2(q));
    }
    double lip = 0.0, dist = 0.0, sup_beta = 0.0;
    for (std::size_t a = 0; a < base.size(); ++a) {
      dist = std::max(dist, (p1[a] - p2[a]).norm());
      sup_beta = std::max({sup_beta, form.beta(p1[a]).norm(), form.beta(p2[a]).norm()});
      for (std::size_t b = a + 1; b < base.size(); ++b) {
        const double d = (base[a] - base[b]).norm();
        lip = std::max({lip, (p1[a] - p1[b]).norm() / d, (p2[a] - p2[b]).norm() / d});
      }
    }
    const double C = std::max(lip, chord_arc_constant(L).constant);
    const double lhs = std::abs(polyline_beta(form, p1, closed) - polyline_beta(form, p2, closed));
    const double rhs = dist * (C * arc_length(L) + 2.0) * std::max(sup_beta, std::abs(form.dbeta(base[0])));
    if (lhs > rhs * (1.0 + slack) + slack) ++whitney_bad;
  }

  r.checks.push_back(cmp("concatenation_violations", concat_bad, 0, "=="));
  r.checks.push_back(cmp("semitangent_violations", semi_bad, 0, "=="));
  r.checks.push_back(cmp("projection_violations", proj_bad, 0, "=="));
  r.checks.push_back(cmp("whitney_violations", whitney_bad, 0, "=="));
  r.checks.push_back(timing(since(t0), 60.0));
  return r;
}

CriterionResult c5_lift_oracle(double s) {
  CriterionResult r;
  const auto t0 = Clock::now();
  Rng rng(0x11f75);
  const ContactForm form = ContactForm::xdy();
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    auto pts = star_polygon(rng, Vec2(uni(rng, -2, 2), uni(rng, -2, 2)), uni_int(rng, 3, 20), 0.3, 2.0);
    if (i % 2 == 1) std::reverse(pts.begin(), pts.end());
    const LiftResult lr = lift(form, PlaneCurve(pts, true), 0.0);
    worst = std::max(worst, std::abs(lr.closure_defect + fan_area(pts)));
  }
  r.checks.push_back(cmp("closure_vs_area", worst, 1e-9 * s, "<="));
  r.checks.push_back(timing(since(t0), 5.0));
  return r;
}

CriterionResult c6_correction(double s) {
  CriterionResult r;
  const auto t0 = Clock::now();
  Rng rng(0xc0cc);
  double worst = 0.0;
  int non_monotone = 0;
  for (int i = 0; i < 20; ++i) {
    const ContactForm form = random_form(rng, false);
    const double th = uni(rng, 0, 2 * M_PI);
    Eigen::Matrix2d R;
    R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    Eigen::Matrix2d S;
    S << uni(rng, 0.3, 1.0), uni(rng, -0.2, 0.2), 0.0, uni(rng, 0.3, 1.0);
    const Vec2 c(uni(rng, -1, 1), uni(rng, -1, 1));
    const double um = uni(rng, -0.8, -0.3), up = uni(rng, 0.0, 0.7);
    const CorrectionSquare sq(c, R * S, um, up);

    const int m = uni_int(rng, 4, 16);
    std::vector<Vec2> arc;
    for (int k = 0; k <= m; ++k) {
      const double v = k == m ? 1.0 : -1.0 + 2.0 * k / m;
      arc.push_back(sq.to_plane(Vec2(uni(rng, um, up), v)));
    }
    const int sign = i % 2 == 0 ? 1 : -1;
    const PlaneCurve side = square_side_path(sq, arc.front(), arc.back(), sign);
    const std::vector<Vec2> back(side.vertices().rbegin(), side.vertices().rend());
    const PlaneCurve closing = PlaneCurve::immersed(back, false);
    const PlaneCurve moved = PlaneCurve::immersed(arc, false);
    const double initial = polyline_beta(form, arc, false) + polyline_beta(form, back, false);
    // Interior vertices can at most reach the side; the end points are fixed.
    std::vector<Vec2> pushed{arc.front()};
    for (int k = 1; k < m; ++k) pushed.push_back(sq.to_plane(Vec2(sign, sq.to_square(arc[k]).y())));
    pushed.push_back(arc.back());
    const double limit = polyline_beta(form, pushed, false) + polyline_beta(form, back, false);
    const double target = initial + uni(rng, 0.1, 0.5) * (limit - initial);

    CorrectionOptions opt;
    opt.tol = 1e-10;  // solver tolerance below the checked bound, so rounding cannot flip the verdict
    const CorrectionResult res = solve_correction(sq, form, moved, closing, target, opt);
    const double achieved = polyline_beta(form, res.arc.vertices(), false) + polyline_beta(form, back, false);
    worst = std::max(worst, std::abs(achieved - target));

    // Area enclosed by the transported arc and the closing side shrinks along the flow.
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 8; ++k) {
      const double t = res.t * k / 8.0;
      PlaneCurve moved_t;
      transported_loop_integral(sq, form, res.sign, moved, closing, t,
                                std::max(1L, static_cast<long>(std::ceil(t / 1e-2))), &moved_t);
      std::vector<Vec2> loop = moved_t.vertices();
      loop.insert(loop.end(), back.begin() + 1, back.end() - 1);
      const double area = std::abs(fan_area(loop));
      if (!(area < prev)) ++non_monotone;
      prev = area;
    }
  }
  r.checks.push_back(cmp("abs_achieved_minus_target", worst, 1e-9 * s, "<="));
  r.checks.push_back(cmp("area_monotonicity_violations", non_monotone, 0, "=="));
  r.checks.push_back(timing(since(t0), 60.0));
  return r;
}

std::vector<SpaceCurve> legendrian_test_curves(Rng& rng, int count) {
  const ContactForm form = ContactForm::rot();
  std::vector<SpaceCurve> out;
  for (int i = 0; i < count; ++i) {
    std::vector<Vec2> pts;
    double a = uni(rng, 0, 2 * M_PI);
    const int m = uni_int(rng, 3, 7);
    for (int k = 0; k < m; ++k) {
      pts.push_back(uni(rng, 0.25, 0.95) * Vec2(std::cos(a), std::sin(a)));
      a += uni(rng, -1.0, 1.0);
    }
    const PlaneCurve fine = resample(PlaneCurve::immersed(pts, false), 1e-3);
    out.push_back(lift(form, fine, uni(rng, -0.5, 0.5), 1).curve);
  }
  return out;
}

CriterionResult c7_contactomorphisms(double s) {
  CriterionResult r;
  const auto t0 = Clock::now();
  Rng rng(0x7c0);
  const ContactForm form = ContactForm::rot();
  const auto curves = legendrian_test_curves(rng, 10);
  double input = 0.0, image = 0.0;
  auto mapped = [](const SpaceCurve& c, auto&& f) {
    std::vector<Vec3> pts;
    for (const auto& p : c.vertices()) pts.push_back(f(p));
    return SpaceCurve::immersed(std::move(pts), c.closed());
  };
  for (const auto& c : curves) {
    input = std::max(input, legendrian_residual(form, c).relative_residual);
    image = std::max(image, legendrian_residual(form, mapped(c, log_spiral_contactomorphism)).relative_residual);
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const auto img = mapped(c, [t](const Vec3& p) { return cylinder_contact_isotopy(p, t); });
      image = std::max(image, legendrian_residual(form, img).relative_residual);
    }
  }
  double jump = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double a = uni(rng, 0, 2 * M_PI), rr = uni(rng, 0.01, 0.99);
    const Vec3 q(rr * std::cos(a), rr * std::sin(a), uni(rng, -1, 1));
    const double rho = std::hypot(q.x(), q.y());
    const Vec3 outer = cylinder_contact_isotopy(q, rho);
    const Vec3 inner = cylinder_contact_isotopy(q, std::nextafter(rho, 2.0));
    jump = std::max(jump, (outer - inner).norm());
  }
  r.checks.push_back(cmp("input_residual", input, 1e-10 * s, "<="));
  r.checks.push_back(cmp("image_relative_residual", image, 1e-6 * s, "<="));
  r.checks.push_back(cmp("branch_jump", jump, 1e-15 * s, "<="));
  r.checks.push_back(timing(since(t0), 10.0));
  return r;
}

CriterionResult c8_invariants(double) {
  CriterionResult r;
  const auto t0 = Clock::now();
  std::vector<Vec3> a, b;
  for (int k = 0; k < 64; ++k) {
    const double t = 2.0 * M_PI * k / 64;
    a.emplace_back(std::cos(t), std::sin(t), 0.0);
    b.emplace_back(1.0 + std::cos(t), 0.0, std::sin(t));
  }
  const LinkingResult lk = linking(SpaceCurve(a, true), SpaceCurve(b, true));
  r.checks.push_back(cmp("hopf_abs_lk_crossings", std::abs(lk.value), 1, "=="));
  r.checks.push_back(cmp("hopf_abs_lk_gauss_rounded", std::abs(std::lround(lk.gauss)), 1, "=="));
  r.checks.push_back(cmp("hopf_method_gap", std::abs(lk.gauss - lk.value), 0.5, "<"));

  const BypassDemo d = bypass_demo();
  const IsotopyTrace<2> tr = bypass_isotopy(d.chart, d.curve, d.attach, {0.0, 0.5, 1.0}, &d.form);
  IsotopyTrace<2> corrected;
  for (std::size_t f = 0; f < tr.frames.size(); ++f) {
    corrected.times.push_back(tr.times[f]);
    corrected.frames.push_back(correct_curve(d.square, d.form, tr.frames[f], d.correction_arc, 0.0).curve);
    corrected.reports.emplace_back();
  }
  const IsotopyLift lifted = legendrian_isotopy_lift(d.form, corrected, d.base, 0.0);
  int tb0 = 0, drift = 0;
  for (std::size_t f = 0; f < lifted.trace.frames.size(); ++f) {
    const int tb = thurston_bennequin(d.form, lifted.trace.frames[f]).tb;
    if (f == 0) tb0 = tb;
    drift = std::max(drift, std::abs(tb - tb0));
  }
  r.checks.push_back(cmp("bypass_tb_drift", drift, 0, "=="));
  r.checks.push_back(cmp("bypass_tb_t0", tb0, -1, "=="));
  r.checks.push_back(timing(since(t0), 10.0));
  return r;
}

CriterionResult c9_negative_controls(double s) {
  CriterionResult r;
  const auto t0 = Clock::now();
  double prev = 0.0, growth = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 6; ++k) {
    const double eps = std::ldexp(1.0, -k);
    const double C = chord_arc_constant(cusp_curve(-eps, eps, 33)).constant;
    if (k > 0) growth = std::min(growth, C / prev);
    prev = C;
  }
  const SpaceCurve vertical({Vec3(0, 0, 0), Vec3(0, 0, 1)}, false);
  const LegendrianVerdict v = legendrian_residual(ContactForm::xdy(), vertical, kLegendrianTol, {0.25, 0.5, 1.0});
  double eps_min = M_PI;
  for (const auto& row : v.angle_profile) eps_min = std::min(eps_min, row.epsilon);
  r.checks.push_back(cmp("cusp_min_growth", growth, 1.5, ">="));
  r.checks.push_back(cmp("vertical_is_legendrian", v.legendrian ? 1 : 0, 0, "=="));
  r.checks.push_back(cmp("vertical_min_angle", eps_min, M_PI / 2.0 - 1e-12 * s, ">="));
  r.checks.push_back(timing(since(t0), 5.0));
  return r;
}

struct Entry {
  int id;
  const char* name;
  CriterionResult (*run)(double);
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = {
      {1, "lance-thomas-tb", c1_lance_thomas_tb},   {2, "fractal-bounds", c2_fractal_bounds},
      {3, "bypass-metrics", c3_bypass_metrics},     {4, "lemma-inequalities", c4_lemma_suite},
      {5, "lift-area-oracle", c5_lift_oracle},      {6, "correction-solver", c6_correction},
      {7, "contactomorphisms", c7_contactomorphisms}, {8, "invariant-cross-checks", c8_invariants},
      {9, "negative-controls", c9_negative_controls},
  };
  return e;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

bool CriterionResult::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

double tolerance_scale() {
  const char* env = std::getenv("LEGLAB_TOL_OVERRIDE");
  if (!env || !*env) return 1.0;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
    throw ValidationError(std::string("LEGLAB_TOL_OVERRIDE must be a positive number, got '") + env + "'");
  return v;
}

const std::vector<int>& criterion_ids() {
  static const std::vector<int> ids = [] {
    std::vector<int> v;
    for (const auto& e : entries()) v.push_back(e.id);
    return v;
  }();
  return ids;
}

std::string criterion_name(int id) {
  for (const auto& e : entries())
    if (e.id == id) return e.name;
  throw ValidationError("unknown acceptance criterion " + std::to_string(id));
}

CriterionResult run_criterion(int id) {
  const double s = tolerance_scale();
  for (const auto& e : entries()) {
    if (e.id != id) continue;
    const auto t0 = Clock::now();
    CriterionResult r;
    try {
      r = e.run(s);
    } catch (const std::exception& ex) {
      r.checks.clear();
      Check c = cmp(std::string("exception: ") + ex.what(), 1, 0, "==");
      r.checks.push_back(c);
    }
    r.id = e.id;
    r.name = e.name;
    r.seconds = since(t0);
    return r;
  }
  throw ValidationError("unknown acceptance criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_all() {
  std::vector<CriterionResult> out;
  for (int id : criterion_ids()) out.push_back(run_criterion(id));
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass() ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << " :";
  for (const auto& c : r.checks) {
    os << ' ' << c.name << ' ' << num(c.value) << ' ' << c.relation << ' ' << num(c.bound)
       << (c.pass ? "" : " (failed)") << ';';
  }
  os << " total " << num(r.seconds) << " s";
  return os.str();
}

nlohmann::json to_json(const std::vector<CriterionResult>& results, bool timings) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : results)
    for (const auto& c : r.checks) {
      if (c.timing && !timings) continue;
      out.push_back({{"check", std::to_string(r.id) + "." + r.name + "/" + c.name},
                     {"value", c.value},
                     {"bound", c.bound},
                     {"pass", c.pass}});
    }
  return out;
}

}  // namespace leglab::acceptance
