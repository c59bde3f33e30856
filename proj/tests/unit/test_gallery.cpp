#include "support.hpp"

#include "leglab/errors.hpp"
#include "leglab/gallery.hpp"
#include "leglab/invariants.hpp"
#include "leglab/lifting.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace leglab;
using namespace leglab::test;

namespace {

double rho_of(const Vec3& p) { return std::hypot(p.x(), p.y()); }

SpaceCurve map_curve(const SpaceCurve& c, const std::function<Vec3(const Vec3&)>& f) {
  std::vector<Vec3> p;
  for (const auto& v : c.vertices()) p.push_back(f(v));
  return SpaceCurve::immersed(p, c.closed());
}

// Legendrian polylines for x dy - y dx inside the unit cylinder, away from the axis.
std::vector<SpaceCurve> rot_test_curves(Rng& rng, int count) {
  std::vector<SpaceCurve> out;
  for (int i = 0; i < count; ++i) {
    std::vector<Vec2> p;
    double a = uni(rng, 0, 2 * M_PI);
    for (int k = 0; k < 5; ++k) {
      p.push_back(uni(rng, 0.3, 0.9) * Vec2(std::cos(a), std::sin(a)));
      a += uni(rng, 0.2, 0.8);
    }
    out.push_back(lift(ContactForm::rot(), resample(PlaneCurve(p, false), 1e-3), uni(rng, -0.5, 0.5), 1).curve);
  }
  return out;
}

}  // namespace

TEST(Cusp, Samples) {
  const SpaceCurve c = cusp_curve(-1.0, 1.0, 3);
  EXPECT_EQ(c[1], Vec3(0, 0, 0));
  EXPECT_NEAR((c[2] - Vec3(1, 1, -0.4)).norm(), 0.0, 1e-15);
  EXPECT_THROW(cusp_curve(1.0, 0.0, 8), ValidationError);
}

TEST(Cusp, EdgeResidualIsFifthOrderAtCusp) {
  // The chord from t = 0 to t = h misses the arc by an area ~ h^5 (the curvature term 6 t^2 vanishes at 0).
  const ContactForm f = ContactForm::xdy();
  double prev = 0.0;
  for (double h : {0.2, 0.1, 0.05, 0.025}) {
    const double r = std::abs(edge_alpha(f, cusp_curve(0.0, h, 2))[0]);
    EXPECT_GT(r, 0.0);
    if (prev > 0.0) EXPECT_NEAR(prev / r, 32.0, 1e-6);
    prev = r;
  }
}

TEST(Cusp, ChordArcBlowsUp) {
  double prev = 0.0;
  for (int k = 0; k <= 6; ++k) {
    const double eps = std::ldexp(1.0, -k);
    const double C = chord_arc_constant(cusp_curve(-eps, eps, 33)).constant;
    if (k > 0) EXPECT_GE(C / prev, 1.5);
    prev = C;
  }
}

TEST(Spiral, UnitRadius) {
  const SpaceCurve c = spiral_leaf(0.5, 1.0, 16);
  EXPECT_NEAR((c[c.size() - 1] - Vec3(1, 0, 1)).norm(), 0.0, 1e-15);
  EXPECT_THROW(spiral_leaf(0.0, 1.0, 16), DomainError);
}

TEST(Spiral, ProjectionIsLogSpiral) {
  for (const auto& p : spiral_leaf(0.1, 2.0, 300).vertices()) {
    const double phi = std::atan2(p.y(), p.x());
    // r = exp(-phi / 2) up to whole turns of phi.
    const double turns = std::round((-2.0 * std::log(rho_of(p)) - phi) / (2 * M_PI));
    EXPECT_NEAR(rho_of(p), std::exp(-(phi + 2 * M_PI * turns) / 2.0), 1e-12);
    EXPECT_NEAR(p.z(), p.x() * p.x() + p.y() * p.y(), 1e-14);
  }
}

TEST(Spiral, DilationInvariance) {
  for (double k : {0.6, 0.8, 1.3}) {
    const SpaceCurve c = map_curve(spiral_leaf(0.5, 1.0, 4096), [k](const Vec3& p) {
      return Vec3(k * p.x(), k * p.y(), k * k * p.z());
    });
    for (const auto& p : c.vertices()) EXPECT_NEAR(p.z(), p.x() * p.x() + p.y() * p.y(), 1e-13);
    EXPECT_LE(legendrian_residual(ContactForm::rot(), c).relative_residual, 1e-8);
  }
}

TEST(LanceThomas, SecondSide) {
  const LanceThomasLevel lv = lance_thomas_projection(1, [](int) { return 0.25; });
  ASSERT_EQ(lv.a.size(), 2u);
  EXPECT_EQ(lv.a[0], 1.0);
  EXPECT_DOUBLE_EQ(lv.a[1], 0.375);  // (1 - s) a / 2: four sub-squares beside a cross of width s a
}

TEST(LanceThomas, LevelOneSegments) {
  const LanceThomasLevel lv = lance_thomas_projection(1);
  const PlaneCurve& c = lv.curve;
  ASSERT_EQ(c.size(), 8u);
  ASSERT_EQ(lv.squares.size(), 2u);
  ASSERT_EQ(lv.squares[1].size(), 4u);
  const double a2 = lv.a[1];
  int diagonals = 0, segments = 0;
  for (std::size_t e = 0; e < c.edge_count(); ++e) {
    const Vec2 d = c.edge_end(e) - c.edge_start(e);
    if (e % 2 == 0) {
      EXPECT_NEAR((d - Vec2(a2, a2)).norm(), 0.0, 1e-15);
      EXPECT_EQ(c.edge_start(e), lv.squares[1][e / 2].corner);
      ++diagonals;
    } else {
      ++segments;
    }
  }
  EXPECT_EQ(diagonals, 4);
  EXPECT_EQ(segments, 3);
  EXPECT_EQ(c[0], Vec2(0, 0));
  EXPECT_NEAR((c[7] - Vec2(1, 1)).norm(), 0.0, 1e-15);
  EXPECT_TRUE(c.embedded());
}

TEST(LanceThomas, SquareCounts) {
  const LanceThomasLevel lv = lance_thomas_projection(5);
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(lv.squares[n - 1].size(), static_cast<std::size_t>(1) << (2 * (n - 1)));
  EXPECT_EQ(lv.curve.size(), 2u * (1u << 10));
}

TEST(LanceThomas, Recurrences) {
  const LanceThomasLevel lv = lance_thomas_projection(6, default_s_rule, 1.5);
  for (int j = 0; j < 6; ++j) {
    EXPECT_DOUBLE_EQ(lv.s[j], 1.0 / ((j + 2.0) * (j + 2.0)));
    EXPECT_DOUBLE_EQ(lv.a[j + 1], (1.0 - lv.s[j]) * lv.a[j] / 2.0);
    EXPECT_DOUBLE_EQ(lv.k[j + 1], lv.k[j] / ((1.0 - lv.s[j]) * (1.0 - lv.s[j])));
    // Height budget splits evenly over the four sub-squares.
    EXPECT_NEAR(lv.k[j] * lv.a[j] * lv.a[j], 4.0 * lv.k[j + 1] * lv.a[j + 1] * lv.a[j + 1], 1e-15);
  }
  EXPECT_EQ(lv.k[0], 1.5);
}

TEST(LanceThomas, SideOverWidthDecreases) {
  const LanceThomasLevel lv = lance_thomas_projection(8);
  for (int n = 3; n <= 8; ++n) EXPECT_LT(lv.a[n - 1] / lv.s[n - 1], lv.a[n - 2] / lv.s[n - 2]);
  // Continue the recurrence to n = 12.
  double a = lv.a[8], prev = lv.a[7] / lv.s[7];
  for (int n = 9; n <= 12; ++n) {
    const double s = default_s_rule(n);
    EXPECT_LT(a / s, prev);
    prev = a / s;
    a = (1.0 - s) * a / 2.0;
  }
}

TEST(LanceThomas, RejectsBadInput) {
  EXPECT_THROW(lance_thomas_projection(0), ValidationError);
  EXPECT_THROW(lance_thomas_projection(2, [](int) { return 1.0; }), ValidationError);
  EXPECT_THROW(lance_thomas_unknot(2, 0.5), ValidationError);
}

TEST(LanceThomas, EndpointHeight) {
  for (int n = 1; n <= 5; ++n)
    for (double K : {0.75, 1.0, 2.0}) {
      const LanceThomasUnknot u = lance_thomas_unknot(n, K);
      EXPECT_NEAR(u.endpoint_z, K + 0.5, 1e-12);
      EXPECT_LE(u.closure_defect, 1e-12);
      EXPECT_TRUE(u.curve.closed());
      EXPECT_TRUE(u.curve.size() > 0 && project(u.curve).embedded());
    }
}

TEST(LanceThomas, LiftIsCumulativeYdx) {
  // Independent oracle: dz = y dx on each segment, integrated in closed form.
  const LanceThomasUnknot u = lance_thomas_unknot(3);
  const PlaneCurve& c = u.level.curve;
  double z = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i > 0) z += 0.5 * (c[i].y() + c[i - 1].y()) * (c[i].x() - c[i - 1].x());
    EXPECT_NEAR(u.z[i], z, 1e-14);
  }
  // Delta z jumps by k_{n+1} a_{n+1}^2 along each finest diagonal.
  const double jump = u.level.k.back() * u.level.a.back() * u.level.a.back();
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    EXPECT_NEAR(u.delta_z[i + 1] - u.delta_z[i], i % 2 == 0 ? jump : 0.0, 1e-15);
}

TEST(LanceThomas, ThurstonBennequinZero) {
  for (int n = 1; n <= 4; ++n) {
    TbOptions opt;
    opt.check_legendrian = false;
    EXPECT_EQ(thurston_bennequin(ContactForm::minus_ydx(), lance_thomas_unknot(n).curve, opt).tb, 0);
  }
}

TEST(LanceThomas, FractalBounds) {
  for (int n = 1; n <= 6; ++n) {
    const LanceThomasBounds b = lance_thomas_bounds(lance_thomas_unknot(n));
    if (n <= 5) EXPECT_LE(b.in_square_excess, 1e-12);
    EXPECT_LE(b.corner_pair_ratio, 1.0);
    EXPECT_LE(b.corner_pair_ratio_total, 1.0);
    EXPECT_GT(b.squares_checked, 0u);
  }
}

TEST(LogSpiral, Examples) {
  EXPECT_NEAR((log_spiral_contactomorphism(Vec3(1, 0, 0)) - Vec3(1, 0, -0.5)).norm(), 0.0, 1e-15);
  EXPECT_THROW(log_spiral_contactomorphism(Vec3(0, 0, 1)), DomainError);
}

TEST(LogSpiral, PreservesRadiusAndInverts) {
  Rng rng(61);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 p(uni(rng, -3, 3), uni(rng, -3, 3), uni(rng, -3, 3));
    const Vec3 q = log_spiral_contactomorphism(p);
    if (i < 100) EXPECT_NEAR(rho_of(q), rho_of(p), 1e-14 * rho_of(p));
    EXPECT_NEAR((log_spiral_inverse(q) - p).norm(), 0.0, 1e-12);
  }
}

TEST(LogSpiral, RayBecomesLegendrian) {
  std::vector<Vec3> ray;
  for (int k = 0; k < 4096; ++k) ray.emplace_back(0.1 + 0.9 * k / 4095.0, 0.0, 0.0);
  const SpaceCurve img = map_curve(SpaceCurve(ray, false), log_spiral_contactomorphism);
  EXPECT_LE(legendrian_residual(ContactForm::rot(), img).relative_residual, 1e-6);
}

TEST(LogSpiral, PreservesLegendrianCurves) {
  Rng rng(62);
  for (const auto& c : rot_test_curves(rng, 5))
    EXPECT_LE(legendrian_residual(ContactForm::rot(), map_curve(c, log_spiral_contactomorphism)).relative_residual,
              1e-6);
}

TEST(CylinderIsotopy, TimeZeroIsLogSpiral) {
  Rng rng(63);
  for (int i = 0; i < 100; ++i) {
    const double a = uni(rng, 0, 2 * M_PI), r = uni(rng, 0.01, 1.0);
    const Vec3 p(r * std::cos(a), r * std::sin(a), uni(rng, -1, 1));
    EXPECT_NEAR((cylinder_contact_isotopy(p, 0.0) - log_spiral_contactomorphism(p)).norm(), 0.0, 1e-15);
  }
}

TEST(CylinderIsotopy, BranchesAgree) {
  Rng rng(64);
  for (int i = 0; i < 100; ++i) {
    const double a = uni(rng, 0, 2 * M_PI), r = uni(rng, 0.01, 0.99);
    const Vec3 p(r * std::cos(a), r * std::sin(a), uni(rng, -1, 1));
    const double rho = rho_of(p);
    EXPECT_LE((cylinder_contact_isotopy(p, rho) - cylinder_contact_isotopy(p, std::nextafter(rho, 2.0))).norm(),
              1e-15);
  }
}

TEST(CylinderIsotopy, PreservesLegendrianCurves) {
  Rng rng(65);
  for (const auto& c : rot_test_curves(rng, 5))
    for (double t : {0.25, 0.5, 1.0}) {
      const SpaceCurve img = map_curve(c, [t](const Vec3& p) { return cylinder_contact_isotopy(p, t); });
      EXPECT_LE(legendrian_residual(ContactForm::rot(), img).relative_residual, 1e-6);
    }
}

TEST(CylinderIsotopy, Errors) {
  EXPECT_THROW(cylinder_contact_isotopy(Vec3(2, 0, 0), 0.5), DomainError);
  EXPECT_THROW(cylinder_contact_isotopy(Vec3(0.5, 0, 0), 1.5), ValidationError);
  EXPECT_NO_THROW(cylinder_contact_isotopy(Vec3(0, 0, 0.3), 0.5));
}

TEST(LiftedMap, Identity) {
  auto id = [](const Vec2& p) { return p; };
  const LiftedMap m(ContactForm::xdy(), id, id, Vec2(0.1, 0.2));
  Rng rng(66);
  for (int i = 0; i < 20; ++i) {
    const Vec3 q(uni(rng, -1, 1), uni(rng, -1, 1), uni(rng, -1, 1));
    EXPECT_NEAR((m(q) - q).norm(), 0.0, 1e-14);
  }
}

TEST(LiftedMap, RotationUnderRotationForm) {
  const double th = 0.7;
  auto rot = [th](const Vec2& p) {
    return Vec2(std::cos(th) * p.x() - std::sin(th) * p.y(), std::sin(th) * p.x() + std::cos(th) * p.y());
  };
  auto inv = [th](const Vec2& p) {
    return Vec2(std::cos(th) * p.x() + std::sin(th) * p.y(), -std::sin(th) * p.x() + std::cos(th) * p.y());
  };
  const LiftedMap m(ContactForm::rot(), rot, inv, Vec2(0, 0));
  Rng rng(67);
  for (int i = 0; i < 20; ++i) {
    const Vec3 q(uni(rng, -1, 1), uni(rng, -1, 1), uni(rng, -1, 1));
    const Vec3 r = m(q);
    EXPECT_NEAR((r.head<2>() - rot(q.head<2>())).norm(), 0.0, 1e-14);
    EXPECT_NEAR(r.z(), q.z(), 1e-12);
    EXPECT_NEAR((m.inverse(r) - q).norm(), 0.0, 1e-12);
  }
}

TEST(LiftedMap, ShearKeepsLiftsLegendrian) {
  auto shear = [](const Vec2& p) { return Vec2(p.x() + p.y(), p.y()); };
  auto unshear = [](const Vec2& p) { return Vec2(p.x() - p.y(), p.y()); };
  const ContactForm f = ContactForm::xdy();
  const LiftedMap m(f, shear, unshear, Vec2(0, 0));
  EXPECT_LE(m.loop_defect(), 1e-8);
  EXPECT_LE(m.path_defect(), 1e-8);
  Rng rng(68);
  for (int i = 0; i < 10; ++i) {
    const SpaceCurve L = lift(f, PlaneCurve(star_polygon(rng, 6), false), uni(rng, -1, 1), 8).curve;
    const SpaceCurve img = map_curve(L, [&m](const Vec3& p) { return m(p); });
    EXPECT_LE(legendrian_residual(f, img).relative_residual, 1e-8);
  }
}

TEST(LiftedMap, RejectsNonPreservingMap) {
  auto dbl = [](const Vec2& p) { return Vec2(2.0 * p); };
  auto half = [](const Vec2& p) { return Vec2(0.5 * p); };
  EXPECT_THROW(LiftedMap(ContactForm::xdy(), dbl, half, Vec2(0, 0)), PreconditionError);
}

TEST(FigureEight, Unknot) {
  const SpaceCurve c = figure_eight_unknot(64);
  EXPECT_TRUE(c.closed());
  EXPECT_EQ(c.size(), 64u);
  EXPECT_LE(legendrian_residual(ContactForm::xdy(), c).relative_residual, 1e-12);
  EXPECT_THROW(figure_eight_unknot(63), ValidationError);
}

TEST(BypassDemo, IsConsistent) {
  const BypassDemo d = bypass_demo();
  EXPECT_TRUE(d.curve.closed());
  EXPECT_NO_THROW(bypass_isotopy(d.chart, d.curve, d.attach, {0.0, 1.0}));
  EXPECT_NEAR(line_integral_beta(d.form, d.curve).total, 0.0, 1e-12);
}
