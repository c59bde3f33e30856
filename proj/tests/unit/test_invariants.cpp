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

SpaceCurve circle3(const Vec3& c, const Vec3& e1, const Vec3& e2, int n, double phase = 0.0) {
  std::vector<Vec3> p;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * M_PI * k / n + phase;
    p.push_back(c + std::cos(t) * e1 + std::sin(t) * e2);
  }
  return SpaceCurve(p, true);
}

SpaceCurve trefoil(int n, const Vec3& shift = Vec3::Zero()) {
  std::vector<Vec3> p;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * M_PI * k / n;
    p.push_back(shift + Vec3(std::sin(t) + 2 * std::sin(2 * t), std::cos(t) - 2 * std::cos(2 * t), -std::sin(3 * t)));
  }
  return SpaceCurve(p, true);
}

SpaceCurve reversed(const SpaceCurve& c) {
  std::vector<Vec3> p(c.vertices().rbegin(), c.vertices().rend());
  return SpaceCurve::immersed(p, true);
}

SpaceCurve mirrored(const SpaceCurve& c) {
  std::vector<Vec3> p = c.vertices();
  for (auto& v : p) v.z() = -v.z();
  return SpaceCurve::immersed(p, c.closed());
}

// Gauss double integral of two smooth parametrized loops by the midpoint rule.
template <class F, class G>
double smooth_gauss(F r1, G r2, int n) {
  double s = 0.0;
  const double h = 2.0 * M_PI / n, e = 1e-6;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double a = (i + 0.5) * h, b = (j + 0.5) * h;
      const Vec3 d1 = (r1(a + e) - r1(a - e)) / (2 * e), d2 = (r2(b + e) - r2(b - e)) / (2 * e);
      const Vec3 w = r1(a) - r2(b);
      s += w.dot(d1.cross(d2)) / std::pow(w.norm(), 3) * h * h;
    }
  return s / (4.0 * M_PI);
}

}  // namespace

TEST(Linking, DistantCircles) {
  const SpaceCurve a = circle3(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), 32);
  const SpaceCurve b = circle3(Vec3(5, 0, 0), Vec3::UnitX(), Vec3::UnitY(), 32);
  EXPECT_EQ(linking_number(a, b), 0);
}

TEST(Linking, HopfPair) {
  const SpaceCurve a = circle3(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), 64);
  const SpaceCurve b = circle3(Vec3(1, 0, 0), Vec3::UnitX(), Vec3::UnitZ(), 64);
  const LinkingResult r = linking(a, b);
  EXPECT_EQ(std::abs(r.value), 1);
  EXPECT_LT(std::abs(r.gauss - r.value), 0.5);
  // Independent smooth Gauss integral fixes the sign.
  const double oracle = smooth_gauss([](double t) { return Vec3(std::cos(t), std::sin(t), 0); },
                                     [](double t) { return Vec3(1 + std::cos(t), 0, std::sin(t)); }, 400);
  EXPECT_EQ(r.value, static_cast<int>(std::lround(oracle)));
  EXPECT_EQ(r.value, -1);
}

TEST(Linking, SymmetricAndOrientationReversal) {
  const SpaceCurve a = circle3(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), 48, 0.1);
  const SpaceCurve b = circle3(Vec3(1, 0, 0), Vec3::UnitX(), Vec3::UnitZ(), 40, 0.2);
  const int ab = linking_number(a, b);
  EXPECT_EQ(linking_number(b, a), ab);
  EXPECT_EQ(linking_number(reversed(a), b), -ab);
  EXPECT_EQ(linking_number(a, reversed(b)), -ab);
}

TEST(Linking, TranslatedTrefoil) { EXPECT_EQ(linking_number(trefoil(120), trefoil(120, Vec3(10, 0, 0))), 0); }

TEST(Linking, AllDirectionsAgree) {
  const SpaceCurve a = circle3(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), 64, 0.05);
  const SpaceCurve b = circle3(Vec3(1, 0, 0), Vec3::UnitX(), Vec3::UnitZ(), 64, 0.07);
  int agreed = 0;
  for (const Vec3& d : generic_directions()) {
    const auto v = linking_along(a, b, d);
    if (v) {
      EXPECT_EQ(*v, linking_number(a, b));
      ++agreed;
    }
  }
  EXPECT_GT(agreed, 0);
}

TEST(Linking, GaussMatchesCrossingsOnDoubleLink) {
  // (2,4) torus link components: two interleaved loops winding twice.
  auto loop = [](double phase) {
    std::vector<Vec3> p;
    for (int k = 0; k < 200; ++k) {
      const double t = 2.0 * M_PI * k / 200;
      const double r = 2 + std::cos(2 * t + phase);
      p.emplace_back(r * std::cos(t), r * std::sin(t), std::sin(2 * t + phase));
    }
    return SpaceCurve(p, true);
  };
  const LinkingResult r = linking(loop(0.0), loop(M_PI));
  EXPECT_EQ(std::abs(r.value), 2);
  EXPECT_NEAR(r.gauss, r.value, 1e-6);
}

TEST(Linking, NeedsClosedCurves) {
  const SpaceCurve a({Vec3(0, 0, 0), Vec3(1, 0, 0)}, false);
  EXPECT_THROW(linking_number(a, a), ValidationError);
}

TEST(Writhe, PlanarCurveHasNone) {
  Rng rng(51);
  std::vector<Vec3> p;
  for (const auto& v : star_polygon(rng, 12)) p.emplace_back(v.x(), v.y(), uni(rng, -1, 1));
  EXPECT_EQ(writhe(SpaceCurve(p, true)), 0);
}

TEST(Writhe, FigureEightCrossing) {
  // Crossing at s = 0 and s = pi; height gain of the lift from 0 to pi is
  // -int_0^pi sin(u) d(sin u cos u) = 2/3, so the s = pi strand (direction (-1,1)) is over
  // the s = 0 strand (direction (1,1)): det = -2 < 0.
  const SpaceCurve c = figure_eight_unknot(64);
  const auto crossings = self_crossings(c, Vec3::UnitZ());
  ASSERT_EQ(crossings.size(), 1u);
  EXPECT_EQ(crossings[0].sign, -1);
  EXPECT_EQ(writhe(c), -1);
  EXPECT_NEAR(crossings[0].point.norm(), 0.0, 1e-12);
  EXPECT_NEAR(crossings[0].height_gap, 2.0 / 3.0, 0.01);
}

TEST(Writhe, MirrorNegates) {
  EXPECT_EQ(writhe(mirrored(figure_eight_unknot(64))), 1);
  const int w = writhe(trefoil(120));
  EXPECT_EQ(std::abs(w), 3);
  EXPECT_EQ(writhe(mirrored(trefoil(120))), -w);
}

TEST(Writhe, DegenerateProjection) {
  // Crossing exactly at a vertex.
  const SpaceCurve c = SpaceCurve::immersed(
      {Vec3(-1, -1, 0), Vec3(0, 0, 0), Vec3(1, 1, 0), Vec3(1, -1, 0), Vec3(-1, 1, 1)}, true);
  EXPECT_THROW(writhe(c), GenericityError);
}

TEST(ThurstonBennequin, FigureEight) {
  const TbResult r = thurston_bennequin(ContactForm::xdy(), figure_eight_unknot(128));
  EXPECT_EQ(r.tb, -1);
  EXPECT_EQ(r.pushoff_linking, -1);
  EXPECT_GT(r.epsilon, 0.0);
}

TEST(ThurstonBennequin, LanceThomasLevelThree) {
  const LanceThomasUnknot u = lance_thomas_unknot(3);
  TbOptions opt;
  opt.check_legendrian = false;
  EXPECT_EQ(thurston_bennequin(ContactForm::minus_ydx(), u.curve, opt).tb, 0);
}

TEST(ThurstonBennequin, RejectsNonLegendrian) {
  const SpaceCurve c = circle3(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), 16);
  EXPECT_THROW(thurston_bennequin(ContactForm::xdy(), c), PreconditionError);
  TbOptions opt;
  opt.check_legendrian = false;
  EXPECT_EQ(thurston_bennequin(ContactForm::xdy(), c, opt).tb, 0);
}

TEST(ThurstonBennequin, EmbeddedDiagramGivesZero) {
  // Closed curve with embedded projection, heights arbitrary: writhe 0.
  Rng rng(52);
  std::vector<Vec3> p;
  for (const auto& v : star_polygon(rng, 10)) p.emplace_back(v.x(), v.y(), uni(rng, -1, 1));
  TbOptions opt;
  opt.check_legendrian = false;
  EXPECT_EQ(thurston_bennequin(ContactForm::xdy(), SpaceCurve(p, true), opt).tb, 0);
}

TEST(Pushoff, RowZeroReproducesLegendrian) {
  const SpaceCurve L = figure_eight_unknot(128);
  const PlaneCurve d = project_diagram(L);
  const Collar col = collar_from_curve(d, {0.0, 0.01});
  const SpaceCurve P = transverse_pushoff(ContactForm::xdy(), col, 0, L[0].z());
  for (std::size_t i = 0; i < L.size(); ++i) EXPECT_NEAR(P[i].z(), L[i].z(), 1e-9);
}

TEST(Pushoff, TransverseWithSignOfLoopIntegral) {
  const ContactForm f = ContactForm::xdy();
  const PlaneCurve d = project_diagram(figure_eight_unknot(128));
  const Collar col = collar_from_curve(d, {0.02, -0.02});
  for (std::size_t row = 0; row < 2; ++row) {
    const SpaceCurve P = transverse_pushoff(f, col, row, 0.0);
    // Under x dy the loop integral of a row is its signed area.
    const double area = shoelace(col.rows[row]);
    ASSERT_GT(std::abs(area), 1e-6);
    // Shifting along the left normal lowers the signed area by about offset * length.
    EXPECT_EQ(area < 0, col.offsets[row] > 0);
    for (double a : edge_alpha(f, P)) EXPECT_EQ(a > 0, area > 0);
  }
}

TEST(Pushoff, RowValidation) {
  const PlaneCurve d = project_diagram(figure_eight_unknot(16));
  const Collar col = collar_from_curve(d, {0.0});
  EXPECT_THROW(transverse_pushoff(ContactForm::xdy(), col, 1, 0.0), ValidationError);
  EXPECT_THROW(collar_from_curve(PlaneCurve({Vec2(0, 0), Vec2(1, 0)}, false), {0.1}), ValidationError);
}
