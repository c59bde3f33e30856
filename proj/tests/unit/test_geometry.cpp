#include "support.hpp"

#include "leglab/errors.hpp"
#include "leglab/geometry.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace leglab;
using namespace leglab::test;

namespace {

// Point at arc length s along the curve.
Vec2 point_at(const PlaneCurve& c, double s) {
  const auto cum = cumulative_length(c);
  std::size_t e = 0;
  while (e + 1 < cum.size() - 1 && cum[e + 1] < s) ++e;
  const double len = cum[e + 1] - cum[e];
  const double u = std::clamp((s - cum[e]) / len, 0.0, 1.0);
  return c.edge_start(e) + u * (c.edge_end(e) - c.edge_start(e));
}

// Chord-arc ratio over a dense uniform sample of the curve by arc length.
double dense_chord_arc(const PlaneCurve& c, int samples) {
  const double L = arc_length(c);
  std::vector<Vec2> p;
  std::vector<double> s;
  for (int i = 0; i <= samples; ++i) {
    s.push_back(L * i / samples);
    p.push_back(point_at(c, s.back()));
  }
  double best = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      double arc = s[j] - s[i];
      if (c.closed()) arc = std::min(arc, L - arc);
      const double d = (p[j] - p[i]).norm();
      if (d > 1e-12) best = std::max(best, arc / d);
    }
  return best;
}

}  // namespace

TEST(ArcLength, UnitSegment) { EXPECT_DOUBLE_EQ(arc_length(PlaneCurve({Vec2(0, 0), Vec2(1, 0)}, false)), 1.0); }

TEST(ArcLength, UnitSquareLoop) {
  const PlaneCurve sq({Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)}, true);
  EXPECT_DOUBLE_EQ(arc_length(sq), 4.0);
}

TEST(ArcLength, Regular1024Gon) {
  const PlaneCurve c(regular_polygon(1024), true);
  EXPECT_NEAR(arc_length(c), 2048.0 * std::sin(M_PI / 1024.0), 1e-12);
  EXPECT_NEAR(arc_length(c), 2.0 * M_PI, 1e-4);
}

TEST(ChordArc, StraightSubdividedSegmentIsOne) {
  const PlaneCurve c(segment_points(Vec2(-1, 2), Vec2(3, -1), 17), false);
  EXPECT_NEAR(chord_arc_constant(c).constant, 1.0, 1e-15);
}

TEST(ChordArc, Semicircle) {
  std::vector<Vec2> p;
  for (int i = 0; i < 512; ++i) {
    const double t = M_PI * i / 511.0;
    p.emplace_back(std::cos(t), std::sin(t));
  }
  EXPECT_NEAR(chord_arc_constant(PlaneCurve(p, false)).constant, M_PI / 2.0, 0.01 * M_PI / 2.0);
}

TEST(ChordArc, LShape) {
  const PlaneCurve c({Vec2(1, 0), Vec2(0, 0), Vec2(0, 1)}, false);
  const ChordArcReport r = chord_arc_constant(c);
  EXPECT_NEAR(r.constant, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(r.vertex_constant, std::sqrt(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(r.length, 2.0);
}

TEST(ChordArc, WitnessAttainsConstant) {
  Rng rng(11);
  for (int i = 0; i < 10; ++i) {
    const PlaneCurve c(star_polygon(rng, 9), true);
    const ChordArcReport r = chord_arc_constant(c);
    const auto cum = cumulative_length(c);
    auto at = [&](const EdgePoint& e) {
      return std::pair{c.edge_start(e.edge) + e.param * (c.edge_end(e.edge) - c.edge_start(e.edge)),
                       cum[e.edge] + e.param * (cum[e.edge + 1] - cum[e.edge])};
    };
    const auto [p, sp] = at(r.witness.first);
    const auto [q, sq] = at(r.witness.second);
    const double arc = std::min(std::abs(sq - sp), r.length - std::abs(sq - sp));
    EXPECT_NEAR(arc / (q - p).norm(), r.constant, 1e-9 * r.constant);
  }
}

TEST(ChordArc, AgreesWithDenseSampling) {
  Rng rng(12);
  for (int i = 0; i < 5; ++i) {
    const PlaneCurve c(star_polygon(rng, 7), true);
    const double C = chord_arc_constant(c).constant;
    const double dense = dense_chord_arc(c, 700);
    EXPECT_LE(dense, C * (1.0 + 1e-12));
    EXPECT_GE(dense, C * 0.98);
  }
}

TEST(ChordArc, VertexPairsUnderestimateOnUnequalCorner) {
  const PlaneCurve c({Vec2(2, 0), Vec2(0, 0), Vec2(0, 1)}, false);
  const ChordArcReport r = chord_arc_constant(c);
  EXPECT_NEAR(r.vertex_constant, 3.0 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(r.constant, std::sqrt(2.0), 1e-12);
}

TEST(ChordArc, InvariantUnderSimilarities) {
  Rng rng(13);
  const PlaneCurve base(star_polygon(rng, 11), true);
  const double C = chord_arc_constant(base).constant;
  for (int i = 0; i < 100; ++i) {
    const double th = uni(rng, 0, 2 * M_PI), k = uni(rng, 0.01, 100.0);
    const Vec2 t(uni(rng, -50, 50), uni(rng, -50, 50));
    const bool mirror = i % 2 == 1;
    std::vector<Vec2> p;
    for (const auto& v : base.vertices()) {
      const Vec2 w(mirror ? -v.x() : v.x(), v.y());
      p.push_back(t + k * Vec2(std::cos(th) * w.x() - std::sin(th) * w.y(), std::sin(th) * w.x() + std::cos(th) * w.y()));
    }
    EXPECT_NEAR(chord_arc_constant(PlaneCurve(p, true)).constant, C, 1e-12 * C);
  }
}

TEST(ChordArc, ResampleDoesNotChangeConstant) {
  Rng rng(14);
  for (int i = 0; i < 10; ++i) {
    const PlaneCurve c(star_polygon(rng, 8), true);
    const double C = chord_arc_constant(c).constant;
    EXPECT_NEAR(chord_arc_constant(resample(c, 0.07)).constant, C, 1e-12 * C);
  }
}

TEST(ChordArc, RejectsTouchingCurve) {
  // Vertex 4 lands on vertex 1: not embedded.
  EXPECT_THROW(PlaneCurve({Vec2(0, 0), Vec2(1, 0), Vec2(2, 0), Vec2(2, 1), Vec2(1, 0)}, false), NotEmbeddedError);
  const auto c = PlaneCurve::immersed({Vec2(0, 0), Vec2(1, 0), Vec2(2, 0), Vec2(2, 1), Vec2(1, 0)}, false);
  EXPECT_FALSE(c.embedded());
  EXPECT_THROW(chord_arc_constant(c), NotEmbeddedError);
}

TEST(Polyline, RejectsCoincidentConsecutiveVertices) {
  EXPECT_THROW(PlaneCurve({Vec2(0, 0), Vec2(0, 0), Vec2(1, 0)}, false), DegenerateInputError);
  EXPECT_THROW(PlaneCurve({Vec2(0, 0)}, false), DegenerateInputError);
  EXPECT_THROW(PlaneCurve({Vec2(0, 0), Vec2(1, 0)}, true), DegenerateInputError);
}

TEST(Polyline, RejectsCrossing) {
  EXPECT_THROW(PlaneCurve({Vec2(0, 0), Vec2(1, 1), Vec2(1, 0), Vec2(0, 1)}, false), NotEmbeddedError);
  EXPECT_NO_THROW(PlaneCurve::immersed({Vec2(0, 0), Vec2(1, 1), Vec2(1, 0), Vec2(0, 1)}, false));
}

TEST(CornerAngle, Straight) {
  const CornerAngle a = min_corner_angle(PlaneCurve({Vec2(0, 0), Vec2(1, 0), Vec2(2, 0)}, false));
  EXPECT_DOUBLE_EQ(a.angle, M_PI);
}

TEST(CornerAngle, SquareCorner) {
  const CornerAngle a = min_corner_angle(PlaneCurve({Vec2(1, 0), Vec2(0, 0), Vec2(0, 1)}, false));
  EXPECT_NEAR(a.angle, M_PI / 2.0, 1e-15);
  EXPECT_EQ(a.vertex, 1u);
}

TEST(CornerAngle, ClosedSquareLoop) {
  const PlaneCurve sq({Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)}, true);
  EXPECT_NEAR(min_corner_angle(sq).angle, M_PI / 2.0, 1e-15);
}

TEST(CornerAngle, CuspSamplesSharpen) {
  double prev = M_PI;
  for (int k = 1; k <= 6; ++k) {
    const int half = 1 << k;
    std::vector<Vec2> p;
    for (int i = -half; i <= half; ++i) {
      const double t = static_cast<double>(i) / half;
      p.emplace_back(t * t * t, t * t);
    }
    const CornerAngle a = min_corner_angle(PlaneCurve(p, false));
    EXPECT_LT(a.angle, prev);
    EXPECT_EQ(a.vertex, static_cast<std::size_t>(half));
    prev = a.angle;
  }
  EXPECT_LT(prev, 0.05);
}

TEST(Bilipschitz, Identity) {
  Rng rng(15);
  const PlaneCurve c(star_polygon(rng, 10), true);
  EXPECT_DOUBLE_EQ(bilipschitz_constant(c, c), 1.0);
}

TEST(Bilipschitz, UniformScaling) {
  Rng rng(16);
  const auto p = star_polygon(rng, 10);
  std::vector<Vec2> q;
  for (const auto& v : p) q.push_back(3.0 * v);
  EXPECT_NEAR(bilipschitz_constant(PlaneCurve(p, true), PlaneCurve(q, true)), 3.0, 1e-14);
}

TEST(Bilipschitz, MismatchedCounts) {
  const PlaneCurve a({Vec2(0, 0), Vec2(1, 0)}, false);
  const PlaneCurve b({Vec2(0, 0), Vec2(1, 0), Vec2(2, 0)}, false);
  EXPECT_THROW(bilipschitz_constant(a, b), ValidationError);
}

TEST(Subarc, SquareCornersZeroToTwo) {
  const PlaneCurve sq({Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)}, true);
  const PlaneCurve s = subarc(sq, 0, 2);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_FALSE(s.closed());
  EXPECT_EQ(s[0], Vec2(0, 0));
  EXPECT_EQ(s[1], Vec2(1, 0));
  EXPECT_EQ(s[2], Vec2(1, 1));
}

TEST(Subarc, ClosedTakesShorterWay) {
  const PlaneCurve c(regular_polygon(10), true);
  EXPECT_EQ(subarc(c, 1, 8).size(), 4u);  // 8, 9, 0, 1
  EXPECT_THROW(subarc(c, 3, 3), ValidationError);
}

TEST(Resample, UnitSegmentQuarter) {
  const PlaneCurve r = resample(PlaneCurve({Vec2(0, 0), Vec2(1, 0)}, false), 0.25);
  ASSERT_EQ(r.size(), 5u);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(r[i].x(), 0.25 * i, 1e-15);
  EXPECT_THROW(resample(r, 0.0), ValidationError);
}

TEST(Resample, PreservesLength) {
  Rng rng(17);
  const PlaneCurve c(star_polygon(rng, 12), true);
  const PlaneCurve r = resample(c, 0.01);
  EXPECT_NEAR(arc_length(r), arc_length(c), 1e-14 * arc_length(c) * 10);
  for (std::size_t e = 0; e < r.edge_count(); ++e) EXPECT_LE((r.edge_end(e) - r.edge_start(e)).norm(), 0.01 + 1e-15);
}

TEST(Lemmas, SemitangentBound) {
  Rng rng(18);
  for (int i = 0; i < 100; ++i) {
    const PlaneCurve c(star_polygon(rng, 3 + i % 12, 0.05, 1.0), true);
    const double C = chord_arc_constant(c).constant;
    EXPECT_GE(min_corner_angle(c).angle, 2.0 * std::asin(1.0 / C) - 1e-9);
  }
}

TEST(Lemmas, ConcatenationBound) {
  Rng rng(19);
  int checked = 0;
  while (checked < 100) {
    // Two radial arcs leaving the origin in directions th1, th2.
    const double th1 = uni(rng, 0, 2 * M_PI), th2 = th1 + uni(rng, 0.3, 2 * M_PI - 0.3);
    auto arc = [&](double th) {
      std::vector<Vec2> p{Vec2::Zero()};
      double r = 0.0;
      for (int k = 0; k < 4; ++k) {
        r += uni(rng, 0.2, 1.0);
        const double a = th + uni(rng, -0.1, 0.1);
        p.push_back(r * Vec2(std::cos(a), std::sin(a)));
      }
      return p;
    };
    const auto a1 = arc(th1), a2 = arc(th2);
    std::vector<Vec2> joined(a1.rbegin(), a1.rend());
    joined.insert(joined.end(), a2.begin() + 1, a2.end());
    const auto c = PlaneCurve::immersed(joined, false);
    if (!c.embedded()) continue;
    const double C1 = chord_arc_constant(PlaneCurve(a1, false)).constant;
    const double C2 = chord_arc_constant(PlaneCurve(a2, false)).constant;
    const double alpha = angle_between(Vec2(joined[3] - joined[4]), Vec2(joined[5] - joined[4]));
    const auto cum = cumulative_length(c);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 5; j < joined.size(); ++j)
        EXPECT_LE(cum[j] - cum[i], (C1 + C2) / std::sin(alpha / 2.0) * (joined[j] - joined[i]).norm() * (1 + 1e-9));
    ++checked;
  }
}
