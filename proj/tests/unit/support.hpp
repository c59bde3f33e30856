#pragma once

#include "leglab/geometry.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace leglab::test {

using Rng = std::mt19937_64;

inline double uni(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Shoelace area, positive for counterclockwise polygons.
inline double shoelace(const std::vector<Vec2>& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Vec2& a = p[i];
    const Vec2& b = p[(i + 1) % p.size()];
    s += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * s;
}

inline std::vector<Vec2> regular_polygon(int n, double r = 1.0, const Vec2& c = Vec2::Zero()) {
  std::vector<Vec2> p;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * M_PI * k / n;
    p.push_back(c + r * Vec2(std::cos(t), std::sin(t)));
  }
  return p;
}

// Counterclockwise star-shaped polygon around c.
inline std::vector<Vec2> star_polygon(Rng& rng, int k, double rmin = 0.3, double rmax = 1.0,
                                      const Vec2& c = Vec2::Zero()) {
  std::vector<Vec2> p;
  const double phase = uni(rng, 0.0, 2.0 * M_PI);
  for (int i = 0; i < k; ++i) {
    const double a = phase + 2.0 * M_PI * (i + uni(rng, -0.3, 0.3)) / k;
    p.push_back(c + uni(rng, rmin, rmax) * Vec2(std::cos(a), std::sin(a)));
  }
  return p;
}

inline std::vector<Vec2> segment_points(const Vec2& a, const Vec2& b, int pieces) {
  std::vector<Vec2> p;
  for (int i = 0; i <= pieces; ++i) p.push_back(a + (b - a) * (static_cast<double>(i) / pieces));
  return p;
}

}  // namespace leglab::test
