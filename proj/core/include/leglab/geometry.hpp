#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace leglab {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Relative tolerances, scaled by the bounding-box diagonal of the curve.
inline constexpr double kDistinctTol = 1e-14;
inline constexpr double kEmbeddedTol = 1e-12;

// Ordered polyline in R^D.  A closed curve does not repeat its first vertex.
// The default constructor path validates embeddedness; immersed() only checks
// vertex count and distinct consecutive vertices, for knot diagrams.
template <int D>
class Polyline {
public:
  using Point = Eigen::Matrix<double, D, 1>;

  Polyline() = default;
  Polyline(std::vector<Point> vertices, bool closed);
  static Polyline immersed(std::vector<Point> vertices, bool closed);

  const std::vector<Point>& vertices() const noexcept { return v_; }
  const Point& operator[](std::size_t i) const { return v_[i]; }
  std::size_t size() const noexcept { return v_.size(); }
  bool closed() const noexcept { return closed_; }
  bool embedded() const noexcept { return embedded_; }
  std::size_t edge_count() const noexcept { return closed_ ? v_.size() : v_.size() - 1; }
  const Point& edge_start(std::size_t e) const { return v_[e]; }
  const Point& edge_end(std::size_t e) const { return v_[(e + 1) % v_.size()]; }
  double bbox_diagonal() const;

private:
  std::vector<Point> v_;
  bool closed_ = false;
  bool embedded_ = false;
};

using PlaneCurve = Polyline<2>;
using SpaceCurve = Polyline<3>;

struct EdgePoint {
  std::size_t edge = 0;
  double param = 0.0;  // in [0,1] along the edge
};

struct ChordArcReport {
  double constant = 1.0;  // sup over all point pairs of shorter-subarc length / chord
  std::pair<EdgePoint, EdgePoint> witness;
  double vertex_constant = 1.0;  // same maximum restricted to vertex pairs
  std::pair<std::size_t, std::size_t> vertex_witness{0, 0};
  double length = 0.0;
};

struct CornerAngle {
  double angle = 3.141592653589793;
  std::size_t vertex = npos;  // npos when the curve has no corner
};

template <int D>
double arc_length(const Polyline<D>& c);

template <int D>
ChordArcReport chord_arc_constant(const Polyline<D>& c);

template <int D>
CornerAngle min_corner_angle(const Polyline<D>& c);

// Max over vertex pairs of max(ratio, 1/ratio) for the vertex correspondence.
template <int D>
double bilipschitz_constant(const Polyline<D>& source, const Polyline<D>& image);

template <int D>
Polyline<D> subarc(const Polyline<D>& c, std::size_t i, std::size_t j);

template <int D>
Polyline<D> resample(const Polyline<D>& c, double max_edge);

// Splits every edge into `per_edge` equal pieces.
template <int D>
Polyline<D> subdivide(const Polyline<D>& c, int per_edge);

// First pair of edges violating embeddedness, if any.
template <int D>
std::optional<std::pair<std::size_t, std::size_t>> find_self_intersection(
    const std::vector<Eigen::Matrix<double, D, 1>>& v, bool closed, double tol);

template <int D>
double segment_distance(const Eigen::Matrix<double, D, 1>& p0, const Eigen::Matrix<double, D, 1>& p1,
                        const Eigen::Matrix<double, D, 1>& q0, const Eigen::Matrix<double, D, 1>& q1);

// Cumulative arc length at each vertex; closed curves get one extra entry (total).
template <int D>
std::vector<double> cumulative_length(const Polyline<D>& c);

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Angle between two vectors in [0, pi], via atan2(|cross|, dot).
double angle_between(const Vec2& a, const Vec2& b);
double angle_between(const Vec3& a, const Vec3& b);

}  // namespace leglab
