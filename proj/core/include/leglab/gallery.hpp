#pragma once

#include "leglab/contact_form.hpp"
#include "leglab/geometry.hpp"
#include "leglab/moves.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace leglab {

// (t^3, t^2, -2/5 t^5), Legendrian for dz + x dy; the projection has a cusp at t = 0.
SpaceCurve cusp_curve(double t0, double t1, int samples);

// Leaf (r cos phi, r sin phi, r^2), phi = -2 ln r, of the characteristic
// foliation of z = x^2 + y^2 under dz + x dy - y dx.  Samples are geometric in r.
SpaceCurve spiral_leaf(double r0, double r1, int samples);

// Square of the fractal construction with the range of curve vertices it contains.
struct LanceSquare {
  Vec2 corner = Vec2::Zero();  // bottom-left
  std::size_t first = 0;       // vertex at the bottom-left corner
  std::size_t last = 0;        // vertex at the top-right corner
};

using SRule = std::function<double(int)>;

// s_n = 1 / (n + 1)^2.
double default_s_rule(int n);

struct LanceThomasLevel {
  int n = 0;
  std::vector<double> s;  // s_1..s_n
  std::vector<double> a;  // a_1..a_{n+1}, a_{k+1} = (1 - s_k) a_k / 2
  std::vector<double> k;  // k_1..k_{n+1}, k_1 = K, k_{j+1} = k_j / (1 - s_j)^2
  double K = 1.0;
  // squares[j] lists the 4^j squares of side a[j] (levels 1..n+1), in curve order.
  std::vector<std::vector<LanceSquare>> squares;
  // Cross segments of levels 1..n and the diagonals of the level n+1 squares.
  PlaneCurve curve;
};

LanceThomasLevel lance_thomas_projection(int n, const SRule& s_rule = default_s_rule, double K = 1.0);

struct LanceThomasUnknot {
  LanceThomasLevel level;
  std::vector<double> z;        // Legendrian lift of the fractal part under dz = y dx, z(0,0) = 0
  std::vector<double> delta_z;  // constant on cross segments, + k_{n+1} a_{n+1}^2 along each diagonal
  double endpoint_z = 0.0;      // z + delta_z at (a_1, a_1)
  double c = 0.0;               // return path: (1,1) -> (1,h) -> (-c,h) -> (-c,0) -> (0,0)
  double h = 0.0;
  double closure_defect = 0.0;  // z mismatch after the closing edge
  SpaceCurve curve;             // closed
};

LanceThomasUnknot lance_thomas_unknot(int n, double K = 1.0, const SRule& s_rule = default_s_rule);

struct LanceThomasBounds {
  // max over squares X (all levels) and vertices in X of |f| - a^2/2,
  // f = z(x,y) - z(x0,y0) - (x - x0) y0.
  double in_square_excess = 0.0;
  // max over squares of (max - min of z over vertices in X) / (6 a_1 a).
  double corner_pair_ratio = 0.0;
  // The same ratio for z + delta_z.
  double corner_pair_ratio_total = 0.0;
  std::size_t squares_checked = 0;
  std::size_t corners_checked = 0;
};

LanceThomasBounds lance_thomas_bounds(const LanceThomasUnknot& u);

// (rho, phi, z) -> (rho, phi + ln rho, z - rho^2/2) in Cartesian coordinates.
Vec3 log_spiral_contactomorphism(const Vec3& p);
Vec3 log_spiral_inverse(const Vec3& p);

// rho >= t: (rho, phi + ln rho, z - rho^2/2 + t^2/2); rho < t: (rho, phi + ln t, z).
Vec3 cylinder_contact_isotopy(const Vec3& p, double t);

using PlaneMap = std::function<Vec2(const Vec2&)>;

struct LiftMapOptions {
  int subdivision = 64;
  double tol = 1e-8;
  int test_polygons = 8;
  int path_pairs = 20;
  double test_radius = 1.0;
  std::uint64_t seed = 0x11f7;
};

// (q, z) -> (h(q), base_z + z + int_{p->q} beta - int_{h(p->q)} beta) along straight paths.
// The constructor checks that h preserves the beta-integral of closed test
// polygons and that the result does not depend on the path.
class LiftedMap {
public:
  LiftedMap(ContactForm form, PlaneMap h, PlaneMap h_inv, const Vec2& base, double base_z = 0.0,
            const LiftMapOptions& opt = {});

  Vec3 operator()(const Vec3& q) const;
  Vec3 inverse(const Vec3& q) const;

  double loop_defect() const noexcept { return loop_defect_; }
  double path_defect() const noexcept { return path_defect_; }

private:
  double height_change(const std::vector<Vec2>& path) const;

  ContactForm form_;
  PlaneMap h_, h_inv_;
  Vec2 base_;
  double base_z_;
  LiftMapOptions opt_;
  double loop_defect_ = 0.0;
  double path_defect_ = 0.0;
};

// Gerono lemniscate (sin s, sin s cos s) lifted under dz + x dy; N even.
SpaceCurve figure_eight_unknot(int samples);

// Bowtie with a bypass bump on its right edge and a correction arc on its left edge.
struct BypassDemo {
  ContactForm form = ContactForm::xdy();
  PlaneCurve curve;
  DiskChart chart;
  IndexRange attach;
  CorrectionSquare square{Vec2::Zero(), Eigen::Matrix2d::Identity(), -0.5, 0.5};
  IndexRange correction_arc;
  std::size_t base = 0;
};

BypassDemo bypass_demo(int arc_samples = 65);

}  // namespace leglab
