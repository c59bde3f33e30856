#pragma once

#include "leglab/contact_form.hpp"
#include "leglab/geometry.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace leglab {

// Moebius family sliding the upper unit semicircle (t = 0) to the lower one
// (t = 1) through circular arcs with fixed endpoints -1 and 1.
std::complex<double> mobius_arc(double s, double t);

// Inverse of s -> mobius_arc(s, 0) on the upper semicircle.
double mobius_arc_parameter(std::complex<double> w);

// Similarity (scale, rotation, translation) precomposed with the disk
// automorphism w -> e^{i psi} (w - a) / (1 - conj(a) w).  The image of the
// closed unit disk is the disk of radius `scale` around `center`.
class DiskChart {
public:
  DiskChart() = default;
  DiskChart(const Vec2& center, double scale, double rotation, double mobius_angle = 0.0,
            const Vec2& mobius_point = Vec2::Zero());

  Vec2 map(std::complex<double> w) const;
  std::complex<double> inverse(const Vec2& p) const;

  const Vec2& center() const noexcept { return center_; }
  double scale() const noexcept { return scale_; }
  double rotation() const noexcept { return rotation_; }
  double mobius_angle() const noexcept { return psi_; }
  Vec2 mobius_point() const { return {a_.real(), a_.imag()}; }

  // max(scale * sup|m'|, 1 / (scale * inf|m'|)) on the closed disk.
  double bilipschitz_analytic() const;
  // Pairwise estimate on a polar grid (radii x angles).
  double bilipschitz_estimate(int grid = 64) const;

private:
  Vec2 center_ = Vec2::Zero();
  double scale_ = 1.0;
  double rotation_ = 0.0;
  double psi_ = 0.0;
  std::complex<double> a_{0.0, 0.0};
};

struct FrameReport {
  std::optional<double> beta_integral;
  std::optional<double> chord_arc;        // whole frame, when embedded
  std::optional<double> moved_chord_arc;  // moved arc only
  std::optional<double> legendrian_residual;  // relative, for lifted frames
  std::optional<double> closure_defect;
};

template <int D>
struct IsotopyTrace {
  std::vector<double> times;
  std::vector<Polyline<D>> frames;
  std::vector<FrameReport> reports;
};

// Vertices first..last, walking forward (wrapping around closed curves).
struct IndexRange {
  std::size_t first = 0;
  std::size_t last = 0;
};

std::vector<std::size_t> range_indices(std::size_t n, bool closed, IndexRange r);

// Slides the attach subarc (which must lie on the chart image of the upper
// semicircle, endpoints at chart(-1) and chart(1)) through the Moebius family.
// With a form, each frame also reports its beta-integral.
IsotopyTrace<2> bypass_isotopy(const DiskChart& chart, const PlaneCurve& curve, IndexRange attach,
                               const std::vector<double>& times, const ContactForm* form = nullptr);

// Replaces a corner by a circular arc tangent to both edges at distance delta.
PlaneCurve corner_round(const PlaneCurve& curve, std::size_t vertex, double delta, int samples);

inline constexpr double kCutoffMargin = 0.1;

// Affine image of [-1,1]^2, (u,v) -> center + A (u,v).
class CorrectionSquare {
public:
  CorrectionSquare(const Vec2& center, const Eigen::Matrix2d& A, double u_minus, double u_plus,
                   double margin = kCutoffMargin);

  Vec2 to_plane(const Vec2& uv) const { return center_ + A_ * uv; }
  Vec2 to_square(const Vec2& p) const { return Ainv_ * (p - center_); }
  const Vec2& center() const noexcept { return center_; }
  const Eigen::Matrix2d& matrix() const noexcept { return A_; }
  double u_minus() const noexcept { return u_minus_; }
  double u_plus() const noexcept { return u_plus_; }
  double margin() const noexcept { return margin_; }
  double det() const { return A_.determinant(); }

private:
  Vec2 center_;
  Eigen::Matrix2d A_, Ainv_;
  double u_minus_, u_plus_, margin_;
};

// Smooth step 0 -> 1 on [0, 1] built from exp(-1/x).
double smooth_step(double x);

// X = g d/du in square coordinates, g = exp(1/(u-1)) exp(1/(v^2-1)) cutoff(u) / |f|
// with d(beta) = f du^dv.  sign = +1 pushes towards u = +1, sign = -1 is the mirror.
VectorField2 correction_field(const CorrectionSquare& square, const ContactForm& form, int sign);

struct CorrectionOptions {
  double step = 1e-2;  // RK4 step
  double tol = 1e-9;   // |achieved - target|
  double t_max = 4096.0;
};

struct CorrectionResult {
  double t = 0.0;
  int sign = 1;
  PlaneCurve arc;
  double initial = 0.0;   // loop integral at t = 0
  double achieved = 0.0;  // loop integral at the returned t
  double limit = 0.0;     // loop integral as t -> infinity
  int evaluations = 0;
};

// Flows moved_arc (crossing the square from v = -1 to v = +1 inside the u-band)
// until the beta-integral of moved_arc + closing_arc equals target.  The flow
// direction is the side of the square the closing arc passes through.
CorrectionResult solve_correction(const CorrectionSquare& square, const ContactForm& form,
                                  const PlaneCurve& moved_arc, const PlaneCurve& closing_arc, double target,
                                  const CorrectionOptions& opt = {});

// Loop integral of the arc transported for time t (n RK4 steps).
double transported_loop_integral(const CorrectionSquare& square, const ContactForm& form, int sign,
                                 const PlaneCurve& moved_arc, const PlaneCurve& closing_arc, double t, long steps,
                                 PlaneCurve* arc_out = nullptr);

// Boundary path of the square from the arc's start, along side u = sign, to its end.
PlaneCurve square_side_path(const CorrectionSquare& square, const Vec2& from, const Vec2& to, int sign);

struct CurveCorrection {
  PlaneCurve curve;
  CorrectionResult result;
};

// Moves the subarc `arc` of `curve` inside the square so that the total
// beta-integral of the curve becomes target_total; the side is chosen so the
// target is attainable.
CurveCorrection correct_curve(const CorrectionSquare& square, const ContactForm& form, const PlaneCurve& curve,
                              IndexRange arc, double target_total, const CorrectionOptions& opt = {});

struct IsotopyLiftOptions {
  int subdivision = 1;
  double closure_tol = 1e-10;
  double conservation_tol = 1e-8;
};

struct IsotopyLift {
  IsotopyTrace<3> trace;
  bool conserves_integral = false;
};

// Lifts every frame with z = z0 at the base vertex.  Closed frames are lifted
// starting at the base vertex, so their output starts there.
IsotopyLift legendrian_isotopy_lift(const ContactForm& form, const IsotopyTrace<2>& trace, std::size_t base,
                                    double z0, const IsotopyLiftOptions& opt = {});

}  // namespace leglab
