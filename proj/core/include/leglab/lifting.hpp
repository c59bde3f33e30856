#pragma once

#include "leglab/contact_form.hpp"
#include "leglab/geometry.hpp"

namespace leglab {

inline constexpr int kDefaultSubdivision = 8;
inline constexpr double kClosureTol = 1e-10;

struct LiftResult {
  SpaceCurve curve;
  double closure_defect = 0.0;  // -oint beta for closed inputs, 0 for open ones
  int subdivision = kDefaultSubdivision;
  double scale = 0.0;  // arc length times sup |beta|, the unit of the closure threshold
};

// Legendrian lift: z(sample) = z0 - cumulative beta-integral from vertex 0.
// A closed input gives a closed output only when |closure_defect| <= closure_tol * scale;
// otherwise the output is open and ends above the start point.
LiftResult lift(const ContactForm& form, const PlaneCurve& curve, double z0, int subdivision = kDefaultSubdivision,
                double closure_tol = kClosureTol);

// Drops z.  Throws NonInjectiveProjectionError when the projection is not embedded.
PlaneCurve project(const SpaceCurve& curve);

// Drops z and keeps crossings (knot diagrams).
PlaneCurve project_diagram(const SpaceCurve& curve);

struct ProjectionBoundsReport {
  double K = 1.0;  // sqrt(1 + (B C)^2)
  double B = 0.0;  // sup |beta| on the curve
  double C = 1.0;  // chord-arc constant of the projection
  // Relative margins, K - worst ratio, divided by K; all must be >= 0.
  double distance_margin = 0.0;
  double length_margin = 0.0;
  double lavrentiev_margin = 0.0;  // lifted chord-arc against K * C
  double worst_margin = 0.0;
  bool ok = false;
};

ProjectionBoundsReport projection_bounds_check(const ContactForm& form, const SpaceCurve& curve,
                                               double legendrian_tol = kLegendrianTol);

}  // namespace leglab
