#include "leglab/lifting.hpp"

#include "leglab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace leglab {

LiftResult lift(const ContactForm& form, const PlaneCurve& curve, double z0, int subdivision, double closure_tol) {
  if (subdivision < 1) throw ValidationError("lift subdivision must be >= 1");
  if (!(closure_tol > 0.0)) throw ValidationError("closure tolerance must be positive");
  const PlaneCurve fine = subdivide(curve, subdivision);
  const BetaIntegral bi = line_integral_beta(form, fine);
  LiftResult out;
  out.subdivision = subdivision;
  out.scale = std::max(arc_length(fine) * sup_beta_norm(form, fine), std::numeric_limits<double>::min());

  std::vector<Vec3> pts;
  pts.reserve(fine.size() + 1);
  for (std::size_t i = 0; i < fine.size(); ++i) pts.emplace_back(fine[i].x(), fine[i].y(), z0 - bi.cumulative[i]);
  bool closed = false;
  if (fine.closed()) {
    out.closure_defect = -bi.total;
    if (std::abs(out.closure_defect) <= closure_tol * out.scale) {
      closed = true;
    } else {
      pts.emplace_back(fine[0].x(), fine[0].y(), z0 - bi.total);
    }
  }
  out.curve = SpaceCurve::immersed(std::move(pts), closed);
  return out;
}

PlaneCurve project_diagram(const SpaceCurve& curve) {
  std::vector<Vec2> pts;
  pts.reserve(curve.size());
  for (const auto& p : curve.vertices()) pts.emplace_back(p.x(), p.y());
  return PlaneCurve::immersed(std::move(pts), curve.closed());
}

PlaneCurve project(const SpaceCurve& curve) {
  std::vector<Vec2> pts;
  pts.reserve(curve.size());
  for (const auto& p : curve.vertices()) pts.emplace_back(p.x(), p.y());
  try {
    return PlaneCurve(std::move(pts), curve.closed());
  } catch (const NotEmbeddedError& e) {
    throw NonInjectiveProjectionError(std::string("projection is not injective: ") + e.what());
  } catch (const DegenerateInputError& e) {
    throw NonInjectiveProjectionError(std::string("projection is not injective: ") + e.what());
  }
}

ProjectionBoundsReport projection_bounds_check(const ContactForm& form, const SpaceCurve& curve,
                                               double legendrian_tol) {
  const LegendrianVerdict verdict = legendrian_residual(form, curve, legendrian_tol);
  if (!verdict.legendrian)
    throw PreconditionError("projection bounds need a Legendrian curve (relative residual " +
                            std::to_string(verdict.relative_residual) + ")");
  const PlaneCurve pr = project(curve);
  ProjectionBoundsReport rep;
  rep.B = sup_beta_norm(form, pr);
  rep.C = chord_arc_constant(pr).constant;
  rep.K = std::sqrt(1.0 + (rep.B * rep.C) * (rep.B * rep.C));

  const auto& v3 = curve.vertices();
  const auto& v2 = pr.vertices();
  const std::vector<double> S3 = cumulative_length(curve);
  const std::vector<double> S2 = cumulative_length(pr);
  const double L3 = S3.back();
  const bool closed = curve.closed();
  double worst_d = 0.0, worst_l = 0.0, worst_c = 0.0;
  for (std::size_t i = 0; i < v3.size(); ++i) {
    for (std::size_t j = i + 1; j < v3.size(); ++j) {
      const double d3 = (v3[j] - v3[i]).norm();
      const double d2 = (v2[j] - v2[i]).norm();
      worst_d = std::max(worst_d, d3 / d2);
      // Lengths along the same (forward) subarc.
      worst_l = std::max(worst_l, (S3[j] - S3[i]) / (S2[j] - S2[i]));
      double l3 = S3[j] - S3[i];
      if (closed) l3 = std::min(l3, L3 - l3);
      worst_c = std::max(worst_c, l3 / d3);
    }
  }
  rep.distance_margin = (rep.K - worst_d) / rep.K;
  rep.length_margin = (rep.K - worst_l) / rep.K;
  rep.lavrentiev_margin = (rep.K * rep.C - worst_c) / (rep.K * rep.C);
  rep.worst_margin = std::min({rep.distance_margin, rep.length_margin, rep.lavrentiev_margin});
  rep.ok = rep.worst_margin >= 0.0;
  return rep;
}

}  // namespace leglab
