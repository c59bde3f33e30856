#pragma once

#include "leglab/geometry.hpp"

#include <functional>
#include <string>
#include <vector>

namespace leglab {

struct Domain {
  enum class Kind { Plane, Rect, Annulus };
  Kind kind = Kind::Plane;
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  Vec2 center = Vec2::Zero();
  double r_inner = 0, r_outer = 0;

  static Domain plane() { return {}; }
  static Domain rect(double xmin, double xmax, double ymin, double ymax);
  static Domain annulus(const Vec2& center, double r_inner, double r_outer);

  bool contains(const Vec2& p) const;
  bool contains_segment(const Vec2& p, const Vec2& q) const;
  // Points used to check the contact condition and derivative consistency.
  std::vector<Vec2> sample_points(int per_axis) const;
};

// Monomial coef * x^px * y^py.
struct PolyTerm {
  double coef = 0.0;
  int px = 0;
  int py = 0;
};

double eval_poly(const std::vector<PolyTerm>& terms, const Vec2& p);
Vec2 eval_poly_gradient(const std::vector<PolyTerm>& terms, const Vec2& p);

// alpha = dz + beta with beta = a dx + b dy on a planar chart.
class ContactForm {
public:
  using Scalar = std::function<double(const Vec2&)>;
  using Gradient = std::function<Vec2(const Vec2&)>;

  // polynomial_degree < 0 marks a transcendental form (adaptive quadrature).
  ContactForm(std::string kind, Scalar a, Scalar b, Gradient grad_a, Gradient grad_b, Domain domain,
              int polynomial_degree = -1);

  static ContactForm xdy(const Domain& d = Domain::plane());
  static ContactForm minus_ydx(const Domain& d = Domain::plane());
  static ContactForm rot(const Domain& d = Domain::plane());  // x dy - y dx
  static ContactForm poly(std::vector<PolyTerm> a_terms, std::vector<PolyTerm> b_terms,
                          const Domain& d = Domain::plane());

  const std::string& kind() const noexcept { return kind_; }
  const Domain& domain() const noexcept { return domain_; }
  int polynomial_degree() const noexcept { return degree_; }
  const std::vector<PolyTerm>& a_terms() const noexcept { return a_terms_; }
  const std::vector<PolyTerm>& b_terms() const noexcept { return b_terms_; }

  double a(const Vec2& p) const { return a_(p); }
  double b(const Vec2& p) const { return b_(p); }
  Vec2 beta(const Vec2& p) const { return {a_(p), b_(p)}; }
  Vec2 grad_a(const Vec2& p) const { return da_(p); }
  Vec2 grad_b(const Vec2& p) const { return db_(p); }
  double dbeta(const Vec2& p) const { return db_(p).x() - da_(p).y(); }
  // Sign of d(beta) on the domain (+1 or -1).
  int orientation() const noexcept { return sign_; }

  // Line integral of beta along the segment p -> q.
  double segment_integral(const Vec2& p, const Vec2& q) const;

private:
  std::string kind_;
  Scalar a_, b_;
  Gradient da_, db_;
  Domain domain_;
  int degree_ = -1;
  int sign_ = 1;
  std::vector<PolyTerm> a_terms_, b_terms_;
};

struct BetaIntegral {
  double total = 0.0;
  std::vector<double> cumulative;  // one entry per vertex, plus the closing one for closed curves
};

BetaIntegral line_integral_beta(const ContactForm& form, const PlaneCurve& curve);

// Cumulative integral of dz + beta at each vertex (closed curves: one extra entry).
std::vector<double> line_integral_alpha(const ContactForm& form, const SpaceCurve& curve);

// Integral of alpha over each edge.
std::vector<double> edge_alpha(const ContactForm& form, const SpaceCurve& curve);

struct AngleRow {
  double radius = 0.0;
  double epsilon = 0.0;  // worst chord angle to the contact plane, radians
  std::size_t vertex = npos;
};

inline constexpr double kLegendrianTol = 1e-8;

struct LegendrianVerdict {
  double residual = 0.0;
  double relative_residual = 0.0;
  double arc_length = 0.0;
  double sup_alpha = 0.0;  // sup of |(a, b, 1)| at vertices and quadrature nodes
  double tolerance = kLegendrianTol;
  bool legendrian = false;
  std::vector<AngleRow> angle_profile;
};

LegendrianVerdict legendrian_residual(const ContactForm& form, const SpaceCurve& curve,
                                      double tolerance = kLegendrianTol, const std::vector<double>& radii = {});

// Per radius r: the worst angle between the contact plane at a vertex p and a
// chord joining two curve points within distance r of p.
std::vector<AngleRow> angle_profile(const ContactForm& form, const SpaceCurve& curve,
                                    const std::vector<double>& radii);

// sup |beta| over vertices and quadrature nodes of the curve (a lower bound of the true sup).
double sup_beta_norm(const ContactForm& form, const PlaneCurve& curve);

// Scalar field on chart x R with its gradient.
struct ScalarField3 {
  std::function<double(const Vec3&)> value;
  std::function<Vec3(const Vec3&)> gradient;
};

struct PolyTerm3 {
  double coef = 0.0;
  int px = 0, py = 0, pz = 0;
};

ScalarField3 polynomial_field(std::vector<PolyTerm3> terms);

using VectorField3 = std::function<Vec3(const Vec3&)>;
using VectorField2 = std::function<Vec2(const Vec2&)>;

// Contact Hamiltonian vector field: alpha(X_H) = H.
VectorField3 hamiltonian_field(const ContactForm& form, const ScalarField3& H);

// Classical RK4 with ceil(|t|/step) equal steps.  `inside` (optional) is
// checked after every step; leaving it raises DomainError.
template <int D>
std::vector<Eigen::Matrix<double, D, 1>> flow(
    const std::function<Eigen::Matrix<double, D, 1>(const Eigen::Matrix<double, D, 1>&)>& field,
    std::vector<Eigen::Matrix<double, D, 1>> points, double t, double step,
    const std::function<bool(const Eigen::Matrix<double, D, 1>&)>& inside = {});

}  // namespace leglab
