#pragma once

#include "leglab/contact_form.hpp"
#include "leglab/geometry.hpp"

#include <array>
#include <optional>
#include <vector>

namespace leglab {

// One crossing of two projected edges.  `over` is 0 when edge_a is the upper
// strand (larger height along the projection direction), 1 otherwise.
struct CrossingRecord {
  std::size_t edge_a = 0;
  std::size_t edge_b = 0;
  Vec2 point = Vec2::Zero();  // in the projection plane's coordinates
  double param_a = 0.0;
  double param_b = 0.0;
  int sign = 0;  // sign of det(d_over, d_under, direction)
  int over = 0;
  double height_gap = 0.0;  // |height difference| at the crossing
};

// Fixed unit projection directions tried in order.
const std::array<Vec3, 8>& generic_directions();

struct LinkingResult {
  int value = 0;
  double gauss = 0.0;  // exact polygon Gauss integral (solid-angle form), before rounding
  std::size_t direction_index = 0;
  Vec3 direction = Vec3::UnitZ();
  std::vector<CrossingRecord> crossings;  // between the two curves along `direction`
};

// Half the signed crossing count between the projections, cross-checked
// against the Gauss integral.  Throws GenericityError if all 8 directions are
// degenerate, NumericalError if the two methods disagree.
LinkingResult linking(const SpaceCurve& c1, const SpaceCurve& c2);
int linking_number(const SpaceCurve& c1, const SpaceCurve& c2);

// Crossing-count linking number along one direction; nullopt when that
// projection is degenerate.
std::optional<int> linking_along(const SpaceCurve& c1, const SpaceCurve& c2, const Vec3& direction,
                                 std::vector<CrossingRecord>* crossings = nullptr);

// Exact Gauss linking integral of two closed polygons.
double gauss_linking_integral(const SpaceCurve& c1, const SpaceCurve& c2);

// Signed self-crossings of the projection along `direction`.
std::vector<CrossingRecord> self_crossings(const SpaceCurve& curve, const Vec3& direction);
int writhe(const SpaceCurve& curve, const Vec3& direction = Vec3::UnitZ());

struct TbOptions {
  bool check_legendrian = true;
  double legendrian_tol = kLegendrianTol;
};

struct TbResult {
  int tb = 0;
  int writhe = 0;
  int pushoff_linking = 0;
  double epsilon = 0.0;
  double min_clearance = 0.0;  // smallest |dz| at a crossing of the xy diagram (inf if none)
  double relative_residual = 0.0;
  std::vector<CrossingRecord> crossings;
};

// Writhe of the xy diagram, cross-checked against lk(L, L + eps z).
TbResult thurston_bennequin(const ContactForm& form, const SpaceCurve& curve, const TbOptions& opt = {});

// Rows of plane points f(s_k, t_j), s_k = 2 pi k / N; each row is a closed curve.
struct Collar {
  std::vector<std::vector<Vec2>> rows;
  std::vector<double> offsets;  // t value of each row
};

// Rows offset along the left unit normal of a closed plane curve by each signed distance.
Collar collar_from_curve(const PlaneCurve& curve, const std::vector<double>& offsets);

// z(s, t) = z0 - int_{f([0,s] x {t})} beta + (s / 2 pi) oint_{row t} beta.
SpaceCurve transverse_pushoff(const ContactForm& form, const Collar& collar, std::size_t row, double z0);

}  // namespace leglab
