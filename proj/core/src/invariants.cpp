#include "leglab/invariants.hpp"

#include "leglab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace leglab {

namespace {

struct Projector {
  Vec3 d, e1, e2;
  explicit Projector(const Vec3& dir) : d(dir.normalized()) {
    Vec3 axis = Vec3::UnitX();
    if (std::abs(d.y()) < std::abs(d.x()) && std::abs(d.y()) <= std::abs(d.z())) axis = Vec3::UnitY();
    if (std::abs(d.z()) < std::abs(d.x()) && std::abs(d.z()) < std::abs(d.y())) axis = Vec3::UnitZ();
    e1 = d.cross(axis).normalized();
    e2 = d.cross(e1);
  }
  Vec2 plane(const Vec3& p) const { return {p.dot(e1), p.dot(e2)}; }
  double height(const Vec3& p) const { return p.dot(d); }
};

struct Degenerate {};

// Crossing of edges (a0,a1) and (b0,b1) along the projector, if any.  Throws
// Degenerate for near-vertex or near-parallel touching configurations.
std::optional<CrossingRecord> cross_edges(const Projector& pr, const Vec3& a0, const Vec3& a1, const Vec3& b0,
                                          const Vec3& b1, double tol) {
  const Vec2 p = pr.plane(a0), p1 = pr.plane(a1), q = pr.plane(b0), q1 = pr.plane(b1);
  const Vec2 r = p1 - p, s = q1 - q;
  const double lo_x = std::min(p.x(), p1.x()), hi_x = std::max(p.x(), p1.x());
  if (std::max(q.x(), q1.x()) < lo_x - tol || std::min(q.x(), q1.x()) > hi_x + tol) return std::nullopt;
  const double lo_y = std::min(p.y(), p1.y()), hi_y = std::max(p.y(), p1.y());
  if (std::max(q.y(), q1.y()) < lo_y - tol || std::min(q.y(), q1.y()) > hi_y + tol) return std::nullopt;
  const double den = cross2(r, s);
  if (std::abs(den) <= 1e-12 * r.norm() * s.norm()) {
    if (segment_distance<2>(p, p1, q, q1) <= tol) throw Degenerate{};
    return std::nullopt;
  }
  const Vec2 w = q - p;
  const double ta = cross2(w, s) / den;
  const double tb = cross2(w, r) / den;
  constexpr double eta = 1e-9;
  if (ta < -eta || ta > 1.0 + eta || tb < -eta || tb > 1.0 + eta) {
    if (segment_distance<2>(p, p1, q, q1) <= tol) throw Degenerate{};
    return std::nullopt;
  }
  if (ta < eta || ta > 1.0 - eta || tb < eta || tb > 1.0 - eta) throw Degenerate{};
  const double ha = pr.height(a0) + ta * (pr.height(a1) - pr.height(a0));
  const double hb = pr.height(b0) + tb * (pr.height(b1) - pr.height(b0));
  if (std::abs(ha - hb) <= tol) throw Degenerate{};
  CrossingRecord c;
  c.param_a = ta;
  c.param_b = tb;
  c.point = p + ta * r;
  c.over = ha > hb ? 0 : 1;
  c.height_gap = std::abs(ha - hb);
  const Vec3 da = a1 - a0, db = b1 - b0;
  const Vec3 over = c.over == 0 ? da : db;
  const Vec3 under = c.over == 0 ? db : da;
  c.sign = over.dot(under.cross(pr.d)) > 0.0 ? 1 : -1;
  return c;
}

double joint_diag(const SpaceCurve& a, const SpaceCurve& b) {
  Vec3 lo = a[0], hi = a[0];
  for (const auto* c : {&a, &b})
    for (const auto& p : c->vertices()) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
  return (hi - lo).norm();
}

}  // namespace

const std::array<Vec3, 8>& generic_directions() {
  static const std::array<Vec3, 8> dirs = [] {
    std::array<Vec3, 8> d = {Vec3(0.31, 0.47, 0.83),   Vec3(-0.58, 0.21, 0.79), Vec3(0.67, -0.39, 0.63),
                             Vec3(-0.12, -0.71, 0.69), Vec3(0.83, 0.29, -0.47), Vec3(0.05, 0.93, 0.36),
                             Vec3(-0.74, -0.52, -0.43), Vec3(0.44, -0.81, -0.39)};
    for (auto& v : d) v.normalize();
    return d;
  }();
  return dirs;
}

std::optional<int> linking_along(const SpaceCurve& c1, const SpaceCurve& c2, const Vec3& direction,
                                 std::vector<CrossingRecord>* crossings) {
  if (!c1.closed() || !c2.closed()) throw ValidationError("linking number needs closed curves");
  const Projector pr(direction);
  const double tol = 1e-12 * joint_diag(c1, c2);
  std::vector<CrossingRecord> found;
  int sum = 0;
  try {
    for (std::size_t i = 0; i < c1.edge_count(); ++i) {
      for (std::size_t j = 0; j < c2.edge_count(); ++j) {
        auto c = cross_edges(pr, c1.edge_start(i), c1.edge_end(i), c2.edge_start(j), c2.edge_end(j), tol);
        if (!c) continue;
        c->edge_a = i;
        c->edge_b = j;
        sum += c->sign;
        found.push_back(*c);
      }
    }
  } catch (const Degenerate&) {
    return std::nullopt;
  }
  if (sum % 2 != 0) return std::nullopt;
  if (crossings) *crossings = std::move(found);
  return sum / 2;
}

double gauss_linking_integral(const SpaceCurve& c1, const SpaceCurve& c2) {
  double total = 0.0;
  auto unit = [](const Vec3& v, bool& ok) {
    const double n = v.norm();
    ok = ok && n > 0.0;
    return n > 0.0 ? Vec3(v / n) : Vec3::Zero();
  };
  auto sasin = [](double x) { return std::asin(std::clamp(x, -1.0, 1.0)); };
  for (std::size_t i = 0; i < c1.edge_count(); ++i) {
    const Vec3& p1 = c1.edge_start(i);
    const Vec3& p2 = c1.edge_end(i);
    for (std::size_t j = 0; j < c2.edge_count(); ++j) {
      const Vec3& p3 = c2.edge_start(j);
      const Vec3& p4 = c2.edge_end(j);
      const Vec3 r13 = p3 - p1, r14 = p4 - p1, r23 = p3 - p2, r24 = p4 - p2;
      bool ok = true;
      const Vec3 n1 = unit(r13.cross(r14), ok), n2 = unit(r14.cross(r24), ok), n3 = unit(r24.cross(r23), ok),
                 n4 = unit(r23.cross(r13), ok);
      if (!ok) continue;
      const double omega = sasin(n1.dot(n2)) + sasin(n2.dot(n3)) + sasin(n3.dot(n4)) + sasin(n4.dot(n1));
      const double s = (p4 - p3).cross(p2 - p1).dot(r13);
      if (s == 0.0) continue;
      total += s > 0.0 ? omega : -omega;
    }
  }
  return total / (4.0 * M_PI);
}

LinkingResult linking(const SpaceCurve& c1, const SpaceCurve& c2) {
  const auto& dirs = generic_directions();
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    std::vector<CrossingRecord> cr;
    const auto v = linking_along(c1, c2, dirs[k], &cr);
    if (!v) continue;
    LinkingResult res;
    res.value = *v;
    res.direction_index = k;
    res.direction = dirs[k];
    res.crossings = std::move(cr);
    res.gauss = gauss_linking_integral(c1, c2);
    if (!(std::abs(res.gauss - res.value) < 0.5))
      throw NumericalError("crossing count " + std::to_string(res.value) + " disagrees with Gauss integral " +
                           std::to_string(res.gauss));
    return res;
  }
  throw GenericityError("all projection directions are degenerate for this pair of curves");
}

int linking_number(const SpaceCurve& c1, const SpaceCurve& c2) { return linking(c1, c2).value; }

std::vector<CrossingRecord> self_crossings(const SpaceCurve& curve, const Vec3& direction) {
  const Projector pr(direction);
  const double tol = 1e-12 * curve.bbox_diagonal();
  const std::size_t m = curve.edge_count();
  std::vector<CrossingRecord> out;
  auto adjacent = [&](std::size_t e, std::size_t f) {
    if (f - e == 1) return true;
    return curve.closed() && e == 0 && f == m - 1;
  };
  try {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (adjacent(i, j)) continue;
        auto c = cross_edges(pr, curve.edge_start(i), curve.edge_end(i), curve.edge_start(j), curve.edge_end(j), tol);
        if (!c) continue;
        c->edge_a = i;
        c->edge_b = j;
        out.push_back(*c);
      }
    }
  } catch (const Degenerate&) {
    throw GenericityError("projection is not generic (crossing at a vertex or overlapping edges)");
  }
  return out;
}

int writhe(const SpaceCurve& curve, const Vec3& direction) {
  int w = 0;
  for (const auto& c : self_crossings(curve, direction)) w += c.sign;
  return w;
}

TbResult thurston_bennequin(const ContactForm& form, const SpaceCurve& curve, const TbOptions& opt) {
  if (!curve.closed()) throw ValidationError("Thurston-Bennequin number needs a closed curve");
  TbResult res;
  const LegendrianVerdict verdict = legendrian_residual(form, curve, opt.legendrian_tol);
  res.relative_residual = verdict.relative_residual;
  if (opt.check_legendrian && !verdict.legendrian)
    throw PreconditionError("curve is not Legendrian (relative residual " +
                            std::to_string(verdict.relative_residual) + ")");
  res.crossings = self_crossings(curve, Vec3::UnitZ());
  res.writhe = 0;
  res.min_clearance = std::numeric_limits<double>::infinity();
  for (const auto& c : res.crossings) {
    res.writhe += c.sign;
    res.min_clearance = std::min(res.min_clearance, c.height_gap);
  }
  const double diag = curve.bbox_diagonal();
  if (res.crossings.empty()) {
    res.epsilon = 1e-3 * diag;
  } else {
    if (res.min_clearance <= 1e-9 * diag)
      throw NumericalError("crossing height ambiguity: strands nearly meet at a crossing");
    res.epsilon = res.min_clearance / 10.0;
  }
  std::vector<Vec3> pushed = curve.vertices();
  for (auto& p : pushed) p.z() += res.epsilon;
  const SpaceCurve other = SpaceCurve::immersed(std::move(pushed), true);
  res.pushoff_linking = linking_number(curve, other);
  if (res.pushoff_linking != res.writhe)
    throw NumericalError("push-off linking number " + std::to_string(res.pushoff_linking) +
                         " disagrees with writhe " + std::to_string(res.writhe));
  res.tb = res.writhe;
  return res;
}

Collar collar_from_curve(const PlaneCurve& curve, const std::vector<double>& offsets) {
  if (!curve.closed()) throw ValidationError("collar needs a closed curve");
  if (offsets.empty()) throw ValidationError("collar needs at least one offset");
  const std::size_t n = curve.size();
  Collar c;
  c.offsets = offsets;
  std::vector<Vec2> normal(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 t = (curve[(i + 1) % n] - curve[(i + n - 1) % n]).normalized();
    normal[i] = Vec2(-t.y(), t.x());
  }
  for (double off : offsets) {
    std::vector<Vec2> row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = curve[i] + off * normal[i];
    c.rows.push_back(std::move(row));
  }
  return c;
}

SpaceCurve transverse_pushoff(const ContactForm& form, const Collar& collar, std::size_t row, double z0) {
  if (row >= collar.rows.size()) throw ValidationError("collar row out of range");
  const auto& r = collar.rows[row];
  if (r.size() < 3) throw ValidationError("collar row must be a closed curve with at least 3 points");
  if ((r.front() - r.back()).norm() == 0.0)
    throw ValidationError("collar row repeats its first point; rows are closed implicitly");
  const PlaneCurve pc = PlaneCurve::immersed(r, true);
  const BetaIntegral bi = line_integral_beta(form, pc);
  const double n = static_cast<double>(r.size());
  std::vector<Vec3> pts(r.size());
  for (std::size_t k = 0; k < r.size(); ++k)
    pts[k] = Vec3(r[k].x(), r[k].y(), z0 - bi.cumulative[k] + (static_cast<double>(k) / n) * bi.total);
  return SpaceCurve::immersed(std::move(pts), true);
}

}  // namespace leglab
