#include "leglab/moves.hpp"

#include "leglab/errors.hpp"
#include "leglab/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace leglab {

using cd = std::complex<double>;

namespace {

constexpr cd I(0.0, 1.0);

Vec2 to_vec(cd z) { return {z.real(), z.imag()}; }
cd to_c(const Vec2& p) { return {p.x(), p.y()}; }

template <int D>
Polyline<D> like(const Polyline<D>& model, std::vector<Eigen::Matrix<double, D, 1>> pts, bool closed) {
  return model.embedded() ? Polyline<D>(std::move(pts), closed) : Polyline<D>::immersed(std::move(pts), closed);
}

}  // namespace

cd mobius_arc(double s, double t) {
  if (!(s >= -1.0 && s <= 1.0) || !(t >= 0.0 && t <= 1.0))
    throw ValidationError("mobius_arc needs s in [-1,1] and t in [0,1]");
  if (s == 1.0 || s == -1.0) return {s, 0.0};
  const cd k = (1.0 - 2.0 * t) * I;
  return (s + k) / (k * s + 1.0);
}

double mobius_arc_parameter(cd w) {
  const cd s = (I - w) / (I * w - 1.0);
  return std::clamp(s.real(), -1.0, 1.0);
}

DiskChart::DiskChart(const Vec2& center, double scale, double rotation, double mobius_angle,
                     const Vec2& mobius_point)
    : center_(center), scale_(scale), rotation_(rotation), psi_(mobius_angle), a_(to_c(mobius_point)) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ValidationError("disk chart scale must be positive");
  if (!(std::abs(a_) < 1.0)) throw ValidationError("disk chart Moebius point must lie inside the unit disk");
  if (!center.allFinite() || !std::isfinite(rotation) || !std::isfinite(mobius_angle))
    throw ValidationError("disk chart parameters must be finite");
}

Vec2 DiskChart::map(cd w) const {
  const cd m = std::polar(1.0, psi_) * (w - a_) / (1.0 - std::conj(a_) * w);
  return center_ + to_vec(scale_ * std::polar(1.0, rotation_) * m);
}

cd DiskChart::inverse(const Vec2& p) const {
  const cd m = to_c(p - center_) / (scale_ * std::polar(1.0, rotation_));
  const cd mp = std::polar(1.0, -psi_) * m;
  return (mp + a_) / (1.0 + std::conj(a_) * mp);
}

double DiskChart::bilipschitz_analytic() const {
  const double r = std::abs(a_);
  const double sup = (1.0 + r) / (1.0 - r);
  const double inf = (1.0 - r) / (1.0 + r);
  return std::max({1.0, scale_ * sup, 1.0 / (scale_ * inf)});
}

double DiskChart::bilipschitz_estimate(int grid) const {
  if (grid < 2) throw ValidationError("bi-Lipschitz grid needs at least 2 points per axis");
  std::vector<cd> src;
  std::vector<Vec2> img;
  src.emplace_back(0.0, 0.0);
  for (int i = 1; i <= grid; ++i) {
    const double r = static_cast<double>(i) / grid;
    for (int j = 0; j < grid; ++j) src.push_back(std::polar(r, 2.0 * M_PI * j / grid));
  }
  for (const cd& w : src) img.push_back(map(w));
  double best = 1.0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    for (std::size_t j = i + 1; j < src.size(); ++j) {
      const double ds = std::abs(src[j] - src[i]);
      const double di = (img[j] - img[i]).norm();
      best = std::max({best, di / ds, ds / di});
    }
  }
  return best;
}

std::vector<std::size_t> range_indices(std::size_t n, bool closed, IndexRange r) {
  if (r.first >= n || r.last >= n) throw ValidationError("index range out of bounds");
  if (r.first == r.last) throw ValidationError("index range must contain at least two vertices");
  std::vector<std::size_t> out;
  if (!closed) {
    if (r.first > r.last) throw ValidationError("index range on an open curve must be increasing");
    for (std::size_t k = r.first; k <= r.last; ++k) out.push_back(k);
    return out;
  }
  for (std::size_t k = r.first;; k = (k + 1) % n) {
    out.push_back(k);
    if (k == r.last) break;
  }
  return out;
}

IsotopyTrace<2> bypass_isotopy(const DiskChart& chart, const PlaneCurve& curve, IndexRange attach,
                               const std::vector<double>& times, const ContactForm* form) {
  if (times.empty()) throw ValidationError("bypass isotopy needs at least one time");
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] >= 0.0 && times[k] <= 1.0)) throw ValidationError("bypass times must lie in [0,1]");
    if (k > 0 && !(times[k] > times[k - 1])) throw ValidationError("bypass times must be increasing");
  }
  const std::vector<std::size_t> idx = range_indices(curve.size(), curve.closed(), attach);
  const double tol = 1e-8 * std::max(1.0, chart.scale());

  // Chart parameters of the attach vertices.
  std::vector<double> s(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const Vec2& p = curve[idx[k]];
    const cd w = chart.inverse(p);
    const cd on = w / std::abs(w);
    if ((chart.map(on) - p).norm() > tol || on.imag() < -1e-8)
      throw ValidationError("attach vertex " + std::to_string(idx[k]) + " is not on the chart's upper semicircle");
    s[k] = mobius_arc_parameter(on);
  }
  const bool forward = s.front() < s.back();
  const double s_start = forward ? -1.0 : 1.0;
  if ((curve[idx.front()] - chart.map(cd(s_start, 0))).norm() > tol ||
      (curve[idx.back()] - chart.map(cd(-s_start, 0))).norm() > tol)
    throw ValidationError("attach arc must run between chart(-1) and chart(1)");
  s.front() = s_start;
  s.back() = -s_start;
  for (std::size_t k = 1; k < s.size(); ++k)
    if (forward ? !(s[k] > s[k - 1]) : !(s[k] < s[k - 1]))
      throw ValidationError("attach arc must traverse the semicircle monotonically");

  // Disk interior must miss the rest of the curve.
  std::vector<bool> moving(curve.size(), false);
  for (std::size_t k : idx) moving[k] = true;
  const double rin = chart.scale() * (1.0 - 1e-9);
  for (std::size_t e = 0; e < curve.edge_count(); ++e) {
    const std::size_t a = e, b = (e + 1) % curve.size();
    if (moving[a] && moving[b]) continue;
    if (segment_distance<2>(curve.edge_start(e), curve.edge_end(e), chart.center(), chart.center()) < rin)
      throw ValidationError("chart disk meets the curve outside the attach arc (edge " + std::to_string(e) + ")");
  }

  IsotopyTrace<2> trace;
  for (double t : times) {
    PlaneCurve frame = curve;
    if (t != 0.0) {
      std::vector<Vec2> pts = curve.vertices();
      for (std::size_t k = 0; k < idx.size(); ++k) pts[idx[k]] = chart.map(mobius_arc(s[k], t));
      pts[idx.front()] = curve[idx.front()];
      pts[idx.back()] = curve[idx.back()];
      frame = like(curve, std::move(pts), curve.closed());
    }
    FrameReport rep;
    if (form) rep.beta_integral = line_integral_beta(*form, frame).total;
    if (frame.embedded()) rep.chord_arc = chord_arc_constant(frame).constant;
    std::vector<Vec2> moved;
    for (std::size_t k : idx) moved.push_back(frame[k]);
    rep.moved_chord_arc = chord_arc_constant(PlaneCurve(std::move(moved), false)).constant;
    trace.times.push_back(t);
    trace.frames.push_back(std::move(frame));
    trace.reports.push_back(rep);
  }
  return trace;
}

PlaneCurve corner_round(const PlaneCurve& curve, std::size_t vertex, double delta, int samples) {
  const std::size_t n = curve.size();
  if (vertex >= n) throw ValidationError("corner vertex out of range");
  if (!curve.closed() && (vertex == 0 || vertex + 1 == n))
    throw ValidationError("corner rounding needs an interior vertex");
  if (samples < 2) throw ValidationError("corner rounding needs at least 2 samples");
  const Vec2& v = curve[vertex];
  const Vec2& prev = curve[(vertex + n - 1) % n];
  const Vec2& next = curve[(vertex + 1) % n];
  const double lp = (prev - v).norm(), ln = (next - v).norm();
  const Vec2 up = (prev - v) / lp, un = (next - v) / ln;
  const double theta = angle_between(up, un);
  if (theta >= M_PI - 1e-12) throw ValidationError("vertex is straight; nothing to round");
  if (!(delta > 0.0)) throw ValidationError("corner rounding delta must be positive");
  if (delta > std::min(lp, ln) / 3.0) throw ValidationError("corner rounding delta exceeds a third of an edge");

  const Vec2 t1 = v + delta * up;
  const Vec2 t2 = v + delta * un;
  const Vec2 bis = (up + un).normalized();
  const Vec2 c = v + (delta / std::cos(theta / 2.0)) * bis;
  const double radius = delta * std::tan(theta / 2.0);
  const double a1 = std::atan2(t1.y() - c.y(), t1.x() - c.x());
  double sweep = std::atan2(t2.y() - c.y(), t2.x() - c.x()) - a1;
  while (sweep > M_PI) sweep -= 2.0 * M_PI;
  while (sweep <= -M_PI) sweep += 2.0 * M_PI;

  std::vector<Vec2> arc;
  arc.push_back(t1);
  for (int k = 1; k + 1 < samples; ++k) {
    const double a = a1 + sweep * k / (samples - 1);
    arc.push_back(c + radius * Vec2(std::cos(a), std::sin(a)));
  }
  arc.push_back(t2);

  std::vector<Vec2> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == vertex) {
      out.insert(out.end(), arc.begin(), arc.end());
    } else {
      out.push_back(curve[k]);
    }
  }
  return like(curve, std::move(out), curve.closed());
}

CorrectionSquare::CorrectionSquare(const Vec2& center, const Eigen::Matrix2d& A, double u_minus, double u_plus,
                                   double margin)
    : center_(center), A_(A), u_minus_(u_minus), u_plus_(u_plus), margin_(margin) {
  if (!center.allFinite() || !A.allFinite()) throw ValidationError("correction square parameters must be finite");
  if (!(std::abs(A.determinant()) > 1e-14 * std::max(1.0, A.squaredNorm())))
    throw ValidationError("correction square is degenerate");
  if (!(-1.0 < u_minus && u_minus < u_plus && u_plus < 1.0))
    throw ValidationError("correction square needs -1 < u_minus < u_plus < 1");
  if (!(margin > 0.0) || !(u_minus - margin > -1.0) || !(u_plus + margin < 1.0))
    throw ValidationError("cutoff margin must be positive and keep the cutoff inside the square");
  Ainv_ = A.inverse();
}

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

VectorField2 correction_field(const CorrectionSquare& square, const ContactForm& form, int sign) {
  if (sign != 1 && sign != -1) throw ValidationError("correction field sign must be +1 or -1");
  return [square, form, sign](const Vec2& p) -> Vec2 {
    const Vec2 uv = square.to_square(p);
    const double u = uv.x(), v = uv.y();
    if (!(std::abs(u) < 1.0 && std::abs(v) < 1.0)) return Vec2::Zero();
    const double f = form.dbeta(p) * square.det();
    const double m = square.margin();
    double g;
    if (sign > 0) {
      g = std::exp(1.0 / (u - 1.0)) * std::exp(1.0 / (v * v - 1.0)) *
          smooth_step((u - (square.u_minus() - m)) / m);
    } else {
      g = -std::exp(1.0 / (-u - 1.0)) * std::exp(1.0 / (v * v - 1.0)) *
          smooth_step(((square.u_plus() + m) - u) / m);
    }
    g /= std::abs(f);
    return square.matrix() * Vec2(g, 0.0);
  };
}

namespace {

double polyline_integral(const ContactForm& form, const std::vector<Vec2>& pts) {
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) s += form.segment_integral(pts[k], pts[k + 1]);
  return s;
}

}  // namespace

PlaneCurve square_side_path(const CorrectionSquare& square, const Vec2& from, const Vec2& to, int sign) {
  const Vec2 a = square.to_square(from), b = square.to_square(to);
  std::vector<Vec2> pts{from};
  auto push = [&](const Vec2& uv) {
    const Vec2 p = square.to_plane(uv);
    if ((p - pts.back()).norm() > 1e-12 * std::max(1.0, p.norm())) pts.push_back(p);
  };
  push(Vec2(sign, a.y()));
  push(Vec2(sign, b.y()));
  if ((to - pts.back()).norm() > 1e-12 * std::max(1.0, to.norm())) pts.push_back(to);
  else pts.back() = to;
  return PlaneCurve::immersed(std::move(pts), false);
}

double transported_loop_integral(const CorrectionSquare& square, const ContactForm& form, int sign,
                                 const PlaneCurve& moved_arc, const PlaneCurve& closing_arc, double t, long steps,
                                 PlaneCurve* arc_out) {
  std::vector<Vec2> pts = moved_arc.vertices();
  if (t > 0.0) {
    const VectorField2 X = correction_field(square, form, sign);
    pts = flow<2>(X, std::move(pts), t, t / static_cast<double>(steps));
  }
  const double val = polyline_integral(form, pts) + polyline_integral(form, closing_arc.vertices());
  if (arc_out) *arc_out = PlaneCurve::immersed(std::move(pts), false);
  return val;
}

CorrectionResult solve_correction(const CorrectionSquare& square, const ContactForm& form,
                                  const PlaneCurve& moved_arc, const PlaneCurve& closing_arc, double target,
                                  const CorrectionOptions& opt) {
  if (!(opt.step > 0.0) || !(opt.tol > 0.0) || !(opt.t_max > 0.0))
    throw ValidationError("correction step, tolerance and t_max must be positive");
  if (moved_arc.closed() || closing_arc.closed()) throw ValidationError("correction arcs must be open");
  const auto& mv = moved_arc.vertices();
  const double etol = 1e-9;
  const Vec2 s0 = square.to_square(mv.front()), s1 = square.to_square(mv.back());
  if (!(std::abs(std::abs(s0.y()) - 1.0) <= etol && std::abs(std::abs(s1.y()) - 1.0) <= etol &&
        s0.y() * s1.y() < 0.0))
    throw ValidationError("moved arc must run from side v=-1 to side v=+1 of the square");
  for (std::size_t k = 0; k < mv.size(); ++k) {
    const Vec2 uv = square.to_square(mv[k]);
    if (uv.x() < square.u_minus() - 1e-12 || uv.x() > square.u_plus() + 1e-12)
      throw ValidationError("moved arc leaves the u-band of the correction square");
    if (k > 0 && k + 1 < mv.size() && !(std::abs(uv.y()) < 1.0))
      throw ValidationError("moved arc interior must lie inside the square");
  }
  const double scale = std::max(1.0, moved_arc.bbox_diagonal());
  if ((closing_arc.vertices().front() - mv.back()).norm() > etol * scale ||
      (closing_arc.vertices().back() - mv.front()).norm() > etol * scale)
    throw ValidationError("closing arc must run from the moved arc's end back to its start");
  bool plus = false, minus = false;
  for (const auto& p : closing_arc.vertices()) {
    const double u = square.to_square(p).x();
    plus = plus || u >= 1.0 - etol;
    minus = minus || u <= -1.0 + etol;
  }
  if (plus == minus) throw ValidationError("closing arc must pass exactly one of the sides u=+1, u=-1");

  CorrectionResult res;
  res.sign = plus ? 1 : -1;
  res.initial = polyline_integral(form, mv) + polyline_integral(form, closing_arc.vertices());
  // Interior vertices slide to the side u = sign; the end points stay on v = -1, +1.
  std::vector<Vec2> pushed{mv.front()};
  for (std::size_t k = 1; k + 1 < mv.size(); ++k)
    pushed.push_back(square.to_plane(Vec2(res.sign, square.to_square(mv[k]).y())));
  pushed.push_back(mv.back());
  res.limit = polyline_integral(form, pushed) + polyline_integral(form, closing_arc.vertices());
  res.arc = moved_arc;
  res.achieved = res.initial;
  if (std::abs(target - res.initial) <= opt.tol) return res;

  const double dir = res.limit > res.initial ? 1.0 : -1.0;
  if (dir * (target - res.initial) < 0.0 || dir * (res.limit - target) <= opt.tol)
    throw RangeError("correction target " + std::to_string(target) + " outside attainable range (" +
                     std::to_string(res.initial) + ", " + std::to_string(res.limit) + ")");

  auto steps_for = [&](double t) { return std::max(1L, static_cast<long>(std::ceil(t / opt.step - 1e-12))); };
  auto eval = [&](double t, long steps, PlaneCurve* out) {
    ++res.evaluations;
    return transported_loop_integral(square, form, res.sign, moved_arc, closing_arc, t, steps, out);
  };

  double lo = 0.0, hi = 1.0 / 64.0;
  for (;;) {
    PlaneCurve arc;
    const double val = eval(hi, steps_for(hi), &arc);
    if (std::abs(val - target) <= opt.tol) {
      res.t = hi;
      res.achieved = val;
      res.arc = std::move(arc);
      return res;
    }
    if (dir * (val - target) > 0.0) break;
    lo = hi;
    hi *= 2.0;
    if (hi > opt.t_max) throw RangeError("correction root bracketing failed below t_max");
  }
  const long steps = steps_for(hi);
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    PlaneCurve arc;
    const double val = eval(mid, steps, &arc);
    if (std::abs(val - target) <= opt.tol) {
      res.t = mid;
      res.achieved = val;
      res.arc = std::move(arc);
      return res;
    }
    if (dir * (val - target) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw NumericalError("correction bisection did not reach the tolerance");
}

CurveCorrection correct_curve(const CorrectionSquare& square, const ContactForm& form, const PlaneCurve& curve,
                              IndexRange arc, double target_total, const CorrectionOptions& opt) {
  const std::vector<std::size_t> idx = range_indices(curve.size(), curve.closed(), arc);
  std::vector<Vec2> mv;
  for (std::size_t k : idx) mv.push_back(curve[k]);
  const PlaneCurve moved = PlaneCurve::immersed(mv, false);
  const double current = line_integral_beta(form, curve).total;
  const double delta = target_total - current;

  CurveCorrection out{curve, {}};
  out.result.arc = moved;
  out.result.initial = current;
  out.result.achieved = current;
  if (std::abs(delta) <= opt.tol) return out;

  const double moved_int = polyline_integral(form, mv);
  std::optional<CorrectionResult> solved;
  std::string why;
  for (int sign : {1, -1}) {
    // Closing arc: back along the chosen side, so the loop collapses to zero.
    PlaneCurve side = square_side_path(square, mv.front(), mv.back(), sign);
    std::vector<Vec2> back(side.vertices().rbegin(), side.vertices().rend());
    const PlaneCurve closing = PlaneCurve::immersed(std::move(back), false);
    const double loop0 = moved_int + polyline_integral(form, closing.vertices());
    const double target_loop = loop0 + delta;
    if (loop0 * target_loop <= 0.0 || std::abs(target_loop) >= std::abs(loop0)) continue;
    try {
      solved = solve_correction(square, form, moved, closing, target_loop, opt);
      break;
    } catch (const RangeError& e) {
      why = e.what();
    }
  }
  if (!solved)
    throw RangeError("no side of the correction square can absorb a change of " + std::to_string(delta) +
                     (why.empty() ? std::string() : " (" + why + ")"));

  std::vector<Vec2> pts = curve.vertices();
  const auto& moved_now = solved->arc.vertices();
  for (std::size_t k = 0; k < idx.size(); ++k) pts[idx[k]] = moved_now[k];
  out.curve = like(curve, std::move(pts), curve.closed());
  out.result = *solved;
  out.result.initial = current;
  out.result.achieved = line_integral_beta(form, out.curve).total;
  return out;
}

IsotopyLift legendrian_isotopy_lift(const ContactForm& form, const IsotopyTrace<2>& trace, std::size_t base,
                                    double z0, const IsotopyLiftOptions& opt) {
  if (trace.frames.empty()) throw ValidationError("isotopy trace has no frames");
  const PlaneCurve& first = trace.frames.front();
  if (base >= first.size()) throw ValidationError("base vertex out of range");
  IsotopyLift out;
  out.conserves_integral = true;
  double total0 = 0.0;
  for (std::size_t f = 0; f < trace.frames.size(); ++f) {
    const PlaneCurve& fr = trace.frames[f];
    if (fr.size() != first.size() || fr.closed() != first.closed())
      throw ValidationError("isotopy frames must share vertex count and closedness");
    if ((fr[base] - first[base]).norm() > 1e-12 * std::max(1.0, first.bbox_diagonal()))
      throw ValidationError("base vertex moves in frame " + std::to_string(f));

    LiftResult lr;
    if (fr.closed()) {
      std::vector<Vec2> rot;
      for (std::size_t k = 0; k < fr.size(); ++k) rot.push_back(fr[(base + k) % fr.size()]);
      lr = lift(form, like(fr, std::move(rot), true), z0, opt.subdivision, opt.closure_tol);
    } else {
      lr = lift(form, fr, z0, opt.subdivision, opt.closure_tol);
      // Shift so the base vertex sits at z0.
      std::vector<Vec3> pts = lr.curve.vertices();
      const double shift = z0 - pts[base * opt.subdivision].z();
      for (auto& p : pts) p.z() += shift;
      lr.curve = SpaceCurve::immersed(std::move(pts), false);
    }
    const double total = line_integral_beta(form, fr).total;
    if (f == 0) total0 = total;
    if (std::abs(total - total0) > opt.conservation_tol) out.conserves_integral = false;

    FrameReport rep;
    rep.beta_integral = total;
    rep.closure_defect = lr.closure_defect;
    rep.legendrian_residual = legendrian_residual(form, lr.curve).relative_residual;
    if (f < trace.reports.size()) {
      rep.chord_arc = trace.reports[f].chord_arc;
      rep.moved_chord_arc = trace.reports[f].moved_chord_arc;
    }
    out.trace.times.push_back(f < trace.times.size() ? trace.times[f] : 0.0);
    out.trace.frames.push_back(std::move(lr.curve));
    out.trace.reports.push_back(rep);
  }
  return out;
}

}  // namespace leglab
