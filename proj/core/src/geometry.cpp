#include "leglab/geometry.hpp"

#include "leglab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace leglab {

namespace {

template <int D>
using Pt = Eigen::Matrix<double, D, 1>;

template <int D>
double diag_of(const std::vector<Pt<D>>& v) {
  if (v.empty()) return 0.0;
  Pt<D> lo = v[0], hi = v[0];
  for (const auto& p : v) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

template <int D>
void check_basic(const std::vector<Pt<D>>& v, bool closed) {
  const std::size_t need = closed ? 3 : 2;
  if (v.size() < need)
    throw DegenerateInputError("polyline needs at least " + std::to_string(need) + " vertices");
  for (const auto& p : v)
    if (!p.allFinite()) throw DegenerateInputError("polyline vertex is not finite");
  const double diag = diag_of<D>(v);
  if (!(diag > 0.0)) throw DegenerateInputError("all polyline vertices coincide");
  const double tol = kDistinctTol * diag;
  const std::size_t n = v.size();
  const std::size_t edges = closed ? n : n - 1;
  for (std::size_t e = 0; e < edges; ++e) {
    if ((v[(e + 1) % n] - v[e]).norm() <= tol)
      throw DegenerateInputError("coincident consecutive vertices at index " + std::to_string(e));
  }
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

template <int D>
double vec_angle(const Pt<D>& a, const Pt<D>& b) {
  if constexpr (D == 2) {
    return angle_between(Vec2(a), Vec2(b));
  } else {
    return angle_between(Vec3(a), Vec3(b));
  }
}

}  // namespace

double angle_between(const Vec2& a, const Vec2& b) {
  return std::atan2(std::abs(cross2(a, b)), a.dot(b));
}

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

// Closest distance between two segments (Ericson, Real-Time Collision
// Detection, 5.1.9), valid in any dimension.
template <int D>
double segment_distance(const Pt<D>& p0, const Pt<D>& p1, const Pt<D>& q0, const Pt<D>& q1) {
  const Pt<D> d1 = p1 - p0;
  const Pt<D> d2 = q1 - q0;
  const Pt<D> r = p0 - q0;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  double s = 0.0, t = 0.0;
  if (a <= 0.0 && e <= 0.0) return r.norm();
  if (a <= 0.0) {
    t = clamp01(f / e);
  } else {
    const double c = d1.dot(r);
    if (e <= 0.0) {
      s = clamp01(-c / a);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > 0.0 ? clamp01((b * f - c * e) / denom) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = clamp01(-c / a);
      } else if (t > 1.0) {
        t = 1.0;
        s = clamp01((b - c) / a);
      }
    }
  }
  return ((p0 + s * d1) - (q0 + t * d2)).norm();
}

template <int D>
std::optional<std::pair<std::size_t, std::size_t>> find_self_intersection(const std::vector<Pt<D>>& v,
                                                                          bool closed, double tol) {
  const std::size_t n = v.size();
  const std::size_t m = closed ? n : n - 1;
  if (m < 2) return std::nullopt;
  struct Box {
    double lo, hi;
    std::size_t e;
  };
  std::vector<Box> boxes(m);
  for (std::size_t e = 0; e < m; ++e) {
    const double x0 = v[e].x(), x1 = v[(e + 1) % n].x();
    boxes[e] = {std::min(x0, x1) - tol, std::max(x0, x1) + tol, e};
  }
  std::sort(boxes.begin(), boxes.end(), [](const Box& a, const Box& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.e < b.e);
  });
  auto adjacent = [&](std::size_t e, std::size_t f) {
    if (e > f) std::swap(e, f);
    if (f - e == 1) return true;
    return closed && e == 0 && f == m - 1;
  };
  for (std::size_t ii = 0; ii < m; ++ii) {
    const Box& bi = boxes[ii];
    for (std::size_t jj = ii + 1; jj < m && boxes[jj].lo <= bi.hi; ++jj) {
      std::size_t e = bi.e, f = boxes[jj].e;
      const Pt<D>& a0 = v[e];
      const Pt<D>& a1 = v[(e + 1) % n];
      const Pt<D>& b0 = v[f];
      const Pt<D>& b1 = v[(f + 1) % n];
      if (adjacent(e, f)) {
        // Adjacent edges share one vertex; they overlap only if folded back.
        if (m == 2 && closed) continue;
        std::size_t first = e, second = f;
        if (!((first + 1) % n == second)) std::swap(first, second);
        const Pt<D>& shared = v[second];
        const Pt<D>& pa = v[first];
        const Pt<D>& pc = v[(second + 1) % n];
        if (segment_distance<D>(pc, pc, pa, shared) <= tol || segment_distance<D>(pa, pa, shared, pc) <= tol)
          return std::make_pair(std::min(e, f), std::max(e, f));
        continue;
      }
      if (segment_distance<D>(a0, a1, b0, b1) <= tol) return std::make_pair(std::min(e, f), std::max(e, f));
    }
  }
  return std::nullopt;
}

template <int D>
Polyline<D>::Polyline(std::vector<Point> vertices, bool closed) : v_(std::move(vertices)), closed_(closed) {
  check_basic<D>(v_, closed_);
  const double tol = kEmbeddedTol * diag_of<D>(v_);
  if (auto hit = find_self_intersection<D>(v_, closed_, tol))
    throw NotEmbeddedError("polyline is not embedded: edges " + std::to_string(hit->first) + " and " +
                           std::to_string(hit->second) + " meet");
  embedded_ = true;
}

template <int D>
Polyline<D> Polyline<D>::immersed(std::vector<Point> vertices, bool closed) {
  check_basic<D>(vertices, closed);
  Polyline<D> c;
  c.v_ = std::move(vertices);
  c.closed_ = closed;
  const double tol = kEmbeddedTol * diag_of<D>(c.v_);
  c.embedded_ = !find_self_intersection<D>(c.v_, closed, tol).has_value();
  return c;
}

template <int D>
double Polyline<D>::bbox_diagonal() const {
  return diag_of<D>(v_);
}

template <int D>
std::vector<double> cumulative_length(const Polyline<D>& c) {
  const std::size_t m = c.edge_count();
  std::vector<double> s(m + 1, 0.0);
  for (std::size_t e = 0; e < m; ++e) s[e + 1] = s[e] + (c.edge_end(e) - c.edge_start(e)).norm();
  return s;
}

template <int D>
double arc_length(const Polyline<D>& c) {
  double total = 0.0;
  for (std::size_t e = 0; e < c.edge_count(); ++e) total += (c.edge_end(e) - c.edge_start(e)).norm();
  return total;
}

namespace {

struct RatioMax {
  double value = 0.0;
  double beta = 0.0;
};

// max over beta in [lo, hi] of (c0 + sigma*beta) / sqrt(q + 2 p beta + beta^2).
// The derivative's sign is that of a linear function of beta, so the maximum
// sits at an endpoint or at the single stationary point.
RatioMax ratio_max(double c0, double sigma, double q, double p, double lo, double hi) {
  RatioMax best;
  best.value = -1.0;
  auto eval = [&](double b) {
    const double d2 = q + 2.0 * p * b + b * b;
    if (!(d2 > 0.0)) return;
    const double val = (c0 + sigma * b) / std::sqrt(d2);
    if (val > best.value) {
      best.value = val;
      best.beta = b;
    }
  };
  if (hi < lo) return best;
  eval(lo);
  eval(hi);
  const double den = c0 - sigma * p;
  if (den != 0.0) {
    const double bs = (sigma * q - c0 * p) / den;
    if (bs > lo && bs < hi) eval(bs);
  }
  return best;
}

}  // namespace

template <int D>
ChordArcReport chord_arc_constant(const Polyline<D>& c) {
  if (!c.embedded()) throw NotEmbeddedError("chord-arc constant needs an embedded curve");
  const auto& v = c.vertices();
  const std::size_t n = v.size();
  const std::size_t m = c.edge_count();
  const bool closed = c.closed();
  const std::vector<double> S = cumulative_length(c);
  const double L = S[m];

  ChordArcReport rep;
  rep.length = L;

  auto arc_between = [&](double a, double b) {  // a <= b, positions along the curve
    const double fwd = b - a;
    return closed ? std::min(fwd, L - fwd) : fwd;
  };

  // Vertex pairs.
  double vbest = 1.0;
  std::pair<std::size_t, std::size_t> vw{0, n - 1};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = (v[j] - v[i]).norm();
      if (!(d > 0.0)) throw DegenerateInputError("coincident vertices in chord-arc evaluation");
      const double r = arc_between(S[i], S[j]) / d;
      if (r > vbest) {
        vbest = r;
        vw = {i, j};
      }
    }
  }
  rep.vertex_constant = vbest;
  rep.vertex_witness = vw;

  double best = vbest;
  std::pair<EdgePoint, EdgePoint> witness{{vw.first < m ? vw.first : m - 1, vw.first < m ? 0.0 : 1.0},
                                          {vw.second < m ? vw.second : m - 1, vw.second < m ? 0.0 : 1.0}};

  std::vector<double> len(m);
  std::vector<Pt<D>> dir(m);
  for (std::size_t e = 0; e < m; ++e) {
    const Pt<D> d = c.edge_end(e) - c.edge_start(e);
    len[e] = d.norm();
    dir[e] = d / len[e];
  }

  // Adjacent edges: the supremum is 1/sin(theta/2), approached along the
  // bisector-symmetric pairs at the shared corner.
  auto corner = [&](std::size_t ein, std::size_t eout) {
    const double th = vec_angle<D>(-dir[ein], dir[eout]);
    const double r = 1.0 / std::sin(th / 2.0);
    if (r > best) {
      best = r;
      const double x = 0.5 * std::min(len[ein], len[eout]);
      witness = {{ein, 1.0 - x / len[ein]}, {eout, x / len[eout]}};
    }
  };
  for (std::size_t e = 0; e + 1 < m; ++e) corner(e, e + 1);
  if (closed) corner(m - 1, 0);

  auto adjacent = [&](std::size_t e, std::size_t f) {
    if (f - e == 1) return true;
    return closed && e == 0 && f == m - 1;
  };

  for (std::size_t i = 0; i < m; ++i) {
    const Pt<D>& pi = c.edge_start(i);
    for (std::size_t j = i + 1; j < m; ++j) {
      if (adjacent(i, j)) continue;
      const Pt<D>& pj = c.edge_start(j);
      double lmax = S[j] + len[j] - S[i];
      if (closed) lmax = std::min(lmax, 0.5 * L);
      const double sd = segment_distance<D>(pi, c.edge_end(i), pj, c.edge_end(j));
      if (!(sd > 0.0)) throw NotEmbeddedError("non-adjacent edges touch");
      if (lmax / sd <= best) continue;

      auto inner = [&](double alpha) {
        const Pt<D> P = pi + alpha * dir[i];
        const Pt<D> w = pj - P;
        const double q = w.squaredNorm();
        const double p = w.dot(dir[j]);
        const double c0 = S[j] - S[i] - alpha;
        if (!closed) return ratio_max(c0, 1.0, q, p, 0.0, len[j]);
        const double split = 0.5 * L - c0;
        RatioMax a = ratio_max(c0, 1.0, q, p, 0.0, std::min(len[j], split));
        RatioMax b = ratio_max(L - c0, -1.0, q, p, std::max(0.0, split), len[j]);
        return a.value >= b.value ? a : b;
      };

      double abest = 0.0;
      RatioMax rbest;
      rbest.value = -1.0;
      auto consider = [&](double alpha) {
        RatioMax r = inner(alpha);
        if (r.value > rbest.value) {
          rbest = r;
          abest = alpha;
        }
        return r.value;
      };
      // Coarse scan, then golden-section refinement: the ratio of a concave
      // arc length to a convex distance is quasiconcave, and so is its
      // partial maximum over beta.
      constexpr int kScan = 8;
      double vals[kScan + 1];
      int kbest = 0;
      for (int k = 0; k <= kScan; ++k) {
        vals[k] = consider(len[i] * k / kScan);
        if (vals[k] > vals[kbest]) kbest = k;
      }
      double lo = len[i] * std::max(0, kbest - 1) / kScan;
      double hi = len[i] * std::min(kScan, kbest + 1) / kScan;
      const double g = 0.5 * (std::sqrt(5.0) - 1.0);
      double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
      double f1 = consider(x1), f2 = consider(x2);
      for (int it = 0; it < 80 && hi - lo > 1e-15 * len[i]; ++it) {
        if (f1 < f2) {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + g * (hi - lo);
          f2 = consider(x2);
        } else {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - g * (hi - lo);
          f1 = consider(x1);
        }
      }
      if (rbest.value > best) {
        best = rbest.value;
        witness = {{i, abest / len[i]}, {j, rbest.beta / len[j]}};
      }
    }
  }

  best = std::max(best, 1.0);
  if (best - 1.0 <= 8.0 * std::numeric_limits<double>::epsilon()) best = 1.0;
  rep.constant = best;
  rep.witness = witness;
  return rep;
}

template <int D>
CornerAngle min_corner_angle(const Polyline<D>& c) {
  CornerAngle out;
  const auto& v = c.vertices();
  const std::size_t n = v.size();
  auto at = [&](std::size_t prev, std::size_t k, std::size_t next) {
    const Pt<D> a = v[prev] - v[k];
    const Pt<D> b = v[next] - v[k];
    const double ang = vec_angle<D>(a, b);
    if (ang < out.angle || (out.vertex == npos && ang <= out.angle)) {
      out.angle = ang;
      out.vertex = k;
    }
  };
  if (c.closed()) {
    for (std::size_t k = 0; k < n; ++k) at((k + n - 1) % n, k, (k + 1) % n);
  } else {
    for (std::size_t k = 1; k + 1 < n; ++k) at(k - 1, k, k + 1);
  }
  return out;
}

template <int D>
double bilipschitz_constant(const Polyline<D>& source, const Polyline<D>& image) {
  if (source.size() != image.size())
    throw ValidationError("bilipschitz_constant needs equal vertex counts (" + std::to_string(source.size()) +
                          " vs " + std::to_string(image.size()) + ")");
  const auto& a = source.vertices();
  const auto& b = image.vertices();
  double best = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const double da = (a[j] - a[i]).norm();
      const double db = (b[j] - b[i]).norm();
      if (!(da > 0.0) || !(db > 0.0)) throw DegenerateInputError("coincident vertices in bi-Lipschitz evaluation");
      const double r = db / da;
      best = std::max(best, std::max(r, 1.0 / r));
    }
  }
  return best;
}

template <int D>
Polyline<D> subarc(const Polyline<D>& c, std::size_t i, std::size_t j) {
  const std::size_t n = c.size();
  if (i >= n || j >= n) throw ValidationError("subarc index out of range");
  if (i == j) throw ValidationError("subarc needs distinct indices");
  std::vector<Pt<D>> out;
  const auto& v = c.vertices();
  if (!c.closed()) {
    if (i < j) {
      for (std::size_t k = i; k <= j; ++k) out.push_back(v[k]);
    } else {
      for (std::size_t k = i + 1; k-- > j;) out.push_back(v[k]);
    }
  } else {
    const std::vector<double> S = cumulative_length(c);
    const double L = S.back();
    const double fwd = j > i ? S[j] - S[i] : L - (S[i] - S[j]);
    if (fwd <= L - fwd) {
      for (std::size_t k = i;; k = (k + 1) % n) {
        out.push_back(v[k]);
        if (k == j) break;
      }
    } else {
      for (std::size_t k = i;; k = (k + n - 1) % n) {
        out.push_back(v[k]);
        if (k == j) break;
      }
    }
  }
  return c.embedded() ? Polyline<D>(std::move(out), false) : Polyline<D>::immersed(std::move(out), false);
}

namespace {

template <int D>
Polyline<D> split_edges(const Polyline<D>& c, const std::vector<int>& pieces) {
  std::vector<Pt<D>> out;
  for (std::size_t e = 0; e < c.edge_count(); ++e) {
    const Pt<D>& a = c.edge_start(e);
    const Pt<D>& b = c.edge_end(e);
    const int k = pieces[e];
    out.push_back(a);
    for (int s = 1; s < k; ++s) {
      const double t = static_cast<double>(s) / k;
      out.push_back(a + t * (b - a));
    }
  }
  if (!c.closed()) out.push_back(c.vertices().back());
  return c.embedded() ? Polyline<D>(std::move(out), c.closed()) : Polyline<D>::immersed(std::move(out), c.closed());
}

}  // namespace

template <int D>
Polyline<D> resample(const Polyline<D>& c, double max_edge) {
  if (!(max_edge > 0.0)) throw ValidationError("resample needs max_edge > 0");
  std::vector<int> pieces(c.edge_count());
  for (std::size_t e = 0; e < c.edge_count(); ++e) {
    const double l = (c.edge_end(e) - c.edge_start(e)).norm();
    pieces[e] = std::max(1, static_cast<int>(std::ceil(l / max_edge - 1e-12)));
  }
  return split_edges(c, pieces);
}

template <int D>
Polyline<D> subdivide(const Polyline<D>& c, int per_edge) {
  if (per_edge < 1) throw ValidationError("subdivision must be >= 1");
  if (per_edge == 1) return c;
  return split_edges(c, std::vector<int>(c.edge_count(), per_edge));
}

#define LEGLAB_INSTANTIATE(D)                                                                                       \
  template class Polyline<D>;                                                                                        \
  template double arc_length<D>(const Polyline<D>&);                                                                \
  template ChordArcReport chord_arc_constant<D>(const Polyline<D>&);                                                \
  template CornerAngle min_corner_angle<D>(const Polyline<D>&);                                                     \
  template double bilipschitz_constant<D>(const Polyline<D>&, const Polyline<D>&);                                  \
  template Polyline<D> subarc<D>(const Polyline<D>&, std::size_t, std::size_t);                                     \
  template Polyline<D> resample<D>(const Polyline<D>&, double);                                                     \
  template Polyline<D> subdivide<D>(const Polyline<D>&, int);                                                       \
  template std::vector<double> cumulative_length<D>(const Polyline<D>&);                                            \
  template double segment_distance<D>(const Pt<D>&, const Pt<D>&, const Pt<D>&, const Pt<D>&);                     \
  template std::optional<std::pair<std::size_t, std::size_t>> find_self_intersection<D>(const std::vector<Pt<D>>&, \
                                                                                        bool, double);

LEGLAB_INSTANTIATE(2)
LEGLAB_INSTANTIATE(3)

}  // namespace leglab
