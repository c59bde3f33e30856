#include "leglab/io.hpp"

#include "leglab/errors.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace leglab::io {

template <int D>
json to_json(const Polyline<D>& c) {
  json verts = json::array();
  for (const auto& p : c.vertices()) {
    json row = json::array();
    for (int i = 0; i < D; ++i) row.push_back(p[i]);
    verts.push_back(std::move(row));
  }
  return json{{"dim", D}, {"closed", c.closed()}, {"vertices", std::move(verts)}};
}

template json to_json<2>(const Polyline<2>&);
template json to_json<3>(const Polyline<3>&);

namespace {

template <int D>
Polyline<D> read_curve(const json& j) {
  if (!j.is_object() || !j.contains("vertices")) throw ValidationError("curve JSON needs a \"vertices\" array");
  const bool closed = j.value("closed", false);
  std::vector<Eigen::Matrix<double, D, 1>> pts;
  for (const auto& row : j.at("vertices")) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(D))
      throw ValidationError("curve vertex must have " + std::to_string(D) + " coordinates");
    Eigen::Matrix<double, D, 1> p;
    for (int i = 0; i < D; ++i) {
      if (!row[i].is_number()) throw ValidationError("curve vertex coordinates must be numbers");
      p[i] = row[i].get<double>();
    }
    pts.push_back(p);
  }
  return Polyline<D>::immersed(std::move(pts), closed);
}

int curve_dim(const json& j) {
  if (j.is_object() && j.contains("dim")) return j.at("dim").get<int>();
  if (j.is_object() && j.contains("vertices") && !j.at("vertices").empty())
    return static_cast<int>(j.at("vertices")[0].size());
  throw ValidationError("cannot determine curve dimension");
}

std::vector<PolyTerm> terms_from_json(const json& j) {
  std::vector<PolyTerm> out;
  if (j.is_null()) return out;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3) throw ValidationError("polynomial term must be [coef, px, py]");
    out.push_back({t[0].get<double>(), t[1].get<int>(), t[2].get<int>()});
  }
  return out;
}

json terms_to_json(const std::vector<PolyTerm>& terms) {
  json out = json::array();
  for (const auto& t : terms) out.push_back({t.coef, t.px, t.py});
  return out;
}

}  // namespace

AnyCurve curve_from_json(const json& j) {
  const int d = curve_dim(j);
  if (d == 2) return read_curve<2>(j);
  if (d == 3) return read_curve<3>(j);
  throw ValidationError("curve dimension must be 2 or 3");
}

PlaneCurve plane_curve_from_json(const json& j) {
  if (curve_dim(j) != 2) throw ValidationError("expected a planar curve");
  return read_curve<2>(j);
}

SpaceCurve space_curve_from_json(const json& j) {
  if (curve_dim(j) != 3) throw ValidationError("expected a space curve");
  return read_curve<3>(j);
}

json to_json(const Domain& d) {
  switch (d.kind) {
    case Domain::Kind::Plane:
      return json{{"kind", "plane"}};
    case Domain::Kind::Rect:
      return json{{"kind", "rect"}, {"xmin", d.xmin}, {"xmax", d.xmax}, {"ymin", d.ymin}, {"ymax", d.ymax}};
    case Domain::Kind::Annulus:
      return json{{"kind", "annulus"},
                  {"center", {d.center.x(), d.center.y()}},
                  {"r_inner", d.r_inner},
                  {"r_outer", d.r_outer}};
  }
  return json{};
}

Domain domain_from_json(const json& j) {
  if (j.is_null()) return Domain::plane();
  const std::string kind = j.value("kind", "plane");
  if (kind == "plane") return Domain::plane();
  if (kind == "rect")
    return Domain::rect(j.at("xmin").get<double>(), j.at("xmax").get<double>(), j.at("ymin").get<double>(),
                        j.at("ymax").get<double>());
  if (kind == "annulus") {
    const auto& c = j.at("center");
    return Domain::annulus(Vec2(c[0].get<double>(), c[1].get<double>()), j.at("r_inner").get<double>(),
                           j.at("r_outer").get<double>());
  }
  throw ValidationError("unknown domain kind: " + kind);
}

ContactForm form_from_name(const std::string& name) {
  if (name == "xdy") return ContactForm::xdy();
  if (name == "minus_ydx") return ContactForm::minus_ydx();
  if (name == "rot") return ContactForm::rot();
  throw ValidationError("unknown contact form: " + name + " (expected xdy, minus_ydx, rot or a JSON file)");
}

ContactForm form_from_json(const json& j) {
  if (j.is_string()) return form_from_name(j.get<std::string>());
  if (!j.is_object()) throw ValidationError("contact form JSON must be a name or an object");
  const std::string kind = j.value("kind", "poly");
  const Domain d = domain_from_json(j.contains("domain") ? j.at("domain") : json());
  if (kind == "xdy") return ContactForm::xdy(d);
  if (kind == "minus_ydx") return ContactForm::minus_ydx(d);
  if (kind == "rot") return ContactForm::rot(d);
  if (kind == "poly")
    return ContactForm::poly(terms_from_json(j.value("a_coeffs", json())), terms_from_json(j.value("b_coeffs", json())),
                             d);
  throw ValidationError("unknown contact form kind: " + kind);
}

json to_json(const ContactForm& form) {
  return json{{"kind", form.kind()},
              {"a_coeffs", terms_to_json(form.a_terms())},
              {"b_coeffs", terms_to_json(form.b_terms())},
              {"domain", to_json(form.domain())}};
}

json to_json(const FrameReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return json{{"beta_integral", opt(r.beta_integral)},
              {"chord_arc", opt(r.chord_arc)},
              {"moved_chord_arc", opt(r.moved_chord_arc)},
              {"legendrian_residual", opt(r.legendrian_residual)},
              {"closure_defect", opt(r.closure_defect)}};
}

template <int D>
json to_json(const IsotopyTrace<D>& trace) {
  json frames = json::array(), reports = json::array();
  for (const auto& f : trace.frames) frames.push_back(to_json(f));
  for (const auto& r : trace.reports) reports.push_back(to_json(r));
  return json{{"times", trace.times}, {"frames", std::move(frames)}, {"reports", std::move(reports)}};
}

template json to_json<2>(const IsotopyTrace<2>&);
template json to_json<3>(const IsotopyTrace<3>&);

json to_json(const CrossingRecord& c) {
  return json{{"edge_a", c.edge_a},   {"edge_b", c.edge_b},   {"x", c.point.x()}, {"y", c.point.y()},
              {"param_a", c.param_a}, {"param_b", c.param_b}, {"sign", c.sign},   {"over", c.over},
              {"height_gap", c.height_gap}};
}

std::string crossings_csv(const std::vector<CrossingRecord>& crossings) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "edge_a,edge_b,x,y,param_a,param_b,sign,over,height_gap\n";
  for (const auto& c : crossings)
    os << c.edge_a << ',' << c.edge_b << ',' << c.point.x() << ',' << c.point.y() << ',' << c.param_a << ','
       << c.param_b << ',' << c.sign << ',' << c.over << ',' << c.height_gap << '\n';
  return os.str();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("invalid JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
  if (!out) throw ValidationError("write failed: " + path);
}

template <int D>
std::vector<Vec2> xy(const Polyline<D>& c) {
  std::vector<Vec2> out;
  out.reserve(c.size() + 1);
  for (const auto& p : c.vertices()) out.emplace_back(p[0], p[1]);
  if (c.closed() && !out.empty()) out.push_back(out.front());
  return out;
}

template std::vector<Vec2> xy<2>(const Polyline<2>&);
template std::vector<Vec2> xy<3>(const Polyline<3>&);

std::string svg(const std::vector<std::vector<Vec2>>& frames, const SvgOptions& opt) {
  Vec2 lo(0, 0), hi(1, 1);
  bool any = false;
  for (const auto& f : frames)
    for (const auto& p : f) {
      if (!any) {
        lo = hi = p;
        any = true;
      }
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
  const double span = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-300});
  const double scale = (opt.size - 2.0 * opt.margin) / span;
  const Vec2 mid = 0.5 * (lo + hi);
  auto px = [&](const Vec2& p) {
    return Vec2(opt.size / 2.0 + (p.x() - mid.x()) * scale, opt.size / 2.0 - (p.y() - mid.y()) * scale);
  };

  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.size << "\" height=\"" << opt.size
     << "\" viewBox=\"0 0 " << opt.size << ' ' << opt.size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const std::size_t n = frames.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double opacity = n == 1 ? 1.0 : 0.15 + 0.85 * static_cast<double>(k) / (n - 1);
    os << "<polyline fill=\"none\" stroke=\"" << opt.color << "\" stroke-width=\"" << opt.stroke
       << "\" stroke-opacity=\"" << opacity << "\" points=\"";
    for (std::size_t i = 0; i < frames[k].size(); ++i) {
      const Vec2 q = px(frames[k][i]);
      os << (i ? " " : "") << q.x() << ',' << q.y();
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace leglab::io
