#pragma once

#include "leglab/contact_form.hpp"
#include "leglab/geometry.hpp"
#include "leglab/invariants.hpp"
#include "leglab/moves.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <variant>
#include <vector>

namespace leglab::io {

using json = nlohmann::json;

// {"dim": 2|3, "closed": bool, "vertices": [[x, y(, z)], ...]}
template <int D>
json to_json(const Polyline<D>& c);

using AnyCurve = std::variant<PlaneCurve, SpaceCurve>;

// Curves are read with the immersed factory; callers decide whether crossings are allowed.
AnyCurve curve_from_json(const json& j);
PlaneCurve plane_curve_from_json(const json& j);
SpaceCurve space_curve_from_json(const json& j);

// Built-in names (xdy, minus_ydx, rot) or
// {"kind": "poly", "a_coeffs": [[c, px, py], ...], "b_coeffs": [...], "domain": {...}}.
ContactForm form_from_json(const json& j);
ContactForm form_from_name(const std::string& name);
json to_json(const ContactForm& form);

json to_json(const Domain& d);
Domain domain_from_json(const json& j);

json to_json(const FrameReport& r);

template <int D>
json to_json(const IsotopyTrace<D>& trace);

json to_json(const CrossingRecord& c);
std::string crossings_csv(const std::vector<CrossingRecord>& crossings);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

struct SvgOptions {
  int size = 800;
  double margin = 20.0;
  double stroke = 1.0;
  std::string color = "#1f4e99";
};

// Projections to the xy-plane, auto-fit into a fixed square viewport.
// Several curves are drawn as frames with increasing opacity.
std::string svg(const std::vector<std::vector<Vec2>>& frames, const SvgOptions& opt = {});

template <int D>
std::vector<Vec2> xy(const Polyline<D>& c);

}  // namespace leglab::io
