#include "acceptance/acceptance.hpp"

#include "leglab/contact_form.hpp"
#include "leglab/errors.hpp"
#include "leglab/gallery.hpp"
#include "leglab/geometry.hpp"
#include "leglab/invariants.hpp"
#include "leglab/io.hpp"
#include "leglab/lifting.hpp"
#include "leglab/moves.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

using namespace leglab;
using json = nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitUsage = 64;
constexpr int kExitSuiteFailed = 1;

struct Common {
  bool json_out = false;
  bool timings = false;
};

ContactForm load_form(const std::string& spec) {
  if (std::filesystem::exists(spec)) return io::form_from_json(io::read_json_file(spec));
  return io::form_from_name(spec);
}

void write_json(const std::string& path, const json& j) { io::write_text_file(path, j.dump(2) + "\n"); }

template <int D>
void maybe_svg(const std::string& path, const std::vector<Polyline<D>>& frames) {
  if (path.empty()) return;
  std::vector<std::vector<Vec2>> xy;
  for (const auto& f : frames) xy.push_back(io::xy(f));
  io::write_text_file(path, io::svg(xy));
}

IndexRange to_range(const std::vector<std::size_t>& v) {
  if (v.size() != 2) throw ValidationError("index range needs two indices first,last");
  return {v[0], v[1]};
}

Vec2 to_vec2(const std::vector<double>& v, const char* what) {
  if (v.size() != 2) throw ValidationError(std::string(what) + " needs two numbers x,y");
  return {v[0], v[1]};
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0)) throw ValidationError(std::string(what) + " must be positive");
}

void check_input(const std::string& path) {
  if (!std::filesystem::exists(path)) throw ValidationError("input file not found: " + path);
}

void check_output(const std::string& path) {
  if (path.empty()) return;
  const auto dir = std::filesystem::path(path).parent_path();
  if (!dir.empty() && !std::filesystem::is_directory(dir))
    throw ValidationError("output directory does not exist: " + dir.string());
}

// Text mode prints the scalar fields of the report, one per line.
void print_text(const json& report) {
  for (auto it = report.begin(); it != report.end(); ++it) {
    if (it->is_object() || it->is_array()) continue;
    std::cout << it.key() << ": " << it->dump() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"leglab: Legendrian curves in contact 3-space"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--json", common.json_out, "Print a JSON report on stdout");
  app.add_flag("--timings", common.timings, "Include wall-clock timings in JSON output");

  std::function<json()> action;
  // When set, text mode prints this instead of the generic key: value list.
  std::function<void(const json&)> text_printer;

  // gallery
  auto* gal = app.add_subcommand("gallery", "Generate a built-in example");
  std::string gal_name, gal_out, gal_svg;
  int gal_level = 3, gal_samples = 257;
  double gal_K = 1.0, gal_t0 = -1.0, gal_t1 = 1.0, gal_r0 = 0.5, gal_r1 = 1.0;
  gal->add_option("name", gal_name,
                  "cusp | spiral-leaf | lance-thomas | lance-thomas-unknot | lance-thomas-panels | figure-eight | "
                  "bypass-demo")
      ->required();
  gal->add_option("--level", gal_level, "Fractal level n")->capture_default_str();
  gal->add_option("--K", gal_K, "Height parameter K of the fractal unknot")->capture_default_str();
  gal->add_option("--samples", gal_samples, "Sample count")->capture_default_str();
  gal->add_option("--t0", gal_t0, "Cusp parameter start")->capture_default_str();
  gal->add_option("--t1", gal_t1, "Cusp parameter end")->capture_default_str();
  gal->add_option("--r0", gal_r0, "Spiral inner radius")->capture_default_str();
  gal->add_option("--r1", gal_r1, "Spiral outer radius")->capture_default_str();
  gal->add_option("--out", gal_out, "Output curve JSON (panels: SVG file prefix)");
  gal->add_option("--svg", gal_svg, "Also write an SVG plot");
  gal->callback([&] {
    action = [&]() -> json {
      check_output(gal_out);
      check_output(gal_svg);
      json rep{{"command", "gallery"}, {"name", gal_name}};
      auto emit = [&](const auto& curve) {
        if (!gal_out.empty()) write_json(gal_out, io::to_json(curve));
        using C = std::decay_t<decltype(curve)>;
        maybe_svg(gal_svg, std::vector<C>{curve});
        rep["vertices"] = curve.size();
        rep["closed"] = curve.closed();
      };
      if (gal_name == "cusp") {
        emit(cusp_curve(gal_t0, gal_t1, gal_samples));
      } else if (gal_name == "spiral-leaf") {
        emit(spiral_leaf(gal_r0, gal_r1, gal_samples));
      } else if (gal_name == "lance-thomas") {
        const LanceThomasLevel lv = lance_thomas_projection(gal_level, default_s_rule, gal_K);
        emit(lv.curve);
        rep["a_next"] = lv.a.back();
        rep["squares_finest"] = lv.squares.back().size();
      } else if (gal_name == "lance-thomas-unknot") {
        const LanceThomasUnknot u = lance_thomas_unknot(gal_level, gal_K);
        emit(u.curve);
        rep["endpoint_z"] = u.endpoint_z;
        rep["closure_defect"] = u.closure_defect;
        rep["return_height"] = u.h;
      } else if (gal_name == "lance-thomas-panels") {
        if (gal_out.empty()) throw ValidationError("lance-thomas-panels needs --out PREFIX");
        json files = json::array();
        for (int n = 1; n <= 4; ++n) {
          const std::string path = gal_out + "-" + std::to_string(n) + ".svg";
          io::write_text_file(path, io::svg({io::xy(lance_thomas_projection(n).curve)}));
          files.push_back(path);
        }
        rep["files"] = files;
      } else if (gal_name == "figure-eight") {
        emit(figure_eight_unknot(gal_samples % 2 == 0 ? gal_samples : gal_samples + 1));
      } else if (gal_name == "bypass-demo") {
        const BypassDemo d = bypass_demo();
        emit(d.curve);
        rep["attach"] = {d.attach.first, d.attach.last};
        rep["correction_arc"] = {d.correction_arc.first, d.correction_arc.last};
        rep["base"] = d.base;
      } else {
        throw ValidationError("unknown gallery example: " + gal_name);
      }
      return rep;
    };
  });

  // lift
  auto* lif = app.add_subcommand("lift", "Legendrian lift of a planar curve");
  std::string lif_form, lif_in, lif_out;
  double lif_z0 = 0.0, lif_tol = kClosureTol;
  int lif_sub = kDefaultSubdivision;
  lif->add_option("--form", lif_form, "xdy | minus_ydx | rot | form.json")->required();
  lif->add_option("--in", lif_in, "Planar curve JSON")->required();
  lif->add_option("--out", lif_out, "Output space curve JSON");
  lif->add_option("--z0", lif_z0, "Height of the first vertex")->capture_default_str();
  lif->add_option("--subdivision", lif_sub, "Samples per edge")->capture_default_str();
  lif->add_option("--closure-tol", lif_tol, "Relative closure tolerance")->capture_default_str();
  lif->callback([&] {
    action = [&]() -> json {
      check_input(lif_in);
      check_output(lif_out);
      check_positive(lif_tol, "--closure-tol");
      const LiftResult lr = lift(load_form(lif_form), io::plane_curve_from_json(io::read_json_file(lif_in)), lif_z0,
                                 lif_sub, lif_tol);
      if (!lif_out.empty()) write_json(lif_out, io::to_json(lr.curve));
      return json{{"command", "lift"},
                  {"closure_defect", lr.closure_defect},
                  {"closed", lr.curve.closed()},
                  {"vertices", lr.curve.size()},
                  {"scale", lr.scale}};
    };
  });

  // verify
  auto* ver = app.add_subcommand("verify", "Legendrian residual and angle profile");
  std::string ver_form, ver_in;
  double ver_tol = kLegendrianTol;
  std::vector<double> ver_radii;
  ver->add_option("--form", ver_form, "xdy | minus_ydx | rot | form.json")->required();
  ver->add_option("--in", ver_in, "Space curve JSON")->required();
  ver->add_option("--tol", ver_tol, "Relative residual tolerance")->capture_default_str();
  ver->add_option("--radii", ver_radii, "Angle profile radii")->delimiter(',');
  ver->callback([&] {
    action = [&]() -> json {
      check_input(ver_in);
      check_positive(ver_tol, "--tol");
      const LegendrianVerdict v = legendrian_residual(
          load_form(ver_form), io::space_curve_from_json(io::read_json_file(ver_in)), ver_tol, ver_radii);
      json rows = json::array();
      for (const auto& r : v.angle_profile)
        rows.push_back({{"radius", r.radius}, {"epsilon", r.epsilon}, {"vertex", r.vertex}});
      return json{{"command", "verify"},
                  {"residual", v.residual},
                  {"relative_residual", v.relative_residual},
                  {"tolerance", v.tolerance},
                  {"legendrian", v.legendrian},
                  {"arc_length", v.arc_length},
                  {"angle_profile", rows}};
    };
  });

  // chordarc
  auto* cha = app.add_subcommand("chordarc", "Chord-arc constant of a curve");
  std::string cha_in;
  cha->add_option("--in", cha_in, "Curve JSON (2D or 3D)")->required();
  cha->callback([&] {
    action = [&]() -> json {
      check_input(cha_in);
      const auto curve = io::curve_from_json(io::read_json_file(cha_in));
      return std::visit(
          [](const auto& c) -> json {
            const ChordArcReport r = chord_arc_constant(c);
            const CornerAngle a = min_corner_angle(c);
            return json{{"command", "chordarc"},
                        {"constant", r.constant},
                        {"vertex_constant", r.vertex_constant},
                        {"length", r.length},
                        {"witness", {{r.witness.first.edge, r.witness.first.param},
                                     {r.witness.second.edge, r.witness.second.param}}},
                        {"min_corner_angle", a.angle}};
          },
          curve);
    };
  });

  // bypass
  auto* byp = app.add_subcommand("bypass", "Bypass isotopy of a planar curve");
  std::string byp_in, byp_out, byp_svg, byp_form;
  std::vector<double> byp_center{0.0, 0.0};
  double byp_scale = 1.0, byp_rot = 0.0;
  std::vector<std::size_t> byp_attach;
  int byp_frames = 33;
  byp->add_option("--in", byp_in, "Planar curve JSON")->required();
  byp->add_option("--center", byp_center, "Disk center x,y")->delimiter(',')->capture_default_str();
  byp->add_option("--scale", byp_scale, "Disk radius")->capture_default_str();
  byp->add_option("--rotation", byp_rot, "Chart rotation (radians)")->capture_default_str();
  byp->add_option("--attach", byp_attach, "Attaching arc vertex range first,last")->delimiter(',')->required();
  byp->add_option("--frames", byp_frames, "Number of equally spaced times in [0,1]")->capture_default_str();
  byp->add_option("--form", byp_form, "Report beta-integrals for this form");
  byp->add_option("--out", byp_out, "Output trace JSON");
  byp->add_option("--svg", byp_svg, "Plot of all frames");
  byp->callback([&] {
    action = [&]() -> json {
      check_input(byp_in);
      check_output(byp_out);
      check_output(byp_svg);
      if (byp_frames < 2) throw ValidationError("--frames must be at least 2");
      const PlaneCurve c = io::plane_curve_from_json(io::read_json_file(byp_in));
      const DiskChart chart(to_vec2(byp_center, "--center"), byp_scale, byp_rot);
      std::vector<double> times;
      for (int k = 0; k < byp_frames; ++k) times.push_back(k + 1 == byp_frames ? 1.0 : double(k) / (byp_frames - 1));
      std::optional<ContactForm> form;
      if (!byp_form.empty()) form = load_form(byp_form);
      const auto tr = bypass_isotopy(chart, c, to_range(byp_attach), times, form ? &*form : nullptr);
      if (!byp_out.empty()) write_json(byp_out, io::to_json(tr));
      maybe_svg(byp_svg, tr.frames);
      double worst = 0.0;
      for (const auto& r : tr.reports)
        if (r.moved_chord_arc) worst = std::max(worst, *r.moved_chord_arc);
      return json{{"command", "bypass"},
                  {"frames", tr.frames.size()},
                  {"max_moved_chord_arc", worst},
                  {"chart_bilipschitz", chart.bilipschitz_analytic()}};
    };
  });

  // smooth
  auto* smo = app.add_subcommand("smooth", "Round one corner by a circular arc");
  std::string smo_in, smo_out;
  std::size_t smo_vertex = 0;
  double smo_delta = 0.1;
  int smo_samples = 16;
  smo->add_option("--in", smo_in, "Planar curve JSON")->required();
  smo->add_option("--vertex", smo_vertex, "Corner vertex index")->required();
  smo->add_option("--delta", smo_delta, "Distance of the tangency points from the corner")->capture_default_str();
  smo->add_option("--samples", smo_samples, "Arc samples")->capture_default_str();
  smo->add_option("--out", smo_out, "Output curve JSON");
  smo->callback([&] {
    action = [&]() -> json {
      check_input(smo_in);
      check_output(smo_out);
      check_positive(smo_delta, "--delta");
      const PlaneCurve c = io::plane_curve_from_json(io::read_json_file(smo_in));
      const PlaneCurve r = corner_round(c, smo_vertex, smo_delta, smo_samples);
      if (!smo_out.empty()) write_json(smo_out, io::to_json(r));
      return json{{"command", "smooth"},
                  {"vertices", r.size()},
                  {"min_corner_angle_before", min_corner_angle(c).angle},
                  {"min_corner_angle_after", min_corner_angle(r).angle}};
    };
  });

  // correct
  auto* cor = app.add_subcommand("correct", "Restore the beta-integral inside a correction square");
  std::string cor_form, cor_in, cor_out;
  std::vector<double> cor_center{0.0, 0.0}, cor_matrix{1.0, 0.0, 0.0, 1.0};
  double cor_um = -0.5, cor_up = 0.5, cor_target = 0.0, cor_margin = kCutoffMargin;
  std::vector<std::size_t> cor_arc;
  CorrectionOptions cor_opt;
  cor->add_option("--form", cor_form, "xdy | minus_ydx | rot | form.json")->required();
  cor->add_option("--in", cor_in, "Planar curve JSON")->required();
  cor->add_option("--center", cor_center, "Square center x,y")->delimiter(',')->capture_default_str();
  cor->add_option("--matrix", cor_matrix, "Square matrix a,b,c,d (row major)")->delimiter(',')->capture_default_str();
  cor->add_option("--u-minus", cor_um, "Band lower edge")->capture_default_str();
  cor->add_option("--u-plus", cor_up, "Band upper edge")->capture_default_str();
  cor->add_option("--margin", cor_margin, "Cutoff margin")->capture_default_str();
  cor->add_option("--arc", cor_arc, "Moved subarc vertex range first,last")->delimiter(',')->required();
  cor->add_option("--target", cor_target, "Target total beta-integral")->capture_default_str();
  cor->add_option("--step", cor_opt.step, "RK4 step")->capture_default_str();
  cor->add_option("--tol", cor_opt.tol, "Target tolerance")->capture_default_str();
  cor->add_option("--out", cor_out, "Output curve JSON");
  cor->callback([&] {
    action = [&]() -> json {
      check_input(cor_in);
      check_output(cor_out);
      if (cor_matrix.size() != 4) throw ValidationError("--matrix needs four numbers");
      Eigen::Matrix2d A;
      A << cor_matrix[0], cor_matrix[1], cor_matrix[2], cor_matrix[3];
      const CorrectionSquare sq(to_vec2(cor_center, "--center"), A, cor_um, cor_up, cor_margin);
      const ContactForm form = load_form(cor_form);
      const CurveCorrection cc = correct_curve(sq, form, io::plane_curve_from_json(io::read_json_file(cor_in)),
                                               to_range(cor_arc), cor_target, cor_opt);
      if (!cor_out.empty()) write_json(cor_out, io::to_json(cc.curve));
      return json{{"command", "correct"},
                  {"initial", cc.result.initial},
                  {"achieved", cc.result.achieved},
                  {"target", cor_target},
                  {"flow_time", cc.result.t},
                  {"side", cc.result.sign}};
    };
  });

  // tb
  auto* tbc = app.add_subcommand("tb", "Thurston-Bennequin number of a closed Legendrian curve");
  std::string tb_form, tb_in, tb_csv;
  bool tb_strict = false;
  tbc->add_option("--form", tb_form, "xdy | minus_ydx | rot | form.json")->required();
  tbc->add_option("--in", tb_in, "Closed space curve JSON")->required();
  tbc->add_flag("--strict", tb_strict, "Reject curves failing the Legendrian residual check");
  tbc->add_option("--csv", tb_csv, "Write the crossings of the xy diagram as CSV");
  tbc->callback([&] {
    action = [&]() -> json {
      check_input(tb_in);
      check_output(tb_csv);
      TbOptions opt;
      opt.check_legendrian = tb_strict;
      const TbResult r =
          thurston_bennequin(load_form(tb_form), io::space_curve_from_json(io::read_json_file(tb_in)), opt);
      if (!tb_csv.empty()) io::write_text_file(tb_csv, io::crossings_csv(r.crossings));
      return json{{"command", "tb"},
                  {"tb", r.tb},
                  {"writhe", r.writhe},
                  {"pushoff_linking", r.pushoff_linking},
                  {"epsilon", r.epsilon},
                  {"relative_residual", r.relative_residual},
                  {"crossings", r.crossings.size()}};
    };
    text_printer = [](const json& j) { std::cout << j.at("tb").get<int>() << "\n"; };
  });

  // link
  auto* lnk = app.add_subcommand("link", "Linking number of two closed space curves");
  std::string lnk_a, lnk_b, lnk_csv;
  lnk->add_option("--in", lnk_a, "First closed curve JSON")->required();
  lnk->add_option("--in2", lnk_b, "Second closed curve JSON")->required();
  lnk->add_option("--csv", lnk_csv, "Write the crossings as CSV");
  lnk->callback([&] {
    action = [&]() -> json {
      check_input(lnk_a);
      check_input(lnk_b);
      check_output(lnk_csv);
      const LinkingResult r = linking(io::space_curve_from_json(io::read_json_file(lnk_a)),
                                      io::space_curve_from_json(io::read_json_file(lnk_b)));
      if (!lnk_csv.empty()) io::write_text_file(lnk_csv, io::crossings_csv(r.crossings));
      return json{{"command", "link"},
                  {"linking_number", r.value},
                  {"gauss_integral", r.gauss},
                  {"direction_index", r.direction_index},
                  {"crossings", r.crossings.size()}};
    };
  });

  // apply-map
  auto* apm = app.add_subcommand("apply-map", "Apply a built-in contactomorphism to every vertex");
  std::string apm_map, apm_in, apm_out, apm_form;
  double apm_t = 0.0;
  apm->add_option("--map", apm_map, "log-spiral | log-spiral-inverse | cylinder")->required();
  apm->add_option("--t", apm_t, "Isotopy time for the cylinder map")->capture_default_str();
  apm->add_option("--in", apm_in, "Space curve JSON")->required();
  apm->add_option("--out", apm_out, "Output space curve JSON");
  apm->add_option("--form", apm_form, "Report the image's relative residual under this form");
  apm->callback([&] {
    action = [&]() -> json {
      check_input(apm_in);
      check_output(apm_out);
      std::function<Vec3(const Vec3&)> f;
      if (apm_map == "log-spiral") f = log_spiral_contactomorphism;
      else if (apm_map == "log-spiral-inverse") f = log_spiral_inverse;
      else if (apm_map == "cylinder") f = [t = apm_t](const Vec3& p) { return cylinder_contact_isotopy(p, t); };
      else throw ValidationError("unknown map: " + apm_map);
      const SpaceCurve c = io::space_curve_from_json(io::read_json_file(apm_in));
      std::vector<Vec3> pts;
      for (const auto& p : c.vertices()) pts.push_back(f(p));
      const SpaceCurve img = SpaceCurve::immersed(std::move(pts), c.closed());
      if (!apm_out.empty()) write_json(apm_out, io::to_json(img));
      json rep{{"command", "apply-map"}, {"map", apm_map}, {"vertices", img.size()}};
      if (!apm_form.empty()) rep["relative_residual"] = legendrian_residual(load_form(apm_form), img).relative_residual;
      return rep;
    };
  });

  // flow
  auto* flo = app.add_subcommand("flow", "Flow a curve along a contact Hamiltonian field");
  std::string flo_form, flo_in, flo_out, flo_H;
  double flo_time = 1.0, flo_step = 0.0;
  flo->add_option("--form", flo_form, "xdy | minus_ydx | rot | form.json")->required();
  flo->add_option("--in", flo_in, "Space curve JSON")->required();
  flo->add_option("--H", flo_H, "Polynomial Hamiltonian as JSON [[c,px,py,pz],...]; default H = 1 (Reeb flow)");
  flo->add_option("--time", flo_time, "Flow time")->capture_default_str();
  flo->add_option("--step", flo_step, "RK4 step")->required();
  flo->add_option("--out", flo_out, "Output space curve JSON");
  flo->callback([&] {
    action = [&]() -> json {
      check_input(flo_in);
      check_output(flo_out);
      check_positive(flo_step, "--step");
      std::vector<PolyTerm3> terms{{1.0, 0, 0, 0}};
      if (!flo_H.empty()) {
        json h;
        try {
          h = json::parse(flo_H);
        } catch (const json::parse_error&) {
          throw ValidationError("--H must be a JSON array of [c,px,py,pz]");
        }
        terms.clear();
        for (const auto& t : h) {
          if (!t.is_array() || t.size() != 4) throw ValidationError("--H terms must be [c,px,py,pz]");
          terms.push_back({t[0].get<double>(), t[1].get<int>(), t[2].get<int>(), t[3].get<int>()});
        }
      }
      const ContactForm form = load_form(flo_form);
      const SpaceCurve c = io::space_curve_from_json(io::read_json_file(flo_in));
      const auto field = hamiltonian_field(form, polynomial_field(terms));
      const auto moved = flow<3>(field, c.vertices(), flo_time, flo_step);
      const SpaceCurve img = SpaceCurve::immersed(moved, c.closed());
      if (!flo_out.empty()) write_json(flo_out, io::to_json(img));
      return json{{"command", "flow"},
                  {"vertices", img.size()},
                  {"relative_residual_before", legendrian_residual(form, c).relative_residual},
                  {"relative_residual_after", legendrian_residual(form, img).relative_residual}};
    };
  });

  // suite
  auto* sui = app.add_subcommand("suite", "Run the acceptance suite");
  std::string sui_name = "acceptance";
  int sui_criterion = 0;
  sui->add_option("name", sui_name, "Suite name (acceptance)")->capture_default_str();
  sui->add_option("--criterion", sui_criterion, "Run a single criterion (1-9)");
  bool suite_failed = false;
  sui->callback([&] {
    action = [&]() -> json {
      if (sui_name != "acceptance") throw ValidationError("unknown suite: " + sui_name);
      std::vector<acceptance::CriterionResult> results;
      if (sui_criterion != 0) results.push_back(acceptance::run_criterion(sui_criterion));
      else results = acceptance::run_all();
      json rep{{"command", "suite"}, {"checks", acceptance::to_json(results, common.timings)}};
      bool all = true;
      std::vector<std::string> lines;
      for (const auto& r : results) {
        all = all && r.pass();
        lines.push_back(acceptance::format_line(r));
      }
      rep["pass"] = all;
      suite_failed = !all;
      text_printer = [lines](const json&) {
        for (const auto& l : lines) std::cout << l << "\n";
      };
      return rep;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const auto t0 = std::chrono::steady_clock::now();
    json report = action();
    if (common.timings)
      report["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (common.json_out) {
      std::cout << report.dump(2) << "\n";
    } else if (text_printer) {
      text_printer(report);
    } else {
      print_text(report);
    }
    return suite_failed ? kExitSuiteFailed : 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Validation ? kExitValidation : kExitNumerical;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kExitValidation;
  }
}
