#pragma once

// Command runners behind the CLI front end. Each runner reads its inputs,
// drives the pipeline, writes reports (and figures when requested) into the
// output directory, and returns the process exit code:
//   0  success
//   1  input or validation error
//   2  mathematical-property failure, report still written

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "syz/checks.hpp"
#include "syz/json_io.hpp"
#include "syz/svg.hpp"

namespace syz {

struct JobConfig {
  std::string command;
  std::string f_path;        // Laurent polynomial: expression text or JSON
  std::string lifting_path;  // JSON height map, zero-completed over lattice points
  std::string section_path;  // section input JSON
  std::string base_path;     // base report JSON produced by `base`
  std::string mode = "2d";
  double tol = 1e-6;      // amoeba membership / raster certification tolerance
  double gap = 1e-9;      // relative wall distinctness gap
  double fd_step = 1e-4;  // finite-difference step (reserved for section checks)
  int resolution = 64;
  double margin = 4.0;          // raster box padding around the dual curve
  std::vector<double> box;      // explicit raster box x0 y0 x1 y1
  std::string out_dir = ".";
  unsigned seed = 12345;
  std::string format = "both";  // json | svg | both

  bool want_json() const { return format != "svg"; }
  bool want_svg() const { return format != "json"; }

  void validate() const {
    if (!(tol > 0) || !(gap > 0) || !(fd_step > 0))
      throw InvalidInput("tolerances must be positive");
    if (resolution < 16) throw InvalidInput("resolution must be at least 16");
    if (format != "json" && format != "svg" && format != "both")
      throw InvalidInput("format must be json, svg or both");
    if (!box.empty() && box.size() != 4)
      throw InvalidInput("box needs four numbers: x0 y0 x1 y1");
  }
};

namespace detail {

inline int infer_dim(const std::string& text) {
  int dim = 1;
  for (std::size_t i = 0; i + 1 < text.size(); ++i)
    if ((text[i] == 'z' || text[i] == 'Z') && std::isdigit(static_cast<unsigned char>(text[i + 1])))
      dim = std::max(dim, std::atoi(text.c_str() + i + 1));
  return dim;
}

inline std::string out_path(const JobConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

inline Json job_header(const JobConfig& cfg) {
  Json j;
  j["command"] = cfg.command;
  j["seed"] = cfg.seed;
  j["tol"] = cfg.tol;
  j["gap"] = cfg.gap;
  j["resolution"] = cfg.resolution;
  return j;
}

}  // namespace detail

inline LaurentPolynomial load_laurent(const std::string& path) {
  if (path.empty()) throw InvalidInput("no input polynomial given (--f)");
  std::string text = read_text(path);
  std::size_t k = text.find_first_not_of(" \t\r\n");
  if (k == std::string::npos) throw InvalidInput(path + " is empty");
  if (text[k] == '{') return laurent_from_json(Json::parse(text));
  return parse_laurent(text, detail::infer_dim(text));
}

// Heights from the lifting file, zero-completed over the polytope's lattice
// points so that sparse files only name the points they move.
inline Lifting load_lifting(const std::string& path, const LatticePolytope& P) {
  Lifting h;
  if (!path.empty()) h = lifting_from_json(read_json(path), P.dim);
  for (const auto& a : P.lattice_points)
    if (!h.count(a)) h[a] = 0;
  return h;
}

inline int run_mirror(const JobConfig& cfg) {
  auto f = load_laurent(cfg.f_path);
  auto P = newton_polytope(f);
  auto sub = regular_subdivision(P, load_lifting(cfg.lifting_path, P));
  auto fan = fan_from_subdivision(sub);
  auto eta = calabi_yau_certificate(fan);
  bool smooth = smoothness_check(fan);
  bool convex = support_convexity(fan);

  Json report = detail::job_header(cfg);
  report["f"] = to_expression(f);
  report["newton_polytope"] = Json{{"vertices", Json(P.vertices)},
                                   {"lattice_points", Json(P.lattice_points)}};
  report["subdivision"] = subdivision_to_json(sub);
  report["fan"] = fan_report_json(fan, eta, smooth, convex);

  std::optional<DualTropicalCurve> curve;
  if (P.dim == 2) {
    curve = dual_tropical_curve(sub);
    report["dual_curve"] = dual_curve_to_json(*curve);
  }
  if (cfg.want_json()) write_json(detail::out_path(cfg, "mirror_report.json"), report);
  if (cfg.want_svg())
    write_file_atomic(detail::out_path(cfg, "subdivision.svg"),
                      svg_subdivision(sub, curve ? &*curve : nullptr));
  if (!eta || !smooth || !convex) {
    std::cerr << "mirror: fan is not a smooth Calabi-Yau with convex support (calabi_yau="
              << (eta ? "yes" : "no") << ", smooth=" << (smooth ? "true" : "false")
              << ", convex_support=" << (convex ? "true" : "false") << ")\n";
    return 2;
  }
  return 0;
}

inline int run_base_2d(const JobConfig& cfg) {
  auto f = load_laurent(cfg.f_path);
  auto base = base_2d(conic_fibration(f), {}, cfg.gap);
  Json report = detail::job_header(cfg);
  report["f"] = to_expression(f);
  report["mode"] = "2d";
  Json b = base2d_report_json(base, monodromy_2d());
  for (auto it = b.begin(); it != b.end(); ++it) report[it.key()] = it.value();
  if (cfg.want_json()) write_json(detail::out_path(cfg, "base2d_report.json"), report);
  if (cfg.want_svg())
    write_file_atomic(detail::out_path(cfg, "base2d.svg"), svg_base_2d(base));
  return 0;
}

inline int run_base_3d(const JobConfig& cfg) {
  auto f = load_laurent(cfg.f_path);
  auto X = conic_fibration(f);
  auto P = newton_polytope(f);
  auto lifting = load_lifting(cfg.lifting_path, P);
  auto curve = dual_tropical_curve(regular_subdivision(P, lifting));
  Box2D box = cfg.box.empty() ? default_box(curve, cfg.margin)
                              : Box2D{cfg.box[0], cfg.box[1], cfg.box[2], cfg.box[3]};

  Json report = detail::job_header(cfg);
  report["f"] = to_expression(f);
  report["mode"] = "3d";
  report["lifting"] = lifting_to_json(lifting);
  report["dual_curve"] = dual_curve_to_json(curve);

  AmoebaRaster raster = amoeba_raster(f, box, cfg.resolution, cfg.tol);
  report["raster"] = raster_to_json(raster);
  int code = 0;
  const ChamberLabeling* lab_ptr = nullptr;
  ChamberLabeling lab;
  try {
    lab = chamber_labeling(raster, f);
    report["labeling"] = labeling_to_json(lab);
    lab_ptr = &lab;
  } catch (const UnresolvedComponents& e) {
    report["labeling"] = Json(nullptr);
    report["error"] = e.what();
    std::cerr << "base: " << e.what() << "\n";
    code = 2;
  }
  if (cfg.want_json()) write_json(detail::out_path(cfg, "base3d_report.json"), report);
  if (cfg.want_svg()) {
    write_file_atomic(detail::out_path(cfg, "base3d.svg"), svg_amoeba(raster, lab_ptr, &curve));
    write_file_atomic(detail::out_path(cfg, "amoeba.pgm"), raster_to_pgm(raster));
  }
  return code;
}

inline int run_base(const JobConfig& cfg) {
  if (cfg.mode == "2d") return run_base_2d(cfg);
  if (cfg.mode == "3d") return run_base_3d(cfg);
  throw InvalidInput("mode must be 2d or 3d");
}

inline int run_amoeba(const JobConfig& cfg) {
  auto f = load_laurent(cfg.f_path);
  if (f.dim != 2) throw InvalidInput("amoeba: f must be bivariate");
  // box defaults to the flat-lifting dual curve padded by the margin
  Box2D box;
  if (cfg.box.empty()) {
    auto P = newton_polytope(f);
    box = default_box(dual_tropical_curve(regular_subdivision(P, load_lifting("", P))),
                      cfg.margin);
  } else {
    box = {cfg.box[0], cfg.box[1], cfg.box[2], cfg.box[3]};
  }
  AmoebaRaster raster = amoeba_raster(f, box, cfg.resolution, cfg.tol);
  Json report = detail::job_header(cfg);
  report["f"] = to_expression(f);
  report["raster"] = raster_to_json(raster);
  int code = 0;
  const ChamberLabeling* lab_ptr = nullptr;
  ChamberLabeling lab;
  try {
    lab = chamber_labeling(raster, f);
    report["labeling"] = labeling_to_json(lab);
    lab_ptr = &lab;
  } catch (const UnresolvedComponents& e) {
    report["labeling"] = Json(nullptr);
    report["error"] = e.what();
    std::cerr << "amoeba: " << e.what() << "\n";
    code = 2;
  }
  if (cfg.want_json()) write_json(detail::out_path(cfg, "amoeba_report.json"), report);
  if (cfg.want_svg()) {
    write_file_atomic(detail::out_path(cfg, "amoeba.svg"), svg_amoeba(raster, lab_ptr, nullptr));
    write_file_atomic(detail::out_path(cfg, "amoeba.pgm"), raster_to_pgm(raster));
  }
  return code;
}

inline int run_transform2d(const JobConfig& cfg) {
  if (cfg.section_path.empty()) throw InvalidInput("transform2d needs --section");
  if (cfg.base_path.empty()) throw InvalidInput("transform2d needs --base");
  Json sj = read_json(cfg.section_path);
  SYZBase2D base = base2d_from_json(read_json(cfg.base_path));

  Json report = detail::job_header(cfg);
  std::vector<Int> xi;
  std::optional<int> intersections;
  if (sj.contains("wall_values")) {
    xi = sj.at("wall_values").get<std::vector<Int>>();
  } else if (sj.contains("path")) {
    AdmissiblePath2D g = path_from_json(sj);
    std::vector<double> roots;
    for (double s : base.walls) roots.push_back(std::exp(s));
    if (!sj.contains("cut") && roots.size() >= 2) {
      g.cut_a = roots.front();
      g.cut_b = roots.back();
    }
    xi = wall_values_from_path(g, roots);
    intersections = intersection_number_2d(g);
    report["cut"] = Json::array({g.cut_a, g.cut_b});
  } else {
    throw InvalidInput("section JSON needs \"wall_values\" or \"path\"");
  }
  auto bundle = syz_transform_2d(xi, base);
  report["wall_values"] = Json(xi);
  report["intersection_number"] = intersections ? Json(*intersections) : Json(nullptr);
  report["bundle"] = bundle_to_json(bundle);
  bool mismatch = false;
  if (intersections && bundle.degree) {
    mismatch = *bundle.degree != *intersections;
    report["degree_matches_intersection"] = !mismatch;
  } else {
    report["degree_matches_intersection"] = Json(nullptr);
  }
  if (cfg.want_json()) write_json(detail::out_path(cfg, "transform2d_report.json"), report);
  if (mismatch) {
    std::cerr << "transform2d: bundle degree " << *bundle.degree
              << " differs from the path intersection number " << *intersections << "\n";
    return 2;
  }
  return 0;
}

inline int run_transform3d(const JobConfig& cfg) {
  if (cfg.section_path.empty()) throw InvalidInput("transform3d needs --section");
  if (cfg.base_path.empty()) throw InvalidInput("transform3d needs --base");
  Json bj = read_json(cfg.base_path);
  if (!bj.contains("dual_curve"))
    throw InvalidInput(cfg.base_path + " has no dual_curve (expected a 3d base report)");
  DualTropicalCurve curve = dual_curve_from_json(bj.at("dual_curve"));
  TropicalSection3D s = section3d_from_json(read_json(cfg.section_path), curve);
  auto bundle = syz_transform_3d(s, curve);  // validates; throws InvalidInput on violations
  Json report = detail::job_header(cfg);
  report["section"] = section3d_to_json(s);
  report["bundle"] = bundle_to_json(bundle);
  report["cocycle_verified"] = true;
  if (cfg.want_json()) write_json(detail::out_path(cfg, "transform3d_report.json"), report);
  return 0;
}

inline int run_check(const JobConfig& cfg) {
  auto results = run_all_checks(cfg.seed);
  Json report = detail::job_header(cfg);
  report["checks"] = Json::array();
  bool all = true;
  for (const auto& r : results) {
    std::cout << format_check_line(r) << "\n";
    Json jr;
    jr["id"] = r.id;
    jr["name"] = r.name;
    jr["passed"] = r.passed;
    jr["detail"] = r.detail;
    jr["seconds"] = r.seconds;
    jr["budget"] = r.budget;
    report["checks"].push_back(jr);
    all = all && r.passed;
  }
  report["all_passed"] = all;
  if (cfg.want_json()) write_json(detail::out_path(cfg, "check_report.json"), report);
  std::cout << (all ? "all checks passed" : "CHECKS FAILED") << "\n";
  return all ? 0 : 2;
}

inline int run_job(const JobConfig& cfg) {
  try {
    cfg.validate();
    if (cfg.command == "mirror") return run_mirror(cfg);
    if (cfg.command == "base") return run_base(cfg);
    if (cfg.command == "amoeba") return run_amoeba(cfg);
    if (cfg.command == "transform2d") return run_transform2d(cfg);
    if (cfg.command == "transform3d") return run_transform3d(cfg);
    if (cfg.command == "check") return run_check(cfg);
    throw InvalidInput("unknown command " + cfg.command);
  } catch (const ParseError& e) {
    std::cerr << cfg.command << ": " << e.what() << "\n";
    return 1;
  } catch (const InvalidInput& e) {
    std::cerr << cfg.command << ": " << e.what() << "\n";
    return 1;
  } catch (const EqualModulusRoots& e) {
    std::cerr << cfg.command << ": " << e.what() << "\n";
    return 1;
  } catch (const MissingVertexLifting& e) {
    std::cerr << cfg.command << ": " << e.what() << "\n";
    return 1;
  } catch (const NonAdjacentLabels& e) {
    std::cerr << cfg.command << ": " << e.what() << "\n";
    return 1;
  }
}

}  // namespace syz
