#pragma once

// JSON report serialization. All report emitters produce nlohmann ordered
// JSON so that key order, and therefore the serialized bytes, are stable
// across runs with the same inputs.

#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"
#include "syz/amoeba.hpp"
#include "syz/fibration.hpp"
#include "syz/subdivision.hpp"
#include "syz/toric_fan.hpp"
#include "syz/transform.hpp"

namespace syz {

using Json = nlohmann::ordered_json;

inline Json rational_json(const Rational& r) { return rational_to_string(r); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  return parse_rational(j.get<std::string>());
}

inline Json exp_json(const ExponentVector& e) { return Json(e); }

// --- Laurent polynomial input: {"dim": d, "terms": [{"exp": [...], "re": "p/q", "im": "p/q"}]} ---

inline LaurentPolynomial laurent_from_json(const Json& j) {
  if (!j.contains("dim") || !j.contains("terms"))
    throw InvalidInput("laurent JSON needs \"dim\" and \"terms\"");
  LaurentPolynomial f;
  f.dim = j["dim"].get<int>();
  if (f.dim < 1) throw InvalidInput("laurent JSON: dim must be >= 1");
  for (const auto& t : j["terms"]) {
    ExponentVector e = t["exp"].get<ExponentVector>();
    if (static_cast<int>(e.size()) != f.dim)
      throw InvalidInput("laurent JSON: exponent arity mismatch");
    ComplexRational c;
    if (t.contains("re")) c.re = rational_from_json(t["re"]);
    if (t.contains("im")) c.im = rational_from_json(t["im"]);
    f.add_term(e, c);
  }
  return f;
}

inline Json laurent_to_json(const LaurentPolynomial& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms) {
    Json t;
    t["exp"] = exp_json(e);
    t["re"] = rational_json(c.re);
    t["im"] = rational_json(c.im);
    terms.push_back(t);
  }
  return Json{{"dim", f.dim}, {"terms", terms}};
}

// --- Lifting: {"(a1,a2)": "p/q", ...} ---

inline Lifting lifting_from_json(const Json& j, int dim) {
  Lifting h;
  for (auto it = j.begin(); it != j.end(); ++it) {
    ExponentVector e = parse_exp_key(it.key());
    if (static_cast<int>(e.size()) != dim) throw InvalidInput("lifting key arity mismatch");
    h[e] = rational_from_json(it.value());
  }
  return h;
}

inline Json lifting_to_json(const Lifting& h) {
  Json out = Json::object();
  for (const auto& [e, v] : h) out[exp_to_string(e)] = rational_json(v);
  return out;
}

// --- Subdivision: {"points": [[..]], "lifting": {...}, "cells": [[indices]]} ---

inline Json subdivision_to_json(const RegularSubdivision& S) {
  Json out;
  out["points"] = Json(S.points);
  Json lift = Json::object();
  for (std::size_t i = 0; i < S.points.size(); ++i)
    lift[exp_to_string(S.points[i])] = rational_json(S.heights[i]);
  out["lifting"] = lift;
  out["cells"] = Json(S.cells);
  return out;
}

// --- Fan report: {"rays", "max_cones", "calabi_yau", "smooth", "convex_support"} ---

inline Json fan_report_json(const Fan& fan, const std::optional<IntVec>& eta, bool smooth,
                            bool convex) {
  Json out;
  out["rays"] = Json(fan.rays);
  out["max_cones"] = Json(fan.max_cones);
  out["calabi_yau"] = eta ? Json(*eta) : Json(nullptr);
  out["smooth"] = smooth;
  out["convex_support"] = convex;
  return out;
}

// --- Dual tropical curve ---

inline Json point2_json(const std::array<Rational, 2>& p) {
  return Json::array({rational_json(p[0]), rational_json(p[1])});
}

inline std::array<Rational, 2> point2_from_json(const Json& j) {
  return {rational_from_json(j.at(0)), rational_from_json(j.at(1))};
}

inline Json dual_curve_to_json(const DualTropicalCurve& c) {
  Json out;
  out["vertices"] = Json::array();
  for (const auto& v : c.vertices) out["vertices"].push_back(point2_json(v));
  out["edges"] = Json::array();
  for (const auto& e : c.bounded_edges) {
    Json je;
    je["cells"] = Json::array({e.cell_a, e.cell_b});
    je["from"] = point2_json(e.from);
    je["to"] = point2_json(e.to);
    je["dir"] = Json::array({e.dir[0], e.dir[1]});
    je["alpha"] = exp_json(e.alpha);
    je["beta"] = exp_json(e.beta);
    out["edges"].push_back(je);
  }
  out["legs"] = Json::array();
  for (const auto& l : c.legs) {
    Json jl;
    jl["cell"] = l.cell;
    jl["base"] = point2_json(l.base);
    jl["dir"] = Json::array({l.dir[0], l.dir[1]});
    jl["alpha"] = exp_json(l.alpha);
    jl["beta"] = exp_json(l.beta);
    out["legs"].push_back(jl);
  }
  return out;
}

inline DualTropicalCurve dual_curve_from_json(const Json& j) {
  DualTropicalCurve c;
  for (const auto& v : j.at("vertices")) c.vertices.push_back(point2_from_json(v));
  for (const auto& je : j.at("edges")) {
    DualTropicalCurve::Edge e;
    e.cell_a = je.at("cells").at(0).get<int>();
    e.cell_b = je.at("cells").at(1).get<int>();
    e.from = point2_from_json(je.at("from"));
    e.to = point2_from_json(je.at("to"));
    e.dir = {je.at("dir").at(0).get<Int>(), je.at("dir").at(1).get<Int>()};
    e.alpha = je.at("alpha").get<ExponentVector>();
    e.beta = je.at("beta").get<ExponentVector>();
    c.bounded_edges.push_back(e);
  }
  for (const auto& jl : j.at("legs")) {
    DualTropicalCurve::Leg l;
    l.cell = jl.at("cell").get<int>();
    l.base = point2_from_json(jl.at("base"));
    l.dir = {jl.at("dir").at(0).get<Int>(), jl.at("dir").at(1).get<Int>()};
    l.alpha = jl.at("alpha").get<ExponentVector>();
    l.beta = jl.at("beta").get<ExponentVector>();
    c.legs.push_back(l);
  }
  return c;
}

// --- 2d base report: {"walls", "chambers", "discriminant", "monodromy"} ---

inline Json base2d_report_json(const SYZBase2D& base, const MonodromyMatrix& m) {
  Json out;
  out["walls"] = Json(base.walls);
  out["chambers"] = Json::array();
  for (const auto& ch : base.chambers) {
    Json jc;
    jc["name"] = ch.name;
    jc["lo"] = std::isinf(ch.lo) ? Json(nullptr) : Json(ch.lo);
    jc["hi"] = std::isinf(ch.hi) ? Json(nullptr) : Json(ch.hi);
    out["chambers"].push_back(jc);
  }
  out["discriminant"] = Json::array();
  for (const auto& r : base.discriminant)
    out["discriminant"].push_back(Json::array({r[0], r[1]}));
  out["monodromy"] = Json::array({Json::array({m.m[0][0], m.m[0][1]}),
                                  Json::array({m.m[1][0], m.m[1][1]})});
  return out;
}

inline SYZBase2D base2d_from_json(const Json& j) {
  SYZBase2D base;
  base.walls = j.at("walls").get<std::vector<double>>();
  for (const auto& jc : j.at("chambers")) {
    SYZBase2D::Chamber ch;
    ch.name = jc.at("name").get<std::string>();
    ch.lo = jc.at("lo").is_null() ? -std::numeric_limits<double>::infinity()
                                  : jc.at("lo").get<double>();
    ch.hi = jc.at("hi").is_null() ? std::numeric_limits<double>::infinity()
                                  : jc.at("hi").get<double>();
    base.chambers.push_back(ch);
  }
  if (j.contains("discriminant"))
    for (const auto& r : j.at("discriminant"))
      base.discriminant.push_back({r.at(0).get<double>(), r.at(1).get<double>()});
  return base;
}

// --- Amoeba raster: rows of '0'/'1' characters, plus a P2 grey-map twin ---

inline Json raster_to_json(const AmoebaRaster& r) {
  Json out;
  out["box"] = Json::array({r.box.x0, r.box.y0, r.box.x1, r.box.y1});
  out["nx"] = r.nx;
  out["ny"] = r.ny;
  out["tol"] = r.tol;
  Json rows = Json::array();
  for (int j = 0; j < r.ny; ++j) {
    std::string row(r.nx, '0');
    for (int i = 0; i < r.nx; ++i)
      if (r.at(i, j)) row[i] = '1';
    rows.push_back(row);
  }
  out["rows"] = rows;
  return out;
}

inline AmoebaRaster raster_from_json(const Json& j) {
  AmoebaRaster r;
  r.box = {j.at("box").at(0).get<double>(), j.at("box").at(1).get<double>(),
           j.at("box").at(2).get<double>(), j.at("box").at(3).get<double>()};
  r.nx = j.at("nx").get<int>();
  r.ny = j.at("ny").get<int>();
  r.tol = j.at("tol").get<double>();
  for (const auto& jr : j.at("rows")) {
    std::string row = jr.get<std::string>();
    for (char c : row) r.inside.push_back(c == '1' ? 1 : 0);
  }
  if (static_cast<long>(r.inside.size()) != static_cast<long>(r.nx) * r.ny)
    throw InvalidInput("raster JSON: row data does not match nx*ny");
  return r;
}

// Portable grey map, text variant. Amoeba pixels are black (0), the
// complement is white (1).
inline std::string raster_to_pgm(const AmoebaRaster& r) {
  std::string out = "P2\n" + std::to_string(r.nx) + " " + std::to_string(r.ny) + "\n1\n";
  for (int j = r.ny - 1; j >= 0; --j) {  // top row first
    for (int i = 0; i < r.nx; ++i) {
      out += r.at(i, j) ? '0' : '1';
      out += i + 1 < r.nx ? ' ' : '\n';
    }
  }
  return out;
}

inline Json labeling_to_json(const ChamberLabeling& lab) {
  Json out;
  out["count"] = lab.count;
  out["labels"] = Json::array();
  for (const auto& l : lab.labels) out["labels"].push_back(exp_json(l));
  out["representatives"] = Json::array();
  for (const auto& p : lab.representatives)
    out["representatives"].push_back(Json::array({p[0], p[1]}));
  out["unbounded"] = Json::array();
  for (bool u : lab.unbounded) out["unbounded"].push_back(u);
  return out;
}

// --- Gluing units and Cech bundles ---

inline Json unit_to_json(const GluingUnit& u) {
  Json out;
  out["coeff"] = rational_json(u.coeff);
  out["w_exp"] = u.w_exp;
  out["opw_exp"] = u.opw_exp;
  out["monomial"] = Json(u.mono);
  return out;
}

inline GluingUnit unit_from_json(const Json& j) {
  GluingUnit u;
  u.coeff = rational_from_json(j.at("coeff"));
  u.w_exp = j.at("w_exp").get<Int>();
  u.opw_exp = j.at("opw_exp").get<Int>();
  u.mono = j.at("monomial").get<IntVec>();
  return u;
}

inline Json bundle_to_json(const MirrorLineBundle& b) {
  Json out;
  out["charts"] = Json(b.bundle.charts);
  Json overlaps = Json::array();
  for (const auto& [i, j] : b.bundle.overlaps) overlaps.push_back(Json::array({i, j}));
  out["overlaps"] = overlaps;
  Json transitions = Json::array();
  for (const auto& [key, t] : b.bundle.transitions) {
    Json jt;
    jt["source"] = b.bundle.charts[key.first];
    jt["target"] = b.bundle.charts[key.second];
    jt["charts"] = Json::array({key.first, key.second});
    jt["unit"] = unit_to_json(t);
    jt["text"] = unit_to_string(t);
    transitions.push_back(jt);
  }
  out["transitions"] = transitions;
  out["structure_sheaf"] = b.structure_sheaf();
  out["degree"] = b.degree ? Json(*b.degree) : Json(nullptr);
  return out;
}

// --- Section inputs ---
// 2d: {"path": [[re, im], ...], "cut": [a, b], "start_dir": [..], "end_dir": [..]}
//     or {"wall_values": [...]}
// 3d: {"legs": [{"alpha": [..], "beta": [..], "n": int}]} or {"gradient": ["p/q", "p/q"]}

inline AdmissiblePath2D path_from_json(const Json& j) {
  AdmissiblePath2D g;
  for (const auto& v : j.at("path"))
    g.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
  if (j.contains("cut")) {
    g.cut_a = j.at("cut").at(0).get<double>();
    g.cut_b = j.at("cut").at(1).get<double>();
  }
  if (j.contains("start_dir"))
    g.start_dir = {j.at("start_dir").at(0).get<double>(), j.at("start_dir").at(1).get<double>()};
  if (j.contains("end_dir"))
    g.end_dir = {j.at("end_dir").at(0).get<double>(), j.at("end_dir").at(1).get<double>()};
  return g;
}

inline TropicalSection3D section3d_from_json(const Json& j, const DualTropicalCurve& curve) {
  TropicalSection3D s;
  if (j.contains("gradient")) {
    std::array<Rational, 2> dg = {rational_from_json(j.at("gradient").at(0)),
                                  rational_from_json(j.at("gradient").at(1))};
    return section_from_gradient(dg, curve);
  }
  for (const auto& jl : j.at("legs")) {
    TropicalSection3D::Entry e;
    e.alpha = jl.at("alpha").get<ExponentVector>();
    e.beta = jl.at("beta").get<ExponentVector>();
    e.n = rational_from_json(jl.at("n"));
    s.entries.push_back(e);
  }
  return s;
}

inline Json section3d_to_json(const TropicalSection3D& s) {
  Json legs = Json::array();
  for (const auto& e : s.entries) {
    Json jl;
    jl["alpha"] = exp_json(e.alpha);
    jl["beta"] = exp_json(e.beta);
    jl["n"] = rational_json(e.n);
    legs.push_back(jl);
  }
  return Json{{"legs", legs}};
}

// --- Files ---

inline void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw InvalidInput("cannot open " + tmp + " for writing");
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw InvalidInput("cannot rename " + tmp + " to " + path);
}

inline void write_json(const std::string& path, const Json& j) {
  write_file_atomic(path, j.dump(2) + "\n");
}

inline Json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("JSON parse error in ") + path + ": " + e.what());
  }
  return j;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace syz
