#pragma once

#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "halo/atoms.hpp"
#include "halo/geometry.hpp"
#include "halo/kernel.hpp"

namespace halo {

using nlohmann::json;

// JSON forms:
//   kernel: {"density": null | {"kind": "uniform", "mass": m}
//                            | {"kind": "cosine", "amplitude": a, "phase": p}
//                            | {"kind": "table", "values": [...]},
//            "nodes": n, "atoms": [[theta, weight], ...]}
//   atom:   {"center": [re, im], "radius": r,
//            "pieces": [{"r_in": a, "r_out": b, "value": v}, ...]}
//   decomposition: {"terms": [{"coef": c, "atom": {...}}, ...]}
// A kernel built from a custom callable serializes as a table of its
// samples at the node midpoints; everything else round-trips exactly.

inline json kernel_to_json(const KernelMeasure& km) {
  json j;
  const DensitySpec& spec = km.spec();
  switch (spec.kind) {
    case DensitySpec::Kind::none:
      j["density"] = nullptr;
      break;
    case DensitySpec::Kind::uniform:
      j["density"] = {{"kind", "uniform"}, {"mass", spec.mass}};
      break;
    case DensitySpec::Kind::cosine:
      j["density"] = {{"kind", "cosine"}, {"amplitude", spec.amplitude}, {"phase", spec.phase}};
      break;
    case DensitySpec::Kind::table:
      j["density"] = {{"kind", "table"}, {"values", spec.values}};
      break;
    case DensitySpec::Kind::custom: {
      const int n = km.nodes();
      std::vector<double> samples(n);
      const double h = 2.0 * std::numbers::pi / n;
      for (int k = 0; k < n; ++k) samples[k] = km.density((k + 0.5) * h);
      j["density"] = {{"kind", "table"}, {"values", samples}};
      break;
    }
  }
  j["nodes"] = km.nodes();
  json atoms = json::array();
  for (const KernelAtom& a : km.atoms()) atoms.push_back({a.theta, a.weight});
  j["atoms"] = atoms;
  return j;
}

inline KernelMeasure kernel_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("kernel: expected an object");
  const int nodes = j.value("nodes", KernelMeasure::kDefaultNodes);
  KernelMeasure km;
  if (j.contains("density") && !j.at("density").is_null()) {
    const json& d = j.at("density");
    const std::string kind = d.at("kind").get<std::string>();
    if (kind == "uniform") {
      km = KernelMeasure::uniform(d.at("mass").get<double>(), nodes);
    } else if (kind == "cosine") {
      km = KernelMeasure::cosine(d.at("amplitude").get<double>(),
                                 d.value("phase", 0.0), nodes);
    } else if (kind == "table") {
      km = KernelMeasure::table(d.at("values").get<std::vector<double>>(), nodes);
    } else {
      throw std::invalid_argument("kernel: unknown density kind '" + kind + "'");
    }
  }
  if (j.contains("atoms")) {
    for (const json& a : j.at("atoms")) {
      if (!a.is_array() || a.size() != 2)
        throw std::invalid_argument("kernel: each atom must be [theta, weight]");
      km.add_atom(a[0].get<double>(), a[1].get<double>());
    }
  }
  return km;
}

inline json atom_to_json(const Atom& a) {
  json pieces = json::array();
  for (const AnnulusPiece& p : a.pieces)
    pieces.push_back({{"r_in", p.r_in}, {"r_out", p.r_out}, {"value", p.value}});
  return {{"center", {a.ball.center.re, a.ball.center.im}},
          {"radius", a.ball.radius},
          {"pieces", pieces}};
}

inline Atom atom_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("atom: expected an object");
  const json& c = j.at("center");
  if (!c.is_array() || c.size() != 2)
    throw std::invalid_argument("atom: center must be [re, im]");
  const HypBall ball(UhpPoint(c[0].get<double>(), c[1].get<double>()),
                     j.at("radius").get<double>());
  std::vector<AnnulusPiece> pieces;
  for (const json& p : j.at("pieces"))
    pieces.push_back({p.at("r_in").get<double>(), p.at("r_out").get<double>(),
                      p.at("value").get<double>()});
  return Atom(ball, std::move(pieces));
}

inline json decomposition_to_json(const AtomicDecomposition& d) {
  json terms = json::array();
  for (const AtomTerm& t : d.terms)
    terms.push_back({{"coef", t.coef}, {"atom", atom_to_json(t.atom)}});
  return {{"terms", terms}};
}

inline AtomicDecomposition decomposition_from_json(const json& j) {
  AtomicDecomposition d;
  for (const json& t : j.at("terms"))
    d.terms.push_back({t.at("coef").get<double>(), atom_from_json(t.at("atom"))});
  return d;
}

}  // namespace halo
