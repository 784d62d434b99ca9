#pragma once

#include <string>

#include <json.hpp>

#include "residua/circle/trig.hpp"
#include "residua/common.hpp"
#include "residua/cone/bdensity.hpp"
#include "residua/cone/heat.hpp"
#include "residua/numerics/laurent.hpp"
#include "residua/zeta/structure.hpp"

namespace residua::io {

using json = nlohmann::ordered_json;

inline json complex_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw invalid_input("json: complex values are [re, im] number pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

// trig polynomials: {"n": [re, im], ...} keyed by the mode
inline json to_json(const circle::TrigPolynomial& u) {
  json out = json::object();
  for (int n = -u.degree(); n <= u.degree(); ++n)
    if (u.coeff(n) != cplx(0.0)) out[std::to_string(n)] = complex_to_json(u.coeff(n));
  return out;
}

inline circle::TrigPolynomial trig_from_json(const json& j) {
  if (!j.is_object()) throw invalid_input("json: trig polynomial must be a mode->coeff object");
  int degree = 0;
  for (const auto& [key, value] : j.items()) {
    (void)value;
    degree = std::max(degree, std::abs(std::stoi(key)));
  }
  circle::TrigPolynomial u(degree);
  for (const auto& [key, value] : j.items())
    u.set_coeff(std::stoi(key), complex_from_json(value));
  return u;
}

// {"terms":[{"alpha":float,"logpow":int,"coeff":[re,im]}]}
inline json to_json(const zeta::HeatExpansion& h) {
  json terms = json::array();
  for (const auto& t : h.terms())
    terms.push_back(
        {{"alpha", t.alpha}, {"logpow", t.log_power}, {"coeff", complex_to_json(t.coeff)}});
  return json{{"terms", terms}};
}

inline zeta::HeatExpansion heat_expansion_from_json(const json& j) {
  if (!j.contains("terms") || !j["terms"].is_array())
    throw invalid_input("json: heat expansion needs a terms array");
  zeta::HeatExpansion h;
  for (const auto& t : j["terms"]) {
    if (!t.contains("alpha") || !t.contains("logpow") || !t.contains("coeff"))
      throw invalid_input("json: heat term needs alpha, logpow and coeff");
    h.add({t["alpha"].get<double>(), t["logpow"].get<int>(), complex_from_json(t["coeff"])});
  }
  return h;
}

// {"center":[re,im],"coeffs":{"-2":[re,im],...}}
inline json to_json(const numerics::LaurentSeries& w) {
  json coeffs = json::object();
  for (int k = w.lowest(); k <= w.highest(); ++k)
    if (w.coeff(k) != cplx(0.0)) coeffs[std::to_string(k)] = complex_to_json(w.coeff(k));
  return json{{"center", complex_to_json(w.center())}, {"coeffs", coeffs}};
}

inline numerics::LaurentSeries laurent_from_json(const json& j) {
  if (!j.contains("center") || !j.contains("coeffs") || !j["coeffs"].is_object())
    throw invalid_input("json: laurent window needs a center and a coeffs object");
  int lo = -numerics::LaurentSeries::default_pole_depth;
  int hi = numerics::LaurentSeries::default_pole_depth;
  for (const auto& [key, value] : j["coeffs"].items()) {
    (void)value;
    const int k = std::stoi(key);
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  numerics::LaurentSeries w(complex_from_json(j["center"]), lo, hi);
  for (const auto& [key, value] : j["coeffs"].items())
    w.set_coeff(std::stoi(key), complex_from_json(value));
  return w;
}

// {"p":int,"coeffs":[{"k":int,"trig":{...}}],"remainder":"none"|{...}}
inline json to_json(const cone::BDensity& u) {
  json coeffs = json::array();
  for (int k = 0; k <= u.depth(); ++k)
    coeffs.push_back({{"k", k}, {"trig", to_json(u.coefficient(k))}});
  json out{{"p", u.leading_order()}, {"coeffs", coeffs}};
  if (!u.remainder()) {
    out["remainder"] = "none";
    return out;
  }
  const auto& grid = *u.remainder();
  json values = json::array();
  for (const auto& row : grid.values) {
    json jrow = json::array();
    for (const auto& v : row) jrow.push_back(complex_to_json(v));
    values.push_back(jrow);
  }
  out["remainder"] = json{{"r_nodes", grid.r_nodes},
                          {"x_points", grid.x_points},
                          {"values", values},
                          {"vanishing_order", grid.vanishing_order}};
  return out;
}

inline cone::BDensity bdensity_from_json(const json& j) {
  if (!j.contains("p") || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw invalid_input("json: b-density needs p and a coeffs array");
  int depth = -1;
  for (const auto& c : j["coeffs"]) depth = std::max(depth, c.at("k").get<int>());
  std::vector<circle::TrigPolynomial> w(static_cast<std::size_t>(depth + 1));
  for (const auto& c : j["coeffs"]) {
    const int k = c.at("k").get<int>();
    if (k < 0) throw invalid_input("json: b-density coefficient index must be >= 0");
    w[static_cast<std::size_t>(k)] = trig_from_json(c.at("trig"));
  }
  std::optional<cone::RemainderGrid> rem;
  if (j.contains("remainder") && !(j["remainder"].is_string() && j["remainder"] == "none")) {
    const auto& g = j["remainder"];
    cone::RemainderGrid grid;
    grid.r_nodes = g.at("r_nodes").get<std::vector<double>>();
    grid.x_points = g.at("x_points").get<int>();
    grid.vanishing_order = g.at("vanishing_order").get<int>();
    for (const auto& row : g.at("values")) {
      std::vector<cplx> r;
      for (const auto& v : row) r.push_back(complex_from_json(v));
      grid.values.push_back(std::move(r));
    }
    rem = std::move(grid);
  }
  return cone::BDensity(j["p"].get<int>(), std::move(w), std::move(rem));
}

namespace detail {

inline json trace_map_to_json(const std::map<int, cplx>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = complex_to_json(v);
  return out;
}

inline std::map<int, cplx> trace_map_from_json(const json& j, const char* what) {
  std::map<int, cplx> out;
  if (j.is_null()) return out;
  if (!j.is_object()) throw invalid_input(std::string("json: ") + what + " must be an object keyed by k");
  for (const auto& [key, value] : j.items()) out[std::stoi(key)] = complex_from_json(value);
  return out;
}

inline std::map<int, double> const_map_from_json(const json& j) {
  std::map<int, double> out;
  if (j.is_null()) return out;
  for (const auto& [key, value] : j.items()) out[std::stoi(key)] = value.get<double>();
  return out;
}

}  // namespace detail

// {"m":..,"p":..,"n":..,"tr_sigma":{"k":[re,im]},...}
inline json to_json(const cone::ConeHeatSpec& spec) {
  json out{{"m", spec.m}, {"p", spec.p}, {"n", spec.n}};
  out["tr_sigma"] = detail::trace_map_to_json(spec.tr_sigma);
  out["tr_partial"] = detail::trace_map_to_json(spec.tr_partial);
  out["tr_partial_sigma"] = detail::trace_map_to_json(spec.tr_partial_sigma);
  out["a"] = detail::trace_map_to_json(spec.smooth_a);
  out["b"] = detail::trace_map_to_json(spec.smooth_b);
  out["c"] = detail::trace_map_to_json(spec.smooth_c);
  json cc = json::object(), cp = json::object(), cpp = json::object();
  for (const auto& [k, v] : spec.c_const) cc[std::to_string(k)] = v;
  for (const auto& [k, v] : spec.cp_const) cp[std::to_string(k)] = v;
  for (const auto& [k, v] : spec.cpp_const) cpp[std::to_string(k)] = v;
  out["C"] = cc;
  out["Cp"] = cp;
  out["Cpp"] = cpp;
  return out;
}

inline cone::ConeHeatSpec cone_heat_spec_from_json(const json& j) {
  cone::ConeHeatSpec spec;
  spec.m = j.value("m", 2);
  spec.p = j.value("p", 0);
  spec.n = j.value("n", 1);
  spec.tr_sigma = detail::trace_map_from_json(j.value("tr_sigma", json()), "tr_sigma");
  spec.tr_partial = detail::trace_map_from_json(j.value("tr_partial", json()), "tr_partial");
  spec.tr_partial_sigma =
      detail::trace_map_from_json(j.value("tr_partial_sigma", json()), "tr_partial_sigma");
  spec.smooth_a = detail::trace_map_from_json(j.value("a", json()), "a");
  spec.smooth_b = detail::trace_map_from_json(j.value("b", json()), "b");
  spec.smooth_c = detail::trace_map_from_json(j.value("c", json()), "c");
  spec.c_const = detail::const_map_from_json(j.value("C", json()));
  spec.cp_const = detail::const_map_from_json(j.value("Cp", json()));
  spec.cpp_const = detail::const_map_from_json(j.value("Cpp", json()));
  return spec;
}

// circle symbols: {"order":m,"components":[{"plus":{trig},"minus":{trig}},...]}
inline json to_json(const circle::CircleSymbol& a) {
  json comps = json::array();
  for (int j = 0; j < a.component_count(); ++j)
    comps.push_back(
        {{"plus", to_json(a.component(j).plus)}, {"minus", to_json(a.component(j).minus)}});
  return json{{"order", a.order()}, {"components", comps}};
}

inline circle::CircleSymbol symbol_from_json(const json& j) {
  if (!j.contains("order") || !j.contains("components") || !j["components"].is_array())
    throw invalid_input("json: symbol needs an order and a components array");
  std::vector<circle::SheetFunctions> comps;
  for (const auto& c : j["components"])
    comps.push_back({trig_from_json(c.at("plus")), trig_from_json(c.at("minus"))});
  return circle::CircleSymbol(j["order"].get<int>(), std::move(comps));
}

}  // namespace residua::io
