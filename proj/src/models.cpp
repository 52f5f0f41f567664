#include "paraferm/models.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace paraferm {

std::string model_name(ModelId m) {
  switch (m) {
    case ModelId::DensePotts: return "dense";
    case ModelId::DiluteOn: return "on";
    case ModelId::C2Loop: return "c2";
  }
  return "?";
}

ModelId model_from_name(const std::string& name) {
  if (name == "dense") return ModelId::DensePotts;
  if (name == "on" || name == "dilute") return ModelId::DiluteOn;
  if (name == "c2") return ModelId::C2Loop;
  throw std::invalid_argument("unknown model name: " + name);
}

double WeightSet::at(const std::string& symbol) const {
  auto it = w.find(symbol);
  if (it == w.end()) throw std::out_of_range("WeightSet: missing symbol " + symbol);
  return it->second;
}

const std::vector<std::string>& weight_symbols(ModelId m) {
  static const std::vector<std::string> dense = {"a", "b"};
  static const std::vector<std::string> on = {"t", "u1", "u2", "v", "w1", "w2"};
  static const std::vector<std::string> c2 = {"u1", "u2", "v", "w1", "w2"};
  switch (m) {
    case ModelId::DensePotts: return dense;
    case ModelId::DiluteOn: return on;
    case ModelId::C2Loop: return c2;
  }
  throw std::logic_error("weight_symbols");
}

std::vector<double> WeightSet::vector(ModelId m) const {
  std::vector<double> out;
  for (const auto& s : weight_symbols(m)) out.push_back(at(s));
  return out;
}

namespace {

Tile make_tile(std::string name, std::string symbol, std::vector<TileArc> arcs, bool crossing = false,
               std::string symbol_diff = "") {
  Tile t;
  t.name = std::move(name);
  t.symbol = std::move(symbol);
  t.symbol_diff = std::move(symbol_diff);
  t.arcs = std::move(arcs);
  t.crossing = crossing;
  for (const auto& a : t.arcs) {
    t.occupies[a.s0] = true;
    t.occupies[a.s1] = true;
  }
  return t;
}

// corner arcs: S-E and N-W bend around the pi-alpha corners, E-N and W-S
// around the alpha corners; S-N and W-E run straight through.
TileArc arc_se() { return {kS, kE, false, false}; }
TileArc arc_en() { return {kE, kN, true, false}; }
TileArc arc_nw() { return {kN, kW, false, false}; }
TileArc arc_ws() { return {kW, kS, true, false}; }
TileArc arc_sn() { return {kS, kN, false, true}; }
TileArc arc_we() { return {kW, kE, false, true}; }

}  // namespace

const std::vector<Tile>& tile_catalog(ModelId m) {
  // dense pattern assignment: the arcs {S-W, E-N} carry weight "a" and
  // {S-E, N-W} weight "b"; fixed by the contour-sum enumeration tests.
  static const std::vector<Tile> dense = {
      make_tile("a", "a", {arc_ws(), arc_en()}),
      make_tile("b", "b", {arc_se(), arc_nw()}),
  };
  // dilute corner orbits under the diagonal reflections: {S-E, N-W} -> u1,
  // {E-N, W-S} -> u2; double arcs follow the same patterns (w1, w2).
  static const std::vector<Tile> dilute = {
      make_tile("t", "t", {}),
      make_tile("u1:se", "u1", {arc_se()}),
      make_tile("u1:nw", "u1", {arc_nw()}),
      make_tile("u2:en", "u2", {arc_en()}),
      make_tile("u2:ws", "u2", {arc_ws()}),
      make_tile("v:sn", "v", {arc_sn()}),
      make_tile("v:we", "v", {arc_we()}),
      make_tile("w1", "w1", {arc_se(), arc_nw()}),
      make_tile("w2", "w2", {arc_ws(), arc_en()}),
  };
  // two-colour model: both strands present everywhere; weight depends on
  // whether the two strand colours agree (w: same colour, u: different);
  // resolved by the defect-observable contour tests.
  static const std::vector<Tile> c2 = {
      make_tile("p1", "w1", {arc_se(), arc_nw()}, false, "u1"),
      make_tile("p2", "w2", {arc_ws(), arc_en()}, false, "u2"),
      make_tile("x", "", {arc_sn(), arc_we()}, true, "v"),
  };
  switch (m) {
    case ModelId::DensePotts: return dense;
    case ModelId::DiluteOn: return dilute;
    case ModelId::C2Loop: return c2;
  }
  throw std::logic_error("tile_catalog");
}

double fugacity_from_angle(ModelId m, double angle) {
  if (m == ModelId::DensePotts) return 2.0 * std::cos(angle);
  return -2.0 * std::cos(2.0 * angle);
}

std::pair<double, double> potts_loop_weights(double J1, double J2, double Q) {
  if (!(Q > 0.0)) throw std::invalid_argument("potts_loop_weights: Q must be positive");
  double x1 = std::expm1(J1);
  double x2 = std::expm1(J2);
  if (x1 == 0.0 || x2 == 0.0)
    throw std::domain_error("potts_loop_weights: e^J = 1 makes a weight ratio degenerate");
  double sq = std::sqrt(Q);
  return {x1 / sq, sq / x2};
}

WeightSet dense_weights(double gamma, double u) {
  WeightSet ws;
  ws.model = ModelId::DensePotts;
  ws.fugacity = 2.0 * std::cos(gamma);
  ws.w["a"] = std::sin(u);
  ws.w["b"] = std::sin(gamma - u);
  return ws;
}

WeightSet on_integrable_weights(double eta, double phi) {
  WeightSet ws;
  ws.model = ModelId::DiluteOn;
  ws.fugacity = -2.0 * std::cos(2.0 * eta);
  // t = 2 sin(eta) cos(3 eta/2) - sin(3 eta/2) - sin(2 phi - 3 eta/2); the
  // expanded form below follows from the real part of the first
  // holomorphicity equation evaluated on the other five weights
  ws.w["t"] = -std::sin(2.0 * phi - 1.5 * eta) + std::sin(2.5 * eta) - std::sin(1.5 * eta) - std::sin(0.5 * eta);
  ws.w["u1"] = -2.0 * std::sin(eta) * std::cos(1.5 * eta - phi);
  ws.w["u2"] = -2.0 * std::sin(eta) * std::sin(phi);
  ws.w["v"] = -2.0 * std::sin(phi) * std::cos(1.5 * eta - phi);
  ws.w["w1"] = -2.0 * std::sin(phi - eta) * std::cos(1.5 * eta - phi);
  ws.w["w2"] = -2.0 * std::cos(0.5 * eta - phi) * std::sin(phi);
  return ws;
}

WeightSet on_v0_n1_weights(double s, double phi, double w1_fraction) {
  WeightSet ws;
  ws.model = ModelId::DiluteOn;
  ws.fugacity = 1.0;
  double sps = std::sin(kPi * s);
  ws.w["t"] = sps;
  ws.w["u1"] = std::sin(phi - kPi * s);
  ws.w["u2"] = std::sin(phi);
  ws.w["v"] = 0.0;
  ws.w["w1"] = w1_fraction * sps;
  ws.w["w2"] = (1.0 - w1_fraction) * sps;
  return ws;
}

WeightSet on_v0_dense_weights(double u1, double u2, double n) {
  WeightSet ws;
  ws.model = ModelId::DiluteOn;
  ws.fugacity = n;
  ws.w["t"] = -u1 - u2;
  ws.w["u1"] = u1;
  ws.w["u2"] = u2;
  ws.w["v"] = 0.0;
  ws.w["w1"] = -u1;
  ws.w["w2"] = -u2;
  return ws;
}

WeightSet c2_integrable_weights(double eta, double phi) {
  WeightSet ws;
  ws.model = ModelId::C2Loop;
  ws.fugacity = -2.0 * std::cos(2.0 * eta);
  // u1, u2 signs fixed by the defect-observable contour tests
  ws.w["u1"] = -std::sin(eta) * std::sin(phi - 3.0 * eta);
  ws.w["u2"] = std::sin(eta) * std::sin(phi);
  ws.w["v"] = -std::sin(phi) * std::sin(phi - 3.0 * eta);
  ws.w["w1"] = -std::sin(phi - eta) * std::sin(phi - 3.0 * eta);
  ws.w["w2"] = -std::sin(phi - 2.0 * eta) * std::sin(phi);
  return ws;
}

double spin_value(ModelId m, double angle) {
  switch (m) {
    case ModelId::DensePotts:
      if (angle < 0.0 || angle > kPi / 2.0)
        throw std::invalid_argument("spin_value: gamma must lie in [0, pi/2]");
      return 1.0 - 2.0 * angle / kPi;
    case ModelId::DiluteOn:
      if (angle < -kPi || angle > kPi)
        throw std::invalid_argument("spin_value: eta must lie in [-pi, pi]");
      return 1.5 * angle / kPi - 0.5;
    case ModelId::C2Loop:
      if (angle < 0.0 || angle > kPi)
        throw std::invalid_argument("spin_value: eta must lie in [0, pi]");
      return (3.0 * angle - kPi) / (2.0 * kPi);
  }
  throw std::logic_error("spin_value");
}

SixVertex six_vertex_map(double s, double phi) {
  SixVertex sv;
  double o12 = std::sin(phi - kPi * s);
  double o34 = std::sin(phi);
  double o56 = std::sin(kPi * s);
  sv.omega = {o12, o12, o34, o34, o56, o56};
  sv.delta = std::cos(kPi * s);
  return sv;
}

std::string weights_to_json(const WeightSet& ws) {
  std::string out = "{\"model\":\"" + model_name(ws.model) + "\",\"weights\":{";
  char buf[64];
  bool first = true;
  for (const auto& s : weight_symbols(ws.model)) {
    if (!first) out += ',';
    first = false;
    std::snprintf(buf, sizeof buf, "%.17g", ws.at(s));
    out += "\"" + s + "\":" + buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", ws.fugacity);
  out += "},\"fugacity\":";
  out += buf;
  out += "}";
  return out;
}

WeightSet weights_from_json(const std::string& json_text) {
  auto j = nlohmann::json::parse(json_text);
  WeightSet ws;
  ws.model = model_from_name(j.at("model").get<std::string>());
  ws.fugacity = j.at("fugacity").get<double>();
  for (auto& [key, val] : j.at("weights").items()) ws.w[key] = val.get<double>();
  return ws;
}

}  // namespace paraferm
