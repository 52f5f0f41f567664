#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "paraferm/geometry.hpp"

namespace paraferm {

enum class ModelId { DensePotts, DiluteOn, C2Loop };

std::string model_name(ModelId m);
ModelId model_from_name(const std::string& name);

/// Boltzmann weights of one model together with its loop fugacity
/// (sqrt(Q) for the dense Potts loop gas, n for the O(n) and two-colour models).
struct WeightSet {
  ModelId model = ModelId::DensePotts;
  double fugacity = 0.0;
  std::map<std::string, double> w;

  double at(const std::string& symbol) const;
  std::vector<double> vector(ModelId m) const;  // in the documented unknown order
};

// documented unknown orders used by the linear systems
const std::vector<std::string>& weight_symbols(ModelId m);

// plaquette edge-midpoint slots, counter-clockwise
enum Slot { kS = 0, kE = 1, kN = 2, kW = 3 };

struct TileArc {
  int s0, s1;
  // true if the arc bends around the corner of interior angle alpha
  // (straight-through arcs have neither)
  bool around_acute = false;
  bool straight = false;
};

struct Tile {
  std::string name;
  std::string symbol;       // weight symbol; for C2Loop: symbol when both strands share a colour
  std::string symbol_diff;  // C2Loop: symbol when the two strands differ in colour ("" = same always)
  std::vector<TileArc> arcs;
  bool crossing = false;
  std::array<bool, 4> occupies{};  // per slot
};

/// Tile catalog of a model.  Dense: the two Temperley-Lieb plaquettes.
/// Dilute O(n): empty, four corners (u1/u2 by reflection orbit), two
/// straight-throughs (v), two double arcs (w1/w2).  C2(1): two same/different
/// colour double-arc patterns (u1/w1, u2/w2) and the two-colour crossing (v).
const std::vector<Tile>& tile_catalog(ModelId m);

double fugacity_from_angle(ModelId m, double angle);  // 2 cos(gamma) or -2 cos(2 eta)

/// Potts coupling -> loop weight ratios (b1/a1, b2/a2) at cluster weight Q.
std::pair<double, double> potts_loop_weights(double J1, double J2, double Q);

/// Dense loop weights a = sin(u), b = sin(gamma - u); fugacity 2 cos(gamma).
WeightSet dense_weights(double gamma, double u);

/// One-parameter integrable family of the dilute O(n) model
/// (fugacity n = -2 cos 2 eta).
WeightSet on_integrable_weights(double eta, double phi);

/// v = 0, n = 1 family: t = sin(pi s), u1 = sin(phi - pi s), u2 = sin(phi),
/// w1 + w2 = sin(pi s); the split of w1+w2 is caller-controlled.
WeightSet on_v0_n1_weights(double s, double phi, double w1_fraction = 0.5);

/// v = 0 family at generic n: t = -u1-u2, w1 = -u1, w2 = -u2 (spin -1).
WeightSet on_v0_dense_weights(double u1, double u2, double n);

/// Integrable family of the two-colour C2(1) model (fugacity n = -2 cos 2 eta).
WeightSet c2_integrable_weights(double eta, double phi);

/// Conformal spin at which the holomorphicity system turns singular:
/// dense 1 - 2 gamma/pi, dilute 3 eta/(2 pi) - 1/2, C2(1) (3 eta - pi)/(2 pi).
double spin_value(ModelId m, double angle);

struct SixVertex {
  std::array<double, 6> omega;
  double delta;
};

/// Six-vertex image of the v=0, n=1 dilute model; delta = cos(pi s).
SixVertex six_vertex_map(double s, double phi);

std::string weights_to_json(const WeightSet& ws);
WeightSet weights_from_json(const std::string& json_text);

}  // namespace paraferm
