#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "paraferm/models.hpp"

namespace paraferm {

/// Element of the 3-strand Temperley-Lieb algebra with loop parameter delta,
/// expanded over the basis {1, E1, E2, E1E2, E2E1}.
struct TLWord {
  std::array<double, 5> c{};
};

TLWord tl_generator(double a, double b, int which);  // a*1 + b*E_which, which in {1,2}
TLWord tl_mul(const TLWord& x, const TLWord& y, double delta);

/// Max coefficient difference of R12(u) R23(u+v-gamma) R12(v) and
/// R23(v) R12(u+v-gamma) R23(u) with R(x) = sin(x) 1 + sin(gamma-x) E.
double tl_ybe_residual(double gamma, double u, double v);
/// Same with an explicit middle argument (cross-validation hook).
double tl_ybe_residual_mid(double gamma, double u, double mid, double v);
std::array<double, 5> tl_ybe_coefficient_diffs(double gamma, double u, double mid, double v);

/// One external connectivity class of the three-rhombus assembly: pairing of
/// the hexagon's outer midpoints (with colours for the two-colour model) and
/// the two side sums.
struct YbeClass {
  std::string pattern;
  double lhs = 0.0, rhs = 0.0;
};

struct YbeReport {
  std::vector<YbeClass> classes;
  double max_residual = 0.0;  // max |lhs - rhs|
  double scale = 0.0;         // max |lhs|, |rhs| over classes
};

/// Hexagon-flip check: both triangulations of a hexagon by three rhombi, with
/// weight sets W1, W2, W3 on the rhombus types (1,2), (1,3), (2,3); sums over
/// internal configurations per external class, fugacity^(internal loops).
YbeReport diagram_ybe_residual(ModelId model, const WeightSet& w1, const WeightSet& w2,
                               const WeightSet& w3);

struct ConventionResult {
  std::string name;
  double max_residual = 0.0;
  double scale = 0.0;
};

/// Tries the natural spectral-combination conventions for the integrable
/// weight families and reports the flip residual of each.
std::vector<ConventionResult> ybe_convention_scan(ModelId model, double eta, double psi1, double psi2);

/// Middle spectral argument for the dense family: the triple
/// (u, u+v-gamma, v) satisfies the flip and matches the algebraic check.
double dense_ybe_middle(double gamma, double u, double v);

}  // namespace paraferm
