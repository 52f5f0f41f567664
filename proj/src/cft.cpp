#include "paraferm/cft.hpp"

#include <cmath>
#include <stdexcept>

namespace paraferm {

double central_charge(double g) {
  if (!(g > 0.0)) throw std::invalid_argument("central_charge: g must be positive");
  double d = 1.0 - g;
  return 1.0 - 6.0 * d * d / g;
}

double conformal_weight(double g, int r, int rp) {
  if (!(g > 0.0)) throw std::invalid_argument("conformal_weight: g must be positive");
  double a = g * r - rp;
  double d = 1.0 - g;
  return (a * a - d * d) / (4.0 * g);
}

double c_regime34(double gp) {
  if (!(gp > 0.0)) throw std::invalid_argument("c_regime34: g' must be positive");
  double d = 1.0 - gp;
  return 1.5 - 6.0 * d * d / gp;
}

double sle_c_of_s(double s) {
  if (std::abs(2.0 * s + 1.0) < 1e-14) throw std::domain_error("sle_c_of_s: pole at s = -1/2");
  return 2.0 * s * (5.0 - 8.0 * s) / (2.0 * s + 1.0);
}

double spin_from_boundary_weight(int N, double kappa) {
  if (N < 1) throw std::invalid_argument("spin_from_boundary_weight: N must be >= 1");
  if (!(kappa > 0.0)) throw std::invalid_argument("spin_from_boundary_weight: kappa must be positive");
  return N * (2.0 * N + 4.0 - kappa) / (2.0 * kappa);
}

}  // namespace paraferm
