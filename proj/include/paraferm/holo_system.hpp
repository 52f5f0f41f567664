#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "paraferm/models.hpp"

namespace paraferm {

/// Phase bookkeeping of the holomorphicity systems.  lambda = e^{i pi s}
/// (dense, dilute) or e^{2 i pi s} (two-colour); phi = (s+1) alpha (dense,
/// dilute) or (2s+1) alpha (two-colour); mu = e^{i phi}.  The dense variant
/// with plaquette increments beta, pi-beta uses phi = alpha + beta s.
struct SpinParams {
  ModelId model = ModelId::DensePotts;
  double s = 0.0, alpha = 0.0, beta = 0.0, phi = 0.0;
  cplx lambda, mu;
};

SpinParams make_spin_params(ModelId model, double s, double alpha);
SpinParams make_spin_params_beta(double s, double alpha, double beta);  // dense only

/// A real linear system in the Boltzmann weights: all real/imaginary rows of
/// the complex holomorphicity equations plus the documented square selection.
struct HoloSystem {
  ModelId model = ModelId::DensePotts;
  Eigen::MatrixXd rows_all;
  Eigen::MatrixXd reduced;  // square selection (empty for the dense 2-unknown system)
  std::vector<std::string> row_names;
  std::vector<std::string> reduced_row_names;
  std::vector<std::string> col_names;
  // the row-dropping argument needs n^2 != 1 (two-colour) or n != -1
  // (dilute v = 0); the square matrix is still populated when it fails
  bool reduction_valid = true;
};

// ---- dense Potts ----------------------------------------------------------

/// Complex 2x2 system in (a, b); rows ordered so that the numeric determinant
/// matches the closed form and the null-space ratio b/a equals
/// sin(gamma-u)/sin(u) at u = pi/2 - (s+1) alpha / 2.
Eigen::Matrix2cd potts_complex_matrix(double Q, const SpinParams& p);
HoloSystem build_potts_system(double Q, const SpinParams& p);
/// Closed form lambda^{-1} (1+mu)(1-mu lambda^{-1}) [lambda^2 + (Q-2) lambda + 1].
cplx potts_determinant(double Q, const SpinParams& p);
cplx potts_numeric_determinant(double Q, const SpinParams& p);
double potts_determinant_normalised(double Q, const SpinParams& p);
/// Null-space weight ratio b/a; beta tunes the increment convention.
double potts_weight_ratio(double gamma, double alpha, double beta);
/// Increment angle beta for which the weight ratio reproduces u = gamma*alpha/pi.
double potts_beta_for_u_relation(double gamma, double alpha);

// ---- dilute O(n) ----------------------------------------------------------

enum class OnBranch { v_zero, v_nonzero };

/// complex values of the four equations on a weight vector (t,u1,u2,v,w1,w2)
Eigen::Vector4cd on_equation_values(double n, const SpinParams& p, const std::vector<double>& w);
HoloSystem build_on_system(double n, const SpinParams& p);          // 8 rows + 6x6 selection
HoloSystem build_on_system_v0(double n, const SpinParams& p);       // 6 rows + 5x5 selection
/// The two imaginary-part combinations that vanish identically on real weights.
std::pair<double, double> on_dependency_residuals(double n, const SpinParams& p,
                                                  const std::vector<double>& w);
double on_determinant(double n, const SpinParams& p, OnBranch branch);  // closed form
double on_numeric_determinant(double n, const SpinParams& p, OnBranch branch);
double on_det_normalisation(OnBranch branch);  // fixed constant, computed at a reference point

// ---- two-colour C2(1) -----------------------------------------------------

Eigen::Vector3cd c2_equation_values(double n, const SpinParams& p, const std::vector<double>& w);
HoloSystem build_c2_system(double n, const SpinParams& p);  // 6 rows + 5x5 selection
double c2_dependency_residual(double n, const SpinParams& p, const std::vector<double>& w);
double c2_determinant(double n, const SpinParams& p);  // closed form
double c2_numeric_determinant(double n, const SpinParams& p);
double c2_det_normalisation();

// ---- generic linear algebra ----------------------------------------------

/// Orthonormal basis of the null space: right singular vectors whose singular
/// values fall below tol times the largest.
std::vector<Eigen::VectorXd> null_space(const Eigen::MatrixXd& m, double tol = 1e-10);
double cosine_similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b);
/// |projection of w onto span(basis)| / |w|
double null_space_alignment(const std::vector<Eigen::VectorXd>& basis, const Eigen::VectorXd& w);

// ---- determinant scan ------------------------------------------------------

struct DetRoot {
  double s = 0.0;
  // "physical": alpha-independent factor; "embedding": sin(phi)-type factor
  std::string kind;
  double closed_form_match = -1.0;  // distance to the nearest closed-form spin
};

/// Sign-change/bisection roots of the real determinant over a spin interval.
/// Dense uses the phase-stripped real determinant; the degenerate two-colour
/// case n^2 = 1 falls back to minima of the smallest singular value.
std::vector<DetRoot> determinant_scan(ModelId model, double fugacity, double alpha, double s_lo,
                                      double s_hi, int steps);

}  // namespace paraferm
