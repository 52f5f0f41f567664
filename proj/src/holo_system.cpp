#include "paraferm/holo_system.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace paraferm {

namespace {
cplx unit(double angle) { return cplx(std::cos(angle), std::sin(angle)); }
}  // namespace

SpinParams make_spin_params(ModelId model, double s, double alpha) {
  SpinParams p;
  p.model = model;
  p.s = s;
  p.alpha = alpha;
  p.beta = alpha;
  switch (model) {
    case ModelId::DensePotts:
    case ModelId::DiluteOn:
      p.lambda = unit(kPi * s);
      p.phi = (s + 1.0) * alpha;
      break;
    case ModelId::C2Loop:
      p.lambda = unit(2.0 * kPi * s);
      p.phi = (2.0 * s + 1.0) * alpha;
      break;
  }
  p.mu = unit(p.phi);
  return p;
}

SpinParams make_spin_params_beta(double s, double alpha, double beta) {
  SpinParams p;
  p.model = ModelId::DensePotts;
  p.s = s;
  p.alpha = alpha;
  p.beta = beta;
  p.lambda = unit(kPi * s);
  p.phi = alpha + beta * s;
  p.mu = unit(p.phi);
  return p;
}

// ---------------------------------------------------------------------------
// dense Potts
// ---------------------------------------------------------------------------

Eigen::Matrix2cd potts_complex_matrix(double Q, const SpinParams& p) {
  if (Q < 0.0) throw std::invalid_argument("potts system: Q must be >= 0");
  const cplx l = p.lambda, m = p.mu, li = 1.0 / l;
  const double sq = std::sqrt(Q);
  Eigen::Matrix2cd M;
  // unknown order (a, b)
  M(0, 0) = (1.0 - m * li) * sq;
  M(0, 1) = 1.0 + m - li - m * li;
  M(1, 0) = 1.0 + m - l - m * li;
  M(1, 1) = (1.0 + m) * sq;
  return M;
}

HoloSystem build_potts_system(double Q, const SpinParams& p) {
  Eigen::Matrix2cd M = potts_complex_matrix(Q, p);
  HoloSystem sys;
  sys.model = ModelId::DensePotts;
  sys.col_names = {"a", "b"};
  sys.rows_all.resize(4, 2);
  sys.row_names = {"Re eq1", "Im eq1", "Re eq2", "Im eq2"};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      sys.rows_all(2 * r, c) = M(r, c).real();
      sys.rows_all(2 * r + 1, c) = M(r, c).imag();
    }
  return sys;
}

cplx potts_determinant(double Q, const SpinParams& p) {
  const cplx l = p.lambda, m = p.mu;
  return (1.0 / l) * (1.0 + m) * (1.0 - m / l) * (l * l + (Q - 2.0) * l + 1.0);
}

cplx potts_numeric_determinant(double Q, const SpinParams& p) {
  return potts_complex_matrix(Q, p).determinant();
}

double potts_determinant_normalised(double Q, const SpinParams& p) {
  Eigen::Matrix2cd M = potts_complex_matrix(Q, p);
  double scale = M.row(0).norm() * M.row(1).norm();
  if (scale == 0.0) return 0.0;
  return std::abs(M.determinant()) / scale;
}

double potts_weight_ratio(double gamma, double alpha, double beta) {
  double s = 1.0 - 2.0 * gamma / kPi;
  double half_phi = 0.5 * (alpha + beta * s);
  double denom = std::cos(half_phi);
  if (std::abs(denom) < 1e-14)
    throw std::domain_error("potts_weight_ratio: pole (cos(phi/2) = 0)");
  return -std::cos(gamma + half_phi) / denom;
}

double potts_beta_for_u_relation(double gamma, double alpha) {
  double s = 1.0 - 2.0 * gamma / kPi;
  double u = gamma * alpha / kPi;
  if (std::abs(s) < 1e-14) throw std::domain_error("potts_beta_for_u_relation: s = 0");
  return (kPi - 2.0 * u - alpha) / s;
}

// ---------------------------------------------------------------------------
// dilute O(n)
// ---------------------------------------------------------------------------

namespace {

// complex coefficient rows of the four equations, unknowns (t,u1,u2,v,w1,w2)
Eigen::Matrix<cplx, 4, 6> on_coefficients(double n, const SpinParams& p) {
  const cplx l = p.lambda, m = p.mu;
  const cplx li = 1.0 / l, li2 = li * li, l2 = l * l;
  Eigen::Matrix<cplx, 4, 6> C;
  C.row(0) << 1.0, m, -m * li, -1.0, 0.0, 0.0;
  C.row(1) << 0.0, -li, n, l * m, -m * li, -n * m * li;
  C.row(2) << 0.0, n, -l, -m * li2, n * m, m;
  C.row(3) << 0.0, -m * li2, m * l, n, -li2, -l2;
  return C;
}

Eigen::MatrixXd real_rows(const Eigen::MatrixXcd& C) {
  Eigen::MatrixXd R(2 * C.rows(), C.cols());
  for (int r = 0; r < C.rows(); ++r)
    for (int c = 0; c < C.cols(); ++c) {
      R(2 * r, c) = C(r, c).real();
      R(2 * r + 1, c) = C(r, c).imag();
    }
  return R;
}

}  // namespace

Eigen::Vector4cd on_equation_values(double n, const SpinParams& p, const std::vector<double>& w) {
  if (w.size() != 6) throw std::invalid_argument("on_equation_values: need 6 weights");
  Eigen::Matrix<cplx, 4, 6> C = on_coefficients(n, p);
  Eigen::Matrix<double, 6, 1> wv;
  for (int i = 0; i < 6; ++i) wv(i) = w[i];
  return C * wv.cast<cplx>();
}

HoloSystem build_on_system(double n, const SpinParams& p) {
  HoloSystem sys;
  sys.model = ModelId::DiluteOn;
  sys.col_names = {"t", "u1", "u2", "v", "w1", "w2"};
  Eigen::MatrixXcd C = on_coefficients(n, p);
  sys.rows_all = real_rows(C);
  sys.row_names = {"Re eq1", "Im eq1", "Re eq2", "Im eq2", "Re eq3", "Im eq3", "Re eq4", "Im eq4"};
  // selection {Re 1, Re 2, Im 2, Re 3, Im 3, Re 4}
  const int pick[6] = {0, 2, 3, 4, 5, 6};
  sys.reduced.resize(6, 6);
  for (int r = 0; r < 6; ++r) {
    sys.reduced.row(r) = sys.rows_all.row(pick[r]);
    sys.reduced_row_names.push_back(sys.row_names[pick[r]]);
  }
  return sys;
}

HoloSystem build_on_system_v0(double n, const SpinParams& p) {
  HoloSystem sys;
  sys.model = ModelId::DiluteOn;
  sys.reduction_valid = std::abs(n + 1.0) > 1e-12;
  sys.col_names = {"t", "u1", "u2", "w1", "w2"};
  Eigen::MatrixXcd C = on_coefficients(n, p);
  Eigen::MatrixXcd C3(3, 5);
  const int keep_cols[5] = {0, 1, 2, 4, 5};  // drop v
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 5; ++c) C3(r, c) = C(r, keep_cols[c]);
  sys.rows_all = real_rows(C3);
  sys.row_names = {"Re eq1", "Im eq1", "Re eq2", "Im eq2", "Re eq3", "Im eq3"};
  const int pick[5] = {0, 2, 3, 4, 5};  // {Re 1, Re 2, Im 2, Re 3, Im 3}
  sys.reduced.resize(5, 5);
  for (int r = 0; r < 5; ++r) {
    sys.reduced.row(r) = sys.rows_all.row(pick[r]);
    sys.reduced_row_names.push_back(sys.row_names[pick[r]]);
  }
  return sys;
}

std::pair<double, double> on_dependency_residuals(double n, const SpinParams& p,
                                                  const std::vector<double>& w) {
  Eigen::Vector4cd e = on_equation_values(n, p, w);
  const cplx l = p.lambda, m = p.mu;
  const cplx l2 = l * l, li2 = 1.0 / l2;
  cplx c1 = (n + 1.0) * e(0) - l / m * e(1) + e(2) / m;
  cplx c2 = (l / m) * (l2 - n * li2) * e(1) + (n * l2 - li2) / m * e(2) - (n * n - 1.0) * e(3);
  return {c1.imag(), c2.imag()};
}

double on_determinant(double n, const SpinParams& p, OnBranch branch) {
  double s = p.s, phi = p.phi;
  double common = std::sin(phi) * std::sin(phi - kPi * s);
  if (branch == OnBranch::v_zero) return (n * n - 1.0) * (n * n - 1.0) * common;
  return (n * n - 1.0) * common * (2.0 * std::cos(4.0 * kPi * s) - 3.0 * n + n * n * n);
}

double on_numeric_determinant(double n, const SpinParams& p, OnBranch branch) {
  HoloSystem sys = (branch == OnBranch::v_zero) ? build_on_system_v0(n, p) : build_on_system(n, p);
  return sys.reduced.determinant();
}

double on_det_normalisation(OnBranch branch) {
  // fixed reference point; the numeric determinant is proportional to the
  // closed form with a constant factor per branch
  static const double k_nonzero = [] {
    SpinParams p = make_spin_params(ModelId::DiluteOn, 0.2345, 1.1);
    return on_numeric_determinant(0.4321, p, OnBranch::v_nonzero) /
           on_determinant(0.4321, p, OnBranch::v_nonzero);
  }();
  static const double k_zero = [] {
    SpinParams p = make_spin_params(ModelId::DiluteOn, 0.2345, 1.1);
    return on_numeric_determinant(0.4321, p, OnBranch::v_zero) /
           on_determinant(0.4321, p, OnBranch::v_zero);
  }();
  return branch == OnBranch::v_zero ? k_zero : k_nonzero;
}

// ---------------------------------------------------------------------------
// two-colour C2(1)
// ---------------------------------------------------------------------------

namespace {

Eigen::Matrix<cplx, 3, 5> c2_coefficients(double n, const SpinParams& p) {
  const cplx l = p.lambda, m = p.mu;
  const cplx li = 1.0 / l;
  Eigen::Matrix<cplx, 3, 5> C;
  C.row(0) << n, -l, -m * li, n * m, m;
  C.row(1) << -li, n, m, -m * li, -n * m * li;
  C.row(2) << -m * li, m, n, -li, -l;
  return C;
}

}  // namespace

Eigen::Vector3cd c2_equation_values(double n, const SpinParams& p, const std::vector<double>& w) {
  if (w.size() != 5) throw std::invalid_argument("c2_equation_values: need 5 weights");
  Eigen::Matrix<cplx, 3, 5> C = c2_coefficients(n, p);
  Eigen::Matrix<double, 5, 1> wv;
  for (int i = 0; i < 5; ++i) wv(i) = w[i];
  return C * wv.cast<cplx>();
}

HoloSystem build_c2_system(double n, const SpinParams& p) {
  HoloSystem sys;
  sys.model = ModelId::C2Loop;
  sys.reduction_valid = std::abs(n * n - 1.0) > 1e-12;
  sys.col_names = {"u1", "u2", "v", "w1", "w2"};
  Eigen::MatrixXcd C = c2_coefficients(n, p);
  sys.rows_all = real_rows(C);
  sys.row_names = {"Re eq1", "Im eq1", "Re eq2", "Im eq2", "Re eq3", "Im eq3"};
  // drop Im eq3; valid reduction for n^2 != 1
  const int pick[5] = {0, 1, 2, 3, 4};
  sys.reduced.resize(5, 5);
  for (int r = 0; r < 5; ++r) {
    sys.reduced.row(r) = sys.rows_all.row(pick[r]);
    sys.reduced_row_names.push_back(sys.row_names[pick[r]]);
  }
  return sys;
}

double c2_dependency_residual(double n, const SpinParams& p, const std::vector<double>& w) {
  Eigen::Vector3cd e = c2_equation_values(n, p, w);
  const cplx l = p.lambda, m = p.mu, li = 1.0 / l;
  // the (n^2-1) term carries a minus sign; the combination is an identity in
  // the coefficients for arbitrary real weights
  cplx c = (n * l - li) / m * e(0) + l / m * (l - n * li) * e(1) - (n * n - 1.0) * e(2);
  return c.imag();
}

double c2_determinant(double n, const SpinParams& p) {
  double s = p.s, phi = p.phi;
  return (n * n - 1.0) * std::sin(phi) * std::sin(phi - 2.0 * kPi * s) *
         (2.0 * std::cos(4.0 * kPi * s) - 3.0 * n + n * n * n);
}

double c2_numeric_determinant(double n, const SpinParams& p) {
  return build_c2_system(n, p).reduced.determinant();
}

double c2_det_normalisation() {
  static const double k = [] {
    SpinParams p = make_spin_params(ModelId::C2Loop, 0.2345, 1.1);
    return c2_numeric_determinant(0.4321, p) / c2_determinant(0.4321, p);
  }();
  return k;
}

// ---------------------------------------------------------------------------
// null space, scan
// ---------------------------------------------------------------------------

std::vector<Eigen::VectorXd> null_space(const Eigen::MatrixXd& m, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("null_space: tol must be positive");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  std::vector<Eigen::VectorXd> basis;
  int nsv = static_cast<int>(sv.size());
  for (int i = 0; i < m.cols(); ++i) {
    double s = (i < nsv) ? sv(i) : 0.0;
    if (s <= tol * std::max(smax, 1e-300)) basis.push_back(svd.matrixV().col(i));
  }
  return basis;
}

double cosine_similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(a.dot(b)) / (na * nb);
}

double null_space_alignment(const std::vector<Eigen::VectorXd>& basis, const Eigen::VectorXd& w) {
  if (w.norm() == 0.0) return 0.0;
  double proj2 = 0.0;
  for (const auto& v : basis) {
    double d = v.dot(w);
    proj2 += d * d;
  }
  return std::sqrt(proj2) / w.norm();
}

namespace {

double angle_from_fugacity(ModelId model, double fugacity) {
  if (model == ModelId::DensePotts) {
    double c = fugacity / 2.0;
    if (c < -1.0 || c > 1.0) throw std::invalid_argument("determinant_scan: fugacity out of range");
    return std::acos(c);
  }
  double c = -fugacity / 2.0;
  if (c < -1.0 || c > 1.0) throw std::invalid_argument("determinant_scan: fugacity out of range");
  return 0.5 * std::acos(c);
}

// phase-stripped real determinant of the dense system:
// cos(phi/2) sin((phi - pi s)/2) (2 cos(pi s) + Q - 2), up to a constant
double dense_real_det(double Q, double alpha, double s) {
  double phi = (s + 1.0) * alpha;
  return std::cos(0.5 * phi) * std::sin(0.5 * (phi - kPi * s)) * (2.0 * std::cos(kPi * s) + Q - 2.0);
}

double smallest_singular_value(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().tail(1)(0);
}

struct FactorSplit {
  double embedding;  // product of the sin(phi)-type factors
  double physical;   // spin-selective factor
};

FactorSplit scan_factors(ModelId model, double fugacity, double alpha, double s) {
  double phi;
  switch (model) {
    case ModelId::DensePotts: {
      phi = (s + 1.0) * alpha;
      double Q = fugacity * fugacity;
      return {std::cos(0.5 * phi) * std::sin(0.5 * (phi - kPi * s)), 2.0 * std::cos(kPi * s) + Q - 2.0};
    }
    case ModelId::DiluteOn: {
      phi = (s + 1.0) * alpha;
      double n = fugacity;
      return {std::sin(phi) * std::sin(phi - kPi * s),
              2.0 * std::cos(4.0 * kPi * s) - 3.0 * n + n * n * n};
    }
    case ModelId::C2Loop: {
      phi = (2.0 * s + 1.0) * alpha;
      double n = fugacity;
      return {std::sin(phi) * std::sin(phi - 2.0 * kPi * s),
              2.0 * std::cos(4.0 * kPi * s) - 3.0 * n + n * n * n};
    }
  }
  throw std::logic_error("scan_factors");
}

double closed_spin_distance(ModelId model, double fugacity, double s) {
  // candidate alpha-independent spins
  double best = 1e300;
  if (model == ModelId::DensePotts) {
    double gamma = angle_from_fugacity(model, fugacity);
    for (int k = -3; k <= 3; ++k) {
      best = std::min(best, std::abs(s - (1.0 - 2.0 * gamma / kPi + 2.0 * k)));
      best = std::min(best, std::abs(s - (2.0 * gamma / kPi - 1.0 + 2.0 * k)));
    }
    return best;
  }
  double eta = angle_from_fugacity(model, fugacity);
  for (int k = -6; k <= 6; ++k) {
    best = std::min(best, std::abs(s - (1.5 * eta / kPi + 0.5 * k)));
    best = std::min(best, std::abs(s - (-1.5 * eta / kPi + 0.5 * k)));
  }
  return best;
}

}  // namespace

std::vector<DetRoot> determinant_scan(ModelId model, double fugacity, double alpha, double s_lo,
                                      double s_hi, int steps) {
  if (steps < 2) throw std::invalid_argument("determinant_scan: steps must be >= 2");

  const bool degenerate = (model != ModelId::DensePotts) && std::abs(fugacity * fugacity - 1.0) < 1e-12;

  std::function<double(double)> f;
  if (model == ModelId::DensePotts) {
    double Q = fugacity * fugacity;
    f = [=](double s) { return dense_real_det(Q, alpha, s); };
  } else if (!degenerate) {
    double n = fugacity;
    if (model == ModelId::DiluteOn)
      f = [=](double s) {
        return on_numeric_determinant(n, make_spin_params(ModelId::DiluteOn, s, alpha), OnBranch::v_nonzero);
      };
    else
      f = [=](double s) { return c2_numeric_determinant(n, make_spin_params(ModelId::C2Loop, s, alpha)); };
  } else {
    // reduced determinant vanishes identically at n^2 = 1; use the smallest
    // singular value of the full real system instead
    double n = fugacity;
    f = [=](double s) {
      HoloSystem sys = (model == ModelId::DiluteOn)
                           ? build_on_system(n, make_spin_params(ModelId::DiluteOn, s, alpha))
                           : build_c2_system(n, make_spin_params(ModelId::C2Loop, s, alpha));
      return smallest_singular_value(sys.rows_all);
    };
  }

  std::vector<double> roots;
  const double h = (s_hi - s_lo) / steps;
  if (!degenerate) {
    double prev = f(s_lo);
    for (int i = 1; i <= steps; ++i) {
      double s = s_lo + i * h;
      double cur = f(s);
      if (prev == 0.0) roots.push_back(s - h);
      if (prev * cur < 0.0) {
        double lo = s - h, hi = s, flo = prev;
        for (int it = 0; it < 80; ++it) {
          double mid = 0.5 * (lo + hi), fm = f(mid);
          if (flo * fm <= 0.0)
            hi = mid;
          else {
            lo = mid;
            flo = fm;
          }
        }
        roots.push_back(0.5 * (lo + hi));
      }
      prev = cur;
    }
  } else {
    // minima of the singular-value profile that reach (numerical) zero
    std::vector<double> val(steps + 1);
    for (int i = 0; i <= steps; ++i) val[i] = f(s_lo + i * h);
    for (int i = 1; i < steps; ++i) {
      if (val[i] <= val[i - 1] && val[i] <= val[i + 1] && val[i] < 1e-6) {
        double lo = s_lo + (i - 1) * h, hi = s_lo + (i + 1) * h;
        for (int it = 0; it < 60; ++it) {
          double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
          if (f(m1) < f(m2))
            hi = m2;
          else
            lo = m1;
        }
        roots.push_back(0.5 * (lo + hi));
      }
    }
  }

  std::vector<DetRoot> out;
  for (double r : roots) {
    DetRoot dr;
    dr.s = r;
    FactorSplit fs = scan_factors(model, fugacity, alpha, r);
    dr.kind = (std::abs(fs.physical) < std::abs(fs.embedding)) ? "physical" : "embedding";
    dr.closed_form_match = closed_spin_distance(model, fugacity, r);
    out.push_back(dr);
  }
  return out;
}

}  // namespace paraferm
