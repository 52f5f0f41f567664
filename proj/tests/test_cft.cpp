#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "paraferm/cft.hpp"
#include "paraferm/geometry.hpp"
#include "paraferm/models.hpp"

using namespace paraferm;

TEST_CASE("central charge") {
  CHECK(central_charge(1.0) == doctest::Approx(1.0));
  CHECK(central_charge(0.5) == doctest::Approx(-2.0));
  CHECK(central_charge(0.75) == doctest::Approx(0.5));  // Ising at gamma = pi/4
  CHECK_THROWS_AS(central_charge(0.0), std::invalid_argument);
}

TEST_CASE("conformal weights") {
  for (double g : {0.3, 0.7, 1.0, 1.6}) {
    CHECK(conformal_weight(g, 1, 1) == doctest::Approx(0.0));
    // sign flip of both indices leaves h unchanged
    CHECK(conformal_weight(g, 3, 2) == doctest::Approx(conformal_weight(g, -3, -2)));
  }
}

TEST_CASE("dense spin equals h31") {
  for (int i = 1; i < 64; ++i) {
    double gamma = (kPi / 2) * i / 64.0;
    double g = 1.0 - gamma / kPi;
    double s = spin_value(ModelId::DensePotts, gamma);
    CHECK(std::abs(s - conformal_weight(g, 3, 1)) < 1e-14);
  }
}

TEST_CASE("dilute spin equals h21") {
  for (int i = 1; i <= 64; ++i) {
    double eta = kPi * i / 64.0;
    double g = 2.0 * eta / kPi;
    double s = spin_value(ModelId::DiluteOn, eta);
    CHECK(std::abs(s - conformal_weight(g, 2, 1)) < 1e-12);
  }
}

TEST_CASE("low-eta central charge and its spin relation") {
  CHECK(c_regime34(1.0) == doctest::Approx(1.5));
  CHECK(c_regime34(2.0 * (kPi - kPi / 2) / kPi) == doctest::Approx(1.5));
  // c = (2 - 5s - 16 s^2)/(2s + 2) on the companion root s = 3 eta/(2 pi) + 1/2
  // of cos(4 pi s) = cos(6 eta); the -1/2 branch satisfies the same root
  // equation but not this rational identity
  for (int i = 1; i < 64; ++i) {
    double eta = -kPi + kPi * i / 64.0;
    double gp = 2.0 * (kPi + eta) / kPi;
    double s = 1.5 * eta / kPi + 0.5;
    CHECK(std::abs(std::cos(4.0 * kPi * s) - std::cos(6.0 * eta)) < 1e-12);
    double rational = (2.0 - 5.0 * s - 16.0 * s * s) / (2.0 * s + 2.0);
    CHECK(std::abs(c_regime34(gp) - rational) < 1e-12);
  }
}

TEST_CASE("sle central charge of a spin-s observable") {
  CHECK(sle_c_of_s(0.5) == doctest::Approx(0.5));
  CHECK(sle_c_of_s(0.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(sle_c_of_s(-0.5), std::domain_error);
  // c = 1 forces the free-fermion anisotropy: (4s-1)^2 = 0, Delta = 1/sqrt(2)
  double s = 0.25;
  CHECK(sle_c_of_s(s) == doctest::Approx(1.0));
  CHECK(six_vertex_map(s, 0.4).delta == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("boundary-fusion spin") {
  CHECK(spin_from_boundary_weight(1, 3.0) == doctest::Approx(0.5));
  CHECK(spin_from_boundary_weight(2, 4.0) == doctest::Approx(1.0));
  CHECK(spin_from_boundary_weight(1, 6.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(spin_from_boundary_weight(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(spin_from_boundary_weight(1, 0.0), std::invalid_argument);

  // N = 2 with kappa = 4/g reproduces the dense spin
  for (int i = 1; i < 32; ++i) {
    double gamma = (kPi / 2) * i / 32.0;
    double g = 1.0 - gamma / kPi;
    CHECK(std::abs(spin_from_boundary_weight(2, 4.0 / g) - spin_value(ModelId::DensePotts, gamma)) <
          1e-12);
  }
  // N = 1 with kappa = 4/g reproduces the dilute spin
  for (int i = 1; i <= 32; ++i) {
    double eta = kPi * i / 32.0;
    double g = 2.0 * eta / kPi;
    CHECK(std::abs(spin_from_boundary_weight(1, 4.0 / g) - spin_value(ModelId::DiluteOn, eta)) < 1e-12);
  }
}
