#pragma once

namespace paraferm {

/// Coulomb-gas central charge c = 1 - 6(1-g)^2/g.
double central_charge(double g);

/// Kac weight h_{r,r'} = ((g r - r')^2 - (1-g)^2) / (4g).
double conformal_weight(double g, int r, int rp);

/// Central charge 3/2 - 6(1-g')^2/g' of the low-eta regime, g' = 2(pi+eta)/pi.
double c_regime34(double gp);

/// Central charge 2s(5-8s)/(2s+1) implied by a spin-s observable under plain
/// chordal SLE; pole at s = -1/2.
double sle_c_of_s(double s);

/// Spin of an N-curve observable from the boundary-fusion rule:
/// s = h_{N+1,1} = N(2N+4-kappa)/(2 kappa).
double spin_from_boundary_weight(int N, double kappa);

}  // namespace paraferm
