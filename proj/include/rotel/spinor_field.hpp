#pragma once

// Spinor-side expressions for the geometric quantities.
//
// With z_{ab} = bar(xi) sigma_b d_a xi the quantities below are built from
// i(z - conj z) = -2 Im z combinations divided by rho, so they are real by
// construction:
//
//   omega_a = i (bar xi sigma_a d_0 xi - c.c.) / rho
//   f       = -2i (bar xi sigma^a d_a xi - c.c.) / rho
//   v_a     = -i eps_{bga} (bar xi sigma^b d^g xi - c.c.) / rho
//   *T_{ab} = i (bar xi sigma_b d_a xi - c.c.
//                - (bar xi sigma^g d_g xi - c.c.) g_{ab}) / rho
//
// All are invariant under rescaling xi -> lambda(x) xi with lambda > 0
// (except omega, which is invariant under constant rescaling) and under a
// constant phase.

#include "rotel/deformation.hpp"
#include "rotel/grid.hpp"

namespace rotel {

// rho pointwise; throws naming the first offending flat index when the
// field dips to or below the floor.
ScalarField density_field(const SpinorField& xi, double rho_min = kRhoMin);

// Pointwise conversion of a spinor field to its coframe field.
CoframeField coframe_field_from_spinor(const SpinorField& xi, double rho_min = kRhoMin);

CovectorField omega_from_spinor(const SpinorField& xi, const Deriv& deriv,
                                double rho_min = kRhoMin);
ScalarField f_from_spinor(const SpinorField& xi, const Deriv& deriv, double rho_min = kRhoMin);
CovectorField v_from_spinor(const SpinorField& xi, const Deriv& deriv,
                            double rho_min = kRhoMin);
Rank2Field dual_torsion_from_spinor(const SpinorField& xi, const Deriv& deriv,
                                    double rho_min = kRhoMin);

}  // namespace rotel
