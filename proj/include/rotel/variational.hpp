#pragma once

// Euler-Lagrange machinery for the spinor form of the action.
//
// The Lagrangian density is a weighted sum of squares of one 16-component
// vector: L = sum_J A_J W_J^2 with W_J = sqrt(rho) V_J and
// V = (f, v_1..v_3, *T_11..*T_33 row-major, omega_1..omega_3). Each W_J is a
// first-order bilinear
//
//   W_J = i (bar xi B_J^A d_A xi - xi B_J^A d_A bar xi) / sqrt(rho),
//
// A = 0..3 (0 = time), with constant Hermitian 2x2 matrices B_J^A read off
// the spinor representations:
//
//   f-row:       B^a = -2 sigma_a                   (a spatial)
//   v_a-row:     B^g = -eps_{bga} sigma_b
//   *T_ab-row:   B^g = delta_{ga} sigma_b - delta_{ab} sigma_g
//   omega_a-row: B^0 = sigma_a
//
// Varying the action S = int sum_J A_J W_J^2 and integrating by parts gives
// the dotted spinor field
//
//   F = 2 sum_J A_J [ i W_J B_J^A d_A xi / sqrt(rho)
//                     - W_J^2 sigma_0 xi / (2 rho)
//                     + i d_A (W_J B_J^A xi / sqrt(rho)) ],
//
// whose vanishing is the Euler-Lagrange equation. For a plane wave
// xi = exp(-i p.x) zeta the combination exp(i p.x) F is the constant
//
//   G = 2 sum_J A_J [ 2 W_J B_J^A p_A zeta / sqrt(j_0)
//                     - W_J^2 sigma_0 zeta / (2 j_0) ],
//
// which coincides with the gradient of the reduced Lagrangian.

#include "rotel/planewave.hpp"

namespace rotel {

inline constexpr int kWComponents = 16;

using WVector = std::array<double, kWComponents>;
using WField = Field<WVector>;

// Index layout of the 16-component vector.
enum WIndex : int {
  w_f = 0,
  w_v1 = 1,       // v_a at 1 + (a-1)
  w_star11 = 4,   // *T_ab at 4 + 3(a-1) + (b-1)
  w_omega1 = 13,  // omega_a at 13 + (a-1)
};

struct CoefficientTables {
  std::array<double, kWComponents> a{};
  std::array<std::array<Mat2c, 4>, kWComponents> b{};
  std::array<std::array<bool, 4>, kWComponents> b_nonzero{};
};

CoefficientTables build_tables(const ElasticModuli& m);

WField assemble_W(const SpinorField& xi, const CoefficientTables& tables, const Deriv& deriv,
                  double rho_min = kRhoMin);

// sum_J A_J W_J^2 pointwise; equals the Lagrangian density computed through
// the geometric quantities.
ScalarField lagrangian_from_tables(const SpinorField& xi, const CoefficientTables& tables,
                                   const Deriv& deriv, double rho_min = kRhoMin);

Field<Spinor> euler_lagrange_F(const SpinorField& xi, const ElasticModuli& m,
                               const Deriv& deriv, double rho_min = kRhoMin);

Spinor reduced_G(const Spinor& zeta, const FourMomentum& p, const ElasticModuli& m);

// Independent variational oracle: central-difference gradient of the
// discretized action with respect to the four real components of xi at every
// grid point, repackaged as a dotted spinor field. The action is evaluated
// through the geometric-quantity path, so this shares nothing with the
// A_J/B_J tables above. Steps outside [1e-9, 1e-2] are rejected, as is the
// exact-derivative scheme (a perturbed field is no longer a plane wave).
Field<Spinor> fd_action_gradient(const SpinorField& xi, const ElasticModuli& m, double step,
                                 const Deriv& deriv, double rho_min = kRhoMin);

// Multiply pointwise by exp(+i p.x) (undo a plane-wave phase).
Field<Spinor> unphase(const Field<Spinor>& f, const std::array<double, 4>& p);

struct SpinorFieldStats {
  Spinor mean;
  double stdev = 0.0;     // sqrt(mean |F - mean|^2), deterministic reduction
  double mean_mag = 0.0;  // |mean|
  double max_norm = 0.0;
};

SpinorFieldStats spinor_field_stats(const Field<Spinor>& f);

}  // namespace rotel
