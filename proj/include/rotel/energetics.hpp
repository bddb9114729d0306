#pragma once

// Kinetic and potential energy, Lagrangian density and action.
//
//   K(x0) = c_kin int |omega|^2 rho dx
//   P(x0) = int (c_ax |*T^ax|^2 + c_vec |*T^vec|^2 + c_ten |*T^ten|^2) rho dx
//         = int ((c_ax-c_ten)/3 f^2 + (c_vec-c_ten)/2 |v|^2 + c_ten *T:*T) rho dx
//   L     = ((c_ax-c_ten)/3 f^2 + (c_vec-c_ten)/2 |v|^2 + c_ten *T:*T
//            - c_kin |omega|^2) rho
//   S     = int (P - K) dx0 = int L dx0 dx
//
// Varying the action in rho gives the density field equation L = 0.

#include <vector>

#include "rotel/deformation.hpp"
#include "rotel/spinor_field.hpp"

namespace rotel {

struct ElasticModuli {
  double c_ax = 0.0;
  double c_vec = 0.0;
  double c_ten = 0.0;
  double c_kin = 1.0;

  // c_ax, c_vec, c_ten nonnegative and not all zero; c_kin positive.
  void validate() const;
  bool is_purely_axial() const { return c_vec == 0.0 && c_ten == 0.0; }
};

// All pointwise inputs to the Lagrangian on one grid. omega is empty when
// the grid has no time axis (static configuration).
struct GeometricFields {
  ScalarField rho;
  ScalarField f;
  CovectorField v;
  Rank2Field star_t;
  CovectorField omega;
};

GeometricFields geometric_from_spinor(const SpinorField& xi, const Deriv& deriv,
                                      double rho_min = kRhoMin);
GeometricFields geometric_from_coframe(const CoframeField& theta, const ScalarField& rho,
                                       const Deriv& deriv);

// Energies per time slice (a single slice for spatial-only grids).
std::vector<double> kinetic_energy(const CovectorField& omega, const ScalarField& rho,
                                   const ElasticModuli& m);

enum class PotentialForm { moduli_sum, simplified };

std::vector<double> potential_energy(const Rank2Field& star_t, const ScalarField& rho,
                                     const ElasticModuli& m,
                                     PotentialForm form = PotentialForm::simplified);

ScalarField lagrangian_density(const GeometricFields& geo, const ElasticModuli& m);
ScalarField lagrangian_density(const SpinorField& xi, const ElasticModuli& m,
                               const Deriv& deriv);

// Spacetime quadrature of L; requires a time axis.
double action(const ScalarField& lagrangian);

// The bracketed expression L / rho, which vanishes on solutions.
ScalarField density_el_residual(const GeometricFields& geo, const ElasticModuli& m);
ScalarField density_el_residual(const SpinorField& xi, const ElasticModuli& m,
                                const Deriv& deriv);

}  // namespace rotel
