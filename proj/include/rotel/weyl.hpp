#pragma once

// The pair of Weyl (massless Dirac) operators
//
//   i (+/- sigma^0 d_0 + sigma^a d_a) xi = 0,    sigma^0 = -sigma_0,
//
// whose two sign branches differ by time reversal, and the numerical
// cross-checks tying their solutions to those of the purely axial material
// (c_vec = c_ten = 0, normalized so that c_kin = 4/3 c_ax, which gives
// v1 = 1 and v2 = 0).

#include "rotel/variational.hpp"

namespace rotel {

enum class WeylSign { plus, minus };

inline double weyl_sign_value(WeylSign s) { return s == WeylSign::plus ? 1.0 : -1.0; }
std::string to_string(WeylSign s);

// Grid form of the operator.
Field<Spinor> weyl_residual(const SpinorField& xi, WeylSign sign, const Deriv& deriv);

// Plane-wave form: applying the operator to exp(-i p.x) zeta gives
// exp(-i p.x) (sigma.p - s p0) zeta; the constant spinor is returned.
Spinor weyl_residual(const PlaneWave& wave, WeylSign sign);

// Momenta of the plane-wave Weyl solutions with zeta = (1,0): p = (0,0,s p0)
// per branch.
struct WeylMomentum {
  Vec3 p;
  WeylSign sign;
};
std::vector<WeylMomentum> weyl_plane_waves(double p0);

// Spin-up spinor along a unit direction: (sigma.n) chi = +chi.
Spinor spin_up(const Vec3& n);

// Superposition of same-frequency Weyl plane waves along the given unit
// directions: eta(x) = sum_k A_k exp(-i s p0 n_k.x) chi_+(n_k). Each wave has
// momentum s p0 n_k, so the spacetime field exp(-i p0 x0) eta solves the
// branch-s Weyl equation exactly. Throws if any wave vector is not
// commensurate with the spatial grid.
struct WeylWave {
  Vec3 direction;  // unit
  cplx amplitude = 1.0;
};
SpinorField weyl_superposition_eta(const GridSpec& spatial, double p0, WeylSign sign,
                                   const std::vector<WeylWave>& waves);

bool is_commensurate(const GridSpec& g, const std::array<double, 4>& p, double tol = 1e-9);

// Stationary spinor field xi = exp(-i p0 x0) eta(x).
struct StationaryField {
  double p0 = 0.0;
  SpinorField eta;  // spatial grid only
};

// Samples the stationary field on a spacetime grid with nt slices and time
// box 2 pi / |p0| (one full phase turn).
SpinorField stationary_to_spacetime(const StationaryField& s, int nt);

// Validates that the moduli describe the normalized purely axial material.
void validate_purely_axial_normalized(const ElasticModuli& m, double tol = 1e-12);

// ---------------------------------------------------------------------------
// Theorem cross-checks

struct Theorem2Report {
  WaveSpeeds speeds;
  int lattice_n = 0;
  double extent = 0.0;           // lattice covers [-extent, extent]^3
  std::size_t elastic_zeros = 0;
  std::size_t weyl_zeros = 0;
  bool sets_equal = false;       // identical zero sets over the lattice
  bool zeros_are_poles = false;  // both equal {(0,0,+-p0)}
  bool pass = false;
};

// Sweeps the momentum lattice |p_i| <= extent_factor * |p0| with zeta = (1,0)
// and compares the zero set of the elastic critical residual against the
// union of the two Weyl branches' zero sets.
Theorem2Report theorem2_crosscheck(double p0, const ElasticModuli& m, int lattice_n = 41,
                                   double extent_factor = 2.0, double zero_tol = 1e-9);

struct Theorem3Options {
  int nt = 16;
  double mask_fraction = 0.1;   // evaluate F where rho >= fraction * max rho
  double weyl_tol = 1e-8;       // input really solves the Weyl equation
  double f_tol = 1e-5;          // elastic residual bound on the mask
  Deriv deriv = Deriv::spectral();
};

struct Theorem3Report {
  double weyl_residual_max = 0.0;  // best branch, whole grid
  double f_max_masked = 0.0;
  double f_max_full = 0.0;
  double rho_min = 0.0;
  double rho_max = 0.0;
  std::size_t mask_points = 0;
  std::size_t total_points = 0;
  bool weyl_solves = false;
  bool pass = false;  // weyl_solves implies the F bound held on the mask
};

// Forward direction of the stationary equivalence: a stationary Weyl
// solution must satisfy the elastic Euler-Lagrange equation on the mask.
Theorem3Report theorem3_check(const StationaryField& field, const ElasticModuli& m,
                              const Theorem3Options& opts = {});

}  // namespace rotel
