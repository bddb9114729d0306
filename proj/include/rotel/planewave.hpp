#pragma once

// Closed-form plane-wave machinery.
//
// For xi(x) = exp(-i p.x) zeta with constant spinor zeta and real 4-momentum
// p = (p0, p), every geometric quantity is constant:
//
//   rho      = j_0
//   f        = -4 (p.j) / j_0
//   v        = -2 (j x p) / j_0
//   *T_{ab}  = 2 (p_a j_b - (p.j) g_{ab}) / j_0
//   omega    = 2 p_0 j / j_0
//
// with the 4-current j_A = bar(zeta) sigma_A zeta. Substituting into the
// Lagrangian density gives the reduced function L(zeta; p); its critical
// points in zeta are the plane-wave solutions, classified by the two wave
// speeds
//
//   v1 = sqrt((4 c_ax + 2 c_ten) / (3 c_kin)),
//   v2 = sqrt((c_vec + c_ten) / (2 c_kin)).

#include <optional>
#include <vector>

#include "rotel/energetics.hpp"

namespace rotel {

// Wave speeds below this threshold are classified as exactly degenerate.
inline constexpr double kSpeedZeroTol = 1e-14;
// Positive speeds below this get a near-degenerate warning instead of being
// silently merged with the zero branch.
inline constexpr double kSpeedWarnTol = 1e-7;

struct FourMomentum {
  double p0 = 0.0;
  Vec3 p;

  std::array<double, 4> as_array() const { return {p0, p[0], p[1], p[2]}; }
};

struct PlaneWave {
  Spinor zeta;
  FourMomentum p;
};

struct FourCurrent {
  double j0 = 0.0;
  Vec3 j;
};

struct PlaneWaveQuantities {
  double rho = 0.0;
  double f = 0.0;
  Vec3 v;
  Mat3 star_t;
  Vec3 omega;
};

struct WaveSpeeds {
  double v1 = 0.0;
  double v2 = 0.0;
  bool near_degenerate_warning = false;
};

enum class BranchKind { type1, type2_circle, sphere_degenerate };

std::string to_string(BranchKind k);

// One branch of the Theorem-1 classification, with enough sampled momenta to
// verify the critical-point residual concretely.
struct SolutionFamily {
  BranchKind kind;
  double speed = 0.0;        // propagation speed of the branch
  double p0 = 0.0;
  double radius = 0.0;       // |p| of every member
  std::vector<FourMomentum> samples;
};

FourCurrent four_current(const Spinor& zeta);

PlaneWaveQuantities plane_wave_quantities(const Spinor& zeta, const FourMomentum& p);

double reduced_lagrangian(const Spinor& zeta, const FourMomentum& p, const ElasticModuli& m);

// The constant dotted spinor G with delta L = G delta bar(zeta) + c.c.; zero
// exactly at plane-wave solutions. The overall 4 c_kin scale is kept so the
// finite-difference gradient of reduced_lagrangian matches it without any
// renormalization.
Spinor critical_residual(const Spinor& zeta, const FourMomentum& p, const ElasticModuli& m);

WaveSpeeds wave_speeds(const ElasticModuli& m);

// All plane-wave solution branches for the given frequency, zeta = (1,0).
// p0 = 0 (static) is rejected.
std::vector<SolutionFamily> solve_plane_waves(const ElasticModuli& m, double p0,
                                              int samples_per_family = 8);

struct GaugeDecomposition {
  double scale = 1.0;  // sqrt(rho)
  Mat2c u;             // special unitary with U zeta / scale = (1,0)
};

GaugeDecomposition normalize_and_gauge(const Spinor& zeta);

}  // namespace rotel
