#pragma once

// Rotational deformation measures computed from coframe fields.
//
// K_{abg} = sum_j theta^j_a d_b theta^j_g        (contortion; antisym in 1,3)
// T_{abg} = K_{abg} - K_{agb}                    (torsion; antisym in 2,3)
// *T_{ab} = 1/2 T_a^{gd} eps_{gdb}
//         = sum_j theta^j_a (curl theta^j)_b     (dislocation density)
// plus the SO(3)-irreducible decomposition of *T and the scalar/vector
// invariants f = tr *T and v_a = *T_{bg} eps_{bga}.

#include "rotel/grid.hpp"

namespace rotel {

void validate_coframe_field(const CoframeField& theta, double tol = kFrameTol);

// K^j_{ab} = d_a theta^j_b per covector, stored with slots (j, a, b).
Rank3Field coframe_jet(const CoframeField& theta, const Deriv& deriv);

Rank3Field build_K(const CoframeField& theta, const Deriv& deriv);
Rank3Field build_T(const CoframeField& theta, const Deriv& deriv);

// Pointwise algebraic interconversions. The input antisymmetry is validated
// against `tol`.
Rank3 K_from_T(const Rank3& t, double tol = kAntisymTol);
Rank3 T_from_K(const Rank3& k, double tol = kAntisymTol);
Rank3Field K_from_T(const Rank3Field& t, double tol = 1e-8);
Rank3Field T_from_K(const Rank3Field& k, double tol = 1e-8);

// *T computed directly through curls.
Rank2Field dual_torsion(const CoframeField& theta, const Deriv& deriv);

// Hodge pair in the last index slot of T: *T_{ab} = 1/2 T_{agd} eps_{gdb}
// and T_{abg} = *T_{ad} eps_{dbg}.
Mat3 star_from_T(const Rank3& t);
Rank3 T_from_star(const Mat3& star);
Rank2Field star_from_T(const Rank3Field& t);
Rank3Field T_from_star(const Rank2Field& star);

struct IrreducibleParts {
  Mat3 axial;   // (tr *T / 3) g
  Mat3 vec;     // antisymmetric part
  Mat3 tensor;  // symmetric trace-free remainder
};

IrreducibleParts decompose(const Mat3& star);
Field<IrreducibleParts> decompose(const Rank2Field& star);

double scalar_f(const Mat3& star);
Vec3 vector_v(const Mat3& star);
ScalarField scalar_f(const Rank2Field& star);
CovectorField vector_v(const Rank2Field& star);

// Angular velocity omega = 1/2 sum_j theta^j x d_0 theta^j. Requires a time
// axis.
CovectorField angular_velocity(const CoframeField& theta, const Deriv& deriv);

}  // namespace rotel
