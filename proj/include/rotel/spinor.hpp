#pragma once

// Spinor <-> (coframe, density) equivalence.
//
// A coframe is a triple of orthonormal covectors theta^j stored as the rows
// of a 3x3 matrix; together with a positive density rho it carries the same
// four degrees of freedom as a nonvanishing 2-component complex spinor,
// modulo the overall sign of the spinor.

#include <stdexcept>
#include <string>

#include "rotel/tensor.hpp"

namespace rotel {

// Orthonormality / orientation validation tolerance. Inputs may come out of
// finite-difference pipelines, hence looser than machine epsilon.
inline constexpr double kFrameTol = 1e-10;

// Density floor below which every rho-normalized formula is ill-conditioned.
inline constexpr double kRhoMin = 1e-12;

struct Spinor {
  std::array<cplx, 2> c{};

  Spinor() = default;
  Spinor(cplx x1, cplx x2) : c{x1, x2} {}

  cplx& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  cplx operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  Spinor& operator+=(const Spinor& o) {
    c[0] += o.c[0];
    c[1] += o.c[1];
    return *this;
  }
  Spinor& operator-=(const Spinor& o) {
    c[0] -= o.c[0];
    c[1] -= o.c[1];
    return *this;
  }
  Spinor& operator*=(cplx s) {
    c[0] *= s;
    c[1] *= s;
    return *this;
  }
};

inline Spinor operator+(Spinor a, const Spinor& b) { return a += b; }
inline Spinor operator-(Spinor a, const Spinor& b) { return a -= b; }
inline Spinor operator*(cplx s, Spinor a) { return a *= s; }
inline Spinor operator*(double s, Spinor a) { return a *= cplx(s, 0.0); }
inline Spinor operator-(const Spinor& a) { return cplx(-1.0, 0.0) * a; }

inline Spinor matvec(const Mat2c& m, const Spinor& x) {
  return Spinor{m(0, 0) * x[0] + m(0, 1) * x[1], m(1, 0) * x[0] + m(1, 1) * x[1]};
}

// bar(x)^a M_{ab} y^b
inline cplx bilinear(const Spinor& x, const Mat2c& m, const Spinor& y) {
  const cplx x0 = std::conj(x[0]), x1 = std::conj(x[1]);
  return x0 * (m(0, 0) * y[0] + m(0, 1) * y[1]) + x1 * (m(1, 0) * y[0] + m(1, 1) * y[1]);
}

inline double norm_sq(const Spinor& x) { return std::norm(x[0]) + std::norm(x[1]); }
inline double norm(const Spinor& x) { return std::sqrt(norm_sq(x)); }

struct Coframe {
  Mat3 m;  // row j = theta^j

  Vec3 covector(int j) const { return m.row(j); }
};

class degenerate_spinor_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class invalid_coframe_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// rho = |xi^1|^2 + |xi^2|^2; throws on a spinor below the density floor.
double spinor_density(const Spinor& xi, double rho_min = kRhoMin);

bool is_valid_coframe(const Coframe& theta, double tol = kFrameTol);
void validate_coframe(const Coframe& theta, double tol = kFrameTol);

bool is_special_orthogonal(const Mat3& o, double tol = kFrameTol);

// theta^1 + i theta^2 = rho^{-1} ((xi^1)^2 - (xi^2)^2,
//                                i (xi^1)^2 + i (xi^2)^2,
//                                -2 xi^1 xi^2),
// theta^3 = rho^{-1} (bar xi^2 xi^1 + bar xi^1 xi^2,
//                     i bar xi^2 xi^1 - i bar xi^1 xi^2,
//                     |xi^1|^2 - |xi^2|^2).
// The result is orthonormal with det = +1, invariant under xi -> lambda xi
// for real lambda > 0 and under xi -> -xi.
Coframe spinor_to_coframe(const Spinor& xi, double rho_min = kRhoMin);

// Inverse of spinor_to_coframe up to the inherent sign: lifts the coframe
// matrix from SO(3) to SU(2) by quaternion extraction (largest-pivot branch)
// and scales by sqrt(rho). The representative is fixed by making the first
// nonzero entry of (Re xi^1, Im xi^1, Re xi^2, Im xi^2) positive.
Spinor coframe_to_spinor(const Coframe& theta, double rho, double tol = kFrameTol);

// theta^j -> O^j_k theta^k for constant special orthogonal O.
Coframe rigid_rotate(const Coframe& theta, const Mat3& o, double tol = kFrameTol);

// Rotation induced on Pauli bilinears by a special unitary U:
// U^dagger sigma_a U = R_{ab} sigma_b.
Mat3 su2_to_so3(const Mat2c& u);

}  // namespace rotel
