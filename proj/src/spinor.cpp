#include "rotel/spinor.hpp"

#include <cmath>

namespace rotel {

double spinor_density(const Spinor& xi, double rho_min) {
  const double rho = norm_sq(xi);
  if (!(rho > rho_min))
    throw degenerate_spinor_error("spinor density " + std::to_string(rho) +
                                  " at or below floor " + std::to_string(rho_min));
  return rho;
}

bool is_valid_coframe(const Coframe& theta, double tol) {
  const Mat3 gram = matmul(theta.m, transpose(theta.m));
  Mat3 dev = gram - Mat3::identity();
  if (max_abs(dev) > tol) return false;
  return std::abs(det(theta.m) - 1.0) <= tol;
}

void validate_coframe(const Coframe& theta, double tol) {
  const Mat3 gram = matmul(theta.m, transpose(theta.m));
  const double ortho_dev = max_abs(gram - Mat3::identity());
  if (ortho_dev > tol)
    throw invalid_coframe_error("coframe orthonormality violated by " +
                                std::to_string(ortho_dev));
  const double d = det(theta.m);
  if (std::abs(d - 1.0) > tol)
    throw invalid_coframe_error("coframe orientation violated, det = " + std::to_string(d));
}

bool is_special_orthogonal(const Mat3& o, double tol) {
  const Mat3 gram = matmul(o, transpose(o));
  if (max_abs(gram - Mat3::identity()) > tol) return false;
  return std::abs(det(o) - 1.0) <= tol;
}

Coframe spinor_to_coframe(const Spinor& xi, double rho_min) {
  const double rho = spinor_density(xi, rho_min);
  const cplx x1 = xi[0], x2 = xi[1];
  const cplx i(0.0, 1.0);

  // c_a = (theta^1 + i theta^2)_a
  const std::array<cplx, 3> c = {
      (x1 * x1 - x2 * x2) / rho,
      i * (x1 * x1 + x2 * x2) / rho,
      -2.0 * x1 * x2 / rho,
  };
  const cplx b21 = std::conj(x2) * x1;  // bar xi^2 xi^1

  Coframe theta;
  for (int a = 0; a < 3; ++a) {
    theta.m(0, a) = c[static_cast<std::size_t>(a)].real();
    theta.m(1, a) = c[static_cast<std::size_t>(a)].imag();
  }
  theta.m(2, 0) = 2.0 * b21.real() / rho;
  theta.m(2, 1) = -2.0 * b21.imag() / rho;
  theta.m(2, 2) = (std::norm(x1) - std::norm(x2)) / rho;
  return theta;
}

namespace {

// Unit quaternion (w,x,y,z) from a rotation matrix, picking the numerically
// stablest of the four extraction branches.
std::array<double, 4> quaternion_from_matrix(const Mat3& r) {
  const double tr = trace(r);
  std::array<double, 4> q{};
  if (tr >= r(0, 0) && tr >= r(1, 1) && tr >= r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + tr);
    q = {0.25 * s, (r(2, 1) - r(1, 2)) / s, (r(0, 2) - r(2, 0)) / s, (r(1, 0) - r(0, 1)) / s};
  } else if (r(0, 0) >= r(1, 1) && r(0, 0) >= r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2));
    q = {(r(2, 1) - r(1, 2)) / s, 0.25 * s, (r(0, 1) + r(1, 0)) / s, (r(0, 2) + r(2, 0)) / s};
  } else if (r(1, 1) >= r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 - r(0, 0) + r(1, 1) - r(2, 2));
    q = {(r(0, 2) - r(2, 0)) / s, (r(0, 1) + r(1, 0)) / s, 0.25 * s, (r(1, 2) + r(2, 1)) / s};
  } else {
    const double s = 2.0 * std::sqrt(1.0 - r(0, 0) - r(1, 1) + r(2, 2));
    q = {(r(1, 0) - r(0, 1)) / s, (r(0, 2) + r(2, 0)) / s, (r(1, 2) + r(2, 1)) / s, 0.25 * s};
  }
  const double n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  for (double& v : q) v /= n;
  return q;
}

}  // namespace

Spinor coframe_to_spinor(const Coframe& theta, double rho, double tol) {
  validate_coframe(theta, tol);
  if (!(rho > 0.0)) throw std::invalid_argument("coframe_to_spinor: density must be positive");

  // The coframe matrix equals the standard quaternion rotation matrix R(q)
  // under the identification xi^1 = w + iz, xi^2 = -y + ix.
  const auto q = quaternion_from_matrix(theta.m);
  const double s = std::sqrt(rho);
  Spinor xi{cplx(q[0], q[3]) * s, cplx(-q[2], q[1]) * s};

  const std::array<double, 4> comps = {xi[0].real(), xi[0].imag(), xi[1].real(), xi[1].imag()};
  for (double v : comps) {
    if (v == 0.0) continue;
    if (v < 0.0) xi = -xi;
    break;
  }
  return xi;
}

Coframe rigid_rotate(const Coframe& theta, const Mat3& o, double tol) {
  if (!is_special_orthogonal(o, tol))
    throw std::invalid_argument("rigid_rotate: matrix is not special orthogonal");
  return Coframe{matmul(o, theta.m)};
}

Mat3 su2_to_so3(const Mat2c& u) {
  const Mat2c ud = adjoint(u);
  Mat3 r;
  for (int a = 0; a < 3; ++a) {
    const Mat2c m = matmul(matmul(ud, pauli(a + 1)), u);
    for (int b = 0; b < 3; ++b) r(a, b) = 0.5 * trace(matmul(m, pauli(b + 1))).real();
  }
  return r;
}

}  // namespace rotel
