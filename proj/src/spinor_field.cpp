#include "rotel/spinor_field.hpp"

#include <string>

namespace rotel {

ScalarField density_field(const SpinorField& xi, double rho_min) {
  ScalarField rho(xi.grid);
  for (std::size_t i = 0; i < xi.size(); ++i) {
    rho[i] = norm_sq(xi[i]);
    if (!(rho[i] > rho_min))
      throw degenerate_spinor_error("spinor field degenerate at flat index " +
                                    std::to_string(i));
  }
  return rho;
}

CoframeField coframe_field_from_spinor(const SpinorField& xi, double rho_min) {
  CoframeField out(xi.grid);
  for (std::size_t i = 0; i < xi.size(); ++i) {
    try {
      out[i] = spinor_to_coframe(xi[i], rho_min).m;
    } catch (const degenerate_spinor_error&) {
      throw degenerate_spinor_error("spinor field degenerate at flat index " +
                                    std::to_string(i));
    }
  }
  return out;
}

namespace {

// -2 Im(bar xi sigma_b dxi) for one derivative direction and all three
// Pauli directions at once.
inline Vec3 pauli_bilinear_im(const Spinor& xi, const Spinor& dxi) {
  Vec3 out;
  for (int b = 0; b < 3; ++b) out[b] = -2.0 * bilinear(xi, pauli(b + 1), dxi).imag();
  return out;
}

}  // namespace

CovectorField omega_from_spinor(const SpinorField& xi, const Deriv& deriv, double rho_min) {
  if (!xi.grid.has_time)
    throw std::invalid_argument("omega_from_spinor: field has no time axis");
  const ScalarField rho = density_field(xi, rho_min);
  const SpinorField dxi = deriv.d(xi, 0);
  CovectorField out(xi.grid);
  parallel_for(xi.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = (1.0 / rho[i]) * pauli_bilinear_im(xi[i], dxi[i]);
  });
  return out;
}

ScalarField f_from_spinor(const SpinorField& xi, const Deriv& deriv, double rho_min) {
  const ScalarField rho = density_field(xi, rho_min);
  const std::array<SpinorField, 3> dxi = {deriv.d(xi, 1), deriv.d(xi, 2), deriv.d(xi, 3)};
  ScalarField out(xi.grid);
  parallel_for(xi.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      double s = 0.0;
      for (int a = 0; a < 3; ++a)
        s += bilinear(xi[i], pauli(a + 1), dxi[static_cast<std::size_t>(a)][i]).imag();
      out[i] = 4.0 * s / rho[i];
    }
  });
  return out;
}

CovectorField v_from_spinor(const SpinorField& xi, const Deriv& deriv, double rho_min) {
  const ScalarField rho = density_field(xi, rho_min);
  const std::array<SpinorField, 3> dxi = {deriv.d(xi, 1), deriv.d(xi, 2), deriv.d(xi, 3)};
  CovectorField out(xi.grid);
  parallel_for(xi.size(), [&](std::size_t bb, std::size_t e) {
    for (std::size_t i = bb; i < e; ++i) {
      Vec3 v;
      for (int a = 0; a < 3; ++a) {
        double s = 0.0;
        for (int b = 0; b < 3; ++b)
          for (int g = 0; g < 3; ++g) {
            const int sign = detail::eps0(b, g, a);
            if (sign == 0) continue;
            s += sign * bilinear(xi[i], pauli(b + 1), dxi[static_cast<std::size_t>(g)][i]).imag();
          }
        v[a] = 2.0 * s / rho[i];
      }
      out[i] = v;
    }
  });
  return out;
}

Rank2Field dual_torsion_from_spinor(const SpinorField& xi, const Deriv& deriv, double rho_min) {
  const ScalarField rho = density_field(xi, rho_min);
  const std::array<SpinorField, 3> dxi = {deriv.d(xi, 1), deriv.d(xi, 2), deriv.d(xi, 3)};
  Rank2Field out(xi.grid);
  parallel_for(xi.size(), [&](std::size_t bb, std::size_t e) {
    for (std::size_t i = bb; i < e; ++i) {
      double div = 0.0;  // Im(bar xi sigma^g d_g xi)
      for (int g = 0; g < 3; ++g)
        div += bilinear(xi[i], pauli(g + 1), dxi[static_cast<std::size_t>(g)][i]).imag();
      Mat3 star;
      for (int a = 0; a < 3; ++a) {
        const Vec3 row = pauli_bilinear_im(xi[i], dxi[static_cast<std::size_t>(a)][i]);
        for (int b = 0; b < 3; ++b) star(a, b) = (row[b] + (a == b ? 2.0 * div : 0.0)) / rho[i];
      }
      out[i] = star;
    }
  });
  return out;
}

}  // namespace rotel
