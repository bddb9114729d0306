#include "rotel/energetics.hpp"

namespace rotel {

void ElasticModuli::validate() const {
  if (c_ax < 0.0 || c_vec < 0.0 || c_ten < 0.0)
    throw std::invalid_argument("elastic moduli must be nonnegative");
  if (c_ax + c_vec + c_ten <= 0.0)
    throw std::invalid_argument("elastic moduli must not all vanish");
  if (!(c_kin > 0.0)) throw std::invalid_argument("kinetic modulus must be positive");
}

GeometricFields geometric_from_spinor(const SpinorField& xi, const Deriv& deriv,
                                      double rho_min) {
  GeometricFields geo;
  geo.rho = density_field(xi, rho_min);
  geo.f = f_from_spinor(xi, deriv, rho_min);
  geo.v = v_from_spinor(xi, deriv, rho_min);
  geo.star_t = dual_torsion_from_spinor(xi, deriv, rho_min);
  if (xi.grid.has_time) geo.omega = omega_from_spinor(xi, deriv, rho_min);
  return geo;
}

GeometricFields geometric_from_coframe(const CoframeField& theta, const ScalarField& rho,
                                       const Deriv& deriv) {
  check_same_grid(theta.grid, rho.grid);
  GeometricFields geo;
  geo.rho = rho;
  geo.star_t = dual_torsion(theta, deriv);
  geo.f = scalar_f(geo.star_t);
  geo.v = vector_v(geo.star_t);
  if (theta.grid.has_time) geo.omega = angular_velocity(theta, deriv);
  return geo;
}

std::vector<double> kinetic_energy(const CovectorField& omega, const ScalarField& rho,
                                   const ElasticModuli& m) {
  m.validate();
  check_same_grid(omega.grid, rho.grid);
  ScalarField density(omega.grid);
  for (std::size_t i = 0; i < omega.size(); ++i)
    density[i] = m.c_kin * norm_sq(omega[i]) * rho[i];
  return integrate_spatial(density);
}

std::vector<double> potential_energy(const Rank2Field& star_t, const ScalarField& rho,
                                     const ElasticModuli& m, PotentialForm form) {
  m.validate();
  check_same_grid(star_t.grid, rho.grid);
  ScalarField density(star_t.grid);
  if (form == PotentialForm::moduli_sum) {
    for (std::size_t i = 0; i < star_t.size(); ++i) {
      const IrreducibleParts p = decompose(star_t[i]);
      density[i] = (m.c_ax * norm_sq_rank2(p.axial) + m.c_vec * norm_sq_rank2(p.vec) +
                    m.c_ten * norm_sq_rank2(p.tensor)) *
                   rho[i];
    }
  } else {
    for (std::size_t i = 0; i < star_t.size(); ++i) {
      const double f = scalar_f(star_t[i]);
      const Vec3 v = vector_v(star_t[i]);
      density[i] = ((m.c_ax - m.c_ten) / 3.0 * f * f +
                    (m.c_vec - m.c_ten) / 2.0 * norm_sq(v) +
                    m.c_ten * norm_sq_rank2(star_t[i])) *
                   rho[i];
    }
  }
  return integrate_spatial(density);
}

ScalarField lagrangian_density(const GeometricFields& geo, const ElasticModuli& m) {
  m.validate();
  ScalarField out(geo.rho.grid);
  const bool has_omega = !geo.omega.data.empty();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double f = geo.f[i];
    double l = (m.c_ax - m.c_ten) / 3.0 * f * f +
               (m.c_vec - m.c_ten) / 2.0 * norm_sq(geo.v[i]) +
               m.c_ten * norm_sq_rank2(geo.star_t[i]);
    if (has_omega) l -= m.c_kin * norm_sq(geo.omega[i]);
    out[i] = l * geo.rho[i];
  }
  return out;
}

ScalarField lagrangian_density(const SpinorField& xi, const ElasticModuli& m,
                               const Deriv& deriv) {
  return lagrangian_density(geometric_from_spinor(xi, deriv), m);
}

double action(const ScalarField& lagrangian) {
  if (!lagrangian.grid.has_time)
    throw std::invalid_argument("action: spacetime grid required");
  return integrate(lagrangian);
}

ScalarField density_el_residual(const GeometricFields& geo, const ElasticModuli& m) {
  ScalarField l = lagrangian_density(geo, m);
  for (std::size_t i = 0; i < l.size(); ++i) l[i] /= geo.rho[i];
  return l;
}

ScalarField density_el_residual(const SpinorField& xi, const ElasticModuli& m,
                                const Deriv& deriv) {
  return density_el_residual(geometric_from_spinor(xi, deriv), m);
}

}  // namespace rotel
