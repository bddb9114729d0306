#include "rotel/weyl.hpp"

#include <cmath>
#include <numbers>
#include <set>

namespace rotel {

std::string to_string(WeylSign s) { return s == WeylSign::plus ? "plus" : "minus"; }

Field<Spinor> weyl_residual(const SpinorField& xi, WeylSign sign, const Deriv& deriv) {
  if (!xi.grid.has_time)
    throw std::invalid_argument("weyl_residual: spacetime grid required");
  const double s = weyl_sign_value(sign);
  const cplx iu(0.0, 1.0);

  const SpinorField dt = deriv.d(xi, 0);
  std::array<SpinorField, 3> dx = {deriv.d(xi, 1), deriv.d(xi, 2), deriv.d(xi, 3)};

  Field<Spinor> out(xi.grid);
  parallel_for(xi.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      // +/- sigma^0 d_0 = -/+ sigma_0 d_0
      Spinor acc = (-s) * dt[i];
      for (int a = 0; a < 3; ++a) acc += matvec(pauli(a + 1), dx[static_cast<std::size_t>(a)][i]);
      out[i] = iu * acc;
    }
  });
  return out;
}

Spinor weyl_residual(const PlaneWave& wave, WeylSign sign) {
  const double s = weyl_sign_value(sign);
  Spinor acc = (-s * wave.p.p0) * wave.zeta;
  for (int a = 0; a < 3; ++a) acc += wave.p.p[a] * matvec(pauli(a + 1), wave.zeta);
  return acc;
}

std::vector<WeylMomentum> weyl_plane_waves(double p0) {
  if (p0 == 0.0) throw std::invalid_argument("weyl_plane_waves: p0 must be nonzero");
  return {WeylMomentum{Vec3{0.0, 0.0, p0}, WeylSign::plus},
          WeylMomentum{Vec3{0.0, 0.0, -p0}, WeylSign::minus}};
}

Spinor spin_up(const Vec3& n) {
  const double len = norm(n);
  if (std::abs(len - 1.0) > 1e-12)
    throw std::invalid_argument("spin_up: direction must be a unit vector");
  if (n[2] < -0.999999) return Spinor{0.0, 1.0};
  Spinor chi{cplx(1.0 + n[2], 0.0), cplx(n[0], n[1])};
  return (1.0 / norm(chi)) * chi;
}

bool is_commensurate(const GridSpec& g, const std::array<double, 4>& p, double tol) {
  const double tau = 2.0 * std::numbers::pi;
  for (int a = g.first_axis(); a < 4; ++a) {
    const double k = p[a] * g.length[a] / tau;
    if (std::abs(k - std::round(k)) > tol) return false;
  }
  return true;
}

SpinorField weyl_superposition_eta(const GridSpec& spatial, double p0, WeylSign sign,
                                   const std::vector<WeylWave>& waves) {
  if (spatial.has_time)
    throw std::invalid_argument("weyl_superposition_eta: spatial grid expected");
  if (p0 == 0.0) throw std::invalid_argument("weyl_superposition_eta: p0 must be nonzero");
  const double s = weyl_sign_value(sign);

  SpinorField eta(spatial, Spinor{});
  for (const WeylWave& wave : waves) {
    const Vec3 p = (s * p0) * wave.direction;
    if (!is_commensurate(spatial, {0.0, p[0], p[1], p[2]}))
      throw std::invalid_argument("weyl_superposition_eta: wave vector not on the grid lattice");
    const Spinor chi = wave.amplitude * spin_up(wave.direction);
    parallel_for(spatial.points(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        const auto idx = spatial.unflat(i);
        double phase = 0.0;
        for (int a = 1; a < 4; ++a) phase += p[a - 1] * spatial.coord(a, idx[a]);
        eta[i] += std::polar(1.0, -phase) * chi;
      }
    });
  }
  return eta;
}

SpinorField stationary_to_spacetime(const StationaryField& s, int nt) {
  if (s.p0 == 0.0) throw std::invalid_argument("stationary field: p0 must be nonzero");
  if (s.eta.grid.has_time)
    throw std::invalid_argument("stationary field: eta must live on a spatial grid");
  const GridSpec& sp = s.eta.grid;
  const GridSpec g = GridSpec::spacetime(
      {nt, sp.n[1], sp.n[2], sp.n[3]},
      {2.0 * std::numbers::pi / std::abs(s.p0), sp.length[1], sp.length[2], sp.length[3]});

  SpinorField out(g);
  const std::size_t per_slice = sp.points();
  for (int t = 0; t < nt; ++t) {
    const cplx phase = std::polar(1.0, -s.p0 * g.coord(0, t));
    parallel_for(per_slice, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i)
        out[static_cast<std::size_t>(t) * per_slice + i] = phase * s.eta[i];
    });
  }
  return out;
}

void validate_purely_axial_normalized(const ElasticModuli& m, double tol) {
  m.validate();
  if (!m.is_purely_axial())
    throw std::invalid_argument("purely axial material requires c_vec = c_ten = 0");
  if (std::abs(m.c_kin - 4.0 / 3.0 * m.c_ax) > tol * m.c_kin)
    throw std::invalid_argument("normalized axial material requires c_kin = 4/3 c_ax");
}

Theorem2Report theorem2_crosscheck(double p0, const ElasticModuli& m, int lattice_n,
                                   double extent_factor, double zero_tol) {
  if (p0 == 0.0) throw std::invalid_argument("theorem2_crosscheck: p0 must be nonzero");
  if (lattice_n < 3 || lattice_n % 2 == 0)
    throw std::invalid_argument("theorem2_crosscheck: lattice size must be odd and >= 3");
  validate_purely_axial_normalized(m);

  Theorem2Report rep;
  rep.speeds = wave_speeds(m);
  rep.lattice_n = lattice_n;
  rep.extent = extent_factor * std::abs(p0);

  const Spinor zeta{1.0, 0.0};
  const double el_scale = 4.0 * m.c_kin * p0 * p0;
  const double weyl_scale = std::abs(p0);

  std::set<std::array<int, 3>> zeros_el, zeros_weyl, poles;
  const int half = (lattice_n - 1) / 2;
  const double step = rep.extent / half;
  for (int i = -half; i <= half; ++i)
    for (int j = -half; j <= half; ++j)
      for (int k = -half; k <= half; ++k) {
        const Vec3 p{step * i, step * j, step * k};
        const FourMomentum fp{p0, p};

        if (norm(critical_residual(zeta, fp, m)) < zero_tol * el_scale)
          zeros_el.insert({i, j, k});

        const double rw = std::min(norm(weyl_residual(PlaneWave{zeta, fp}, WeylSign::plus)),
                                   norm(weyl_residual(PlaneWave{zeta, fp}, WeylSign::minus)));
        if (rw < zero_tol * weyl_scale) zeros_weyl.insert({i, j, k});
      }

  // The poles (0,0,+-p0) expressed in lattice indices.
  const double pole = std::abs(p0) / step;
  const int pole_idx = static_cast<int>(std::round(pole));
  const bool pole_on_lattice = std::abs(pole - pole_idx) < 1e-12 && pole_idx <= half;
  if (pole_on_lattice) {
    poles.insert({0, 0, pole_idx});
    poles.insert({0, 0, -pole_idx});
  }

  rep.elastic_zeros = zeros_el.size();
  rep.weyl_zeros = zeros_weyl.size();
  rep.sets_equal = zeros_el == zeros_weyl;
  rep.zeros_are_poles = pole_on_lattice && zeros_el == poles;
  rep.pass = rep.sets_equal && rep.zeros_are_poles &&
             std::abs(rep.speeds.v1 - 1.0) <= 1e-14 && rep.speeds.v2 == 0.0;
  return rep;
}

Theorem3Report theorem3_check(const StationaryField& field, const ElasticModuli& m,
                              const Theorem3Options& opts) {
  m.validate();
  const SpinorField xi = stationary_to_spacetime(field, opts.nt);

  Theorem3Report rep;
  rep.total_points = xi.size();

  const ScalarField rho = density_field(xi);
  rep.rho_min = rho[0];
  rep.rho_max = rho[0];
  for (double r : rho.data) {
    rep.rho_min = std::min(rep.rho_min, r);
    rep.rho_max = std::max(rep.rho_max, r);
  }
  const double mask_level = opts.mask_fraction * rep.rho_max;

  // Whole-grid Weyl residual, best branch, normalized per unit sqrt(rho).
  double rw_best = std::numeric_limits<double>::infinity();
  for (WeylSign s : {WeylSign::plus, WeylSign::minus}) {
    const Field<Spinor> r = weyl_residual(xi, s, opts.deriv);
    double rmax = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) rmax = std::max(rmax, norm(r[i]));
    rw_best = std::min(rw_best, rmax);
  }
  rep.weyl_residual_max = rw_best;
  rep.weyl_solves = rw_best < opts.weyl_tol;

  const Field<Spinor> f = euler_lagrange_F(xi, m, opts.deriv);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double n = norm(f[i]);
    rep.f_max_full = std::max(rep.f_max_full, n);
    if (rho[i] >= mask_level) {
      rep.f_max_masked = std::max(rep.f_max_masked, n);
      ++rep.mask_points;
    }
  }
  rep.pass = !rep.weyl_solves || rep.f_max_masked < opts.f_tol;
  return rep;
}

}  // namespace rotel
