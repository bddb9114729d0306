#include "rotel/variational.hpp"

#include <cmath>

namespace rotel {

CoefficientTables build_tables(const ElasticModuli& m) {
  m.validate();
  CoefficientTables t;

  t.a[w_f] = (m.c_ax - m.c_ten) / 3.0;
  for (int a = 0; a < 3; ++a) t.a[w_v1 + a] = (m.c_vec - m.c_ten) / 2.0;
  for (int k = 0; k < 9; ++k) t.a[w_star11 + k] = m.c_ten;
  for (int a = 0; a < 3; ++a) t.a[w_omega1 + a] = -m.c_kin;

  for (int g = 0; g < 3; ++g) t.b[w_f][g + 1] = -2.0 * pauli(g + 1);

  for (int a = 0; a < 3; ++a)
    for (int g = 0; g < 3; ++g) {
      Mat2c acc;
      for (int b = 0; b < 3; ++b) {
        const int sign = detail::eps0(b, g, a);
        if (sign != 0) acc += static_cast<double>(-sign) * pauli(b + 1);
      }
      t.b[w_v1 + a][g + 1] = acc;
    }

  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int g = 0; g < 3; ++g) {
        Mat2c acc;
        if (g == a) acc += pauli(b + 1);
        if (a == b) acc -= pauli(g + 1);
        t.b[w_star11 + 3 * a + b][g + 1] = acc;
      }

  for (int a = 0; a < 3; ++a) t.b[w_omega1 + a][0] = pauli(a + 1);

  for (int j = 0; j < kWComponents; ++j)
    for (int al = 0; al < 4; ++al) t.b_nonzero[j][al] = !t.b[j][al].is_zero();
  return t;
}

namespace {

struct DerivedFields {
  ScalarField rho;
  ScalarField sqrt_rho;
  std::array<SpinorField, 4> dxi;  // only present axes populated
};

DerivedFields derive_fields(const SpinorField& xi, const Deriv& deriv, double rho_min) {
  DerivedFields d;
  d.rho = density_field(xi, rho_min);
  d.sqrt_rho = ScalarField(xi.grid);
  for (std::size_t i = 0; i < xi.size(); ++i) d.sqrt_rho[i] = std::sqrt(d.rho[i]);
  for (int a = xi.grid.first_axis(); a < 4; ++a) d.dxi[a] = deriv.d(xi, a);
  return d;
}

}  // namespace

WField assemble_W(const SpinorField& xi, const CoefficientTables& tables, const Deriv& deriv,
                  double rho_min) {
  const DerivedFields d = derive_fields(xi, deriv, rho_min);
  const int a0 = xi.grid.first_axis();
  WField out(xi.grid);
  parallel_for(xi.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      WVector w{};
      for (int j = 0; j < kWComponents; ++j) {
        double im = 0.0;
        for (int al = a0; al < 4; ++al) {
          if (!tables.b_nonzero[j][al]) continue;
          im += bilinear(xi[i], tables.b[j][al], d.dxi[al][i]).imag();
        }
        w[j] = -2.0 * im / d.sqrt_rho[i];
      }
      out[i] = w;
    }
  });
  return out;
}

ScalarField lagrangian_from_tables(const SpinorField& xi, const CoefficientTables& tables,
                                   const Deriv& deriv, double rho_min) {
  const WField w = assemble_W(xi, tables, deriv, rho_min);
  ScalarField out(xi.grid);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double s = 0.0;
    for (int j = 0; j < kWComponents; ++j) s += tables.a[j] * w[i][j] * w[i][j];
    out[i] = s;
  }
  return out;
}

Field<Spinor> euler_lagrange_F(const SpinorField& xi, const ElasticModuli& m,
                               const Deriv& deriv, double rho_min) {
  if (!xi.grid.has_time)
    throw std::invalid_argument("euler_lagrange_F: spacetime grid required");
  const CoefficientTables tables = build_tables(m);
  const DerivedFields d = derive_fields(xi, deriv, rho_min);
  const cplx iu(0.0, 1.0);

  Field<Spinor> f(xi.grid, Spinor{});
  SpinorField slash(xi.grid);           // B_J^A d_A xi per J
  ScalarField w(xi.grid);               // W_J per J
  SpinorField y(xi.grid);               // W_J B_J^A xi / sqrt(rho) per (J, A)

  for (int j = 0; j < kWComponents; ++j) {
    if (tables.a[j] == 0.0) continue;

    parallel_for(xi.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        Spinor s{};
        for (int al = 0; al < 4; ++al) {
          if (!tables.b_nonzero[j][al]) continue;
          s += matvec(tables.b[j][al], d.dxi[al][i]);
        }
        slash[i] = s;
        w[i] = -2.0 * bilinear(xi[i], Mat2c::identity(), s).imag() / d.sqrt_rho[i];
      }
    });

    // Local terms: i W B dxi / sqrt(rho) - W^2 sigma_0 xi / (2 rho).
    const double two_a = 2.0 * tables.a[j];
    parallel_for(xi.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        f[i] += (two_a * iu * w[i] / d.sqrt_rho[i]) * slash[i];
        f[i] -= cplx(two_a * w[i] * w[i] / (2.0 * d.rho[i]), 0.0) * xi[i];
      }
    });

    // Divergence term: i d_A (W B^A xi / sqrt(rho)).
    for (int al = 0; al < 4; ++al) {
      if (!tables.b_nonzero[j][al]) continue;
      parallel_for(xi.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
          y[i] = cplx(w[i] / d.sqrt_rho[i], 0.0) * matvec(tables.b[j][al], xi[i]);
      });
      const SpinorField dy = deriv.d(y, al);
      parallel_for(xi.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) f[i] += (two_a * iu) * dy[i];
      });
    }
  }
  return f;
}

Spinor reduced_G(const Spinor& zeta, const FourMomentum& p, const ElasticModuli& m) {
  const CoefficientTables tables = build_tables(m);
  const double j0 = spinor_density(zeta);
  const double sqrt_j0 = std::sqrt(j0);
  const std::array<double, 4> pp = p.as_array();

  Spinor g{};
  for (int j = 0; j < kWComponents; ++j) {
    if (tables.a[j] == 0.0) continue;
    Spinor bp{};  // B_J^A p_A zeta
    for (int al = 0; al < 4; ++al) {
      if (!tables.b_nonzero[j][al] || pp[al] == 0.0) continue;
      bp += pp[al] * matvec(tables.b[j][al], zeta);
    }
    const double w = 2.0 * bilinear(zeta, Mat2c::identity(), bp).real() / sqrt_j0;
    g += (2.0 * tables.a[j]) * ((2.0 * w / sqrt_j0) * bp -
                                cplx(w * w / (2.0 * j0), 0.0) * zeta);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Finite-difference action gradient

namespace {

// Pointwise Lagrangian through the geometric quantities, given xi and its
// four derivatives at one point. Kept free of the A/B tables on purpose.
double lagrangian_at(const Spinor& xi, const std::array<Spinor, 4>& dxi, bool has_time,
                     const ElasticModuli& m) {
  const double rho = norm_sq(xi);

  double div = 0.0;  // Im(bar xi sigma^g d_g xi)
  Mat3 star;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b)
      star(a, b) = -2.0 * bilinear(xi, pauli(b + 1), dxi[a + 1]).imag();
    div += bilinear(xi, pauli(a + 1), dxi[a + 1]).imag();
  }
  for (int a = 0; a < 3; ++a) star(a, a) += 2.0 * div;
  star *= 1.0 / rho;

  const double f = trace(star);
  const Vec3 v = vector_v(star);

  double l = (m.c_ax - m.c_ten) / 3.0 * f * f + (m.c_vec - m.c_ten) / 2.0 * norm_sq(v) +
             m.c_ten * norm_sq_rank2(star);
  if (has_time) {
    Vec3 omega;
    for (int a = 0; a < 3; ++a)
      omega[a] = -2.0 * bilinear(xi, pauli(a + 1), dxi[0]).imag() / rho;
    l -= m.c_kin * norm_sq(omega);
  }
  return l * rho;
}

class LocalAction {
 public:
  LocalAction(SpinorField& xi, const Deriv& deriv) : xi_(xi), deriv_(deriv) {
    const GridSpec& g = xi.grid;
    if (deriv.scheme == Scheme::spectral)
      for (int a = g.first_axis(); a < 4; ++a)
        dm_[a] = detail::spectral_matrix(g.n[a], g.length[a]);
  }

  // L at one grid point from the current xi values.
  double lagrangian(std::size_t flat, const ElasticModuli& m) const {
    const GridSpec& g = xi_.grid;
    const auto idx = g.unflat(flat);
    std::array<Spinor, 4> dxi{};
    for (int a = g.first_axis(); a < 4; ++a) {
      const std::size_t stride = g.stride(a);
      const int n = g.n[a];
      const std::size_t base = flat - static_cast<std::size_t>(idx[a]) * stride;
      if (deriv_.scheme == Scheme::central) {
        const int ip = (idx[a] + 1) % n;
        const int im = (idx[a] + n - 1) % n;
        dxi[a] = (1.0 / (2.0 * g.spacing(a))) *
                 (xi_[base + static_cast<std::size_t>(ip) * stride] -
                  xi_[base + static_cast<std::size_t>(im) * stride]);
      } else {
        Spinor acc{};
        const std::vector<double>& dm = dm_[a];
        for (int k = 0; k < n; ++k) {
          const double c = dm[static_cast<std::size_t>(n * idx[a] + k)];
          if (c != 0.0) acc += c * xi_[base + static_cast<std::size_t>(k) * stride];
        }
        dxi[a] = acc;
      }
    }
    return lagrangian_at(xi_[flat], dxi, g.has_time, m);
  }

  // Points whose Lagrangian value can change when xi changes at `flat`.
  std::vector<std::size_t> affected(std::size_t flat) const {
    const GridSpec& g = xi_.grid;
    const auto idx = g.unflat(flat);
    std::vector<std::size_t> out;
    out.push_back(flat);
    for (int a = g.first_axis(); a < 4; ++a) {
      const std::size_t stride = g.stride(a);
      const int n = g.n[a];
      const std::size_t base = flat - static_cast<std::size_t>(idx[a]) * stride;
      if (deriv_.scheme == Scheme::central) {
        out.push_back(base + static_cast<std::size_t>((idx[a] + 1) % n) * stride);
        out.push_back(base + static_cast<std::size_t>((idx[a] + n - 1) % n) * stride);
      } else {
        for (int k = 0; k < n; ++k) {
          if (k == idx[a]) continue;
          out.push_back(base + static_cast<std::size_t>(k) * stride);
        }
      }
    }
    return out;
  }

 private:
  SpinorField& xi_;
  const Deriv& deriv_;
  std::array<std::vector<double>, 4> dm_;
};

}  // namespace

Field<Spinor> fd_action_gradient(const SpinorField& xi, const ElasticModuli& m, double step,
                                 const Deriv& deriv, double rho_min) {
  if (!(step >= 1e-9 && step <= 1e-2))
    throw std::invalid_argument("fd_action_gradient: step outside [1e-9, 1e-2]");
  if (deriv.scheme == Scheme::exact)
    throw std::invalid_argument("fd_action_gradient: exact scheme not applicable");
  if (!xi.grid.has_time)
    throw std::invalid_argument("fd_action_gradient: spacetime grid required");
  m.validate();
  density_field(xi, rho_min);  // reject degenerate inputs up front

  const double w = xi.grid.cell_volume();
  Field<Spinor> grad(xi.grid);

  // Each worker owns a private copy of the field to perturb in place.
  parallel_for(xi.size(), [&](std::size_t lo, std::size_t hi) {
    SpinorField work = xi;
    LocalAction local(work, deriv);
    for (std::size_t y = lo; y < hi; ++y) {
      const std::vector<std::size_t> pts = local.affected(y);
      std::array<double, 4> ds{};  // dS/d(Re xi1, Im xi1, Re xi2, Im xi2)
      for (int comp = 0; comp < 4; ++comp) {
        const int spin = comp / 2;
        const cplx delta = comp % 2 == 0 ? cplx(step, 0.0) : cplx(0.0, step);
        const Spinor saved = work[y];

        work[y].c[static_cast<std::size_t>(spin)] = saved.c[static_cast<std::size_t>(spin)] + delta;
        double plus = 0.0;
        for (std::size_t x : pts) plus += local.lagrangian(x, m);

        work[y].c[static_cast<std::size_t>(spin)] = saved.c[static_cast<std::size_t>(spin)] - delta;
        double minus = 0.0;
        for (std::size_t x : pts) minus += local.lagrangian(x, m);

        work[y] = saved;
        ds[static_cast<std::size_t>(comp)] = w * (plus - minus) / (2.0 * step);
      }
      grad[y] = Spinor{cplx(ds[0], ds[1]), cplx(ds[2], ds[3])};
      grad[y] *= cplx(1.0 / (2.0 * w), 0.0);
    }
  });
  return grad;
}

Field<Spinor> unphase(const Field<Spinor>& f, const std::array<double, 4>& p) {
  const GridSpec& g = f.grid;
  Field<Spinor> out(g);
  parallel_for(g.points(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const auto idx = g.unflat(i);
      double phase = 0.0;
      for (int a = g.first_axis(); a < 4; ++a) phase += p[a] * g.coord(a, idx[a]);
      out[i] = std::polar(1.0, phase) * f[i];
    }
  });
  return out;
}

SpinorFieldStats spinor_field_stats(const Field<Spinor>& f) {
  const std::size_t n = f.size();
  std::vector<double> re1(n), im1(n), re2(n), im2(n);
  for (std::size_t i = 0; i < n; ++i) {
    re1[i] = f[i][0].real();
    im1[i] = f[i][0].imag();
    re2[i] = f[i][1].real();
    im2[i] = f[i][1].imag();
  }
  SpinorFieldStats s;
  const double inv = 1.0 / static_cast<double>(n);
  s.mean = Spinor{cplx(pairwise_sum(re1) * inv, pairwise_sum(im1) * inv),
                  cplx(pairwise_sum(re2) * inv, pairwise_sum(im2) * inv)};
  std::vector<double> dev(n);
  for (std::size_t i = 0; i < n; ++i) {
    dev[i] = norm_sq(f[i] - s.mean);
    s.max_norm = std::max(s.max_norm, norm(f[i]));
  }
  s.stdev = std::sqrt(pairwise_sum(dev) * inv);
  s.mean_mag = norm(s.mean);
  return s;
}

}  // namespace rotel
