#include "rotel/planewave.hpp"

#include <cmath>
#include <numbers>

namespace rotel {

std::string to_string(BranchKind k) {
  switch (k) {
    case BranchKind::type1: return "type1";
    case BranchKind::type2_circle: return "type2_circle";
    case BranchKind::sphere_degenerate: return "sphere_degenerate";
  }
  return "?";
}

FourCurrent four_current(const Spinor& zeta) {
  FourCurrent j;
  j.j0 = bilinear(zeta, pauli(0), zeta).real();
  for (int a = 0; a < 3; ++a) j.j[a] = bilinear(zeta, pauli(a + 1), zeta).real();
  return j;
}

PlaneWaveQuantities plane_wave_quantities(const Spinor& zeta, const FourMomentum& p) {
  const FourCurrent cur = four_current(zeta);
  if (!(cur.j0 > 0.0)) throw degenerate_spinor_error("plane wave spinor must be nonzero");

  PlaneWaveQuantities q;
  q.rho = cur.j0;
  const double pj = dot(p.p, cur.j);
  q.f = -4.0 * pj / cur.j0;
  q.v = (-2.0 / cur.j0) * cross(cur.j, p.p);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      q.star_t(a, b) = 2.0 * (p.p[a] * cur.j[b] - (a == b ? pj : 0.0)) / cur.j0;
  q.omega = (2.0 * p.p0 / cur.j0) * cur.j;
  return q;
}

double reduced_lagrangian(const Spinor& zeta, const FourMomentum& p, const ElasticModuli& m) {
  m.validate();
  const FourCurrent cur = four_current(zeta);
  if (!(cur.j0 > 0.0)) throw degenerate_spinor_error("plane wave spinor must be nonzero");

  const double pj = dot(p.p, cur.j);
  const double p2 = norm_sq(p.p);
  const double j2 = norm_sq(cur.j);
  const double c_mixed = 4.0 / 3.0 * m.c_ax - 0.5 * m.c_vec + m.c_ten / 6.0;

  return 2.0 / cur.j0 * (m.c_vec + m.c_ten) * p2 * j2 + 4.0 / cur.j0 * c_mixed * pj * pj -
         4.0 / cur.j0 * m.c_kin * p.p0 * p.p0 * j2;
}

Spinor critical_residual(const Spinor& zeta, const FourMomentum& p, const ElasticModuli& m) {
  m.validate();
  const FourCurrent cur = four_current(zeta);
  if (!(cur.j0 > 0.0)) throw degenerate_spinor_error("plane wave spinor must be nonzero");

  const double j0 = cur.j0;
  const double pj = dot(p.p, cur.j);
  const double p2 = norm_sq(p.p);
  const double j2 = norm_sq(cur.j);
  const double c_vt = m.c_vec + m.c_ten;
  const double c_mixed = 4.0 / 3.0 * m.c_ax - 0.5 * m.c_vec + m.c_ten / 6.0;

  Spinor j_dot_sigma_zeta{};  // j^a sigma_a zeta
  Spinor p_dot_sigma_zeta{};  // p^a sigma_a zeta
  for (int a = 0; a < 3; ++a) {
    const Spinor sz = matvec(pauli(a + 1), zeta);
    j_dot_sigma_zeta += cur.j[a] * sz;
    p_dot_sigma_zeta += p.p[a] * sz;
  }

  Spinor g{};
  g += (4.0 / j0 * c_vt * p2) * j_dot_sigma_zeta;
  g -= (2.0 / (j0 * j0) * c_vt * p2 * j2) * zeta;
  g += (8.0 / j0 * c_mixed * pj) * p_dot_sigma_zeta;
  g -= (4.0 / (j0 * j0) * c_mixed * pj * pj) * zeta;
  g -= (8.0 / j0 * m.c_kin * p.p0 * p.p0) * j_dot_sigma_zeta;
  g += (4.0 / (j0 * j0) * m.c_kin * p.p0 * p.p0 * j2) * zeta;
  return g;
}

WaveSpeeds wave_speeds(const ElasticModuli& m) {
  m.validate();
  WaveSpeeds s;
  s.v1 = std::sqrt((4.0 * m.c_ax + 2.0 * m.c_ten) / (3.0 * m.c_kin));
  s.v2 = std::sqrt((m.c_vec + m.c_ten) / (2.0 * m.c_kin));
  if (s.v1 <= kSpeedZeroTol) s.v1 = 0.0;
  if (s.v2 <= kSpeedZeroTol) s.v2 = 0.0;
  s.near_degenerate_warning =
      (s.v1 > 0.0 && s.v1 < kSpeedWarnTol) || (s.v2 > 0.0 && s.v2 < kSpeedWarnTol);
  return s;
}

namespace {

SolutionFamily type1_family(double p0, double v1) {
  SolutionFamily fam;
  fam.kind = BranchKind::type1;
  fam.speed = v1;
  fam.p0 = p0;
  fam.radius = std::abs(p0) / v1;
  fam.samples.push_back(FourMomentum{p0, Vec3{0.0, 0.0, p0 / v1}});
  fam.samples.push_back(FourMomentum{p0, Vec3{0.0, 0.0, -p0 / v1}});
  return fam;
}

SolutionFamily type2_family(double p0, double v2, int samples) {
  SolutionFamily fam;
  fam.kind = BranchKind::type2_circle;
  fam.speed = v2;
  fam.p0 = p0;
  fam.radius = std::abs(p0) / v2;
  for (int k = 0; k < samples; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / samples;
    fam.samples.push_back(
        FourMomentum{p0, Vec3{fam.radius * std::cos(phi), fam.radius * std::sin(phi), 0.0}});
  }
  return fam;
}

SolutionFamily sphere_family(double p0, double v, int samples) {
  SolutionFamily fam;
  fam.kind = BranchKind::sphere_degenerate;
  fam.speed = v;
  fam.p0 = p0;
  fam.radius = std::abs(p0) / v;
  // Deterministic spiral covering of the sphere.
  for (int k = 0; k < samples; ++k) {
    const double z = samples == 1 ? 0.0 : -1.0 + 2.0 * k / (samples - 1.0);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.399963229728653 * k;  // golden angle
    fam.samples.push_back(FourMomentum{
        p0, fam.radius * Vec3{r * std::cos(phi), r * std::sin(phi), z}});
  }
  return fam;
}

}  // namespace

std::vector<SolutionFamily> solve_plane_waves(const ElasticModuli& m, double p0,
                                              int samples_per_family) {
  if (p0 == 0.0)
    throw std::invalid_argument("solve_plane_waves: static solutions (p0 = 0) excluded");
  if (samples_per_family < 2)
    throw std::invalid_argument("solve_plane_waves: need at least 2 samples per family");

  const WaveSpeeds s = wave_speeds(m);
  std::vector<SolutionFamily> out;
  if (s.v1 > 0.0 && s.v2 > 0.0) {
    // Exact equality of the squared speeds marks the degenerate sphere; the
    // relative 1e-14 margin matches the zero-classification threshold.
    const double v1sq = s.v1 * s.v1, v2sq = s.v2 * s.v2;
    if (std::abs(v1sq - v2sq) <= kSpeedZeroTol * std::max(v1sq, v2sq)) {
      out.push_back(sphere_family(p0, s.v1, samples_per_family));
    } else {
      out.push_back(type1_family(p0, s.v1));
      out.push_back(type2_family(p0, s.v2, samples_per_family));
    }
  } else if (s.v1 > 0.0) {
    out.push_back(type1_family(p0, s.v1));
  } else {
    out.push_back(type2_family(p0, s.v2, samples_per_family));
  }
  return out;
}

GaugeDecomposition normalize_and_gauge(const Spinor& zeta) {
  const double rho = spinor_density(zeta);
  GaugeDecomposition g;
  g.scale = std::sqrt(rho);
  const cplx w1 = zeta[0] / g.scale;
  const cplx w2 = zeta[1] / g.scale;
  // U = [[conj w1, conj w2], [-w2, w1]]: special unitary, U (w1,w2) = (1,0).
  g.u = Mat2c{std::conj(w1), std::conj(w2), -w2, w1};
  return g;
}

}  // namespace rotel
