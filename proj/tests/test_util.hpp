#pragma once

// Shared fixtures for the test suites.

#include <cmath>
#include <numbers>
#include <random>

#include "rotel/energetics.hpp"
#include "rotel/spinor_field.hpp"

namespace rotel::testutil {

inline constexpr double tau = 2.0 * std::numbers::pi;

// Screw coframe: theta^1 = (cos k x3, sin k x3, 0),
//                theta^2 = (-sin k x3, cos k x3, 0),
//                theta^3 = e3,
// with k = tau * turns / L3 so the field is periodic. Its dislocation
// density is diag(-k,-k,0) everywhere, f = -2k, v = 0.
inline CoframeField screw_coframe_field(const GridSpec& g, int turns = 1) {
  const double k = tau * turns / g.length[3];
  CoframeField theta(g);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double x3 = g.coord(3, g.unflat(i)[3]);
    const double c = std::cos(k * x3), s = std::sin(k * x3);
    Mat3 m;
    m(0, 0) = c;
    m(0, 1) = s;
    m(1, 0) = -s;
    m(1, 1) = c;
    m(2, 2) = 1.0;
    theta[i] = m;
  }
  return theta;
}

inline double screw_k(const GridSpec& g, int turns = 1) { return tau * turns / g.length[3]; }

inline CoframeField random_coframe_field(const GridSpec& g, std::uint64_t seed,
                                         double wobble = 0.15) {
  return coframe_field_from_spinor(random_spinor_field(g, seed, 1, wobble));
}

inline Spinor random_spinor(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Spinor xi{cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
  if (norm(xi) < 1e-3) xi = Spinor{1.0, 0.0};
  return xi;
}

inline ElasticModuli random_moduli(std::mt19937_64& rng, double lo = 0.1, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  return ElasticModuli{u(rng), u(rng), u(rng), u(rng)};
}

inline Mat3 random_rotation(std::mt19937_64& rng) {
  return spinor_to_coframe(random_spinor(rng)).m;
}

inline double max_norm(const Field<Spinor>& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, norm(f[i]));
  return m;
}

inline double max_field_dist(const Rank2Field& a, const Rank2Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, max_abs(a[i] - b[i]));
  return m;
}

inline double max_field_dist(const Rank3Field& a, const Rank3Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, max_abs(a[i] - b[i]));
  return m;
}

inline double max_field_dist(const CovectorField& a, const CovectorField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, norm(a[i] - b[i]));
  return m;
}

inline double max_field_dist(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace rotel::testutil
