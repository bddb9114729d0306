#include <doctest.h>

#include <random>

#include "rotel/weyl.hpp"
#include "test_util.hpp"

using namespace rotel;
using namespace rotel::testutil;

TEST_CASE("plane-wave weyl residuals") {
  // exp(-i p0 (x0 - x3)) (1,0): momentum (p0, (0,0,-p0)); the minus branch kills it
  const double p0 = 1.4;
  const PlaneWave back{Spinor{1.0, 0.0}, FourMomentum{p0, Vec3{0.0, 0.0, -p0}}};
  CHECK(norm(weyl_residual(back, WeylSign::minus)) <= 1e-15);
  CHECK(norm(weyl_residual(back, WeylSign::plus)) == doctest::Approx(2.0 * p0).epsilon(1e-15));

  // spatial momentum along axis 1: residual norm |p0| sqrt(2) per unit spinor
  const PlaneWave side{Spinor{1.0, 0.0}, FourMomentum{p0, Vec3{p0, 0.0, 0.0}}};
  CHECK(norm(weyl_residual(side, WeylSign::plus)) ==
        doctest::Approx(std::abs(p0) * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(norm(weyl_residual(side, WeylSign::minus)) ==
        doctest::Approx(std::abs(p0) * std::sqrt(2.0)).epsilon(1e-15));

  // purely time-dependent phase on a constant spatial profile
  const PlaneWave stat{Spinor{1.0, 0.0}, FourMomentum{p0, Vec3{}}};
  CHECK(norm(weyl_residual(stat, WeylSign::plus)) == doctest::Approx(std::abs(p0)).epsilon(1e-15));
}

TEST_CASE("grid weyl residual agrees with the analytic one") {
  const GridSpec g = GridSpec::spacetime({8, 8, 8, 8}, {tau, tau, tau, tau});
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> ki(-2, 2);
  for (int it = 0; it < 10; ++it) {
    std::array<int, 4> k{ki(rng), ki(rng), ki(rng), ki(rng)};
    if (k[0] == 0) k[0] = 1;
    const auto p = commensurate_momentum(g, k);
    const Spinor zeta = random_spinor(rng);
    const SpinorField xi = sample_plane_wave(g, zeta, p);
    for (WeylSign s : {WeylSign::plus, WeylSign::minus}) {
      const Field<Spinor> r = weyl_residual(xi, s, Deriv::spectral());
      const Spinor expect =
          weyl_residual(PlaneWave{zeta, FourMomentum{p[0], Vec3{p[1], p[2], p[3]}}}, s);
      // the grid residual carries the plane-wave phase; compare norms pointwise
      for (std::size_t i = 0; i < r.size(); i += 97)
        CHECK(norm(r[i]) == doctest::Approx(norm(expect)).epsilon(1e-10));
    }
  }

  // truly constant field: both branches vanish identically
  const SpinorField constant(g, Spinor{0.7, cplx(0.1, 0.4)});
  for (WeylSign s : {WeylSign::plus, WeylSign::minus})
    CHECK(max_norm(weyl_residual(constant, s, Deriv::spectral())) <= 1e-15);
}

TEST_CASE("the two branches are related by time reversal") {
  const GridSpec g = GridSpec::spacetime({8, 6, 6, 6}, {tau, tau, tau, tau});
  const SpinorField xi = random_spinor_field(g, 19, 1, 0.2);

  // reverse the time axis on the periodic grid: t -> (nt - t) mod nt
  SpinorField reversed(g);
  for (std::size_t i = 0; i < xi.size(); ++i) {
    auto idx = g.unflat(i);
    idx[0] = (g.n[0] - idx[0]) % g.n[0];
    reversed[i] = xi[g.flat(idx)];
  }

  const Field<Spinor> r_plus = weyl_residual(reversed, WeylSign::plus, Deriv::spectral());
  const Field<Spinor> r_minus = weyl_residual(xi, WeylSign::minus, Deriv::spectral());
  double worst = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    auto idx = g.unflat(i);
    idx[0] = (g.n[0] - idx[0]) % g.n[0];
    worst = std::max(worst, norm(r_plus[i] - r_minus[g.flat(idx)]));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("weyl operator is linear") {
  const GridSpec g = GridSpec::spacetime({6, 6, 6, 6}, {tau, tau, tau, tau});
  const SpinorField a = random_spinor_field(g, 23, 1, 0.3);
  const SpinorField b = random_spinor_field(g, 29, 1, 0.3);
  SpinorField sum(g);
  for (std::size_t i = 0; i < g.points(); ++i) sum[i] = a[i] + b[i];
  const Field<Spinor> ra = weyl_residual(a, WeylSign::plus, Deriv::central());
  const Field<Spinor> rb = weyl_residual(b, WeylSign::plus, Deriv::central());
  const Field<Spinor> rs = weyl_residual(sum, WeylSign::plus, Deriv::central());
  double worst = 0.0;
  for (std::size_t i = 0; i < g.points(); ++i)
    worst = std::max(worst, norm(rs[i] - ra[i] - rb[i]));
  CHECK(worst <= 1e-13);
}

TEST_CASE("weyl plane-wave momenta and the Theorem-1 cross-check") {
  const auto waves1 = weyl_plane_waves(1.0);
  REQUIRE(waves1.size() == 2);
  CHECK(norm(waves1[0].p - Vec3{0, 0, 1}) == 0.0);
  CHECK(norm(waves1[1].p - Vec3{0, 0, -1}) == 0.0);
  CHECK(waves1[0].sign == WeylSign::plus);

  const auto waves2 = weyl_plane_waves(-2.0);
  CHECK(norm(waves2[0].p - Vec3{0, 0, -2}) == 0.0);
  CHECK(norm(waves2[1].p - Vec3{0, 0, 2}) == 0.0);

  CHECK_THROWS_AS(weyl_plane_waves(0.0), std::invalid_argument);

  // each Weyl momentum is a critical point of the purely axial material
  const ElasticModuli ax{0.6, 0.0, 0.0, 0.8};
  for (const auto& w : weyl_plane_waves(1.7))
    CHECK(norm(critical_residual(Spinor{1.0, 0.0}, FourMomentum{1.7, w.p}, ax)) <= 1e-12);
}

TEST_CASE("spin_up produces the +1 eigenvector of sigma.n") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int it = 0; it < 200; ++it) {
    Vec3 n{u(rng), u(rng), u(rng)};
    if (norm(n) < 1e-3) n = Vec3{0, 0, 1};
    n *= 1.0 / norm(n);
    const Spinor chi = spin_up(n);
    Spinor sn{};
    for (int a = 0; a < 3; ++a) sn += n[a] * matvec(pauli(a + 1), chi);
    CHECK(norm(sn - chi) <= 1e-12);
    CHECK(norm(chi) == doctest::Approx(1.0).epsilon(1e-14));
  }
  // the antipodal special case
  const Spinor down = spin_up(Vec3{0, 0, -1});
  CHECK(norm(down - Spinor{0.0, 1.0}) == 0.0);
}

TEST_CASE("theorem 2: elastic and weyl zero sets coincide at the poles") {
  const ElasticModuli ax{0.75, 0.0, 0.0, 1.0};
  for (double p0 : {1.0, -2.5}) {
    const Theorem2Report rep = theorem2_crosscheck(p0, ax, 41, 2.0);
    CHECK(std::abs(rep.speeds.v1 - 1.0) <= 1e-14);
    CHECK(rep.speeds.v2 == 0.0);
    CHECK(rep.elastic_zeros == 2);
    CHECK(rep.weyl_zeros == 2);
    CHECK(rep.sets_equal);
    CHECK(rep.zeros_are_poles);
    CHECK(rep.pass);
  }

  CHECK_THROWS_AS(theorem2_crosscheck(1.0, ElasticModuli{1.0, 0.5, 0.0, 1.0}, 41, 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(theorem2_crosscheck(1.0, ElasticModuli{0.75, 0.0, 0.0, 2.0}, 41, 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(theorem2_crosscheck(0.0, ax, 41, 2.0), std::invalid_argument);
}

TEST_CASE("stationary field sampling") {
  const GridSpec sp = GridSpec::spatial({6, 6, 6}, {tau, tau, tau});
  SpinorField eta(sp, Spinor{0.5, 0.5});
  const SpinorField xi = stationary_to_spacetime(StationaryField{2.0, eta}, 8);
  CHECK(xi.grid.has_time);
  CHECK(xi.grid.n[0] == 8);
  CHECK(xi.grid.length[0] == doctest::Approx(tau / 2.0).epsilon(1e-15));
  // value at t-index 2: phase exp(-i p0 t)
  const double t = xi.grid.coord(0, 2);
  const std::size_t at = xi.grid.flat({2, 3, 4, 5});
  CHECK(norm(xi[at] - std::polar(1.0, -2.0 * t) * eta[sp.flat({0, 3, 4, 5})]) <= 1e-15);

  CHECK_THROWS_AS(stationary_to_spacetime(StationaryField{0.0, eta}, 8), std::invalid_argument);
}

TEST_CASE("theorem 3 forward direction: a single weyl wave reduces to theorem 2") {
  const ElasticModuli ax{0.75, 0.0, 0.0, 1.0};
  const GridSpec sp = GridSpec::spatial({8, 8, 8}, {tau, tau, tau});
  const SpinorField eta =
      weyl_superposition_eta(sp, 1.0, WeylSign::plus, {WeylWave{Vec3{0, 0, 1}, 1.0}});
  Theorem3Options opts;
  opts.nt = 8;
  const Theorem3Report rep = theorem3_check(StationaryField{1.0, eta}, ax, opts);
  CHECK(rep.weyl_solves);
  CHECK(rep.weyl_residual_max <= 1e-10);
  CHECK(rep.f_max_masked <= 1e-8);
  CHECK(rep.pass);
}

TEST_CASE("theorem 3 forward direction: two-wave superposition") {
  const ElasticModuli ax{0.75, 0.0, 0.0, 1.0};
  const GridSpec sp = GridSpec::spatial({16, 16, 16}, {tau, tau, tau});
  const SpinorField eta = weyl_superposition_eta(
      sp, 1.0, WeylSign::plus,
      {WeylWave{Vec3{0, 0, 1}, 1.0}, WeylWave{Vec3{1, 0, 0}, cplx(0.25, 0.05)}});

  Theorem3Options opts;
  opts.nt = 16;
  const Theorem3Report rep = theorem3_check(StationaryField{1.0, eta}, ax, opts);
  CHECK(rep.weyl_solves);
  CHECK(rep.mask_points == rep.total_points);  // amplitudes keep rho well above the mask
  CHECK(rep.f_max_masked < 1e-5);
  CHECK(rep.pass);

  // negative control: a non-axial material does not annihilate the field
  const ElasticModuli control{0.75, 0.6, 0.4, 1.0};
  const Theorem3Report bad = theorem3_check(StationaryField{1.0, eta}, control, opts);
  CHECK(bad.weyl_solves);
  CHECK(bad.f_max_masked > 1e-2);
  CHECK(!bad.pass);
}

TEST_CASE("superposition construction validates its input") {
  const GridSpec sp = GridSpec::spatial({8, 8, 8}, {tau, tau, tau});
  // non-commensurate wave vector
  CHECK_THROWS_AS(
      weyl_superposition_eta(sp, 1.5, WeylSign::plus, {WeylWave{Vec3{0, 0, 1}, 1.0}}),
      std::invalid_argument);
  // non-unit direction
  CHECK_THROWS_AS(
      weyl_superposition_eta(sp, 1.0, WeylSign::plus, {WeylWave{Vec3{0, 0, 2}, 1.0}}),
      std::invalid_argument);
}
