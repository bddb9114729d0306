#include <doctest.h>

#include <random>

#include "rotel/deformation.hpp"
#include "test_util.hpp"

using namespace rotel;
using namespace rotel::testutil;

namespace {

Rank3 random_antisym13(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Rank3 k;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int g = 0; g < 3; ++g) {
        if (a < g) {
          const double v = u(rng);
          k(a, b, g) = v;
          k(g, b, a) = -v;
        } else if (a == g) {
          k(a, b, g) = 0.0;
        }
      }
  return k;
}

Rank3 random_antisym23(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Rank3 t;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int g = 0; g < 3; ++g) {
        if (b < g) {
          const double v = u(rng);
          t(a, b, g) = v;
          t(a, g, b) = -v;
        } else if (b == g) {
          t(a, b, g) = 0.0;
        }
      }
  return t;
}

}  // namespace

TEST_CASE("constant coframe produces zero deformation") {
  const GridSpec g = GridSpec::spatial({6, 6, 6}, {tau, tau, tau});
  const CoframeField id(g, Mat3::identity());
  for (const Deriv& d : {Deriv::central(), Deriv::spectral()}) {
    CHECK(max_field_dist(build_K(id, d), Rank3Field(g)) <= 1e-15);
    CHECK(max_field_dist(build_T(id, d), Rank3Field(g)) <= 1e-15);
    CHECK(max_field_dist(dual_torsion(id, d), Rank2Field(g)) <= 1e-15);
  }
}

TEST_CASE("grid below the minimum is rejected") {
  CHECK_THROWS_AS(GridSpec::spatial({3, 4, 4}, {1.0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("screw coframe: jet, torsion and dual torsion") {
  const GridSpec g = GridSpec::spatial({6, 6, 32}, {tau, tau, tau});
  const double k = screw_k(g);
  const CoframeField theta = screw_coframe_field(g);
  validate_coframe_field(theta);

  // K^1_{31} = -k sin(k x3), spectral derivatives are exact on this field
  const Rank3Field jet = coframe_jet(theta, Deriv::spectral());
  for (std::size_t i = 0; i < jet.size(); i += 17) {
    const double x3 = g.coord(3, g.unflat(i)[3]);
    CHECK(std::abs(jet[i](0, 2, 0) - (-k * std::sin(k * x3))) <= 1e-11);
    CHECK(std::abs(jet[i](0, 2, 1) - (k * std::cos(k * x3))) <= 1e-11);
    CHECK(std::abs(jet[i](0, 0, 0)) <= 1e-12);
  }

  const Rank2Field star = dual_torsion(theta, Deriv::spectral());
  CHECK(max_field_dist(star, Rank2Field(g, Mat3::diag(-k, -k, 0.0))) <= 1e-10);

  // central differences land within O(h^2)
  const Rank2Field star_c = dual_torsion(theta, Deriv::central());
  const double h = g.spacing(3);
  const double expected_err = k - std::sin(k * h) / h;
  CHECK(max_field_dist(star_c, Rank2Field(g, Mat3::diag(-k, -k, 0.0))) <=
        2.0 * expected_err + 1e-12);

  // f and v of the screw field
  const Rank2Field star_s = dual_torsion(theta, Deriv::spectral());
  CHECK(max_field_dist(scalar_f(star_s), ScalarField(g, -2.0 * k)) <= 1e-10);
  CHECK(max_field_dist(vector_v(star_s), CovectorField(g, Vec3{})) <= 1e-10);
}

TEST_CASE("K and T interconversions on the grid") {
  const GridSpec g = GridSpec::spatial({12, 12, 12}, {tau, tau, tau});
  const CoframeField theta = random_coframe_field(g, 101, 0.1);
  const Deriv d = Deriv::spectral();

  const Rank3Field kk = build_K(theta, d);
  const Rank3Field tt = build_T(theta, d);

  for (std::size_t i = 0; i < kk.size(); ++i) {
    CHECK(is_antisym_13(kk[i], 1e-8));
    CHECK(is_antisym_23(tt[i], 1e-8));
  }

  CHECK(max_field_dist(T_from_K(kk), tt) <= 1e-8);
  CHECK(max_field_dist(K_from_T(tt), kk) <= 1e-8);

  // K^j recovered by contracting the coframe back onto K
  const Rank3Field jet = coframe_jet(theta, d);
  double worst = 0.0;
  for (std::size_t i = 0; i < kk.size(); i += 5) {
    for (int j = 0; j < 3; ++j)
      for (int gg = 0; gg < 3; ++gg)
        for (int dd = 0; dd < 3; ++dd) {
          double s = 0.0;
          for (int a = 0; a < 3; ++a) s += theta[i](j, a) * kk[i](a, gg, dd);
          worst = std::max(worst, std::abs(s - jet[i](j, gg, dd)));
        }
  }
  CHECK(worst <= 1e-10);

  // dual torsion via curls equals the Hodge pair of T
  CHECK(max_field_dist(dual_torsion(theta, d), star_from_T(tt)) <= 1e-10);
  CHECK(max_field_dist(T_from_star(dual_torsion(theta, d)), tt) <= 1e-10);
}

TEST_CASE("pointwise K/T round trips on random constrained tensors") {
  std::mt19937_64 rng(55);
  for (int it = 0; it < 500; ++it) {
    const Rank3 k = random_antisym13(rng);
    const Rank3 k_back = K_from_T(T_from_K(k));
    CHECK(max_abs(k_back - k) <= 1e-12);

    const Rank3 t = random_antisym23(rng);
    const Rank3 t_back = T_from_K(K_from_T(t));
    CHECK(max_abs(t_back - t) <= 1e-12);
  }
  CHECK(max_abs(T_from_K(Rank3{})) == 0.0);

  Rank3 bad;
  bad(0, 0, 0) = 1.0;
  CHECK_THROWS_AS(T_from_K(bad), std::invalid_argument);
  CHECK_THROWS_AS(K_from_T(bad), std::invalid_argument);
}

TEST_CASE("explicit component formula for dual torsion") {
  // *T_ab = sum_j theta^j_a (d_? theta^j_? - ...) written out entry by entry,
  // as an independent check of the curl assembly.
  const GridSpec g = GridSpec::spatial({8, 8, 8}, {tau, tau, tau});
  const CoframeField theta = random_coframe_field(g, 77);
  const Deriv dr = Deriv::spectral();
  const Rank3Field jet = coframe_jet(theta, dr);  // jet(j, a, b) = d_a theta^j_b
  const Rank2Field star = dual_torsion(theta, dr);

  double worst = 0.0;
  for (std::size_t i = 0; i < star.size(); ++i) {
    Mat3 ref;
    for (int j = 0; j < 3; ++j) {
      const auto d = [&](int a, int b) { return jet[i](j, a, b); };
      const std::array<double, 3> row = {theta[i](j, 0), theta[i](j, 1), theta[i](j, 2)};
      const std::array<double, 3> curl = {d(1, 2) - d(2, 1), d(2, 0) - d(0, 2),
                                          d(0, 1) - d(1, 0)};
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          ref(a, b) += row[static_cast<std::size_t>(a)] * curl[static_cast<std::size_t>(b)];
    }
    worst = std::max(worst, max_abs(ref - star[i]));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("irreducible decomposition") {
  const double k = 0.83;
  const IrreducibleParts screw = decompose(Mat3::diag(-k, -k, 0.0));
  CHECK(max_abs(screw.axial - Mat3::diag(-2.0 * k / 3, -2.0 * k / 3, -2.0 * k / 3)) <= 1e-15);
  CHECK(max_abs(screw.vec) == 0.0);
  CHECK(max_abs(screw.tensor - Mat3::diag(-k / 3, -k / 3, 2.0 * k / 3)) <= 1e-15);

  const IrreducibleParts id = decompose(Mat3::identity());
  CHECK(max_abs(id.axial - Mat3::identity()) == 0.0);
  CHECK(max_abs(id.vec) == 0.0);
  CHECK(max_abs(id.tensor) == 0.0);

  Mat3 anti;
  anti(0, 1) = 0.4;
  anti(1, 0) = -0.4;
  const IrreducibleParts av = decompose(anti);
  CHECK(max_abs(av.axial) == 0.0);
  CHECK(max_abs(av.tensor) == 0.0);
  CHECK(max_abs(av.vec - anti) == 0.0);

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int it = 0; it < 1000; ++it) {
    Mat3 m;
    for (double& x : m.c) x = u(rng);
    const IrreducibleParts p = decompose(m);
    CHECK(max_abs(p.axial + p.vec + p.tensor - m) <= 1e-12);
    CHECK(std::abs(inner_rank2(p.axial, p.vec)) <= 1e-12);
    CHECK(std::abs(inner_rank2(p.axial, p.tensor)) <= 1e-12);
    CHECK(std::abs(inner_rank2(p.vec, p.tensor)) <= 1e-12);
  }
}

TEST_CASE("f and v on closed-form tensors") {
  CHECK(scalar_f(Mat3::identity()) == 3.0);
  CHECK(norm(vector_v(Mat3::identity())) == 0.0);

  Mat3 m;
  m(0, 1) = 0.7;
  m(1, 0) = -0.7;
  CHECK(scalar_f(m) == 0.0);
  const Vec3 v = vector_v(m);
  CHECK(v[0] == 0.0);
  CHECK(v[1] == 0.0);
  CHECK(v[2] == doctest::Approx(1.4).epsilon(1e-15));

  // norm identities against the decomposition
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int it = 0; it < 1000; ++it) {
    Mat3 t;
    for (double& x : t.c) x = u(rng);
    const IrreducibleParts p = decompose(t);
    const double f = scalar_f(t);
    const Vec3 vv = vector_v(t);
    CHECK(std::abs(norm_sq_rank2(p.axial) - f * f / 3.0) <= 1e-12);
    CHECK(std::abs(norm_sq_rank2(p.vec) - 0.5 * norm_sq(vv)) <= 1e-12);
    CHECK(std::abs(norm_sq_rank2(p.tensor) -
                   (norm_sq_rank2(t) - f * f / 3.0 - 0.5 * norm_sq(vv))) <= 1e-12);
  }
}

TEST_CASE("rigid rotations leave every deformation measure invariant") {
  const GridSpec g = GridSpec::spatial({8, 8, 8}, {tau, tau, tau});
  std::mt19937_64 rng(61);
  const Deriv d = Deriv::spectral();
  for (int it = 0; it < 5; ++it) {
    const CoframeField theta = random_coframe_field(g, 200 + static_cast<std::uint64_t>(it));
    const Mat3 o = random_rotation(rng);
    CoframeField rotated(g);
    for (std::size_t i = 0; i < theta.size(); ++i) rotated[i] = matmul(o, theta[i]);

    CHECK(max_field_dist(build_K(rotated, d), build_K(theta, d)) <= 1e-10);
    CHECK(max_field_dist(build_T(rotated, d), build_T(theta, d)) <= 1e-10);
    CHECK(max_field_dist(dual_torsion(rotated, d), dual_torsion(theta, d)) <= 1e-10);
    CHECK(max_field_dist(scalar_f(dual_torsion(rotated, d)), scalar_f(dual_torsion(theta, d))) <=
          1e-10);
    CHECK(max_field_dist(vector_v(dual_torsion(rotated, d)), vector_v(dual_torsion(theta, d))) <=
          1e-10);

    // rows of the jet mix by O pointwise
    const Rank3Field jet = coframe_jet(theta, d);
    const Rank3Field jet_rot = coframe_jet(rotated, d);
    double worst = 0.0;
    for (std::size_t i = 0; i < jet.size(); i += 13)
      for (int j = 0; j < 3; ++j)
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) {
            double s = 0.0;
            for (int kj = 0; kj < 3; ++kj) s += o(j, kj) * jet[i](kj, a, b);
            worst = std::max(worst, std::abs(jet_rot[i](j, a, b) - s));
          }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("finite-difference convergence on the screw field is order 2") {
  const double k_target = 1.0;
  double prev_err = 0.0;
  for (int n : {8, 16, 32}) {
    const GridSpec g = GridSpec::spatial({4, 4, n}, {tau, tau, tau});
    const CoframeField theta = screw_coframe_field(g);
    const double k = screw_k(g);
    CHECK(k == k_target);
    const Rank2Field star = dual_torsion(theta, Deriv::central());
    const double err = max_field_dist(star, Rank2Field(g, Mat3::diag(-k, -k, 0.0)));
    if (prev_err > 0.0) {
      const double factor = prev_err / err;
      CHECK(factor > 3.5);
      CHECK(factor < 4.5);
    }
    prev_err = err;
  }
}

TEST_CASE("angular velocity of a rotating coframe") {
  const GridSpec g = GridSpec::spacetime({16, 4, 4, 4}, {tau, tau, tau, tau});
  // coframe of exp(-i p0 t) (1,0): rotates about axis 3 with omega = 2 p0 e3
  const double p0 = 1.0;
  const auto p = commensurate_momentum(g, {1, 0, 0, 0});
  CHECK(p[0] == p0);
  const SpinorField xi = sample_plane_wave(g, Spinor{1.0, 0.0}, p);
  const CoframeField theta = coframe_field_from_spinor(xi);
  const CovectorField omega = angular_velocity(theta, Deriv::spectral());
  CHECK(max_field_dist(omega, CovectorField(g, Vec3{0.0, 0.0, 2.0 * p0})) <= 1e-10);

  const GridSpec s = GridSpec::spatial({4, 4, 4}, {1.0, 1.0, 1.0});
  CHECK_THROWS_AS(angular_velocity(CoframeField(s, Mat3::identity()), Deriv::central()),
                  std::invalid_argument);
}
