#include "rotel/deformation.hpp"

#include <string>

namespace rotel {

void validate_coframe_field(const CoframeField& theta, double tol) {
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!is_valid_coframe(Coframe{theta[i]}, tol))
      throw invalid_coframe_error("coframe field invalid at flat index " + std::to_string(i));
  }
}

namespace {

// d_a theta (a = 1..3 spatial), computed once and shared by the builders.
std::array<Rank2Field, 3> spatial_gradients(const CoframeField& theta, const Deriv& deriv) {
  return {deriv.d(theta, 1), deriv.d(theta, 2), deriv.d(theta, 3)};
}

}  // namespace

Rank3Field coframe_jet(const CoframeField& theta, const Deriv& deriv) {
  const auto grad = spatial_gradients(theta, deriv);
  Rank3Field out(theta.grid);
  parallel_for(theta.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
      for (int j = 0; j < 3; ++j)
        for (int a = 0; a < 3; ++a)
          for (int g = 0; g < 3; ++g)
            out[i](j, a, g) = grad[static_cast<std::size_t>(a)][i](j, g);
  });
  return out;
}

Rank3Field build_K(const CoframeField& theta, const Deriv& deriv) {
  const auto grad = spatial_gradients(theta, deriv);
  Rank3Field out(theta.grid);
  parallel_for(theta.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
      for (int a = 0; a < 3; ++a)
        for (int bb = 0; bb < 3; ++bb)
          for (int g = 0; g < 3; ++g) {
            double s = 0.0;
            for (int j = 0; j < 3; ++j)
              s += theta[i](j, a) * grad[static_cast<std::size_t>(bb)][i](j, g);
            out[i](a, bb, g) = s;
          }
  });
  return out;
}

Rank3Field build_T(const CoframeField& theta, const Deriv& deriv) {
  const auto grad = spatial_gradients(theta, deriv);
  Rank3Field out(theta.grid);
  parallel_for(theta.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
      for (int a = 0; a < 3; ++a)
        for (int bb = 0; bb < 3; ++bb)
          for (int g = 0; g < 3; ++g) {
            double s = 0.0;
            for (int j = 0; j < 3; ++j)
              s += theta[i](j, a) * (grad[static_cast<std::size_t>(bb)][i](j, g) -
                                     grad[static_cast<std::size_t>(g)][i](j, bb));
            out[i](a, bb, g) = s;
          }
  });
  return out;
}

Rank3 K_from_T(const Rank3& t, double tol) {
  if (!is_antisym_23(t, tol))
    throw std::invalid_argument("K_from_T: torsion is not antisymmetric in slots 2,3");
  Rank3 k;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int g = 0; g < 3; ++g) k(a, b, g) = 0.5 * (t(a, b, g) + t(g, a, b) - t(b, g, a));
  return k;
}

Rank3 T_from_K(const Rank3& k, double tol) {
  if (!is_antisym_13(k, tol))
    throw std::invalid_argument("T_from_K: contortion is not antisymmetric in slots 1,3");
  Rank3 t;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int g = 0; g < 3; ++g) t(a, b, g) = k(a, b, g) - k(a, g, b);
  return t;
}

Rank3Field K_from_T(const Rank3Field& t, double tol) {
  Rank3Field out(t.grid);
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = K_from_T(t[i], tol);
  return out;
}

Rank3Field T_from_K(const Rank3Field& k, double tol) {
  Rank3Field out(k.grid);
  for (std::size_t i = 0; i < k.size(); ++i) out[i] = T_from_K(k[i], tol);
  return out;
}

Rank2Field dual_torsion(const CoframeField& theta, const Deriv& deriv) {
  const auto grad = spatial_gradients(theta, deriv);
  Rank2Field out(theta.grid);
  parallel_for(theta.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      Mat3 star;
      for (int j = 0; j < 3; ++j) {
        const Vec3 curl{grad[1][i](j, 2) - grad[2][i](j, 1),
                        grad[2][i](j, 0) - grad[0][i](j, 2),
                        grad[0][i](j, 1) - grad[1][i](j, 0)};
        for (int a = 0; a < 3; ++a)
          for (int bb = 0; bb < 3; ++bb) star(a, bb) += theta[i](j, a) * curl[bb];
      }
      out[i] = star;
    }
  });
  return out;
}

Mat3 star_from_T(const Rank3& t) {
  Mat3 star;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double s = 0.0;
      for (int g = 0; g < 3; ++g)
        for (int d = 0; d < 3; ++d) s += t(a, g, d) * detail::eps0(g, d, b);
      star(a, b) = 0.5 * s;
    }
  return star;
}

Rank3 T_from_star(const Mat3& star) {
  Rank3 t;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int g = 0; g < 3; ++g) {
        double s = 0.0;
        for (int d = 0; d < 3; ++d) s += star(a, d) * detail::eps0(d, b, g);
        t(a, b, g) = s;
      }
  return t;
}

Rank2Field star_from_T(const Rank3Field& t) {
  Rank2Field out(t.grid);
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = star_from_T(t[i]);
  return out;
}

Rank3Field T_from_star(const Rank2Field& star) {
  Rank3Field out(star.grid);
  for (std::size_t i = 0; i < star.size(); ++i) out[i] = T_from_star(star[i]);
  return out;
}

IrreducibleParts decompose(const Mat3& star) {
  IrreducibleParts p;
  const double f3 = trace(star) / 3.0;
  p.axial = Mat3::diag(f3, f3, f3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      p.vec(a, b) = 0.5 * (star(a, b) - star(b, a));
      p.tensor(a, b) = 0.5 * (star(a, b) + star(b, a)) - p.axial(a, b);
    }
  return p;
}

Field<IrreducibleParts> decompose(const Rank2Field& star) {
  Field<IrreducibleParts> out(star.grid);
  for (std::size_t i = 0; i < star.size(); ++i) out[i] = decompose(star[i]);
  return out;
}

double scalar_f(const Mat3& star) { return trace(star); }

Vec3 vector_v(const Mat3& star) {
  Vec3 v;
  for (int a = 0; a < 3; ++a) {
    double s = 0.0;
    for (int b = 0; b < 3; ++b)
      for (int g = 0; g < 3; ++g) s += star(b, g) * detail::eps0(b, g, a);
    v[a] = s;
  }
  return v;
}

ScalarField scalar_f(const Rank2Field& star) {
  ScalarField out(star.grid);
  for (std::size_t i = 0; i < star.size(); ++i) out[i] = scalar_f(star[i]);
  return out;
}

CovectorField vector_v(const Rank2Field& star) {
  CovectorField out(star.grid);
  for (std::size_t i = 0; i < star.size(); ++i) out[i] = vector_v(star[i]);
  return out;
}

CovectorField angular_velocity(const CoframeField& theta, const Deriv& deriv) {
  if (!theta.grid.has_time)
    throw std::invalid_argument("angular_velocity: field has no time axis");
  const Rank2Field dt = deriv.d(theta, 0);
  CovectorField out(theta.grid);
  parallel_for(theta.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      Vec3 w;
      for (int j = 0; j < 3; ++j) w += cross(theta[i].row(j), dt[i].row(j));
      out[i] = 0.5 * w;
    }
  });
  return out;
}

}  // namespace rotel
