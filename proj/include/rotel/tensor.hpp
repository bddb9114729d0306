#pragma once

// Dense tensor and spinor primitives in Euclidean R^3.
//
// Tensor indices run 1..3 in all derivations and 0..2 in code; the shift is
// purely notational and applies uniformly to every rank. The metric is the
// identity, so raised and lowered tensor indices coincide and we store
// everything with lower indices.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace rotel {

using cplx = std::complex<double>;

// Antisymmetry checks assume unit-scaled inputs.
inline constexpr double kAntisymTol = 1e-12;

namespace detail {

inline void check_index3(int i) {
  if (i < 0 || i > 2) throw std::out_of_range("tensor index out of range");
}

// 0-based Levi-Civita, no validation (hot loops).
inline constexpr int eps0(int a, int b, int c) {
  return (a - b) * (b - c) * (c - a) / 2;
}

}  // namespace detail

// Totally antisymmetric symbol, 1-based indices as in the derivations,
// eps_123 = +1. Out-of-range indices are rejected.
inline int levi_civita(int alpha, int beta, int gamma) {
  if (alpha < 1 || alpha > 3 || beta < 1 || beta > 3 || gamma < 1 || gamma > 3)
    throw std::out_of_range("levi_civita: indices must lie in {1,2,3}");
  return detail::eps0(alpha - 1, beta - 1, gamma - 1);
}

// ---------------------------------------------------------------------------
// Vec3: real covector (rank 1)

struct Vec3 {
  std::array<double, 3> c{};

  Vec3() = default;
  Vec3(double x, double y, double z) : c{x, y, z} {}

  double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  double at(int i) const {
    detail::check_index3(i);
    return c[static_cast<std::size_t>(i)];
  }

  Vec3& operator+=(const Vec3& o) {
    for (int i = 0; i < 3; ++i) c[i] += o.c[i];
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    for (int i = 0; i < 3; ++i) c[i] -= o.c[i];
    return *this;
  }
  Vec3& operator*=(double s) {
    for (double& x : c) x *= s;
    return *this;
  }
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator*(double s, Vec3 a) { return a *= s; }
inline Vec3 operator*(Vec3 a, double s) { return a *= s; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2];
}
inline double norm_sq(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm_sq(a)); }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return Vec3{a.c[1] * b.c[2] - a.c[2] * b.c[1],
              a.c[2] * b.c[0] - a.c[0] * b.c[2],
              a.c[0] * b.c[1] - a.c[1] * b.c[0]};
}

// ---------------------------------------------------------------------------
// Mat3: real rank-2 tensor, row-major

struct Mat3 {
  std::array<double, 9> c{};

  double& operator()(int i, int j) { return c[static_cast<std::size_t>(3 * i + j)]; }
  double operator()(int i, int j) const { return c[static_cast<std::size_t>(3 * i + j)]; }
  double at(int i, int j) const {
    detail::check_index3(i);
    detail::check_index3(j);
    return (*this)(i, j);
  }

  Vec3 row(int i) const { return Vec3{(*this)(i, 0), (*this)(i, 1), (*this)(i, 2)}; }
  void set_row(int i, const Vec3& v) {
    for (int j = 0; j < 3; ++j) (*this)(i, j) = v[j];
  }

  static Mat3 identity() {
    Mat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
  }
  static Mat3 diag(double a, double b, double d) {
    Mat3 m;
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = d;
    return m;
  }

  Mat3& operator+=(const Mat3& o) {
    for (int i = 0; i < 9; ++i) c[i] += o.c[i];
    return *this;
  }
  Mat3& operator-=(const Mat3& o) {
    for (int i = 0; i < 9; ++i) c[i] -= o.c[i];
    return *this;
  }
  Mat3& operator*=(double s) {
    for (double& x : c) x *= s;
    return *this;
  }
};

inline Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
inline Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
inline Mat3 operator*(double s, Mat3 a) { return a *= s; }
inline Mat3 operator*(Mat3 a, double s) { return a *= s; }

inline Mat3 matmul(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

inline Mat3 transpose(const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(j, i);
  return r;
}

inline double trace(const Mat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

inline double det(const Mat3& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

// Inner product (P,Q) = P_{ab} Q_{ab} and the induced norm.
inline double inner_rank2(const Mat3& p, const Mat3& q) {
  double s = 0;
  for (int i = 0; i < 9; ++i) s += p.c[i] * q.c[i];
  return s;
}
inline double norm_sq_rank2(const Mat3& p) { return inner_rank2(p, p); }
inline double norm_rank2(const Mat3& p) { return std::sqrt(norm_sq_rank2(p)); }

// ---------------------------------------------------------------------------
// Rank3: real rank-3 tensor, c[9a + 3b + g]

struct Rank3 {
  std::array<double, 27> c{};

  double& operator()(int a, int b, int g) {
    return c[static_cast<std::size_t>(9 * a + 3 * b + g)];
  }
  double operator()(int a, int b, int g) const {
    return c[static_cast<std::size_t>(9 * a + 3 * b + g)];
  }
  double at(int a, int b, int g) const {
    detail::check_index3(a);
    detail::check_index3(b);
    detail::check_index3(g);
    return (*this)(a, b, g);
  }

  Rank3& operator+=(const Rank3& o) {
    for (int i = 0; i < 27; ++i) c[i] += o.c[i];
    return *this;
  }
  Rank3& operator-=(const Rank3& o) {
    for (int i = 0; i < 27; ++i) c[i] -= o.c[i];
    return *this;
  }
  Rank3& operator*=(double s) {
    for (double& x : c) x *= s;
    return *this;
  }
};

inline Rank3 operator+(Rank3 a, const Rank3& b) { return a += b; }
inline Rank3 operator-(Rank3 a, const Rank3& b) { return a -= b; }
inline Rank3 operator*(double s, Rank3 a) { return a *= s; }

inline double max_abs(const Rank3& a) {
  double m = 0;
  for (double x : a.c) m = std::max(m, std::abs(x));
  return m;
}
inline double max_abs(const Mat3& a) {
  double m = 0;
  for (double x : a.c) m = std::max(m, std::abs(x));
  return m;
}

// Antisymmetry of a rank-2 tensor: R_{ab} = -R_{ba}.
inline bool is_antisymmetric(const Mat3& r, double tol = kAntisymTol) {
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b <= a; ++b)
      if (std::abs(r(a, b) + r(b, a)) > tol) return false;
  return true;
}

// Total antisymmetry of a rank-3 tensor.
inline bool is_totally_antisymmetric(const Rank3& r, double tol = kAntisymTol) {
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int g = 0; g < 3; ++g) {
        if (std::abs(r(a, b, g) + r(b, a, g)) > tol) return false;
        if (std::abs(r(a, b, g) + r(a, g, b)) > tol) return false;
      }
  return true;
}

// Antisymmetry in the first and third slots, K_{gab} = -K_{bag}.
inline bool is_antisym_13(const Rank3& k, double tol = kAntisymTol) {
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int g = 0; g < 3; ++g)
        if (std::abs(k(g, a, b) + k(b, a, g)) > tol) return false;
  return true;
}

// Antisymmetry in the second and third slots, T_{abg} = -T_{agb}.
inline bool is_antisym_23(const Rank3& t, double tol = kAntisymTol) {
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int g = 0; g < 3; ++g)
        if (std::abs(t(a, b, g) + t(a, g, b)) > tol) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Exterior product and Hodge star
//
// (*R)_{a_{r+1}..a_3} = (r!)^{-1} R_{a_1..a_r} eps_{a_1..a_3}; applying the
// star twice is the identity for every rank in Euclidean 3-space.

// (a ^ b)_{ab} = a_a b_b - a_b b_a
inline Mat3 wedge(const Vec3& a, const Vec3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a[i] * b[j] - a[j] * b[i];
  return r;
}

// r = 1: covector -> antisymmetric rank-2
inline Mat3 hodge_star(const Vec3& a) {
  Mat3 r;
  for (int b = 0; b < 3; ++b)
    for (int g = 0; g < 3; ++g) {
      double s = 0;
      for (int al = 0; al < 3; ++al) s += a[al] * detail::eps0(al, b, g);
      r(b, g) = s;
    }
  return r;
}

// r = 2: antisymmetric rank-2 -> covector
inline Vec3 hodge_star(const Mat3& r, double tol = kAntisymTol) {
  if (!is_antisymmetric(r, tol))
    throw std::invalid_argument("hodge_star: rank-2 input is not antisymmetric");
  Vec3 v;
  for (int g = 0; g < 3; ++g) {
    double s = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) s += r(a, b) * detail::eps0(a, b, g);
    v[g] = 0.5 * s;
  }
  return v;
}

// r = 3: totally antisymmetric rank-3 -> scalar
inline double hodge_star(const Rank3& r, double tol = kAntisymTol) {
  if (!is_totally_antisymmetric(r, tol))
    throw std::invalid_argument("hodge_star: rank-3 input is not totally antisymmetric");
  double s = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int g = 0; g < 3; ++g) s += r(a, b, g) * detail::eps0(a, b, g);
  return s / 6.0;
}

// ---------------------------------------------------------------------------
// Mat2c: complex 2x2 matrix (spinor-space operators), row-major

struct Mat2c {
  std::array<cplx, 4> c{};

  Mat2c() = default;
  Mat2c(cplx a, cplx b, cplx d, cplx e) : c{a, b, d, e} {}

  cplx& operator()(int i, int j) { return c[static_cast<std::size_t>(2 * i + j)]; }
  cplx operator()(int i, int j) const { return c[static_cast<std::size_t>(2 * i + j)]; }

  static Mat2c identity() { return Mat2c{1.0, 0.0, 0.0, 1.0}; }
  static Mat2c zero() { return Mat2c{}; }

  Mat2c& operator+=(const Mat2c& o) {
    for (int i = 0; i < 4; ++i) c[i] += o.c[i];
    return *this;
  }
  Mat2c& operator-=(const Mat2c& o) {
    for (int i = 0; i < 4; ++i) c[i] -= o.c[i];
    return *this;
  }
  Mat2c& operator*=(cplx s) {
    for (cplx& x : c) x *= s;
    return *this;
  }

  bool is_zero() const {
    for (const cplx& x : c)
      if (x != 0.0) return false;
    return true;
  }
};

inline Mat2c operator+(Mat2c a, const Mat2c& b) { return a += b; }
inline Mat2c operator-(Mat2c a, const Mat2c& b) { return a -= b; }
inline Mat2c operator*(cplx s, Mat2c a) { return a *= s; }
inline Mat2c operator*(double s, Mat2c a) { return a *= cplx(s, 0.0); }

inline Mat2c matmul(const Mat2c& a, const Mat2c& b) {
  return Mat2c{a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
               a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1)};
}

inline Mat2c adjoint(const Mat2c& a) {
  return Mat2c{std::conj(a(0, 0)), std::conj(a(1, 0)), std::conj(a(0, 1)), std::conj(a(1, 1))};
}

inline cplx trace(const Mat2c& a) { return a(0, 0) + a(1, 1); }
inline cplx det(const Mat2c& a) { return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0); }

inline bool is_hermitian(const Mat2c& a, double tol = kAntisymTol) {
  return std::abs(a(0, 0) - std::conj(a(0, 0))) <= tol &&
         std::abs(a(1, 1) - std::conj(a(1, 1))) <= tol &&
         std::abs(a(0, 1) - std::conj(a(1, 0))) <= tol;
}

// ---------------------------------------------------------------------------
// Pauli matrices and the metric spinor
//
// sigma_0 is the identity; the raised-index set differs only in the temporal
// one, sigma^0 = -sigma_0, while sigma^a = sigma_a for a = 1,2,3. The first
// spinor index enumerates rows, the second columns.

struct PauliSet {
  std::array<Mat2c, 4> lower;  // sigma_0 .. sigma_3
  std::array<Mat2c, 4> upper;  // sigma^0 .. sigma^3
  Mat2c eps;                   // metric spinor

  static const PauliSet& get() {
    static const PauliSet p = [] {
      PauliSet s;
      s.lower[0] = Mat2c::identity();
      s.lower[1] = Mat2c{0.0, 1.0, 1.0, 0.0};
      s.lower[2] = Mat2c{0.0, cplx(0, -1), cplx(0, 1), 0.0};
      s.lower[3] = Mat2c{1.0, 0.0, 0.0, -1.0};
      s.upper = s.lower;
      s.upper[0] = cplx(-1.0, 0.0) * s.lower[0];
      s.eps = Mat2c{0.0, -1.0, 1.0, 0.0};
      return s;
    }();
    return p;
  }
};

// sigma_alpha with a 1-based spatial index (alpha in {1,2,3}); pauli(0) is
// the temporal sigma_0.
inline const Mat2c& pauli(int alpha) {
  if (alpha < 0 || alpha > 3) throw std::out_of_range("pauli: index must lie in {0,..,3}");
  return PauliSet::get().lower[static_cast<std::size_t>(alpha)];
}
inline const Mat2c& pauli_upper(int alpha) {
  if (alpha < 0 || alpha > 3) throw std::out_of_range("pauli: index must lie in {0,..,3}");
  return PauliSet::get().upper[static_cast<std::size_t>(alpha)];
}
inline const Mat2c& metric_spinor() { return PauliSet::get().eps; }

}  // namespace rotel
