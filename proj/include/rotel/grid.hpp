#pragma once

// Periodic sampling grids and dense fields over them.
//
// Axis order is (t, x1, x2, x3) with the time axis optional; storage is
// row-major in that order with any per-point components innermost. Spatial
// axes are always slots 1..3, so axis indices mean the same thing on
// spatial-only and spacetime grids.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "rotel/spinor.hpp"
#include "rotel/tensor.hpp"

namespace rotel {

struct GridSpec {
  bool has_time = false;
  std::array<int, 4> n{1, 0, 0, 0};
  std::array<double, 4> length{0.0, 0.0, 0.0, 0.0};

  static GridSpec spatial(std::array<int, 3> nn, std::array<double, 3> ll) {
    GridSpec g;
    g.has_time = false;
    g.n = {1, nn[0], nn[1], nn[2]};
    g.length = {0.0, ll[0], ll[1], ll[2]};
    g.validate();
    return g;
  }
  static GridSpec spacetime(std::array<int, 4> nn, std::array<double, 4> ll) {
    GridSpec g;
    g.has_time = true;
    g.n = {nn[0], nn[1], nn[2], nn[3]};
    g.length = {ll[0], ll[1], ll[2], ll[3]};
    g.validate();
    return g;
  }

  void validate() const {
    for (int a = first_axis(); a < 4; ++a) {
      if (n[a] < 4) throw std::invalid_argument("grid: need at least 4 points per axis");
      if (!(length[a] > 0.0)) throw std::invalid_argument("grid: box length must be positive");
    }
  }

  int first_axis() const { return has_time ? 0 : 1; }
  bool has_axis(int a) const { return a >= first_axis() && a < 4; }

  std::size_t points() const {
    return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]) *
           static_cast<std::size_t>(n[2]) * static_cast<std::size_t>(n[3]);
  }

  double spacing(int a) const { return length[a] / n[a]; }

  // Volume of one cell over all present axes.
  double cell_volume() const {
    double v = 1.0;
    for (int a = first_axis(); a < 4; ++a) v *= spacing(a);
    return v;
  }
  // Spatial cell volume only (used for per-time-slice quadrature).
  double cell_volume_spatial() const { return spacing(1) * spacing(2) * spacing(3); }

  std::size_t stride(int a) const {
    std::size_t s = 1;
    for (int b = 3; b > a; --b) s *= static_cast<std::size_t>(n[b]);
    return s;
  }

  std::size_t flat(const std::array<int, 4>& idx) const {
    return ((static_cast<std::size_t>(idx[0]) * n[1] + idx[1]) * n[2] + idx[2]) * n[3] + idx[3];
  }
  std::array<int, 4> unflat(std::size_t f) const {
    std::array<int, 4> idx;
    idx[3] = static_cast<int>(f % n[3]);
    f /= n[3];
    idx[2] = static_cast<int>(f % n[2]);
    f /= n[2];
    idx[1] = static_cast<int>(f % n[1]);
    idx[0] = static_cast<int>(f / n[1]);
    return idx;
  }

  double coord(int a, int i) const { return length[a] * i / n[a]; }

  bool operator==(const GridSpec& o) const {
    return has_time == o.has_time && n == o.n && length == o.length;
  }
};

template <class T>
struct Field {
  GridSpec grid;
  std::vector<T> data;

  Field() = default;
  explicit Field(const GridSpec& g) : grid(g), data(g.points()) {}
  Field(const GridSpec& g, const T& fill) : grid(g), data(g.points(), fill) {}

  T& operator[](std::size_t i) { return data[i]; }
  const T& operator[](std::size_t i) const { return data[i]; }
  std::size_t size() const { return data.size(); }
};

using ScalarField = Field<double>;
using CovectorField = Field<Vec3>;
using Rank2Field = Field<Mat3>;
using Rank3Field = Field<Rank3>;
using SpinorField = Field<Spinor>;
// A coframe field is a rank-2 field whose value passes coframe validation
// pointwise (rows are the covectors theta^j).
using CoframeField = Field<Mat3>;

inline void check_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw std::invalid_argument("field grids do not match");
}

// ---------------------------------------------------------------------------
// Deterministic reductions

// Pairwise tree summation; the result depends only on element order, never
// on thread count.
double pairwise_sum(std::span<const double> x);

// Worker count used by parallel loops (ROTEL_THREADS env var, or the
// hardware count capped at 8). set_thread_count(0) restores the default.
int thread_count();
void set_thread_count(int n);

// Chunked parallel loop over [0, n); fn(begin, end) on disjoint ranges.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

// ---------------------------------------------------------------------------
// Derivatives
//
// central:  order-2 central differences with periodic wrap.
// spectral: trigonometric differentiation (exact for band-limited data).
// exact:    analytic rule d_a f = -i p_a f for fields proportional to
//           exp(-i p.x); only meaningful for complex-valued fields.

enum class Scheme { central, spectral, exact };

Scheme scheme_from_string(const std::string& s);
std::string to_string(Scheme s);

namespace detail {

template <class T>
struct is_complex_linear : std::false_type {};
template <>
struct is_complex_linear<cplx> : std::true_type {};
template <>
struct is_complex_linear<Spinor> : std::true_type {};

// Real antisymmetric circulant differentiation matrix for n periodic points
// on a box of the given length.
std::vector<double> spectral_matrix(int n, double length);

}  // namespace detail

struct Deriv {
  Scheme scheme = Scheme::central;
  std::array<double, 4> wave{};  // 4-momentum used by the exact rule

  static Deriv central() { return Deriv{Scheme::central, {}}; }
  static Deriv spectral() { return Deriv{Scheme::spectral, {}}; }
  static Deriv exact(const std::array<double, 4>& p) { return Deriv{Scheme::exact, p}; }

  template <class T>
  Field<T> d(const Field<T>& f, int axis) const;
};

template <class T>
Field<T> Deriv::d(const Field<T>& f, int axis) const {
  const GridSpec& g = f.grid;
  if (!g.has_axis(axis)) throw std::invalid_argument("derivative along a missing axis");

  Field<T> out(g);
  if (scheme == Scheme::exact) {
    if constexpr (detail::is_complex_linear<T>::value) {
      const cplx factor = cplx(0.0, -1.0) * wave[axis];
      parallel_for(g.points(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) out[i] = factor * f[i];
      });
      return out;
    } else {
      throw std::logic_error("exact derivative requires a complex-valued field");
    }
  }

  const int n = g.n[axis];
  const std::size_t stride = g.stride(axis);
  const std::size_t lines = g.points() / static_cast<std::size_t>(n);

  // Map line index -> flat index of the line's first point.
  auto line_base = [&](std::size_t line) {
    const std::size_t outer = line / stride;   // index over axes before `axis`
    const std::size_t inner = line % stride;   // index over axes after `axis`
    return outer * stride * static_cast<std::size_t>(n) + inner;
  };

  if (scheme == Scheme::central) {
    const double inv2h = 1.0 / (2.0 * g.spacing(axis));
    parallel_for(lines, [&](std::size_t b, std::size_t e) {
      for (std::size_t line = b; line < e; ++line) {
        const std::size_t base = line_base(line);
        for (int i = 0; i < n; ++i) {
          const int ip = (i + 1) % n;
          const int im = (i + n - 1) % n;
          out[base + static_cast<std::size_t>(i) * stride] =
              inv2h * (f[base + static_cast<std::size_t>(ip) * stride] -
                       f[base + static_cast<std::size_t>(im) * stride]);
        }
      }
    });
    return out;
  }

  const std::vector<double> dm = detail::spectral_matrix(n, g.length[axis]);
  parallel_for(lines, [&](std::size_t b, std::size_t e) {
    for (std::size_t line = b; line < e; ++line) {
      const std::size_t base = line_base(line);
      for (int i = 0; i < n; ++i) {
        T acc{};
        for (int k = 0; k < n; ++k) {
          const double w = dm[static_cast<std::size_t>(n * i + k)];
          if (w != 0.0) acc += w * f[base + static_cast<std::size_t>(k) * stride];
        }
        out[base + static_cast<std::size_t>(i) * stride] = acc;
      }
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Quadrature (plain Riemann sums; exact for trigonometric integrands
// resolved on the periodic grid)

// Integral over the spatial box for each time slice.
std::vector<double> integrate_spatial(const ScalarField& f);

// Integral over all present axes.
double integrate(const ScalarField& f);

double max_abs(const ScalarField& f);

// ---------------------------------------------------------------------------
// Field constructors used across tests and the CLI

// Momentum commensurate with the grid: p_a = 2 pi k_a / L_a (k_0 ignored on
// spatial grids).
std::array<double, 4> commensurate_momentum(const GridSpec& g, const std::array<int, 4>& k);

// xi(x) = exp(-i p.x) zeta sampled on the grid.
SpinorField sample_plane_wave(const GridSpec& g, const Spinor& zeta,
                              const std::array<double, 4>& p);

// Random band-limited spinor field: a constant unit spinor plus Fourier
// modes with wavenumbers up to max_mode per axis whose total amplitude is
// bounded by wobble, so the field stays nonvanishing (rho >= (1-wobble)^2).
SpinorField random_spinor_field(const GridSpec& g, std::uint64_t seed, int max_mode = 1,
                                double wobble = 0.2);

// Random smooth positive scalar field 1 + amplitude * (band-limited real part).
ScalarField random_positive_scalar_field(const GridSpec& g, std::uint64_t seed,
                                         int max_mode = 1, double amplitude = 0.2);

}  // namespace rotel
