#include "rotel/grid.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

namespace rotel {

double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 32) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

namespace {

std::atomic<int> g_threads{0};

int default_threads() {
  if (const char* env = std::getenv("ROTEL_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return std::min(v, 64);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 8u));
}

}  // namespace

int thread_count() {
  const int v = g_threads.load();
  return v > 0 ? v : default_threads();
}

void set_thread_count(int n) { g_threads.store(n); }

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
  const int workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(n, 1));
  if (workers <= 1 || n < 256) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const std::size_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::size_t b = static_cast<std::size_t>(w) * chunk;
    const std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&, b, e] { fn(b, e); });
  }
  for (auto& t : pool) t.join();
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "central") return Scheme::central;
  if (s == "spectral") return Scheme::spectral;
  if (s == "exact") return Scheme::exact;
  throw std::invalid_argument("unknown derivative scheme '" + s + "'");
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::central: return "central";
    case Scheme::spectral: return "spectral";
    case Scheme::exact: return "exact";
  }
  return "?";
}

namespace detail {

std::vector<double> spectral_matrix(int n, double length) {
  // D = F^{-1} diag(i kappa_m) F with the Nyquist mode dropped for even n;
  // the result is a real antisymmetric circulant. The column is symmetrized
  // so rows sum to exactly zero (constants differentiate to exactly zero)
  // and the discrete operator is exactly skew-adjoint.
  const double tau = 2.0 * std::numbers::pi;
  std::vector<double> first_col(static_cast<std::size_t>(n), 0.0);
  for (int j = 1; j <= (n - 1) / 2; ++j) {
    double s = 0.0;
    for (int m = 1; m < n; ++m) {
      int mt = m <= n / 2 ? m : m - n;
      if (n % 2 == 0 && m == n / 2) continue;
      const double kappa = tau * mt / length;
      // real part of i*kappa*exp(i tau m j / n)
      s += -kappa * std::sin(tau * m * j / n);
    }
    first_col[static_cast<std::size_t>(j)] = s / n;
    first_col[static_cast<std::size_t>(n - j)] = -s / n;
  }
  std::vector<double> d(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      d[static_cast<std::size_t>(n * i + k)] = first_col[static_cast<std::size_t>((i - k + n) % n)];
  return d;
}

}  // namespace detail

std::vector<double> integrate_spatial(const ScalarField& f) {
  const GridSpec& g = f.grid;
  const std::size_t per_slice = g.points() / static_cast<std::size_t>(g.n[0]);
  const double w = g.cell_volume_spatial();
  std::vector<double> out(static_cast<std::size_t>(g.n[0]));
  for (int t = 0; t < g.n[0]; ++t) {
    const std::span<const double> slice(f.data.data() + static_cast<std::size_t>(t) * per_slice,
                                        per_slice);
    out[static_cast<std::size_t>(t)] = w * pairwise_sum(slice);
  }
  return out;
}

double integrate(const ScalarField& f) {
  return f.grid.cell_volume() * pairwise_sum(std::span<const double>(f.data));
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.data) m = std::max(m, std::abs(v));
  return m;
}

std::array<double, 4> commensurate_momentum(const GridSpec& g, const std::array<int, 4>& k) {
  const double tau = 2.0 * std::numbers::pi;
  std::array<double, 4> p{};
  for (int a = g.first_axis(); a < 4; ++a) p[a] = tau * k[a] / g.length[a];
  return p;
}

SpinorField sample_plane_wave(const GridSpec& g, const Spinor& zeta,
                              const std::array<double, 4>& p) {
  SpinorField out(g);
  parallel_for(g.points(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const auto idx = g.unflat(i);
      double phase = 0.0;
      for (int a = g.first_axis(); a < 4; ++a) phase += p[a] * g.coord(a, idx[a]);
      out[i] = std::polar(1.0, -phase) * zeta;
    }
  });
  return out;
}

namespace {

struct Mode {
  std::array<int, 4> k;
  cplx coeff0, coeff1;
};

std::vector<Mode> draw_modes(const GridSpec& g, std::uint64_t seed, int max_mode,
                             double wobble) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  std::vector<Mode> modes;
  std::array<int, 4> k{};
  const int t_lo = g.has_time ? -max_mode : 0;
  const int t_hi = g.has_time ? max_mode : 0;
  for (k[0] = t_lo; k[0] <= t_hi; ++k[0])
    for (k[1] = -max_mode; k[1] <= max_mode; ++k[1])
      for (k[2] = -max_mode; k[2] <= max_mode; ++k[2])
        for (k[3] = -max_mode; k[3] <= max_mode; ++k[3]) {
          if (k[0] == 0 && k[1] == 0 && k[2] == 0 && k[3] == 0) continue;
          Mode m;
          m.k = k;
          m.coeff0 = cplx(unit(rng), unit(rng));
          m.coeff1 = cplx(unit(rng), unit(rng));
          modes.push_back(m);
        }

  double mass = 0.0;
  for (const Mode& m : modes) mass += std::abs(m.coeff0) + std::abs(m.coeff1);
  const double scale = mass > 0.0 ? wobble / mass : 0.0;
  for (Mode& m : modes) {
    m.coeff0 *= scale;
    m.coeff1 *= scale;
  }
  return modes;
}

void accumulate_modes(SpinorField& f, const std::vector<Mode>& modes) {
  const GridSpec& g = f.grid;
  const double tau = 2.0 * std::numbers::pi;
  // Per-axis phase tables keep this O(points * modes).
  for (const Mode& m : modes) {
    std::array<std::vector<cplx>, 4> ph;
    for (int a = 0; a < 4; ++a) {
      ph[a].resize(static_cast<std::size_t>(g.n[a]));
      for (int i = 0; i < g.n[a]; ++i)
        ph[a][static_cast<std::size_t>(i)] = std::polar(1.0, -tau * m.k[a] * i / g.n[a]);
    }
    parallel_for(g.points(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        const auto idx = f.grid.unflat(i);
        const cplx w = ph[0][static_cast<std::size_t>(idx[0])] *
                       ph[1][static_cast<std::size_t>(idx[1])] *
                       ph[2][static_cast<std::size_t>(idx[2])] *
                       ph[3][static_cast<std::size_t>(idx[3])];
        f[i].c[0] += m.coeff0 * w;
        f[i].c[1] += m.coeff1 * w;
      }
    });
  }
}

}  // namespace

SpinorField random_spinor_field(const GridSpec& g, std::uint64_t seed, int max_mode,
                                double wobble) {
  if (!(wobble >= 0.0 && wobble < 1.0))
    throw std::invalid_argument("random_spinor_field: wobble must lie in [0,1)");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  // Random constant unit spinor as the base.
  Spinor base{cplx(unit(rng), unit(rng)), cplx(unit(rng), unit(rng))};
  if (norm(base) < 0.1) base = Spinor{1.0, 0.0};
  base *= cplx(1.0 / norm(base), 0.0);

  SpinorField f(g, base);
  accumulate_modes(f, draw_modes(g, seed, max_mode, wobble));
  return f;
}

ScalarField random_positive_scalar_field(const GridSpec& g, std::uint64_t seed, int max_mode,
                                         double amplitude) {
  SpinorField carrier(g, Spinor{0.0, 0.0});
  accumulate_modes(carrier, draw_modes(g, seed, max_mode, amplitude));
  ScalarField out(g);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 1.0 + carrier[i].c[0].real();
  return out;
}

}  // namespace rotel
