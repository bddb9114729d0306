// rotel — rotational elasticity toolkit
//
// Subcommands: convert, decompose, energy, lagrangian, planewave solve|check,
// verify lemma1|lemma2|eulerlagrange, weyl check|theorem2|theorem3,
// sweep speeds.
//
// Configuration is a flat key = value file plus command-line overrides
// (flags win). Every run prints a JSON report embedding the config hash and
// library version. Exit codes: 0 pass, 1 computed but failed, 2 invalid
// input.

#include <chrono>
#include <random>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotel/field_io.hpp"
#include "rotel/version.hpp"
#include "rotel/weyl.hpp"

using json = nlohmann::ordered_json;
using namespace rotel;

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Flat key = value configuration with override tracking

class Config {
 public:
  void load_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw config_error("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        const auto b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
      };
      if (trim(line).empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw config_error("config line " + std::to_string(lineno) + ": expected key = value");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty())
        throw config_error("config line " + std::to_string(lineno) + ": empty key");
      kv_[key] = value;
      lines_[key] = lineno;
    }
  }

  void set(const std::string& key, const std::string& value) {
    kv_[key] = value;
    lines_.erase(key);  // command-line override, no config line
  }

  bool has(const std::string& key) const { return kv_.count(key) > 0; }

  void require_known(const std::set<std::string>& allowed) const {
    for (const auto& [key, value] : kv_) {
      if (allowed.count(key)) continue;
      std::string where = lines_.count(key)
                              ? " (config line " + std::to_string(lines_.at(key)) + ")"
                              : "";
      throw config_error("unknown key '" + key + "'" + where);
    }
  }

  std::string get_str(const std::string& key) const {
    if (!has(key)) throw config_error("missing required key '" + key + "'");
    return kv_.at(key);
  }
  std::string get_str(const std::string& key, const std::string& dflt) const {
    return has(key) ? kv_.at(key) : dflt;
  }

  double get_double(const std::string& key) const { return parse_double(key, get_str(key)); }
  double get_double(const std::string& key, double dflt) const {
    return has(key) ? parse_double(key, kv_.at(key)) : dflt;
  }

  int get_int(const std::string& key, int dflt) const {
    if (!has(key)) return dflt;
    try {
      return std::stoi(kv_.at(key));
    } catch (...) {
      throw diag(key, "not an integer");
    }
  }

  std::uint64_t get_seed(const std::string& key, std::uint64_t dflt) const {
    if (!has(key)) return dflt;
    try {
      return std::stoull(kv_.at(key));
    } catch (...) {
      throw diag(key, "not an unsigned integer");
    }
  }

  bool get_bool(const std::string& key, bool dflt) const {
    if (!has(key)) return dflt;
    const std::string v = kv_.at(key);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw diag(key, "not a boolean");
  }

  std::vector<double> get_doubles(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(get_str(key));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
    return out;
  }

  json echo() const {
    json j = json::object();
    for (const auto& [key, value] : kv_) j[key] = value;
    return j;
  }

  // FNV-1a over the sorted key=value lines.
  std::string hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (const auto& [key, value] : kv_) {
      for (const std::string* s : {&key, &value}) {
        for (char c : *s) {
          h ^= static_cast<unsigned char>(c);
          h *= 1099511628211ull;
        }
        h ^= '\n';
        h *= 1099511628211ull;
      }
    }
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

 private:
  config_error diag(const std::string& key, const std::string& what) const {
    std::string where =
        lines_.count(key) ? " (config line " + std::to_string(lines_.at(key)) + ")" : "";
    return config_error("key '" + key + "'" + where + ": " + what);
  }
  double parse_double(const std::string& key, const std::string& v) const {
    try {
      std::size_t used = 0;
      const double x = std::stod(v, &used);
      while (used < v.size() && std::isspace(static_cast<unsigned char>(v[used]))) ++used;
      if (used != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (...) {
      throw diag(key, "not a number: '" + v + "'");
    }
  }

  std::map<std::string, std::string> kv_;
  std::map<std::string, int> lines_;
};

// keys accepted by every command
const std::set<std::string> kGlobalKeys = {"threads", "report", "deriv"};

std::set<std::string> with_global(std::set<std::string> keys) {
  keys.insert(kGlobalKeys.begin(), kGlobalKeys.end());
  return keys;
}

ElasticModuli moduli_from(const Config& cfg) {
  ElasticModuli m{cfg.get_double("c_ax"), cfg.get_double("c_vec"), cfg.get_double("c_ten"),
                  cfg.get_double("c_kin")};
  m.validate();
  return m;
}

Deriv deriv_from(const Config& cfg, const std::string& dflt,
                 const std::array<double, 4>& wave = {}) {
  const Scheme s = scheme_from_string(cfg.get_str("deriv", dflt));
  return Deriv{s, wave};
}

Spinor zeta_from(const Config& cfg, const Spinor& dflt = Spinor{1.0, 0.0}) {
  if (!cfg.has("zeta")) return dflt;
  const auto v = cfg.get_doubles("zeta");
  if (v.size() != 4) throw config_error("key 'zeta': expected re1,im1,re2,im2");
  return Spinor{cplx(v[0], v[1]), cplx(v[2], v[3])};
}

GridSpec grid_from(const Config& cfg, const GridSpec& dflt) {
  if (!cfg.has("grid_n")) return dflt;
  std::vector<double> nn = cfg.get_doubles("grid_n");
  std::vector<double> ll;
  if (cfg.has("grid_L")) {
    ll = cfg.get_doubles("grid_L");
  } else {
    ll.assign(nn.size(), kTau);
  }
  if (nn.size() != ll.size()) throw config_error("grid_n and grid_L must have the same arity");
  try {
    if (nn.size() == 3)
      return GridSpec::spatial({int(nn[0]), int(nn[1]), int(nn[2])}, {ll[0], ll[1], ll[2]});
    if (nn.size() == 4)
      return GridSpec::spacetime({int(nn[0]), int(nn[1]), int(nn[2]), int(nn[3])},
                                 {ll[0], ll[1], ll[2], ll[3]});
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("grid: ") + e.what());
  }
  throw config_error("grid_n must have 3 or 4 entries");
}

json momentum_json(const FourMomentum& p) {
  return json::array({p.p0, p.p[0], p.p[1], p.p[2]});
}

struct ReportSink {
  json body = json::object();
  bool pass = true;

  int finish(const Config& cfg, const std::string& command,
             std::chrono::steady_clock::time_point start) {
    json report = json::object();
    report["command"] = command;
    report["version"] = kVersion;
    report["config_hash"] = cfg.hash();
    report["inputs"] = cfg.echo();
    report["results"] = body;
    report["pass"] = pass;
    report["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string text = report.dump(2);
    std::cout << text << "\n";
    if (cfg.has("report")) {
      std::ofstream os(cfg.get_str("report"));
      if (!os) throw config_error("cannot open report file for writing");
      os << text << "\n";
    }
    return pass ? 0 : 1;
  }
};

// ---------------------------------------------------------------------------
// convert

int cmd_convert(const Config& cfg) {
  const auto start = std::chrono::steady_clock::now();
  cfg.require_known(with_global({"to", "in", "in2", "out", "out2"}));
  const std::string to = cfg.get_str("to");
  ReportSink sink;

  if (to == "coframe") {
    const FieldFile in = load_field(cfg.get_str("in"));
    const SpinorField& xi = as_spinor(in);
    // collect every degenerate point before refusing
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < xi.size(); ++i)
      if (!(norm_sq(xi[i]) > kRhoMin)) bad.push_back(i);
    if (!bad.empty()) {
      std::string msg = "degenerate spinor at flat indices:";
      for (std::size_t i = 0; i < std::min<std::size_t>(bad.size(), 16); ++i)
        msg += " " + std::to_string(bad[i]);
      if (bad.size() > 16) msg += " ...";
      throw config_error(msg);
    }
    const CoframeField theta = coframe_field_from_spinor(xi);
    save_field(cfg.get_str("out"), FieldFile{FieldKind::coframe, theta});
    save_field(cfg.get_str("out2"), FieldFile{FieldKind::scalar, density_field(xi)});
    sink.body["points"] = xi.size();
    sink.body["direction"] = "spinor_to_coframe";
  } else if (to == "spinor") {
    const FieldFile in = load_field(cfg.get_str("in"));
    const FieldFile in2 = load_field(cfg.get_str("in2"));
    const Rank2Field& theta = as_rank2(in);
    const ScalarField& rho = as_scalar(in2);
    check_same_grid(theta.grid, rho.grid);
    SpinorField xi(theta.grid);
    for (std::size_t i = 0; i < xi.size(); ++i) {
      try {
        xi[i] = coframe_to_spinor(Coframe{theta[i]}, rho[i]);
      } catch (const std::invalid_argument& e) {
        throw config_error("invalid coframe/density at flat index " + std::to_string(i) + ": " +
                           e.what());
      }
    }
    save_field(cfg.get_str("out"), FieldFile{FieldKind::spinor, xi});
    sink.body["points"] = xi.size();
    sink.body["direction"] = "coframe_to_spinor";
  } else {
    throw config_error("key 'to' must be 'coframe' or 'spinor'");
  }
  return sink.finish(cfg, "convert", start);
}

// ---------------------------------------------------------------------------
// decompose

int cmd_decompose(const Config& cfg) {
  const auto start = std::chrono::steady_clock::now();
  cfg.require_known(with_global({"in", "out_axial", "out_vector", "out_tensor"}));
  const FieldFile in = load_field(cfg.get_str("in"));
  const Rank2Field& star = as_rank2(in);

  Rank2Field ax(star.grid), vec(star.grid), ten(star.grid);
  double recon = 0.0, ortho = 0.0, ax_norm = 0.0, vec_norm = 0.0, ten_norm = 0.0;
  for (std::size_t i = 0; i < star.size(); ++i) {
    const IrreducibleParts p = decompose(star[i]);
    ax[i] = p.axial;
    vec[i] = p.vec;
    ten[i] = p.tensor;
    recon = std::max(recon, max_abs(p.axial + p.vec + p.tensor - star[i]));
    ortho = std::max({ortho, std::abs(inner_rank2(p.axial, p.vec)),
                      std::abs(inner_rank2(p.axial, p.tensor)),
                      std::abs(inner_rank2(p.vec, p.tensor))});
    const double f = scalar_f(star[i]);
    const Vec3 v = vector_v(star[i]);
    ax_norm = std::max(ax_norm, std::abs(norm_sq_rank2(p.axial) - f * f / 3.0));
    vec_norm = std::max(vec_norm, std::abs(norm_sq_rank2(p.vec) - 0.5 * norm_sq(v)));
    ten_norm = std::max(ten_norm, std::abs(norm_sq_rank2(p.tensor) - norm_sq_rank2(star[i]) +
                                           f * f / 3.0 + 0.5 * norm_sq(v)));
  }
  if (cfg.has("out_axial")) save_field(cfg.get_str("out_axial"), {FieldKind::rank2, ax});
  if (cfg.has("out_vector")) save_field(cfg.get_str("out_vector"), {FieldKind::rank2, vec});
  if (cfg.has("out_tensor")) save_field(cfg.get_str("out_tensor"), {FieldKind::rank2, ten});

  ReportSink sink;
  sink.body["reconstruction_max"] = recon;
  sink.body["orthogonality_max"] = ortho;
  sink.body["axial_norm_identity_max"] = ax_norm;
  sink.body["vector_norm_identity_max"] = vec_norm;
  sink.body["tensor_norm_identity_max"] = ten_norm;
  sink.pass = recon <= 1e-10 && ortho <= 1e-10;
  return sink.finish(cfg, "decompose", start);
}

// ---------------------------------------------------------------------------
// energy / lagrangian

GeometricFields geometry_from_config(const Config& cfg, const Deriv& deriv) {
  const FieldFile in = load_field(cfg.get_str("in"));
  if (in.kind == FieldKind::spinor) return geometric_from_spinor(as_spinor(in), deriv);
  if (in.kind == FieldKind::coframe || in.kind == FieldKind::rank2) {
    const Rank2Field& theta = as_rank2(in);
    validate_coframe_field(theta);
    ScalarField rho(theta.grid, 1.0);
    if (cfg.has("in2")) rho = as_scalar(load_field(cfg.get_str("in2")));
    check_same_grid(theta.grid, rho.grid);
    for (std::size_t i = 0; i < rho.size(); ++i)
      if (!(rho[i] > 0.0))
        throw config_error("density must be positive (flat index " + std::to_string(i) + ")");
    return geometric_from_coframe(theta, rho, deriv);
  }
  throw config_error("input field must be a spinor or coframe field");
}

int cmd_energy(const Config& cfg, bool write_lagrangian) {
  const auto start = std::chrono::steady_clock::now();
  std::set<std::string> keys = {"in", "in2", "c_ax", "c_vec", "c_ten", "c_kin"};
  if (write_lagrangian) keys.insert("out");
  cfg.require_known(with_global(keys));

  const ElasticModuli m = moduli_from(cfg);
  const Deriv deriv = deriv_from(cfg, "central");
  const GeometricFields geo = geometry_from_config(cfg, deriv);

  ReportSink sink;
  const auto pot = potential_energy(geo.star_t, geo.rho, m);
  sink.body["potential"] = pot;
  const ScalarField l = lagrangian_density(geo, m);
  if (!geo.omega.data.empty()) {
    sink.body["kinetic"] = kinetic_energy(geo.omega, geo.rho, m);
    sink.body["action"] = action(l);
  } else {
    sink.body["kinetic"] = json::array();
    sink.body["action"] = nullptr;
  }
  const ScalarField res = density_el_residual(geo, m);
  sink.body["residual_maxnorm"] = max_abs(res);
  if (write_lagrangian) save_field(cfg.get_str("out"), FieldFile{FieldKind::scalar, l});
  return sink.finish(cfg, write_lagrangian ? "lagrangian" : "energy", start);
}

// ---------------------------------------------------------------------------
// planewave

int cmd_planewave_solve(const Config& cfg) {
  const auto start = std::chrono::steady_clock::now();
  cfg.require_known(
      with_global({"c_ax", "c_vec", "c_ten", "c_kin", "p0", "zeta", "samples"}));
  const ElasticModuli m = moduli_from(cfg);
  const double p0 = cfg.get_double("p0");
  const int samples = cfg.get_int("samples", 8);
  const Spinor zeta = zeta_from(cfg);

  const WaveSpeeds speeds = wave_speeds(m);
  std::vector<SolutionFamily> families;
  try {
    families = solve_plane_waves(m, p0, samples);
  } catch (const std::invalid_argument& e) {
    throw config_error(e.what());
  }

  // families are solved for (1,0); rotate the momenta into the frame of zeta
  const GaugeDecomposition gauge = normalize_and_gauge(zeta);
  const Mat3 r = su2_to_so3(gauge.u);

  const double scale =
      4.0 * m.c_kin * p0 * p0 * std::max(1.0, gauge.scale * gauge.scale);
  double residual_max = 0.0;
  json fam_json = json::array();
  for (const auto& fam : families) {
    json fj;
    fj["kind"] = to_string(fam.kind);
    fj["speed"] = fam.speed;
    fj["radius"] = fam.radius;
    json samples_json = json::array();
    for (const auto& q : fam.samples) {
      Vec3 p;
      for (int a = 0; a < 3; ++a) {
        double s = 0.0;
        for (int b = 0; b < 3; ++b) s += r(b, a) * q.p[b];
        p[a] = s;
      }
      const FourMomentum rotated{q.p0, p};
      residual_max = std::max(residual_max, norm(critical_residual(zeta, rotated, m)));
      samples_json.push_back(momentum_json(rotated));
    }
    fj["samples"] = samples_json;
    fam_json.push_back(fj);
  }

  ReportSink sink;
  sink.body["speeds"] = {{"v1", speeds.v1}, {"v2", speeds.v2}};
  sink.body["near_degenerate_warning"] = speeds.near_degenerate_warning;
  sink.body["families"] = fam_json;
  sink.body["residual_max"] = residual_max;
  sink.pass = residual_max < 1e-10 * scale;
  return sink.finish(cfg, "planewave solve", start);
}

int cmd_planewave_check(const Config& cfg) {
  const auto start = std::chrono::steady_clock::now();
  cfg.require_known(with_global({"c_ax", "c_vec", "c_ten", "c_kin", "p0", "p", "zeta", "tol"}));
  const ElasticModuli m = moduli_from(cfg);
  const Spinor zeta = zeta_from(cfg);
  const auto pv = cfg.get_doubles("p");
  if (pv.size() != 3) throw config_error("key 'p': expected p1,p2,p3");
  const FourMomentum p{cfg.get_double("p0"), Vec3{pv[0], pv[1], pv[2]}};

  const double tol = cfg.get_double("tol", 1e-10);
  const double rho = spinor_density(zeta);
  const double scale = 4.0 * m.c_kin * std::max(1.0, p.p0 * p.p0) * std::max(1.0, rho);
  const Spinor g = critical_residual(zeta, p, m);

  ReportSink sink;
  sink.body["reduced_lagrangian"] = reduced_lagrangian(zeta, p, m);
  sink.body["residual_norm"] = norm(g);
  sink.body["residual"] = json::array({g[0].real(), g[0].imag(), g[1].real(), g[1].imag()});
  sink.body["speeds"] = {{"v1", wave_speeds(m).v1}, {"v2", wave_speeds(m).v2}};
  sink.pass = norm(g) < tol * scale;
  return sink.finish(cfg, "planewave check", start);
}

// ---------------------------------------------------------------------------
// verify

struct LemmaSample {
  ElasticModuli m;
  Spinor zeta;
  std::array<double, 4> p;
};

std::vector<LemmaSample> lemma_samples(const GridSpec& g, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::uniform_real_distribution<double> s(-1.0, 1.0);
  std::uniform_int_distribution<int> k(-3, 3);
  std::vector<LemmaSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    LemmaSample smp;
    smp.m = ElasticModuli{u(rng), u(rng), u(rng), u(rng)};
    smp.zeta = Spinor{cplx(s(rng), s(rng)), cplx(s(rng), s(rng))};
    if (norm(smp.zeta) < 0.1) smp.zeta = Spinor{1.0, 0.0};
    std::array<int, 4> kk{k(rng), k(rng), k(rng), k(rng)};
    if (kk[0] == 0) kk[0] = 1;
    smp.p = commensurate_momentum(g, kk);
    out.push_back(smp);
  }
  return out;
}

int cmd_verify(const Config& cfg, const std::string& which) {
  const auto start = std::chrono::steady_clock::now();
  cfg.require_known(with_global({"samples", "seed", "grid_n", "grid_L", "step"}));

  const GridSpec dflt =
      GridSpec::spacetime({12, 12, 12, 12}, {kTau, kTau, kTau, kTau});
  const GridSpec g = grid_from(cfg, dflt);
  if (!g.has_time) throw config_error("verification needs a spacetime grid");
  ReportSink sink;

  if (which == "lemma1" || which == "lemma2") {
    const int samples = cfg.get_int("samples", 100);
    const auto set = lemma_samples(g, samples, cfg.get_seed("seed", 2024));
    const std::string scheme = cfg.get_str("deriv", "exact");
    const double tol = which == "lemma1" ? (scheme == "exact" ? 1e-8 : 1e-5) : 1e-8;

    double worst_stdev = 0.0, worst_lemma2 = 0.0, worst_closed = 0.0;
    for (const auto& smp : set) {
      const SpinorField xi = sample_plane_wave(g, smp.zeta, smp.p);
      const Deriv deriv = scheme == "exact" ? Deriv::exact(smp.p)
                                            : Deriv{scheme_from_string(scheme), {}};
      const Field<Spinor> unph = unphase(euler_lagrange_F(xi, smp.m, deriv), smp.p);
      const SpinorFieldStats st = spinor_field_stats(unph);
      const double scale = std::max(1.0, st.mean_mag);
      worst_stdev = std::max(worst_stdev, st.stdev / scale);

      if (which == "lemma2") {
        const FourMomentum fm{smp.p[0], Vec3{smp.p[1], smp.p[2], smp.p[3]}};
        const Spinor gg = reduced_G(smp.zeta, fm, smp.m);
        double worst = 0.0;
        for (std::size_t i = 0; i < unph.size(); ++i)
          worst = std::max(worst, norm(unph[i] - gg));
        worst_lemma2 = std::max(worst_lemma2, worst / scale);
        worst_closed = std::max(
            worst_closed, norm(gg - critical_residual(smp.zeta, fm, smp.m)) / scale);
      }
    }
    sink.body["samples"] = samples;
    sink.body["stdev"] = worst_stdev;
    if (which == "lemma1") {
      sink.body["max_residual"] = worst_stdev;
      sink.pass = worst_stdev < tol;
    } else {
      sink.body["max_residual"] = worst_lemma2;
      sink.body["closed_form_mismatch"] = worst_closed;
      sink.pass = worst_lemma2 < tol && worst_closed < 1e-12;
    }
  } else {  // eulerlagrange
    const int samples = cfg.get_int("samples", 1);
    const double step = cfg.get_double("step", 1e-5);
    const Deriv deriv = deriv_from(cfg, "central");
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const SpinorField xi =
          random_spinor_field(g, cfg.get_seed("seed", 7) + static_cast<std::uint64_t>(i), 1, 0.15);
      std::mt19937_64 rng(cfg.get_seed("seed", 7) + 1000u + static_cast<std::uint64_t>(i));
      std::uniform_real_distribution<double> u(0.1, 2.0);
      const ElasticModuli m{u(rng), u(rng), u(rng), u(rng)};
      const Field<Spinor> f = euler_lagrange_F(xi, m, deriv);
      const Field<Spinor> fd = fd_action_gradient(xi, m, step, deriv);
      double mism = 0.0, scale = 0.0;
      for (std::size_t j = 0; j < f.size(); ++j) {
        mism = std::max(mism, norm(f[j] - fd[j]));
        scale = std::max(scale, norm(f[j]));
      }
      worst = std::max(worst, mism / std::max(1.0, scale));
    }
    sink.body["samples"] = samples;
    sink.body["max_residual"] = worst;
    sink.body["stdev"] = nullptr;
    sink.pass = worst < 1e-4;
  }
  return sink.finish(cfg, "verify " + which, start);
}

// ---------------------------------------------------------------------------
// weyl

int cmd_weyl_check(const Config& cfg) {
  const auto start = std::chrono::steady_clock::now();
  cfg.require_known(with_global({"in", "branch", "p0", "p", "zeta"}));
  ReportSink sink;

  const std::string branch = cfg.get_str("branch", "both");
  std::vector<WeylSign> signs;
  if (branch == "plus") signs = {WeylSign::plus};
  else if (branch == "minus") signs = {WeylSign::minus};
  else if (branch == "both") signs = {WeylSign::plus, WeylSign::minus};
  else throw config_error("key 'branch' must be plus, minus or both");

  if (cfg.has("in")) {
    const SpinorField& xi = as_spinor(load_field(cfg.get_str("in")));
    if (!xi.grid.has_time) throw config_error("weyl check needs a spacetime field");
    const Deriv deriv = deriv_from(cfg, "spectral");
    for (WeylSign s : signs) {
      const Field<Spinor> r = weyl_residual(xi, s, deriv);
      double worst = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) worst = std::max(worst, norm(r[i]));
      sink.body["residual_max_" + to_string(s)] = worst;
    }
  } else {
    const auto pv = cfg.get_doubles("p");
    if (pv.size() != 3) throw config_error("key 'p': expected p1,p2,p3");
    const PlaneWave wave{zeta_from(cfg),
                         FourMomentum{cfg.get_double("p0"), Vec3{pv[0], pv[1], pv[2]}}};
    for (WeylSign s : signs)
      sink.body["residual_norm_" + to_string(s)] = norm(weyl_residual(wave, s));
  }
  return sink.finish(cfg, "weyl check", start);
}

int cmd_weyl_theorem2(const Config& cfg) {
  const auto start = std::chrono::steady_clock::now();
  cfg.require_known(
      with_global({"c_ax", "c_vec", "c_ten", "c_kin", "p0", "lattice_n", "extent"}));
  const ElasticModuli m = moduli_from(cfg);
  try {
    validate_purely_axial_normalized(m);
  } catch (const std::invalid_argument& e) {
    throw config_error(e.what());
  }
  Theorem2Report rep;
  try {
    rep = theorem2_crosscheck(cfg.get_double("p0"), m, cfg.get_int("lattice_n", 41),
                              cfg.get_double("extent", 2.0));
  } catch (const std::invalid_argument& e) {
    throw config_error(e.what());
  }

  ReportSink sink;
  sink.body["v1"] = rep.speeds.v1;
  sink.body["v2"] = rep.speeds.v2;
  sink.body["lattice_n"] = rep.lattice_n;
  sink.body["extent"] = rep.extent;
  sink.body["elastic_zeros"] = rep.elastic_zeros;
  sink.body["weyl_zeros"] = rep.weyl_zeros;
  sink.body["sets_equal"] = rep.sets_equal;
  sink.body["zeros_are_poles"] = rep.zeros_are_poles;
  sink.pass = rep.pass;
  return sink.finish(cfg, "weyl theorem2", start);
}

int cmd_weyl_theorem3(const Config& cfg) {
  const auto start = std::chrono::steady_clock::now();
  cfg.require_known(with_global({"c_ax", "c_vec", "c_ten", "c_kin", "p0", "grid_n", "grid_L",
                                 "nt", "mask_frac", "weyl_tol", "f_tol", "wave2_amp", "eta_in",
                                 "control"}));
  const ElasticModuli m = moduli_from(cfg);
  const bool control = cfg.get_bool("control", false);
  if (!control) {
    try {
      validate_purely_axial_normalized(m);
    } catch (const std::invalid_argument& e) {
      throw config_error(e.what());
    }
  }
  const double p0 = cfg.get_double("p0", 1.0);

  SpinorField eta;
  if (cfg.has("eta_in")) {
    eta = as_spinor(load_field(cfg.get_str("eta_in")));
    if (eta.grid.has_time) throw config_error("eta field must live on a spatial grid");
  } else {
    const GridSpec sp =
        grid_from(cfg, GridSpec::spatial({16, 16, 16}, {kTau, kTau, kTau}));
    if (sp.has_time) throw config_error("grid_n for theorem3 must be spatial (3 entries)");
    cplx amp2(0.25, 0.05);
    if (cfg.has("wave2_amp")) {
      const auto v = cfg.get_doubles("wave2_amp");
      if (v.size() != 2) throw config_error("key 'wave2_amp': expected re,im");
      amp2 = cplx(v[0], v[1]);
    }
    try {
      eta = weyl_superposition_eta(sp, p0, WeylSign::plus,
                                   {WeylWave{Vec3{0, 0, 1}, 1.0}, WeylWave{Vec3{1, 0, 0}, amp2}});
    } catch (const std::invalid_argument& e) {
      throw config_error(e.what());
    }
  }

  Theorem3Options opts;
  opts.nt = cfg.get_int("nt", 16);
  opts.mask_fraction = cfg.get_double("mask_frac", 0.1);
  opts.weyl_tol = cfg.get_double("weyl_tol", 1e-8);
  opts.f_tol = cfg.get_double("f_tol", 1e-5);
  opts.deriv = deriv_from(cfg, "spectral");
  const Theorem3Report rep = theorem3_check(StationaryField{p0, eta}, m, opts);

  ReportSink sink;
  sink.body["weyl_residual_max"] = rep.weyl_residual_max;
  sink.body["weyl_solves"] = rep.weyl_solves;
  sink.body["f_max_masked"] = rep.f_max_masked;
  sink.body["f_max_full"] = rep.f_max_full;
  sink.body["rho_min"] = rep.rho_min;
  sink.body["rho_max"] = rep.rho_max;
  sink.body["mask_points"] = rep.mask_points;
  sink.body["total_points"] = rep.total_points;
  sink.pass = rep.weyl_solves && rep.pass;
  return sink.finish(cfg, "weyl theorem3", start);
}

// ---------------------------------------------------------------------------
// sweep speeds

int cmd_sweep_speeds(const Config& cfg) {
  const auto start = std::chrono::steady_clock::now();
  cfg.require_known(with_global({"ax_range", "vec_range", "ten_range", "kin_range", "out"}));

  const auto parse_range = [&](const std::string& key,
                               double dflt) -> std::vector<double> {
    if (!cfg.has(key)) return {dflt};
    const std::string v = cfg.get_str(key);
    double a = 0, b = 0;
    int n = 0;
    if (std::sscanf(v.c_str(), "%lf:%lf:%d", &a, &b, &n) != 3 || n < 1)
      throw config_error("key '" + key + "': expected start:stop:count");
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
      out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return out;
  };

  const auto ax = parse_range("ax_range", 1.0);
  const auto vec = parse_range("vec_range", 1.0);
  const auto ten = parse_range("ten_range", 1.0);
  const auto kin = parse_range("kin_range", 1.0);

  json rows = json::array();
  for (double a : ax)
    for (double v : vec)
      for (double t : ten)
        for (double k : kin) {
          ElasticModuli m{a, v, t, k};
          json row;
          row["c_ax"] = a;
          row["c_vec"] = v;
          row["c_ten"] = t;
          row["c_kin"] = k;
          try {
            m.validate();
            const WaveSpeeds s = wave_speeds(m);
            row["v1"] = s.v1;
            row["v2"] = s.v2;
            row["near_degenerate_warning"] = s.near_degenerate_warning;
          } catch (const std::invalid_argument&) {
            row["v1"] = nullptr;
            row["v2"] = nullptr;
          }
          rows.push_back(row);
        }

  if (cfg.has("out")) {
    std::ofstream os(cfg.get_str("out"));
    if (!os) throw config_error("cannot open output file");
    os << rows.dump(2) << "\n";
  }
  ReportSink sink;
  sink.body["rows"] = rows;
  return sink.finish(cfg, "sweep speeds", start);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotational elasticity toolkit"};
  app.require_subcommand(1);

  Config cfg;
  std::string config_path;

  // options shared by every subcommand, stored as config overrides
  std::map<std::string, std::string> overrides;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key = value configuration file");
    sub->add_option("--threads", "worker thread cap")
        ->each([&](const std::string& v) { overrides["threads"] = v; });
    sub->add_option("--report", "write the JSON report here as well")
        ->each([&](const std::string& v) { overrides["report"] = v; });
    sub->add_option("--deriv", "derivative scheme: central | spectral | exact")
        ->each([&](const std::string& v) { overrides["deriv"] = v; });
  };
  const auto opt = [&](CLI::App* sub, const std::string& flag, const std::string& key,
                       const std::string& help) {
    sub->add_option(flag, help)->each([&overrides, key](const std::string& v) {
      overrides[key] = v;
    });
  };
  const auto add_moduli = [&](CLI::App* sub) {
    opt(sub, "--c-ax", "c_ax", "axial modulus");
    opt(sub, "--c-vec", "c_vec", "vector modulus");
    opt(sub, "--c-ten", "c_ten", "tensor modulus");
    opt(sub, "--c-kin", "c_kin", "kinetic modulus");
  };

  // convert
  auto* convert = app.add_subcommand("convert", "spinor <-> (coframe, density) on field files");
  add_common(convert);
  opt(convert, "--to", "to", "target representation: coframe | spinor");
  opt(convert, "--in", "in", "input field file");
  opt(convert, "--in2", "in2", "density field (coframe -> spinor direction)");
  opt(convert, "--out", "out", "output field file");
  opt(convert, "--out2", "out2", "density output (spinor -> coframe direction)");

  // decompose
  auto* decompose = app.add_subcommand("decompose", "split a rank-2 field into irreducible parts");
  add_common(decompose);
  opt(decompose, "--in", "in", "rank-2 field file");
  opt(decompose, "--out-axial", "out_axial", "axial part output");
  opt(decompose, "--out-vector", "out_vector", "vector part output");
  opt(decompose, "--out-tensor", "out_tensor", "tensor part output");

  // energy / lagrangian
  auto* energy = app.add_subcommand("energy", "kinetic and potential energy of a field");
  add_common(energy);
  add_moduli(energy);
  opt(energy, "--in", "in", "spinor or coframe field file");
  opt(energy, "--in2", "in2", "density field (with a coframe input)");

  auto* lagr = app.add_subcommand("lagrangian", "lagrangian density and action of a field");
  add_common(lagr);
  add_moduli(lagr);
  opt(lagr, "--in", "in", "spinor or coframe field file");
  opt(lagr, "--in2", "in2", "density field (with a coframe input)");
  opt(lagr, "--out", "out", "write the lagrangian density field here");

  // planewave
  auto* planewave = app.add_subcommand("planewave", "closed-form plane wave machinery");
  planewave->require_subcommand(1);
  auto* pw_solve = planewave->add_subcommand("solve", "emit the solution families");
  add_common(pw_solve);
  add_moduli(pw_solve);
  opt(pw_solve, "--p0", "p0", "wave frequency (nonzero)");
  opt(pw_solve, "--zeta", "zeta", "constant spinor re1,im1,re2,im2");
  opt(pw_solve, "--samples", "samples", "sampled momenta per continuous family");
  auto* pw_check = planewave->add_subcommand("check", "verify a user-supplied (zeta, p)");
  add_common(pw_check);
  add_moduli(pw_check);
  opt(pw_check, "--p0", "p0", "wave frequency");
  opt(pw_check, "--p", "p", "wave vector p1,p2,p3");
  opt(pw_check, "--zeta", "zeta", "constant spinor re1,im1,re2,im2");
  opt(pw_check, "--tol", "tol", "solution threshold (scale-relative)");

  // verify
  auto* verify = app.add_subcommand("verify", "numerical verification suites");
  verify->require_subcommand(1);
  for (const std::string which : {"lemma1", "lemma2", "eulerlagrange"}) {
    auto* sub = verify->add_subcommand(which, "verify " + which);
    add_common(sub);
    opt(sub, "--samples", "samples", "number of random samples");
    opt(sub, "--seed", "seed", "RNG seed");
    opt(sub, "--grid-n", "grid_n", "grid points per axis, comma separated");
    opt(sub, "--grid-L", "grid_L", "box lengths per axis, comma separated");
    if (which == "eulerlagrange") opt(sub, "--step", "step", "finite-difference step");
  }

  // weyl
  auto* weyl = app.add_subcommand("weyl", "massless Dirac cross-checks");
  weyl->require_subcommand(1);
  auto* w_check = weyl->add_subcommand("check", "apply the Weyl operator");
  add_common(w_check);
  opt(w_check, "--in", "in", "spacetime spinor field file");
  opt(w_check, "--branch", "branch", "plus | minus | both");
  opt(w_check, "--p0", "p0", "plane-wave frequency (analytic mode)");
  opt(w_check, "--p", "p", "plane-wave vector p1,p2,p3 (analytic mode)");
  opt(w_check, "--zeta", "zeta", "constant spinor (analytic mode)");
  auto* w_t2 = weyl->add_subcommand("theorem2", "plane-wave zero-set sweep");
  add_common(w_t2);
  add_moduli(w_t2);
  opt(w_t2, "--p0", "p0", "wave frequency");
  opt(w_t2, "--lattice-n", "lattice_n", "sweep lattice points per axis (odd)");
  opt(w_t2, "--extent", "extent", "sweep extent in units of |p0|");
  auto* w_t3 = weyl->add_subcommand("theorem3", "stationary superposition check");
  add_common(w_t3);
  add_moduli(w_t3);
  opt(w_t3, "--p0", "p0", "stationary frequency");
  opt(w_t3, "--grid-n", "grid_n", "spatial grid points (3 entries)");
  opt(w_t3, "--grid-L", "grid_L", "spatial box lengths");
  opt(w_t3, "--nt", "nt", "time slices");
  opt(w_t3, "--mask-frac", "mask_frac", "density mask fraction");
  opt(w_t3, "--eta-in", "eta_in", "stationary profile field file");
  opt(w_t3, "--control", "control", "allow non-axial moduli (negative control)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "parameter sweeps");
  sweep->require_subcommand(1);
  auto* sw_speeds = sweep->add_subcommand("speeds", "wave speeds over moduli ranges");
  add_common(sw_speeds);
  opt(sw_speeds, "--ax-range", "ax_range", "c_ax range start:stop:count");
  opt(sw_speeds, "--vec-range", "vec_range", "c_vec range start:stop:count");
  opt(sw_speeds, "--ten-range", "ten_range", "c_ten range start:stop:count");
  opt(sw_speeds, "--kin-range", "kin_range", "c_kin range start:stop:count");
  opt(sw_speeds, "--out", "out", "write the sweep table here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) cfg.load_file(config_path);
    for (const auto& [key, value] : overrides) cfg.set(key, value);

    if (cfg.has("threads")) set_thread_count(cfg.get_int("threads", 0));

    if (convert->parsed()) return cmd_convert(cfg);
    if (decompose->parsed()) return cmd_decompose(cfg);
    if (energy->parsed()) return cmd_energy(cfg, false);
    if (lagr->parsed()) return cmd_energy(cfg, true);
    if (pw_solve->parsed()) return cmd_planewave_solve(cfg);
    if (pw_check->parsed()) return cmd_planewave_check(cfg);
    if (verify->parsed()) {
      for (auto* sub : verify->get_subcommands())
        return cmd_verify(cfg, sub->get_name());
    }
    if (w_check->parsed()) return cmd_weyl_check(cfg);
    if (w_t2->parsed()) return cmd_weyl_theorem2(cfg);
    if (w_t3->parsed()) return cmd_weyl_theorem3(cfg);
    if (sw_speeds->parsed()) return cmd_sweep_speeds(cfg);
    std::cerr << "no command selected\n";
    return 2;
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const field_io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
