#include "levymult/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include <fftw3.h>
#include <nlohmann/json.hpp>

namespace levymult {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// GridSpec / GridField

void GridSpec::validate() const {
  if (n < 1 || n > 3) throw std::invalid_argument("GridSpec: n must be 1..3");
  if (static_cast<int>(shape.size()) != n ||
      static_cast<int>(box.size()) != n)
    throw std::invalid_argument("GridSpec: shape/box size must equal n");
  for (int s : shape)
    if (s < 8 || s % 2 != 0)
      throw std::invalid_argument("GridSpec: counts must be even and >= 8");
  for (double L : box)
    if (!(L > 0.0)) throw std::invalid_argument("GridSpec: box lengths must be positive");
}

std::size_t GridSpec::total() const {
  std::size_t t = 1;
  for (int s : shape) t *= static_cast<std::size_t>(s);
  return t;
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (int i = 0; i < n; ++i) v *= box[i] / shape[i];
  return v;
}

double GridSpec::box_volume() const {
  double v = 1.0;
  for (double L : box) v *= L;
  return v;
}

int GridSpec::wrapped(int axis, int k) const {
  return k < shape[axis] / 2 ? k : k - shape[axis];
}

void GridSpec::frequency(std::size_t flat, double* out) const {
  for (int i = n - 1; i >= 0; --i) {
    const int k = static_cast<int>(flat % shape[i]);
    flat /= shape[i];
    out[i] = 2.0 * M_PI * wrapped(i, k) / box[i];
  }
}

void GridField::validate() const {
  spec.validate();
  if (samples.size() != spec.total())
    throw std::invalid_argument("GridField: sample count mismatch");
  for (const cplx& z : samples)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("GridField: non-finite sample");
}

// ---------------------------------------------------------------------------
// FFT

namespace {

void run_fft(const GridSpec& spec, const std::vector<cplx>& in,
             std::vector<cplx>& out, int sign) {
  out = in;
  auto* data = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan = nullptr;
  if (spec.n == 1)
    plan = fftw_plan_dft_1d(spec.shape[0], data, data, sign, FFTW_ESTIMATE);
  else if (spec.n == 2)
    plan = fftw_plan_dft_2d(spec.shape[0], spec.shape[1], data, data, sign,
                            FFTW_ESTIMATE);
  else
    plan = fftw_plan_dft_3d(spec.shape[0], spec.shape[1], spec.shape[2], data,
                            data, sign, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

}  // namespace

std::vector<cplx> fft_forward(const GridField& f) {
  f.validate();
  std::vector<cplx> coeffs;
  run_fft(f.spec, f.samples, coeffs, FFTW_FORWARD);
  const double inv_n = 1.0 / static_cast<double>(f.spec.total());
  for (cplx& z : coeffs) z *= inv_n;
  return coeffs;
}

GridField fft_inverse(const GridSpec& spec, const std::vector<cplx>& coeffs) {
  if (coeffs.size() != spec.total())
    throw std::invalid_argument("fft_inverse: coefficient count mismatch");
  GridField f;
  f.spec = spec;
  run_fft(spec, coeffs, f.samples, FFTW_BACKWARD);
  return f;
}

// ---------------------------------------------------------------------------
// Multiplier application

MultiplierGrid make_multiplier_grid(const SymbolDescriptor& m,
                                    const GridSpec& spec, int level) {
  spec.validate();
  if (m.n != spec.n)
    throw std::invalid_argument("make_multiplier_grid: dimension mismatch");
  MultiplierGrid grid;
  grid.spec = spec;
  grid.values.resize(spec.total());
  const bool needs_rule = (m.family == SymbolFamily::Stable ||
                           m.family == SymbolFamily::Mixed ||
                           m.family == SymbolFamily::GeneralL ||
                           m.family == SymbolFamily::LevyGauss);
  QuadratureRule rule;
  if (needs_rule) rule = sphere_quadrature(spec.n, level);
  double xi[3];
  for (std::size_t j = 0; j < grid.values.size(); ++j) {
    spec.frequency(j, xi);
    bool dc = true;
    for (int i = 0; i < spec.n; ++i) dc = dc && xi[i] == 0.0;
    const cplx v = dc ? m.dc : m.eval(xi, rule);
    grid.values[j] = v;
    if (!dc) grid.max_abs_off_dc = std::max(grid.max_abs_off_dc, std::abs(v));
  }
  return grid;
}

GridField apply_multiplier(const GridField& f, const MultiplierGrid& m) {
  if (!(f.spec == m.spec))
    throw std::invalid_argument("apply_multiplier: grid mismatch");
  std::vector<cplx> coeffs = fft_forward(f);
  for (std::size_t j = 0; j < coeffs.size(); ++j) coeffs[j] *= m.values[j];
  return fft_inverse(f.spec, coeffs);
}

GridField apply_multiplier(const GridField& f, const SymbolDescriptor& m,
                           int level) {
  return apply_multiplier(f, make_multiplier_grid(m, f.spec, level));
}

// ---------------------------------------------------------------------------
// Norms and reports

double lp_norm(const GridField& f, double p) {
  f.validate();
  if (std::isinf(p)) {
    double m = 0.0;
    for (const cplx& z : f.samples) m = std::max(m, std::abs(z));
    return m;
  }
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  double s = 0.0;
  for (const cplx& z : f.samples) s += std::pow(std::abs(z), p);
  return std::pow(s * f.spec.cell_volume(), 1.0 / p);
}

double l2_operator_norm(const SymbolDescriptor& m, const GridSpec& spec,
                        int level) {
  return make_multiplier_grid(m, spec, level).max_abs_off_dc;
}

double p_star(double p) {
  if (!(p > 1.0) || std::isinf(p))
    throw std::invalid_argument("p_star: p must be in (1, inf)");
  return std::max(p, p / (p - 1.0));
}

BoundReport estimate_lp_ratio(const SymbolDescriptor& m, double p,
                              const std::vector<GridField>& ensemble,
                              BoundKind kind, int level) {
  if (ensemble.empty())
    throw std::invalid_argument("estimate_lp_ratio: empty ensemble");
  BoundReport rep;
  rep.p = p;
  rep.p_star = p_star(p);
  rep.n = m.n;
  rep.r = m.r;
  rep.kind = kind;

  MultiplierGrid grid = make_multiplier_grid(m, ensemble.front().spec, level);
  for (const GridField& f : ensemble) {
    const double fn = lp_norm(f, p);
    if (fn < 1e-12) continue;
    rep.observed_ratio =
        std::max(rep.observed_ratio, lp_norm(apply_multiplier(f, grid), p) / fn);
  }

  const double ps1 = rep.p_star - 1.0;
  const int n0 = m.n / 2 + 1;
  switch (kind) {
    case BoundKind::Conjecture:
      rep.bound_factor = ps1;
      break;
    case BoundKind::ThmMain:
      rep.bound_factor = std::pow(ps1, 6.0 * m.n) * gamma_ratio(m.r, m.n);
      rep.modulo_constant = true;
      break;
    case BoundKind::ThmSecond:
      rep.bound_factor = std::max(std::pow(m.r, n0), 1.0) * ps1;
      rep.modulo_constant = true;
      break;
    case BoundKind::DpvRiesz:
      rep.bound_factor =
          std::pow(double(m.k), 1.0 - 2.0 / rep.p_star) * rep.p_star;
      rep.modulo_constant = true;
      break;
  }
  rep.pass = rep.observed_ratio <= rep.bound_factor;
  return rep;
}

json BoundReport::to_json() const {
  const char* kind_name = kind == BoundKind::ThmMain      ? "thm-main"
                          : kind == BoundKind::ThmSecond  ? "thm-second"
                          : kind == BoundKind::Conjecture ? "conjecture"
                                                          : "dpv-riesz";
  return json{{"p", p},
              {"p_star", p_star},
              {"r", r},
              {"n", n},
              {"observed_ratio", observed_ratio},
              {"bound_factor", bound_factor},
              {"bound_kind", kind_name},
              {"pass", pass},
              {"modulo_constant", modulo_constant},
              {"seed", seed}};
}

double weak_l1_ratio(const SymbolDescriptor& m, const GridField& f, int levels,
                     int level) {
  const double f1 = lp_norm(f, 1.0);
  if (!(f1 > 0.0)) throw std::invalid_argument("weak_l1_ratio: zero input");
  GridField tf = apply_multiplier(f, m, level);
  const double top = lp_norm(tf, std::numeric_limits<double>::infinity());
  if (top == 0.0) return 0.0;
  const double cellvol = f.spec.cell_volume();
  double best = 0.0;
  for (int i = 0; i < levels; ++i) {
    const double lambda =
        top * std::pow(10.0, -3.0 + 6.0 * i / std::max(1, levels - 1));
    std::size_t count = 0;
    for (const cplx& z : tf.samples)
      if (std::abs(z) > lambda) ++count;
    best = std::max(best, lambda * double(count) * cellvol / f1);
  }
  return best;
}

double beurling_identity_error(double r, const GridField& f, int level) {
  if (f.spec.n != 2)
    throw std::invalid_argument("beurling_identity_error: n must be 2");
  const double f2 = lp_norm(f, 2.0);
  if (f2 == 0.0) return 0.0;
  GridField lhs = apply_multiplier(
      f, SymbolDescriptor::stable(2, r, AngularModulator::second_harmonic()),
      level);
  GridField rhs = apply_multiplier(f, SymbolDescriptor::beurling(), level);
  const double scale = r / (r + 2.0);
  double s = 0.0;
  for (std::size_t j = 0; j < lhs.samples.size(); ++j)
    s += std::norm(lhs.samples[j] - scale * rhs.samples[j]);
  return std::sqrt(s * f.spec.cell_volume()) / f2;
}

// ---------------------------------------------------------------------------
// Probing ensemble

namespace {

GridField blank(const GridSpec& spec) {
  GridField f;
  f.spec = spec;
  f.samples.assign(spec.total(), cplx(0.0, 0.0));
  return f;
}

// Centered coordinates of a flat index, in [-L/2, L/2).
void centered_coords(const GridSpec& spec, std::size_t flat, double* out) {
  for (int i = spec.n - 1; i >= 0; --i) {
    const int k = static_cast<int>(flat % spec.shape[i]);
    flat /= spec.shape[i];
    out[i] = spec.box[i] * (double(k) / spec.shape[i] - 0.5);
  }
}

}  // namespace

std::vector<GridField> standard_ensemble(const GridSpec& spec,
                                         int band_limited_count,
                                         std::uint64_t seed, double p) {
  spec.validate();
  std::vector<GridField> out;
  const double minL = *std::min_element(spec.box.begin(), spec.box.end());
  double x[3];

  // Isotropic Gaussian bumps, 5 widths.
  for (double frac : {0.02, 0.05, 0.1, 0.2, 0.35}) {
    GridField f = blank(spec);
    const double w = frac * minL;
    for (std::size_t j = 0; j < f.samples.size(); ++j) {
      centered_coords(spec, j, x);
      double q = 0.0;
      for (int i = 0; i < spec.n; ++i) q += x[i] * x[i];
      f.samples[j] = std::exp(-q / (2.0 * w * w));
    }
    out.push_back(std::move(f));
  }

  // Anisotropic bumps: one axis 8x narrower.
  for (int axis = 0; axis < spec.n; ++axis) {
    GridField f = blank(spec);
    const double w = 0.1 * minL;
    for (std::size_t j = 0; j < f.samples.size(); ++j) {
      centered_coords(spec, j, x);
      double q = 0.0;
      for (int i = 0; i < spec.n; ++i) {
        const double wi = (i == axis) ? w / 8.0 : w;
        q += x[i] * x[i] / (wi * wi);
      }
      f.samples[j] = std::exp(-q / 2.0);
    }
    out.push_back(std::move(f));
  }

  // Seeded band-limited fields: random coefficients on |k| <= shape/8.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int b = 0; b < band_limited_count; ++b) {
    std::vector<cplx> coeffs(spec.total(), cplx(0.0, 0.0));
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      std::size_t flat = j;
      bool in_band = true;
      for (int i = spec.n - 1; i >= 0; --i) {
        const int k = static_cast<int>(flat % spec.shape[i]);
        flat /= spec.shape[i];
        if (std::abs(spec.wrapped(i, k)) > spec.shape[i] / 8) in_band = false;
      }
      if (in_band) coeffs[j] = cplx(gauss(rng), gauss(rng));
    }
    out.push_back(fft_inverse(spec, coeffs));
  }

  // Truncated power fields |x|^{-2/p} (near-extremal for the Beurling
  // transform), two truncation radii.
  const double expo = 2.0 / std::max(p, p / (p - 1.0));
  for (double rmin_frac : {0.01, 0.04}) {
    GridField f = blank(spec);
    const double rmin = rmin_frac * minL, rmax = 0.4 * minL;
    for (std::size_t j = 0; j < f.samples.size(); ++j) {
      centered_coords(spec, j, x);
      double q = 0.0;
      for (int i = 0; i < spec.n; ++i) q += x[i] * x[i];
      const double rad = std::sqrt(q);
      if (rad >= rmin && rad <= rmax)
        f.samples[j] = std::pow(rad, -expo);
    }
    out.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// GF01 I/O

void write_gf01(const std::string& path, const GridField& f) {
  f.validate();
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_gf01: cannot open " + path);
  os << "GF01 n=" << f.spec.n << " shape=";
  for (int i = 0; i < f.spec.n; ++i) os << (i ? "," : "") << f.spec.shape[i];
  os << " box=";
  for (int i = 0; i < f.spec.n; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", f.spec.box[i]);
    os << (i ? "," : "") << buf;
  }
  os << "\n";
  // Doubles are written natively; this targets little-endian hosts.
  for (const cplx& z : f.samples) {
    const double re = z.real(), im = z.imag();
    os.write(reinterpret_cast<const char*>(&re), 8);
    os.write(reinterpret_cast<const char*>(&im), 8);
  }
  if (!os) throw std::runtime_error("write_gf01: write failed for " + path);
}

namespace {

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

GridField read_gf01(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw GF01Error("cannot open " + path, 0);
  std::string header;
  if (!std::getline(is, header)) throw GF01Error("missing header line", 0);
  std::stringstream hs(header);
  std::string magic, tok;
  hs >> magic;
  if (magic != "GF01") throw GF01Error("bad magic, expected GF01", 0);

  GridSpec spec;
  bool have_n = false, have_shape = false, have_box = false;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw GF01Error("malformed header token '" + tok + "'", 0);
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    try {
      if (key == "n") {
        spec.n = std::stoi(val);
        have_n = true;
      } else if (key == "shape") {
        for (const std::string& v : split_commas(val))
          spec.shape.push_back(std::stoi(v));
        have_shape = true;
      } else if (key == "box") {
        for (const std::string& v : split_commas(val))
          spec.box.push_back(std::stod(v));
        have_box = true;
      } else {
        throw GF01Error("unknown header key '" + key + "'", 0);
      }
    } catch (const std::logic_error&) {
      throw GF01Error("unparsable header value '" + val + "'", 0);
    }
  }
  if (!have_n || !have_shape || !have_box)
    throw GF01Error("header missing n/shape/box", 0);
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw GF01Error(e.what(), 0);
  }

  const std::size_t data_start = header.size() + 1;
  GridField f;
  f.spec = spec;
  f.samples.resize(spec.total());
  for (std::size_t j = 0; j < f.samples.size(); ++j) {
    double re = 0.0, im = 0.0;
    is.read(reinterpret_cast<char*>(&re), 8);
    is.read(reinterpret_cast<char*>(&im), 8);
    if (!is)
      throw GF01Error("truncated sample data", data_start + 16 * j);
    if (!std::isfinite(re) || !std::isfinite(im))
      throw GF01Error("non-finite sample", data_start + 16 * j);
    f.samples[j] = cplx(re, im);
  }
  char extra;
  if (is.read(&extra, 1))
    throw GF01Error("trailing bytes after sample data",
                    data_start + 16 * f.samples.size());
  return f;
}

}  // namespace levymult
