#include "levymult/jump_sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace levymult {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// JumpModel

void JumpModel::validate() const {
  if (n < 1 || n > 2) throw std::invalid_argument("JumpModel: n must be 1 or 2");
  if (atoms.empty()) throw std::invalid_argument("JumpModel: no atoms");
  for (const JumpAtom& a : atoms) {
    if (static_cast<int>(a.z.size()) != n)
      throw std::invalid_argument("JumpModel: atom dimension mismatch");
    if (!(a.rate > 0.0)) throw std::invalid_argument("JumpModel: rates must be positive");
    double q = 0.0;
    for (double v : a.z) q += v * v;
    if (q == 0.0) throw std::invalid_argument("JumpModel: atom at the origin");
    // Mirror atom with equal rate must exist.
    bool found = false;
    for (const JumpAtom& b : atoms) {
      bool mirror = true;
      for (int i = 0; i < n; ++i)
        if (std::fabs(a.z[i] + b.z[i]) > 1e-12) mirror = false;
      if (mirror && std::fabs(a.rate - b.rate) <= 1e-12 * a.rate) {
        found = true;
        break;
      }
    }
    if (!found)
      throw std::invalid_argument("JumpModel: measure is not symmetric");
  }
}

double JumpModel::total_rate() const {
  double s = 0.0;
  for (const JumpAtom& a : atoms) s += a.rate;
  return s;
}

double JumpModel::exponent(const double* xi) const {
  double s = 0.0;
  for (const JumpAtom& a : atoms) {
    double d = 0.0;
    for (int i = 0; i < n; ++i) d += xi[i] * a.z[i];
    s += a.rate * (std::cos(d) - 1.0);
  }
  return s;
}

cplx JumpModel::limiting_symbol(const double* xi,
                                const AngularModulator& phi) const {
  const double rho = exponent(xi);
  if (rho == 0.0)
    throw std::invalid_argument("limiting_symbol: exponent vanishes at xi");
  cplx num(0.0, 0.0);
  for (const JumpAtom& a : atoms) {
    double d = 0.0, q = 0.0;
    for (int i = 0; i < n; ++i) {
      d += xi[i] * a.z[i];
      q += a.z[i] * a.z[i];
    }
    double dir[2];
    const double nn = std::sqrt(q);
    for (int i = 0; i < n; ++i) dir[i] = a.z[i] / nn;
    num += a.rate * (std::cos(d) - 1.0) * phi(dir, n);
  }
  return num / rho;
}

json JumpModel::to_json() const {
  json atoms_j = json::array();
  for (const JumpAtom& a : atoms)
    atoms_j.push_back(json{{"z", a.z}, {"rate", a.rate}});
  return json{{"n", n}, {"atoms", atoms_j}};
}

JumpModel JumpModel::from_json(const json& j) {
  JumpModel m;
  m.n = j.at("n").get<int>();
  for (const auto& a : j.at("atoms")) {
    JumpAtom atom;
    atom.z = a.at("z").get<std::vector<double>>();
    atom.rate = a.at("rate").get<double>();
    m.atoms.push_back(std::move(atom));
  }
  m.validate();
  return m;
}

// ---------------------------------------------------------------------------
// Path simulation

namespace {

double wrap(double x, double L) {
  x = std::fmod(x, L);
  return x < 0.0 ? x + L : x;
}

}  // namespace

std::vector<PathRecord> simulate_paths(const JumpModel& model, double T,
                                       int count, std::uint64_t seed,
                                       const std::vector<double>& box) {
  model.validate();
  if (!(T > 0.0) || count < 1)
    throw std::invalid_argument("simulate_paths: need T > 0, count >= 1");
  if (static_cast<int>(box.size()) != model.n)
    throw std::invalid_argument("simulate_paths: box dimension mismatch");

  const double lambda = model.total_rate();
  std::vector<double> cum(model.atoms.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < model.atoms.size(); ++j) {
    acc += model.atoms[j].rate;
    cum[j] = acc;
  }

  std::vector<PathRecord> paths(count);
  for (int p = 0; p < count; ++p) {
    std::seed_seq sseq{static_cast<std::uint64_t>(seed),
                       static_cast<std::uint64_t>(p)};
    std::mt19937_64 rng(sseq);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::exponential_distribution<double> expo(lambda);

    PathRecord& rec = paths[p];
    double x[2] = {0.0, 0.0};
    for (int i = 0; i < model.n; ++i) {
      x[i] = unif(rng) * box[i];
      rec.x0[i] = x[i];
    }
    double t = expo(rng);
    while (t <= T) {
      const double u = unif(rng) * lambda;
      const int j = static_cast<int>(
          std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
      const int jj = std::min<int>(j, static_cast<int>(cum.size()) - 1);
      rec.times.push_back(t);
      rec.atom_idx.push_back(jj);
      for (int i = 0; i < model.n; ++i)
        x[i] = wrap(x[i] + model.atoms[jj].z[i], box[i]);
      t += expo(rng);
    }
    for (int i = 0; i < model.n; ++i) rec.xT[i] = x[i];
  }
  return paths;
}

// ---------------------------------------------------------------------------
// Semigroup and trig interpolation

GridField semigroup_field(const GridField& f, double t, const JumpModel& model) {
  if (model.n != f.spec.n)
    throw std::invalid_argument("semigroup_field: dimension mismatch");
  if (t < 0.0) throw std::invalid_argument("semigroup_field: t must be >= 0");
  std::vector<cplx> coeffs = fft_forward(f);
  double xi[3];
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    f.spec.frequency(j, xi);
    coeffs[j] *= std::exp(t * model.exponent(xi));
  }
  return fft_inverse(f.spec, coeffs);
}

SparseModes sparse_modes(const GridField& f, const JumpModel& model,
                         double threshold) {
  if (model.n != f.spec.n)
    throw std::invalid_argument("sparse_modes: dimension mismatch");
  SparseModes sm;
  sm.spec = f.spec;
  std::vector<cplx> coeffs = fft_forward(f);
  double top = 0.0;
  for (const cplx& c : coeffs) top = std::max(top, std::abs(c));
  double xi[3];
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (std::abs(coeffs[j]) <= threshold * top) continue;
    f.spec.frequency(j, xi);
    std::array<double, 2> fr{};
    for (int i = 0; i < f.spec.n; ++i) fr[i] = xi[i];
    sm.freqs.push_back(fr);
    sm.coeffs.push_back(coeffs[j]);
    sm.rho.push_back(model.exponent(xi));
  }
  return sm;
}

cplx SparseModes::value(const double* x, double t) const {
  cplx s(0.0, 0.0);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    double phase = 0.0;
    for (int i = 0; i < spec.n; ++i) phase += freqs[j][i] * x[i];
    s += coeffs[j] * std::exp(t * rho[j]) * cplx(std::cos(phase), std::sin(phase));
  }
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
    throw std::runtime_error("SparseModes: non-finite interpolated value");
  return s;
}

// ---------------------------------------------------------------------------
// Pathwise transform

namespace {

void atom_direction(const JumpAtom& a, int n, double* dir) {
  double q = 0.0;
  for (int i = 0; i < n; ++i) q += a.z[i] * a.z[i];
  const double nn = std::sqrt(q);
  for (int i = 0; i < n; ++i) dir[i] = a.z[i] / nn;
}

}  // namespace

cplx transform_terminal_value(const PathRecord& path, const SparseModes& V,
                              const AngularModulator& phi,
                              const JumpModel& model, double T, int substeps) {
  if (substeps < 2)
    throw std::invalid_argument("transform_terminal_value: substeps must be >= 2");
  const int n = model.n;

  // Pre-evaluate phi at each atom direction.
  std::vector<cplx> phis(model.atoms.size());
  for (std::size_t j = 0; j < model.atoms.size(); ++j) {
    double dir[2];
    atom_direction(model.atoms[j], n, dir);
    phis[j] = phi(dir, n);
  }

  auto drift = [&](const double* x, double s) {
    // sum_j rate_j [V(x+z_j, T-s) - V(x, T-s)] phi_j
    const cplx base = V.value(x, T - s);
    cplx g(0.0, 0.0);
    for (std::size_t j = 0; j < model.atoms.size(); ++j) {
      double y[2];
      for (int i = 0; i < n; ++i) y[i] = x[i] + model.atoms[j].z[i];
      g += model.atoms[j].rate * (V.value(y, T - s) - base) * phis[j];
    }
    return g;
  };

  cplx total(0.0, 0.0);
  double x[2] = {path.x0[0], path.x0[1]};
  double seg_start = 0.0;
  const std::size_t J = path.times.size();
  for (std::size_t i = 0; i <= J; ++i) {
    const double seg_end = (i < J) ? path.times[i] : T;
    // Compensator over [seg_start, seg_end] with the position held at x.
    if (seg_end > seg_start) {
      const double h = (seg_end - seg_start) / substeps;
      cplx integral = 0.5 * (drift(x, seg_start) + drift(x, seg_end));
      for (int q = 1; q < substeps; ++q)
        integral += drift(x, seg_start + q * h);
      total -= integral * h;
    }
    if (i < J) {
      const int j = path.atom_idx[i];
      double y[2];
      for (int d = 0; d < n; ++d) y[d] = x[d] + model.atoms[j].z[d];
      const double s = path.times[i];
      total += (V.value(y, T - s) - V.value(x, T - s)) * phis[j];
      for (int d = 0; d < n; ++d) x[d] = y[d];
      seg_start = s;
    }
  }
  return total;
}

void quadratic_variations(const PathRecord& path, const SparseModes& V,
                          const AngularModulator& phi, const JumpModel& model,
                          double T, double& base_qv, double& transform_qv) {
  base_qv = transform_qv = 0.0;
  const int n = model.n;
  double x[2] = {path.x0[0], path.x0[1]};
  for (std::size_t i = 0; i < path.times.size(); ++i) {
    const int j = path.atom_idx[i];
    double dir[2], y[2];
    atom_direction(model.atoms[j], n, dir);
    for (int d = 0; d < n; ++d) y[d] = x[d] + model.atoms[j].z[d];
    const double s = path.times[i];
    const cplx dv = V.value(y, T - s) - V.value(x, T - s);
    base_qv += std::norm(dv);
    transform_qv += std::norm(dv * phi(dir, n));
    for (int d = 0; d < n; ++d) x[d] = y[d];
  }
}

ProjectionEstimate project_conditional(const std::vector<PathRecord>& paths,
                                       const std::vector<cplx>& values,
                                       const GridSpec& spec, int min_per_bin) {
  if (paths.size() != values.size())
    throw std::invalid_argument("project_conditional: size mismatch");
  if (paths.empty()) throw std::invalid_argument("project_conditional: no paths");
  spec.validate();

  const std::size_t cells = spec.total();
  std::vector<cplx> sum(cells, cplx(0.0, 0.0));
  std::vector<double> sum_re2(cells, 0.0), sum_im2(cells, 0.0);
  std::vector<int> counts(cells, 0);

  for (std::size_t p = 0; p < paths.size(); ++p) {
    std::size_t flat = 0;
    for (int i = 0; i < spec.n; ++i) {
      int idx = static_cast<int>(std::floor(paths[p].xT[i] / spec.box[i] *
                                            spec.shape[i]));
      idx = std::clamp(idx, 0, spec.shape[i] - 1);
      flat = flat * spec.shape[i] + static_cast<std::size_t>(idx);
    }
    sum[flat] += values[p];
    sum_re2[flat] += values[p].real() * values[p].real();
    sum_im2[flat] += values[p].imag() * values[p].imag();
    ++counts[flat];
  }

  ProjectionEstimate est;
  est.min_per_bin = min_per_bin;
  est.mean.spec = spec;
  est.mean.samples.assign(cells, cplx(0.0, 0.0));
  est.counts = counts;
  est.se_re.assign(cells, 0.0);
  est.se_im.assign(cells, 0.0);
  est.usable.assign(cells, 0);

  bool any_usable = false;
  for (std::size_t c = 0; c < cells; ++c) {
    if (counts[c] == 0) continue;
    const double inv = 1.0 / counts[c];
    const cplx mean = sum[c] * inv;
    est.mean.samples[c] = mean;
    if (counts[c] >= 2) {
      const double var_re = std::max(
          0.0, (sum_re2[c] - counts[c] * mean.real() * mean.real()) /
                   (counts[c] - 1));
      const double var_im = std::max(
          0.0, (sum_im2[c] - counts[c] * mean.imag() * mean.imag()) /
                   (counts[c] - 1));
      est.se_re[c] = std::sqrt(var_re * inv);
      est.se_im[c] = std::sqrt(var_im * inv);
    }
    if (counts[c] >= min_per_bin) {
      est.usable[c] = 1;
      any_usable = true;
    }
  }
  if (!any_usable)
    throw std::runtime_error("project_conditional: all cells below min_per_bin");
  return est;
}

void ProjectionEstimate::coefficient(std::size_t flat, cplx& value,
                                     double& se) const {
  const GridSpec& spec = mean.spec;
  double xi[3];
  spec.frequency(flat, xi);
  const std::size_t cells = spec.total();
  cplx acc(0.0, 0.0);
  double var = 0.0;
  for (std::size_t c = 0; c < cells; ++c) {
    // Cell-center coordinates.
    std::size_t rem = c;
    double phase = 0.0;
    for (int i = spec.n - 1; i >= 0; --i) {
      const int k = static_cast<int>(rem % spec.shape[i]);
      rem /= spec.shape[i];
      phase += xi[i] * (k + 0.5) * spec.box[i] / spec.shape[i];
    }
    const cplx w(std::cos(phase), -std::sin(phase));
    acc += mean.samples[c] * w;
    var += se_re[c] * se_re[c] + se_im[c] * se_im[c];
  }
  const double inv = 1.0 / static_cast<double>(cells);
  value = acc * inv;
  se = std::sqrt(var) * inv;
}

}  // namespace levymult
