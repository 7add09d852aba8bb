#pragma once

// Compound-Poisson martingale-transform simulator: finite symmetric jump
// models, semigroup smoothing, pathwise transforms with compensator, and the
// conditional-expectation projection compared against the limiting symbol.

#include <array>
#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "levymult/spectral.hpp"

namespace levymult {

struct JumpAtom {
  std::vector<double> z;  // nonzero, n entries
  double rate = 0.0;      // > 0
};

struct JumpModel {
  int n = 1;  // 1 or 2
  std::vector<JumpAtom> atoms;

  // Symmetry: for every atom (z, rate) the atom (-z, rate) must be present.
  void validate() const;
  double total_rate() const;
  // rho(xi) = sum_j rate_j (cos(xi.z_j) - 1), real and <= 0.
  double exponent(const double* xi) const;
  // m_nu(xi) = sum_j rate_j (cos(xi.z_j) - 1) phi(z_j/|z_j|) / rho(xi).
  cplx limiting_symbol(const double* xi, const AngularModulator& phi) const;

  nlohmann::json to_json() const;
  static JumpModel from_json(const nlohmann::json& j);
};

struct PathRecord {
  std::array<double, 2> x0{};  // first n entries used
  std::array<double, 2> xT{};  // wrapped into [0, L)
  std::vector<double> times;   // strictly increasing in (0, T]
  std::vector<int> atom_idx;   // parallel to times
};

// Exponential inter-arrivals at the total rate; atom choice proportional to
// rates; x0 uniform on the box.  Each path uses its own stream seeded by
// (seed, path index), so results are independent of evaluation order.
std::vector<PathRecord> simulate_paths(const JumpModel& model, double T,
                                       int count, std::uint64_t seed,
                                       const std::vector<double>& box);

// Multiply Fourier coefficients by e^{t rho(xi)} (coefficients never grow).
GridField semigroup_field(const GridField& f, double t, const JumpModel& model);

// Trigonometric interpolant of V_f(x, t): the Fourier modes of f with
// |coefficient| above threshold*max, each damped by e^{t rho(xi_k)}.
// Evaluating the mode sum at off-grid x is exact trig interpolation.
struct SparseModes {
  GridSpec spec;
  std::vector<std::array<double, 2>> freqs;
  std::vector<cplx> coeffs;
  std::vector<double> rho;  // exponent at each mode

  cplx value(const double* x, double t) const;
};
SparseModes sparse_modes(const GridField& f, const JumpModel& model,
                         double threshold = 1e-14);

// Sum over jumps of [V(x+z, T-s) - V(x, T-s)] phi(z/|z|) minus the
// compensated drift, the time integral trapezoidal with `substeps` uniform
// sub-intervals between consecutive jumps (and the end segments).
cplx transform_terminal_value(const PathRecord& path, const SparseModes& V,
                              const AngularModulator& phi,
                              const JumpModel& model, double T, int substeps);

// Jump-sum quadratic variations of the base martingale (phi == 1) and the
// transform: sums of |dV|^2 and |dV phi|^2 over the path's jumps.
void quadratic_variations(const PathRecord& path, const SparseModes& V,
                          const AngularModulator& phi, const JumpModel& model,
                          double T, double& base_qv, double& transform_qv);

struct ProjectionEstimate {
  GridField mean;                // binned conditional means
  std::vector<int> counts;       // per cell
  std::vector<double> se_re, se_im;
  std::vector<char> usable;      // count >= min_per_bin
  int min_per_bin = 1;

  // Fourier coefficient of the estimate at lattice frequency index `flat`,
  // with its propagated standard error.
  void coefficient(std::size_t flat, cplx& value, double& se) const;
};

// Bin terminal positions to grid cells; per-cell mean and standard error.
// Throws if every cell falls below min_per_bin.
ProjectionEstimate project_conditional(const std::vector<PathRecord>& paths,
                                       const std::vector<cplx>& values,
                                       const GridSpec& spec, int min_per_bin);

}  // namespace levymult
