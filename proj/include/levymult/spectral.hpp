#pragma once

// Periodic grid fields, FFT application of multiplier symbols, and bound
// probing (operator-norm lower bounds, L^p ratio reports, weak-(1,1) sweeps).

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "levymult/symbols.hpp"

namespace levymult {

struct GridSpec {
  int n = 2;                       // 2 or 3 for field operations
  std::vector<int> shape;          // per-axis counts, even, >= 8
  std::vector<double> box;         // per-axis lengths, positive

  void validate() const;
  std::size_t total() const;
  double cell_volume() const;
  double box_volume() const;
  // Signed wrapped index: k -> k for k < shape/2, else k - shape.
  int wrapped(int axis, int k) const;
  // xi_i = 2*pi*ktilde/L_i for flat row-major index `flat`; out has n entries.
  void frequency(std::size_t flat, double* out) const;
  bool operator==(const GridSpec&) const = default;
};

struct GridField {
  GridSpec spec;
  std::vector<cplx> samples;  // row-major, size spec.total()

  void validate() const;
};

// Forward transform scales by 1/N so that coefficients are Fourier-series
// amplitudes; inverse is unscaled.  Round trip is identity up to rounding.
std::vector<cplx> fft_forward(const GridField& f);
GridField fft_inverse(const GridSpec& spec, const std::vector<cplx>& coeffs);

// Symbol values tabulated on the grid's frequency lattice (DC from m.dc).
struct MultiplierGrid {
  GridSpec spec;
  std::vector<cplx> values;
  double max_abs_off_dc = 0.0;
};
MultiplierGrid make_multiplier_grid(const SymbolDescriptor& m,
                                    const GridSpec& spec, int level);

GridField apply_multiplier(const GridField& f, const MultiplierGrid& m);
GridField apply_multiplier(const GridField& f, const SymbolDescriptor& m,
                           int level);

// (sum |f_i|^p cellvol)^{1/p}; p = infinity -> max.  Throws for p < 1.
double lp_norm(const GridField& f, double p);

// max_{lattice xi != 0} |m(xi)|; equals the exact discrete L2 operator norm.
double l2_operator_norm(const SymbolDescriptor& m, const GridSpec& spec,
                        int level);

enum class BoundKind { ThmMain, ThmSecond, Conjecture, DpvRiesz };

struct BoundReport {
  double p = 2.0, p_star = 2.0, r = 0.0;
  int n = 2;
  double observed_ratio = 0.0;
  double bound_factor = 0.0;
  BoundKind kind = BoundKind::Conjecture;
  bool pass = false;
  bool modulo_constant = false;  // verdicts with C_n set to 1
  std::uint64_t seed = 0;
  nlohmann::json to_json() const;
};

double p_star(double p);

// observed_ratio = max_f ||T_m f||_p / ||f||_p over the ensemble (fields with
// ||f||_p < 1e-12 skipped).  bound_factor:
//   Conjecture: p*-1; ThmMain: (p*-1)^{6n} Gamma((r+n)/2)/Gamma((r+1)/2);
//   ThmSecond: max{r^{n0},1}(p*-1), n0 = floor(n/2)+1; DpvRiesz: k^{1-2/p*} p*.
// ThmMain/ThmSecond/DpvRiesz verdicts set the unknown dimensional constant
// to 1 and mark modulo_constant.
BoundReport estimate_lp_ratio(const SymbolDescriptor& m, double p,
                              const std::vector<GridField>& ensemble,
                              BoundKind kind, int level);

// max over a log lambda-sweep (levels points spanning [1e-3,1e3]*||Tf||_inf)
// of lambda * |{ |T_m f| > lambda }| / ||f||_1.
double weak_l1_ratio(const SymbolDescriptor& m, const GridField& f, int levels,
                     int level);

// || T_{m_r, second-harmonic} f - (r/(r+2)) T_Beurling f ||_2 / ||f||_2, n=2.
double beurling_identity_error(double r, const GridField& f, int level);

// Deterministic probing mix: Gaussian bumps at 5 widths, anisotropic bumps,
// seeded band-limited fields, and truncated power fields |z|^{-2/p} that are
// near-extremal for the Beurling transform.
std::vector<GridField> standard_ensemble(const GridSpec& spec,
                                         int band_limited_count,
                                         std::uint64_t seed, double p);

// GF01 file format: ASCII header `GF01 n=<n> shape=<s1,s2[,s3]>
// box=<L1,L2[,L3]>` + newline, then little-endian 8-byte doubles interleaved
// (re, im) in row-major order.
struct GF01Error : std::runtime_error {
  std::size_t byte_offset;
  GF01Error(const std::string& what, std::size_t off)
      : std::runtime_error(what + " (byte " + std::to_string(off) + ")"),
        byte_offset(off) {}
};
void write_gf01(const std::string& path, const GridField& f);
GridField read_gf01(const std::string& path);

}  // namespace levymult
