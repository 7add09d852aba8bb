#pragma once

// Construction and pointwise evaluation of the multiplier families:
// power symbols m_r, mixed-exponent symbols, general radial-profile symbols,
// jump+Gaussian symbols, the Beurling-Ahlfors symbol, Riesz powers.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "levymult/numerics.hpp"

namespace levymult {

using cplx = std::complex<double>;

// Bounded angular weight phi on S^{n-1}, ||phi||_inf <= 1 (enforced at
// construction).  The second-harmonic modulator e^{s*2i*arg(theta)} carries
// an explicit sign s; s = -1 is the default that reproduces the
// Beurling-Ahlfors symbol conj(xi)/xi under the e^{-i xi.x} transform
// convention used by the grid operators.
class AngularModulator {
 public:
  AngularModulator() : kind_(Kind::Constant), constant_(1.0, 0.0) {}

  static AngularModulator constant(cplx c);
  static AngularModulator second_harmonic(int sign = -1);  // n=2 only
  static AngularModulator tabulated(const QuadratureRule& rule,
                                    std::vector<cplx> values);
  static AngularModulator custom(std::function<cplx(const double*, int)> f,
                                 const QuadratureRule& validation_rule);

  cplx operator()(const double* theta, int dim) const;
  // Fast path: tabulated-on-this-rule values are returned by node index.
  cplx at_node(const QuadratureRule& rule, std::size_t j) const;

  bool is_constant_one() const;
  nlohmann::json to_json() const;
  static AngularModulator from_json(const nlohmann::json& j);

 private:
  enum class Kind { Constant, SecondHarmonic, Tabulated, Custom };
  Kind kind_;
  cplx constant_{1.0, 0.0};
  int sign_ = -1;
  std::vector<cplx> table_;
  std::vector<double> table_nodes_;  // flat, dim from table_dim_
  int table_dim_ = 0;
  std::function<cplx(const double*, int)> fn_;
};

// Even radial function L(x) = int_0^inf (cos(r x) - 1) v(r) dr together with
// its derivative L'(x) = -int_0^inf r sin(r x) v(r) dr.
class RadialProfile {
 public:
  RadialProfile() = default;

  static RadialProfile closed_form(std::function<double(double)> L,
                                   std::function<double(double)> Lprime);

  double operator()(double x) const;
  double derivative(double x) const;
  bool has_derivative() const { return static_cast<bool>(lp_); }
  double tail_bound() const { return tail_bound_; }

 private:
  friend RadialProfile radial_profile_from_density(
      std::function<double(double)> v, double cutoff, int substeps);
  std::function<double(double)> l_;
  std::function<double(double)> lp_;
  double tail_bound_ = 0.0;
};

// Composite Gauss-Legendre over geometric panels refined toward 0 (first
// breakpoint 1e-6), with oscillation-aware subdivision in |x|; the neglected
// tail beyond `cutoff` is bounded by 2*int_cutoff^inf v and recorded.
// Throws std::invalid_argument if int_0^inf min{r^2,1} v(r) dr diverges
// numerically.
RadialProfile radial_profile_from_density(std::function<double(double)> v,
                                          double cutoff = 50.0,
                                          int substeps = 48);

// v(r) = r^{-1-alpha} * min{1, e^{-r} r^{(n+alpha-1)/2}}; a stand-in for the
// relativistic jump density, matching its exponential-envelope decay.
std::function<double(double)> synthetic_relativistic_density(double alpha,
                                                             int n);

// A_{n,r}: int_{S^{n-1}} |xi.theta|^r dsigma = A_{n,r} |xi|^r.
double normalization_constant(int n, double r);

cplx eval_stable_symbol(const double* xi, int n, double r,
                        const AngularModulator& phi, const QuadratureRule& rule);
cplx eval_mixed_symbol(const double* xi, int n, double r, double s, double C_r,
                       double C_s, const AngularModulator& phi,
                       const QuadratureRule& rule);
cplx eval_general_symbol(const double* xi, int n, const RadialProfile& L,
                         const AngularModulator& phi, const QuadratureRule& rule);

// A = sum_k mu_k psi(theta_k) theta_k theta_k^T,  B = same with psi == 1.
// Matrices are row-major n x n; atoms must be unit vectors.
void second_moment_matrices(const std::vector<std::vector<double>>& atoms,
                            const std::vector<double>& masses,
                            const AngularModulator& psi, int n,
                            std::vector<cplx>& A, std::vector<double>& B);

// [sum_j w_j L(xi.theta_j) phi(theta_j) - xi^T A xi] /
// [sum_j w_j L(xi.theta_j) - xi^T B xi].  Sign convention: the jump part
// L <= 0 and the PSD quadratic form enter with the same (negative) sign, so
// the denominator is the real exponent of the combined process.
cplx eval_levy_gauss_symbol(const double* xi, int n, const RadialProfile& L,
                            const AngularModulator& phi,
                            const std::vector<cplx>& A,
                            const std::vector<double>& B,
                            const QuadratureRule& rule);

// (|xi|^2 + M^{2/alpha})^{alpha/2} - M
double relativistic_exponent(const double* xi, int n, double alpha, double M);

cplx beurling_symbol(const double* xi);            // (xi1 - i xi2)/(xi1 + i xi2)
double riesz_power_symbol(const double* xi, int n, int k);  // xi1^{2k}/|xi|^{2k}

enum class SymbolFamily {
  Stable, Mixed, GeneralL, LevyGauss, Beurling, RieszPower, DirectionPower,
  Constant
};

struct SymbolDescriptor {
  SymbolFamily family = SymbolFamily::Constant;
  int n = 2;
  double r = 0.0, s = 0.0, C_r = 1.0, C_s = 1.0;
  int k = 1;             // RieszPower
  cplx c{1.0, 0.0};      // Constant
  AngularModulator phi;
  RadialProfile profile;             // GeneralL, LevyGauss
  std::vector<cplx> A;               // LevyGauss, row-major n x n
  std::vector<double> B;             // LevyGauss, row-major n x n
  cplx dc{0.0, 0.0};

  static SymbolDescriptor stable(int n, double r, AngularModulator phi);
  static SymbolDescriptor mixed(int n, double r, double s, double C_r,
                                double C_s, AngularModulator phi);
  static SymbolDescriptor general(int n, RadialProfile L, AngularModulator phi);
  static SymbolDescriptor beurling();
  static SymbolDescriptor riesz_power(int n, int k);
  // |xi_1|^r / |xi|^r (even extension of the single-direction power symbol)
  static SymbolDescriptor direction_power(int n, double r);
  static SymbolDescriptor constant(int n, cplx c);

  // xi must be nonzero; the rule dimension must match n.
  cplx eval(const double* xi, const QuadratureRule& rule) const;
  bool homogeneous() const;  // degree-0 homogeneity of the family
  // Highest exponent, used to pick quadrature refinement.
  double max_exponent() const;

  nlohmann::json to_json() const;
  static SymbolDescriptor from_json(const nlohmann::json& j);
};

}  // namespace levymult
