#pragma once

// Numerical verification of the closed-form derivative cases of
// m_{e1}(xi) = xi_1^r/|xi|^r, the constrained-maximum lemmas, and the
// multiplier-theorem hypotheses (Marcinkiewicz dyadic integrals,
// Hormander shell integrals, Mikhlin pointwise bounds, the mixed-symbol
// factor bounds, and the relativistic profile estimates).

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "levymult/symbols.hpp"

namespace levymult {

struct CheckReport {
  std::string check;
  nlohmann::json params;
  double measured = 0.0;
  std::optional<double> reference;  // nullopt: boundedness only
  double tol = 0.0;
  bool pass = false;
  nlohmann::json meta;

  // pass <=> measured <= reference*(1+tol) when a reference exists.
  void settle();
  nlohmann::json to_json() const;
};

// Signed value of d_{i1}..d_{ik} m_{e1}(xi) on the open positive orthant,
// dispatching on whether index 1 appears (three closed-form cases).
// Repeated indices are outside the case analysis and rejected.
double case_derivative(const double* xi, int n, double r,
                       const MultiIndex& indices);

// xi_{i1}..xi_{ik} * (signed case derivative), written so the weight cancels
// the |xi|-power singularities and evaluates cleanly near the axes.
double weighted_case_value(const double* xi, int n, double r,
                           const MultiIndex& indices);

// K = sup over the orthant sphere of |xi_{i1}..xi_{ik} d..m_{e1}(xi)|.
// Reference: Case 1 -> prod_{m<k}(r+2m) * lagrange1-type maximum;
// Case 2 (k=1, i=1) -> r * lagrange1(r,2,1,1); Case 3 -> none.
CheckReport marcinkiewicz_weighted_sup(int n, double r,
                                       const MultiIndex& indices, int level);

// max of x^a y^b on the ellipse c x^2 + d y^2 = 1:
//   (a/c)^{a/2} (b/d)^{b/2} / (a+b)^{(a+b)/2}      (log-space)
double lagrange1_max(double a, double b, double c, double d);

// max of (k-1) x^{2k} y^r + (n-k) x^{2k-2} y^r z^2 on the constraint
// (k-1)x^2 + y^2 + (n-k)z^2 = 1, for 1 < k <= n:
//   (2k)^k/(k-1)^{k-1} * (r/(2k+r))^{r/2} / (2k+r)^k   (log-space)
double lagrange2_max(int n, int k, double r);

// Tensor Gauss-Legendre integral of |d_{i1}..d_{ik} m| over the positive
// dyadic rectangle prod [2^{l_j}, 2^{l_j+1}], times 2^k for the symmetry
// classes.  Non-varying coordinates held at `fixed` (size n, entries for the
// varying coordinates ignored).  Uses the closed form for Stable(phi==1)
// symbols with distinct indices, finite differences otherwise.
double dyadic_rectangle_integral(const SymbolDescriptor& m,
                                 const MultiIndex& indices,
                                 const std::vector<int>& levels,
                                 const std::vector<double>& fixed,
                                 int quad_level);

// measured K^2 = max_R R^{-n+2|beta|} * int_{R<|xi|<2R} |d^beta m|^2; for
// degree-0 homogeneous m also asserts R-independence within 1e-6 relative.
CheckReport hormander_shell_check(const SymbolDescriptor& m,
                                  const std::vector<int>& beta,
                                  const std::vector<double>& R_values,
                                  int level);

// Random sampling of |d^gamma g_theta| <= r^i |xi.theta|^{r-n0} and
// |d^delta h| <= C_n r^j on the unit sphere, with g = |xi.theta|^r and
// h = |xi|^{-r}; C_n from an n-only reference sweep.  Reports worst ratio.
CheckReport gbound_hbound_check(int n, double r, const std::vector<double>& theta,
                                int samples, std::uint64_t seed);

// measured C = max over sampled xi (|xi| in [1e-2,1e2]) and |beta| <= beta_max
// of |xi|^{|beta|} |d^beta m(xi)| by finite differences.
CheckReport mikhlin_pointwise_check(const SymbolDescriptor& m, int beta_max,
                                    int samples, std::uint64_t seed, int level);

// n(xi) = (1 + a|xi_1|^t)/(b + c|xi|^t): maximizes the xi-weighted
// finite-difference derivatives over spheres of radius {1e-2, 1, 1e2} for all
// distinct index tuples up to order 2, and repeats the sweep for the product
// n(xi) * m_{e1}(xi) (product stability of the weighted bound).
CheckReport mixed_factor_check(double a, double b, double c, double t, int n,
                               int samples);

// sup over a log sweep x in [1e-4, 1e4] of |L(x)|/min{|x|^alpha, x^2} and
// |L'(x)|/min{|x|^{alpha-1}, |x|}; pass = both finite and stable under a
// doubled sweep density.  When `density` is supplied, the precondition that
// phi(r) = v(r) r^{1+alpha} is decreasing on [1, inf) is spot-checked.
CheckReport relativistic_L_estimates(double alpha, const RadialProfile& profile,
                                     int samples,
                                     std::function<double(double)> density = {});

}  // namespace levymult
