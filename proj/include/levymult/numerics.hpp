#pragma once

// Special functions, spherical quadrature, constrained maximization on the
// positive orthant of a sphere, and finite-difference differentiation.
// Everything here is a pure function of its inputs.

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace levymult {

// ln Gamma(x), x > 0.  Throws std::domain_error for x <= 0.
double log_gamma(double x);

// Gamma((r+n)/2) / Gamma((r+1)/2), computed via log-gamma differences.
double gamma_ratio(double r, int n);

// Surface area of S^{n-1}: 2*pi for n=2, 4*pi for n=3, 2*pi^2 for n=4.
double sphere_surface_area(int n);

struct QuadratureRule {
  int dim = 0;
  int level = 0;
  std::vector<double> nodes;    // size() * dim, row-major, unit vectors
  std::vector<double> weights;  // all positive
  double est_error = 0.0;       // estimated relative error on smooth integrands

  std::size_t size() const { return weights.size(); }
  const double* node(std::size_t j) const { return nodes.data() + j * dim; }
  double total_weight() const;
};

// n in {2,3,4}, level >= 4.
//   n=2: uniform angles, M = 2^level nodes, weights 2*pi/M.
//   n=3: Gauss-Legendre in cos(polar) x uniform azimuth (level x 2*level).
//   n=4: Gauss-Legendre in both polar angles x uniform azimuth.
QuadratureRule sphere_quadrature(int n, int level);

// Rule used for pointwise symbol evaluation at a user-facing level.  Kinked
// integrands |xi.theta|^r with non-even r lose convergence order, so the
// rule level is doubled for such r, capped to bound node counts:
// n=2 -> min(2*level, 22); n=3 -> min(8*level, 512); n=4 -> min(8*level, 96).
QuadratureRule symbol_rule(int n, int level, double r);
int symbol_rule_level(int n, int level, double r);

// Ordered coordinate index list i_1..i_k, 1-based.  Repeats are allowed for
// multi-index (beta) use; the closed-form derivative cases require distinct
// entries and reject repeats themselves.
struct MultiIndex {
  std::vector<int> indices;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> idx) : indices(std::move(idx)) {}
  int order() const { return static_cast<int>(indices.size()); }
  bool contains(int i) const;
  void validate(int n) const;  // k >= 1, entries in 1..n

  // beta = vector of per-coordinate orders, e.g. {2,1} -> indices {1,1,2}
  static MultiIndex from_beta(const std::vector<int>& beta);
  std::vector<int> to_beta(int n) const;
};

struct SphereMaximum {
  std::array<double, 4> point{};  // first n entries used
  double value = 0.0;
};

// Coarse grid search over the closed positive orthant of S^{n-1} at angular
// resolution `level`, then local refinement by repeated cell bisection until
// the cell diameter is below 1e-6.  The returned value is a certified lower
// bound for the true maximum.
SphereMaximum maximize_on_sphere_orthant(
    const std::function<double(const double*, int)>& f, int n, int level);

// Step size balancing truncation against rounding for an order-k iterated
// central difference at the given coordinate scale.
double fd_default_step(double scale, int order);

namespace detail {

template <class F, class T>
T iterated_central(const F& f, std::array<double, 8>& x, int n,
                   const std::vector<int>& idx, std::size_t pos, double h) {
  if (pos == idx.size()) return f(x.data(), n);
  const int c = idx[pos] - 1;
  const double save = x[c];
  x[c] = save + h;
  T hi = iterated_central<F, T>(f, x, n, idx, pos + 1, h);
  x[c] = save - h;
  T lo = iterated_central<F, T>(f, x, n, idx, pos + 1, h);
  x[c] = save;
  return (hi - lo) / (2.0 * h);
}

}  // namespace detail

// Iterated central differences with one Richardson step (h and h/2),
// error O(h^4) for smooth f.  T is double or std::complex<double>.
template <class T>
T finite_difference_partial(const std::function<T(const double*, int)>& f,
                            const double* xi, int n, const MultiIndex& beta,
                            double h) {
  beta.validate(n);
  std::array<double, 8> x{};
  for (int i = 0; i < n; ++i) x[i] = xi[i];
  T coarse = detail::iterated_central<std::function<T(const double*, int)>, T>(
      f, x, n, beta.indices, 0, h);
  T fine = detail::iterated_central<std::function<T(const double*, int)>, T>(
      f, x, n, beta.indices, 0, h / 2.0);
  return (4.0 * fine - coarse) / 3.0;
}

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace levymult
