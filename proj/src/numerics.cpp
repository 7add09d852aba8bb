#include "levymult/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace levymult {

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: x must be positive");
  return std::lgamma(x);
}

double gamma_ratio(double r, int n) {
  if (!(r > 0.0)) throw std::domain_error("gamma_ratio: r must be positive");
  return std::exp(log_gamma((r + n) / 2.0) - log_gamma((r + 1) / 2.0));
}

double sphere_surface_area(int n) {
  switch (n) {
    case 2: return 2.0 * M_PI;
    case 3: return 4.0 * M_PI;
    case 4: return 2.0 * M_PI * M_PI;
    default: throw std::domain_error("sphere_surface_area: n must be 2..4");
  }
}

double QuadratureRule::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration from the Chebyshev-based initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

namespace {

QuadratureRule raw_rule(int n, int level) {
  QuadratureRule rule;
  rule.dim = n;
  rule.level = level;
  if (n == 2) {
    const std::size_t m = std::size_t{1} << level;
    const double w = 2.0 * M_PI / static_cast<double>(m);
    rule.nodes.resize(2 * m);
    rule.weights.assign(m, w);
    for (std::size_t j = 0; j < m; ++j) {
      const double u = w * static_cast<double>(j);
      rule.nodes[2 * j] = std::cos(u);
      rule.nodes[2 * j + 1] = std::sin(u);
    }
  } else if (n == 3) {
    std::vector<double> u, gw;
    gauss_legendre(level, u, gw);  // u = cos(polar)
    const int m = 2 * level;
    const double wa = 2.0 * M_PI / m;
    rule.nodes.reserve(std::size_t(3) * level * m);
    rule.weights.reserve(std::size_t(level) * m);
    for (int i = 0; i < level; ++i) {
      const double su = std::sqrt(std::max(0.0, 1.0 - u[i] * u[i]));
      for (int j = 0; j < m; ++j) {
        const double lam = wa * j;
        rule.nodes.push_back(su * std::cos(lam));
        rule.nodes.push_back(su * std::sin(lam));
        rule.nodes.push_back(u[i]);
        rule.weights.push_back(gw[i] * wa);
      }
    }
  } else if (n == 4) {
    // Angles (a, b, c): theta = (cos a, sin a cos b, sin a sin b cos c,
    // sin a sin b sin c); measure sin^2(a) sin(b) da db dc.
    std::vector<double> xa, wa, ub, wb;
    gauss_legendre(level, xa, wa);  // maps to a in (0, pi)
    gauss_legendre(level, ub, wb);  // ub = cos b
    const int m = 2 * level;
    const double wc = 2.0 * M_PI / m;
    for (int i = 0; i < level; ++i) {
      const double a = M_PI / 2.0 * (xa[i] + 1.0);
      const double sa = std::sin(a), ca = std::cos(a);
      const double wia = wa[i] * (M_PI / 2.0) * sa * sa;
      for (int j = 0; j < level; ++j) {
        const double cb = ub[j];
        const double sb = std::sqrt(std::max(0.0, 1.0 - cb * cb));
        for (int k = 0; k < m; ++k) {
          const double c = wc * k;
          rule.nodes.push_back(ca);
          rule.nodes.push_back(sa * cb);
          rule.nodes.push_back(sa * sb * std::cos(c));
          rule.nodes.push_back(sa * sb * std::sin(c));
          rule.weights.push_back(wia * wb[j] * wc);
        }
      }
    }
  } else {
    throw std::domain_error("sphere_quadrature: unsupported dimension " +
                            std::to_string(n));
  }
  return rule;
}

double integrate_abs_pow(const QuadratureRule& rule) {
  // Self-test integrand |theta_1|^{5/2}.
  double s = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j)
    s += rule.weights[j] * std::pow(std::fabs(rule.node(j)[0]), 2.5);
  return s;
}

}  // namespace

QuadratureRule sphere_quadrature(int n, int level) {
  if (level < 4) throw std::domain_error("sphere_quadrature: level must be >= 4");
  QuadratureRule rule = raw_rule(n, level);
  const int next = (n == 2) ? level + 1 : 2 * level;
  const double coarse = integrate_abs_pow(rule);
  const double fine = integrate_abs_pow(raw_rule(n, next));
  rule.est_error = std::max(std::fabs(coarse - fine) / std::fabs(fine), 1e-15);
  return rule;
}

int symbol_rule_level(int n, int level, double r) {
  const bool even = (r == std::floor(r)) && (std::fmod(r, 2.0) == 0.0);
  if (even) return level;
  if (n == 2) return std::min(2 * level, 22);
  if (n == 3) return std::min(8 * level, 512);
  return std::min(8 * level, 96);
}

QuadratureRule symbol_rule(int n, int level, double r) {
  return sphere_quadrature(n, symbol_rule_level(n, level, r));
}

bool MultiIndex::contains(int i) const {
  return std::find(indices.begin(), indices.end(), i) != indices.end();
}

void MultiIndex::validate(int n) const {
  if (indices.empty()) throw std::invalid_argument("MultiIndex: k must be >= 1");
  for (int i : indices)
    if (i < 1 || i > n)
      throw std::invalid_argument("MultiIndex: index out of range 1..n");
}

MultiIndex MultiIndex::from_beta(const std::vector<int>& beta) {
  MultiIndex mi;
  for (std::size_t c = 0; c < beta.size(); ++c)
    for (int rep = 0; rep < beta[c]; ++rep)
      mi.indices.push_back(static_cast<int>(c) + 1);
  return mi;
}

std::vector<int> MultiIndex::to_beta(int n) const {
  validate(n);
  std::vector<int> beta(n, 0);
  for (int i : indices) ++beta[i - 1];
  return beta;
}

namespace {

// Angles in [0, pi/2]^{n-1} -> unit vector in the closed positive orthant.
void angles_to_point(const double* a, int n, double* out) {
  double s = 1.0;
  for (int i = 0; i < n - 1; ++i) {
    out[i] = s * std::cos(a[i]);
    s *= std::sin(a[i]);
  }
  out[n - 1] = s;
}

}  // namespace

SphereMaximum maximize_on_sphere_orthant(
    const std::function<double(const double*, int)>& f, int n, int level) {
  if (n < 2 || n > 4) throw std::domain_error("maximize_on_sphere_orthant: n must be 2..4");
  const int d = n - 1;
  const double half_pi = M_PI / 2.0;

  auto eval = [&](const double* a) {
    double p[4];
    angles_to_point(a, n, p);
    double v = f(p, n);
    if (!std::isfinite(v))
      throw std::runtime_error("maximize_on_sphere_orthant: non-finite value");
    return v;
  };

  std::array<double, 3> best{};
  double best_val = -std::numeric_limits<double>::infinity();
  // Coarse grid, level+1 points per axis (endpoints included).
  std::array<int, 3> ix{};
  const int m = level;
  for (;;) {
    std::array<double, 3> a{};
    for (int i = 0; i < d; ++i) a[i] = half_pi * ix[i] / m;
    double v = eval(a.data());
    if (v > best_val) {
      best_val = v;
      best = a;
    }
    int c = 0;
    while (c < d && ++ix[c] > m) ix[c++] = 0;
    if (c == d) break;
  }

  // Bisect the surrounding cell; 5-point-per-axis local refinement.
  double hw = half_pi / m;
  const int probes = 2;
  while (2.0 * hw * std::sqrt(double(d)) >= 1e-6) {
    std::array<double, 3> center = best;
    std::array<int, 3> jx{};
    jx.fill(-probes);
    for (;;) {
      std::array<double, 3> a{};
      for (int i = 0; i < d; ++i)
        a[i] = std::clamp(center[i] + hw * jx[i] / probes, 0.0, half_pi);
      double v = eval(a.data());
      if (v > best_val) {
        best_val = v;
        best = a;
      }
      int c = 0;
      while (c < d && ++jx[c] > probes) jx[c++] = -probes;
      if (c == d) break;
    }
    hw *= 0.5;
  }

  SphereMaximum result;
  double p[4];
  angles_to_point(best.data(), n, p);
  for (int i = 0; i < n; ++i) result.point[i] = p[i];
  result.value = best_val;
  return result;
}

double fd_default_step(double scale, int order) {
  const double eps = std::numeric_limits<double>::epsilon();
  return scale * std::pow(eps, 1.0 / (order + 4));
}

}  // namespace levymult
