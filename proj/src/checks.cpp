#include "levymult/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace levymult {

using json = nlohmann::json;

void CheckReport::settle() {
  if (reference)
    pass = measured <= *reference * (1.0 + tol) + 1e-12;
}

json CheckReport::to_json() const {
  return json{{"check", check},
              {"params", params},
              {"measured", measured},
              {"reference", reference ? json(*reference) : json(nullptr)},
              {"tol", tol},
              {"pass", pass},
              {"meta", meta}};
}

namespace {

// prod_{m=0}^{count-1} (r + 2m)
double rising_even(double r, int count) {
  double p = 1.0;
  for (int m = 0; m < count; ++m) p *= r + 2.0 * m;
  return p;
}

double sq_norm(const double* xi, int n) {
  double q = 0.0;
  for (int i = 0; i < n; ++i) q += xi[i] * xi[i];
  return q;
}

enum class DerivCase { NoOne, OneOnly, OneAndOthers };

DerivCase classify(const MultiIndex& mi, int n) {
  mi.validate(n);
  std::set<int> uniq(mi.indices.begin(), mi.indices.end());
  if (uniq.size() != mi.indices.size())
    throw std::invalid_argument("case derivative: repeated index has no closed form");
  const bool has_one = uniq.count(1) > 0;
  if (!has_one) return DerivCase::NoOne;
  return mi.order() == 1 ? DerivCase::OneOnly : DerivCase::OneAndOthers;
}

int parity_sign(int k) { return k % 2 == 0 ? 1 : -1; }

}  // namespace

double case_derivative(const double* xi, int n, double r,
                       const MultiIndex& indices) {
  const DerivCase c = classify(indices, n);
  if (!(xi[0] > 0.0))
    throw std::invalid_argument("case_derivative: xi_1 must be positive");
  for (int i = 1; i < n; ++i)
    if (!(xi[i] >= 0.0))
      throw std::invalid_argument("case_derivative: positive orthant required");
  const int k = indices.order();
  const double q = sq_norm(xi, n);
  const double tail = q - xi[0] * xi[0];  // xi_2^2 + ... + xi_n^2

  switch (c) {
    case DerivCase::NoOne: {
      double prod = 1.0;
      for (int i : indices.indices) prod *= xi[i - 1];
      return parity_sign(k) * rising_even(r, k) * std::pow(xi[0], r) * prod *
             std::pow(q, -(r + 2.0 * k) / 2.0);
    }
    case DerivCase::OneOnly:
      return r * std::pow(xi[0], r - 1.0) * tail *
             std::pow(q, -(r + 2.0) / 2.0);
    case DerivCase::OneAndOthers: {
      double prod = 1.0;
      for (int i : indices.indices)
        if (i != 1) prod *= xi[i - 1];
      return parity_sign(k - 1) * rising_even(r, k - 1) * prod *
             std::pow(xi[0], r - 1.0) * std::pow(q, -(r + 2.0 * k) / 2.0) *
             (r * tail - (2.0 * k - 2.0) * xi[0] * xi[0]);
    }
  }
  return 0.0;
}

double weighted_case_value(const double* xi, int n, double r,
                           const MultiIndex& indices) {
  const DerivCase c = classify(indices, n);
  for (int i = 0; i < n; ++i)
    if (!(xi[i] >= 0.0))
      throw std::invalid_argument("weighted_case_value: closed orthant required");
  const int k = indices.order();
  const double q = sq_norm(xi, n);
  if (q == 0.0) throw std::invalid_argument("weighted_case_value: zero point");
  const double tail = q - xi[0] * xi[0];

  switch (c) {
    case DerivCase::NoOne: {
      double prod = 1.0;
      for (int i : indices.indices) prod *= xi[i - 1] * xi[i - 1];
      return parity_sign(k) * rising_even(r, k) * std::pow(xi[0], r) * prod *
             std::pow(q, -(r + 2.0 * k) / 2.0);
    }
    case DerivCase::OneOnly:
      return r * std::pow(xi[0], r) * tail * std::pow(q, -(r + 2.0) / 2.0);
    case DerivCase::OneAndOthers: {
      double prod = 1.0;
      for (int i : indices.indices)
        if (i != 1) prod *= xi[i - 1] * xi[i - 1];
      return parity_sign(k - 1) * rising_even(r, k - 1) * prod *
             std::pow(xi[0], r) * std::pow(q, -(r + 2.0 * k) / 2.0) *
             (r * tail - (2.0 * k - 2.0) * xi[0] * xi[0]);
    }
  }
  return 0.0;
}

double lagrange1_max(double a, double b, double c, double d) {
  if (!(a >= 0.0 && b >= 0.0 && c > 0.0 && d > 0.0) || a + b <= 0.0)
    throw std::invalid_argument("lagrange1_max: invalid parameters");
  double lg = -(a + b) / 2.0 * std::log(a + b);
  if (a > 0.0) lg += a / 2.0 * std::log(a / c);
  if (b > 0.0) lg += b / 2.0 * std::log(b / d);
  return std::exp(lg);
}

double lagrange2_max(int n, int k, double r) {
  if (!(k > 1 && k <= n))
    throw std::invalid_argument("lagrange2_max: need 1 < k <= n");
  if (!(r > 0.0)) throw std::invalid_argument("lagrange2_max: r must be positive");
  double lg = k * std::log(2.0 * k) - (k - 1) * std::log(double(k - 1)) +
              r / 2.0 * (std::log(r) - std::log(2.0 * k + r)) -
              k * std::log(2.0 * k + r);
  return std::exp(lg);
}

CheckReport marcinkiewicz_weighted_sup(int n, double r,
                                       const MultiIndex& indices, int level) {
  const DerivCase c = classify(indices, n);
  const int k = indices.order();

  CheckReport rep;
  rep.check = "marcinkiewicz";
  rep.params = json{{"n", n}, {"r", r}, {"indices", indices.indices},
                    {"level", level}};
  rep.tol = 1e-6;

  SphereMaximum sm = maximize_on_sphere_orthant(
      [&](const double* xi, int dim) {
        return std::fabs(weighted_case_value(xi, dim, r, indices));
      },
      n, level);
  rep.measured = sm.value;
  rep.meta = json{{"argmax", std::vector<double>(sm.point.begin(),
                                                 sm.point.begin() + n)}};
  switch (c) {
    case DerivCase::NoOne:
      rep.reference = rising_even(r, k) * lagrange1_max(2.0 * k, r, k, 1.0);
      rep.meta["case"] = 1;
      break;
    case DerivCase::OneOnly:
      rep.reference = r * lagrange1_max(r, 2.0, 1.0, 1.0);
      rep.meta["case"] = 2;
      break;
    case DerivCase::OneAndOthers:
      rep.reference = std::nullopt;  // boundedness only
      rep.meta["case"] = 3;
      rep.pass = std::isfinite(rep.measured);
      break;
  }
  rep.settle();
  return rep;
}

namespace {

bool all_distinct(const MultiIndex& mi) {
  std::set<int> s(mi.indices.begin(), mi.indices.end());
  return s.size() == mi.indices.size();
}

}  // namespace

double dyadic_rectangle_integral(const SymbolDescriptor& m,
                                 const MultiIndex& indices,
                                 const std::vector<int>& levels,
                                 const std::vector<double>& fixed,
                                 int quad_level) {
  indices.validate(m.n);
  const int k = indices.order();
  if (static_cast<int>(levels.size()) != k)
    throw std::invalid_argument("dyadic_rectangle_integral: one level per index");
  if (static_cast<int>(fixed.size()) != m.n)
    throw std::invalid_argument("dyadic_rectangle_integral: fixed needs n entries");

  const bool closed_form =
      m.family == SymbolFamily::DirectionPower && all_distinct(indices);

  QuadratureRule rule;
  const bool needs_rule = (m.family == SymbolFamily::Stable ||
                           m.family == SymbolFamily::Mixed ||
                           m.family == SymbolFamily::GeneralL ||
                           m.family == SymbolFamily::LevyGauss);
  if (!closed_form && needs_rule)
    rule = sphere_quadrature(m.n, quad_level);

  auto abs_deriv = [&](const double* xi) -> double {
    if (closed_form) return std::fabs(case_derivative(xi, m.n, m.r, indices));
    std::function<cplx(const double*, int)> f = [&](const double* x, int) {
      return m.eval(x, rule);
    };
    const double h = fd_default_step(std::sqrt(sq_norm(xi, m.n)), k);
    return std::abs(finite_difference_partial<cplx>(f, xi, m.n, indices, h));
  };

  std::vector<double> gx, gw;
  gauss_legendre(24, gx, gw);

  std::vector<double> xi(fixed);
  std::vector<int> ix(k, 0);
  double total = 0.0;
  for (;;) {
    double w = 1.0;
    for (int j = 0; j < k; ++j) {
      const double lo = std::pow(2.0, levels[j]);
      const double half = lo / 2.0;  // [2^l, 2^{l+1}] has width 2^l
      xi[indices.indices[j] - 1] = lo + half * (gx[ix[j]] + 1.0);
      w *= gw[ix[j]] * half;
    }
    total += w * abs_deriv(xi.data());
    int c = 0;
    while (c < k && ++ix[c] == static_cast<int>(gx.size())) ix[c++] = 0;
    if (c == k) break;
  }
  return total * std::pow(2.0, k);  // even-symmetry sign classes
}

CheckReport hormander_shell_check(const SymbolDescriptor& m,
                                  const std::vector<int>& beta,
                                  const std::vector<double>& R_values,
                                  int level) {
  const MultiIndex mi = MultiIndex::from_beta(beta);
  const int order = mi.order();
  const int n0 = m.n / 2 + 1;
  if (order < 1 || order > n0)
    throw std::invalid_argument("hormander_shell_check: need 1 <= |beta| <= n/2+1");
  if (R_values.empty())
    throw std::invalid_argument("hormander_shell_check: no shells given");

  const bool needs_rule = (m.family == SymbolFamily::Stable ||
                           m.family == SymbolFamily::Mixed ||
                           m.family == SymbolFamily::GeneralL ||
                           m.family == SymbolFamily::LevyGauss);
  QuadratureRule rule;
  if (needs_rule) rule = sphere_quadrature(m.n, level);
  std::function<cplx(const double*, int)> f = [&](const double* x, int) {
    return m.eval(x, rule);
  };

  const QuadratureRule shell = sphere_quadrature(m.n, m.n == 2 ? 7 : 12);
  std::vector<double> gx, gw;
  gauss_legendre(12, gx, gw);

  std::vector<double> shell_values;
  for (double R : R_values) {
    double integral = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      const double rho = R * (1.5 + 0.5 * gx[i]);  // [R, 2R]
      const double wr = gw[i] * R * 0.5 * std::pow(rho, m.n - 1);
      for (std::size_t j = 0; j < shell.size(); ++j) {
        double xi[4];
        for (int d = 0; d < m.n; ++d) xi[d] = rho * shell.node(j)[d];
        const double h = fd_default_step(rho, order);
        const cplx dv = finite_difference_partial<cplx>(f, xi, m.n, mi, h);
        integral += wr * shell.weights[j] * std::norm(dv);
      }
    }
    shell_values.push_back(std::pow(R, -m.n + 2.0 * order) * integral);
  }

  const double vmax = *std::max_element(shell_values.begin(), shell_values.end());
  const double vmin = *std::min_element(shell_values.begin(), shell_values.end());
  const double spread = vmax > 0.0 ? (vmax - vmin) / vmax : 0.0;

  CheckReport rep;
  rep.check = "hormander";
  rep.params = json{{"n", m.n}, {"beta", beta}, {"R_values", R_values},
                    {"level", level}, {"family", m.to_json()["family"]}};
  rep.measured = std::sqrt(vmax);
  rep.reference = std::nullopt;
  rep.tol = 1e-6;
  rep.meta = json{{"shell_values", shell_values}, {"relative_spread", spread},
                  {"homogeneous", m.homogeneous()}};
  rep.pass = std::isfinite(rep.measured) &&
             (!m.homogeneous() || spread <= 1e-6);
  return rep;
}

CheckReport gbound_hbound_check(int n, double r, const std::vector<double>& theta,
                                int samples, std::uint64_t seed) {
  const int n0 = n / 2 + 1;
  if (!(r >= n0))
    throw std::invalid_argument("gbound_hbound_check: need r >= n0");
  if (static_cast<int>(theta.size()) != n)
    throw std::invalid_argument("gbound_hbound_check: theta dimension mismatch");
  double tn = 0.0;
  for (double t : theta) tn += t * t;
  if (std::fabs(tn - 1.0) > 1e-10)
    throw std::invalid_argument("gbound_hbound_check: theta must be a unit vector");

  // Reference constant for the h-bound: worst |d^delta h| / r^j over the
  // smallest admissible r and all orders j <= n0 (on the unit sphere the
  // coordinate product is at most 1).
  double C_n = 1.0;
  for (int j = 1; j <= std::min(n0, n); ++j)
    C_n = std::max(C_n, rising_even(double(n0), j) / std::pow(double(n0), j));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> coord(1, n);

  double worst = 0.0;
  json worst_meta;
  for (int s = 0; s < samples; ++s) {
    double xi[4];
    double q = 0.0;
    for (int d = 0; d < n; ++d) {
      xi[d] = gauss(rng);
      q += xi[d] * xi[d];
    }
    const double nn = std::sqrt(q);
    for (int d = 0; d < n; ++d) xi[d] /= nn;

    std::uniform_int_distribution<int> order_pick(1, n0);
    const int total = order_pick(rng);
    std::uniform_int_distribution<int> split(0, total);
    const int i = split(rng);       // |gamma|
    const int j = total - i;        // |delta|
    if (j > n) continue;            // delta needs distinct coordinates

    // g-bound: |d^gamma g_theta| <= r^i |xi.theta|^{r-n0}
    const double u = std::fabs(std::inner_product(theta.begin(), theta.end(),
                                                  xi, 0.0));
    if (i > 0 && u > 1e-12) {
      double ff = 1.0, tp = 1.0;
      for (int q2 = 0; q2 < i; ++q2) {
        ff *= r - q2;
        tp *= std::fabs(theta[coord(rng) - 1]);
      }
      const double value = std::fabs(ff) * std::pow(u, r - i) * tp;
      const double bound = std::pow(r, i) * std::pow(u, r - n0);
      if (bound > 0.0 && value / bound > worst) {
        worst = value / bound;
        worst_meta = json{{"side", "g"}, {"i", i}, {"u", u}};
      }
    }

    // h-bound: |d^delta h| <= C_n r^j with h = |xi|^{-r}, distinct delta
    if (j > 0) {
      std::vector<int> pool(n);
      for (int d = 0; d < n; ++d) pool[d] = d;
      std::shuffle(pool.begin(), pool.end(), rng);
      double cp = 1.0;
      for (int q2 = 0; q2 < j; ++q2) cp *= std::fabs(xi[pool[q2]]);
      const double value = rising_even(r, j) * cp;  // |xi| = 1
      const double bound = C_n * std::pow(r, j);
      if (value / bound > worst) {
        worst = value / bound;
        worst_meta = json{{"side", "h"}, {"j", j}};
      }
    }
  }

  CheckReport rep;
  rep.check = "gbound-hbound";
  rep.params = json{{"n", n}, {"r", r}, {"theta", theta},
                    {"samples", samples}, {"seed", seed}};
  rep.measured = worst;
  rep.reference = 1.0;
  rep.tol = 1e-9;
  rep.meta = json{{"C_n", C_n}, {"worst", worst_meta}};
  rep.settle();
  return rep;
}

namespace {

void enumerate_betas(int n, int order_max, std::vector<std::vector<int>>& out) {
  std::vector<int> beta(n, 0);
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == n) {
      int total = 0;
      for (int b : beta) total += b;
      if (total >= 1) out.push_back(beta);
      return;
    }
    for (int b = 0; b <= remaining; ++b) {
      beta[pos] = b;
      rec(pos + 1, remaining - b);
    }
    beta[pos] = 0;
  };
  rec(0, order_max);
}

}  // namespace

CheckReport mikhlin_pointwise_check(const SymbolDescriptor& m, int beta_max,
                                    int samples, std::uint64_t seed, int level) {
  if (beta_max < 1 || beta_max > m.n + 1)
    throw std::invalid_argument("mikhlin_pointwise_check: bad beta_max");

  const bool needs_rule = (m.family == SymbolFamily::Stable ||
                           m.family == SymbolFamily::Mixed ||
                           m.family == SymbolFamily::GeneralL ||
                           m.family == SymbolFamily::LevyGauss);
  QuadratureRule rule;
  if (needs_rule) rule = sphere_quadrature(m.n, level);
  std::function<cplx(const double*, int)> f = [&](const double* x, int) {
    return m.eval(x, rule);
  };

  std::vector<std::vector<int>> betas;
  enumerate_betas(m.n, beta_max, betas);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> logu(-2.0, 2.0);

  double measured = 0.0;
  double scale_err = 0.0;
  for (int s = 0; s < samples; ++s) {
    double dir[4];
    double mn = 0.0;
    do {
      double q = 0.0;
      for (int d = 0; d < m.n; ++d) {
        dir[d] = gauss(rng);
        q += dir[d] * dir[d];
      }
      const double nn = std::sqrt(q);
      mn = 1.0;
      for (int d = 0; d < m.n; ++d) {
        dir[d] /= nn;
        mn = std::min(mn, std::fabs(dir[d]));
      }
    } while (mn < 1e-3);
    const double rad = std::pow(10.0, logu(rng));
    double xi[4];
    for (int d = 0; d < m.n; ++d) xi[d] = rad * dir[d];

    for (const auto& beta : betas) {
      const MultiIndex mi = MultiIndex::from_beta(beta);
      const int order = mi.order();
      const double h = fd_default_step(rad, order);
      const cplx dv = finite_difference_partial<cplx>(f, xi, m.n, mi, h);
      const double v = std::pow(rad, order) * std::abs(dv);
      measured = std::max(measured, v);

      if (m.homogeneous() && s == 0) {
        double xi10[4];
        for (int d = 0; d < m.n; ++d) xi10[d] = 10.0 * xi[d];
        const cplx dv10 = finite_difference_partial<cplx>(
            f, xi10, m.n, mi, fd_default_step(10.0 * rad, order));
        const double v10 = std::pow(10.0 * rad, order) * std::abs(dv10);
        if (v > 1e-12)
          scale_err = std::max(scale_err, std::fabs(v10 - v) / v);
      }
    }
  }

  CheckReport rep;
  rep.check = "mikhlin";
  rep.params = json{{"n", m.n}, {"beta_max", beta_max}, {"samples", samples},
                    {"seed", seed}, {"level", level},
                    {"family", m.to_json()["family"]}};
  rep.measured = measured;
  rep.reference = std::nullopt;
  rep.tol = 1e-6;
  rep.meta = json{{"scale_invariance_err", scale_err},
                  {"homogeneous", m.homogeneous()}};
  rep.pass = std::isfinite(measured) &&
             (!m.homogeneous() || scale_err <= 1e-6);
  return rep;
}

CheckReport mixed_factor_check(double a, double b, double c, double t, int n,
                               int samples) {
  if (!(a >= 0.0 && b > 0.0 && c >= 0.0 && t > 0.0))
    throw std::invalid_argument("mixed_factor_check: invalid parameters");
  if (n < 2 || n > 4) throw std::invalid_argument("mixed_factor_check: n must be 2..4");

  auto nf = [=](const double* xi, int dim) -> double {
    double q = 0.0;
    for (int d = 0; d < dim; ++d) q += xi[d] * xi[d];
    return (1.0 + a * std::pow(std::fabs(xi[0]), t)) /
           (b + c * std::pow(q, t / 2.0));
  };
  std::function<double(const double*, int)> nfn = nf;
  std::function<double(const double*, int)> prod = [=](const double* xi,
                                                       int dim) {
    const double v = nf(xi, dim);
    return v * v;
  };

  std::mt19937_64 rng(20240817);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // All distinct index tuples of order 1 and 2.
  std::vector<MultiIndex> tuples;
  for (int i = 1; i <= n; ++i) tuples.emplace_back(std::vector<int>{i});
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      tuples.emplace_back(std::vector<int>{i, j});

  double measured = 0.0, product_measured = 0.0;
  for (double rho : {1e-2, 1.0, 1e2}) {
    for (int s = 0; s < samples; ++s) {
      double xi[4];
      double mn = 0.0;
      do {
        double q = 0.0;
        for (int d = 0; d < n; ++d) {
          xi[d] = std::fabs(gauss(rng));
          q += xi[d] * xi[d];
        }
        const double nn = std::sqrt(q);
        mn = 1.0;
        for (int d = 0; d < n; ++d) {
          xi[d] *= rho / nn;
          mn = std::min(mn, xi[d] / rho);
        }
      } while (mn < 1e-3);

      for (const MultiIndex& mi : tuples) {
        const double h = fd_default_step(rho, mi.order());
        double w = 1.0;
        for (int i : mi.indices) w *= xi[i - 1];
        measured = std::max(
            measured,
            w * std::fabs(finite_difference_partial<double>(nfn, xi, n, mi, h)));
        product_measured = std::max(
            product_measured,
            w * std::fabs(finite_difference_partial<double>(prod, xi, n, mi, h)));
      }
    }
  }

  // Hand derivative of the t = 2 case, checked against finite differences.
  double hand_err = 0.0;
  if (t == 2.0) {
    for (int s = 0; s < 32; ++s) {
      double xi[4];
      double q = 0.0;
      for (int d = 0; d < n; ++d) {
        xi[d] = 0.3 + std::fabs(gauss(rng));
        q += xi[d] * xi[d];
      }
      const double den = b + c * q;
      const double hand =
          (2.0 * a * xi[0] * den - 2.0 * c * xi[0] * (1.0 + a * xi[0] * xi[0])) /
          (den * den);
      const MultiIndex mi(std::vector<int>{1});
      const double fd = finite_difference_partial<double>(
          nfn, xi, n, mi, fd_default_step(std::sqrt(q), 1));
      const double scale = std::max(std::fabs(hand), 1e-12);
      hand_err = std::max(hand_err, std::fabs(hand - fd) / scale);
    }
  }

  CheckReport rep;
  rep.check = "mixed";
  rep.params = json{{"a", a}, {"b", b}, {"c", c}, {"t", t}, {"n", n},
                    {"samples", samples}};
  rep.measured = measured;
  rep.reference = std::nullopt;
  rep.tol = 1e-7;
  rep.meta = json{{"product_measured", product_measured},
                  {"hand_derivative_err", hand_err}};
  rep.pass = std::isfinite(measured) && std::isfinite(product_measured) &&
             (t != 2.0 || hand_err <= 1e-7);
  return rep;
}

CheckReport relativistic_L_estimates(double alpha, const RadialProfile& profile,
                                     int samples,
                                     std::function<double(double)> density) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("relativistic_L_estimates: alpha must be in (0,2)");
  if (samples < 8)
    throw std::invalid_argument("relativistic_L_estimates: too few samples");

  bool monotone_ok = true;
  if (density) {
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 40; ++i) {
      const double rr = 1.0 + i * (39.0 / 40.0);
      const double phi = density(rr) * std::pow(rr, 1.0 + alpha);
      if (phi > prev * (1.0 + 1e-9)) monotone_ok = false;
      prev = phi;
    }
  }

  auto sweep = [&](int count, double& l_max, double& lp_max) {
    l_max = lp_max = 0.0;
    for (int i = 0; i < count; ++i) {
      const double x = std::pow(10.0, -4.0 + 8.0 * i / (count - 1));
      const double denom_l = std::min(std::pow(x, alpha), x * x);
      const double denom_lp = std::min(std::pow(x, alpha - 1.0), x);
      l_max = std::max(l_max, std::fabs(profile(x)) / denom_l);
      lp_max = std::max(lp_max, std::fabs(profile.derivative(x)) / denom_lp);
    }
  };
  double l_coarse, lp_coarse, l_fine, lp_fine;
  sweep(samples, l_coarse, lp_coarse);
  sweep(2 * samples - 1, l_fine, lp_fine);

  CheckReport rep;
  rep.check = "relativistic";
  rep.params = json{{"alpha", alpha}, {"samples", samples}};
  rep.measured = std::max(l_coarse, l_fine);
  rep.reference = std::nullopt;
  rep.tol = 0.5;
  rep.meta = json{{"L_ratio_coarse", l_coarse}, {"L_ratio_fine", l_fine},
                  {"Lprime_ratio_coarse", lp_coarse},
                  {"Lprime_ratio_fine", lp_fine},
                  {"tail_bound", profile.tail_bound()},
                  {"density_monotone", monotone_ok}};
  rep.pass = std::isfinite(l_fine) && std::isfinite(lp_fine) && monotone_ok &&
             l_fine <= l_coarse * 1.5 && lp_fine <= lp_coarse * 1.5;
  return rep;
}

}  // namespace levymult
