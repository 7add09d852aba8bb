#include "levymult/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace levymult {

using json = nlohmann::json;

namespace {

double dot(const double* a, const double* b, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double norm(const double* a, int n) { return std::sqrt(dot(a, a, n)); }

}  // namespace

// ---------------------------------------------------------------------------
// AngularModulator

AngularModulator AngularModulator::constant(cplx c) {
  if (std::abs(c) > 1.0 + 1e-12)
    throw std::invalid_argument("AngularModulator: |c| must be <= 1");
  AngularModulator m;
  m.kind_ = Kind::Constant;
  m.constant_ = c;
  return m;
}

AngularModulator AngularModulator::second_harmonic(int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("AngularModulator: sign must be +1 or -1");
  AngularModulator m;
  m.kind_ = Kind::SecondHarmonic;
  m.sign_ = sign;
  return m;
}

AngularModulator AngularModulator::tabulated(const QuadratureRule& rule,
                                             std::vector<cplx> values) {
  if (values.size() != rule.size())
    throw std::invalid_argument("AngularModulator: table size mismatch");
  for (const cplx& v : values)
    if (std::abs(v) > 1.0 + 1e-12)
      throw std::invalid_argument("AngularModulator: tabulated value exceeds 1");
  AngularModulator m;
  m.kind_ = Kind::Tabulated;
  m.table_ = std::move(values);
  m.table_nodes_ = rule.nodes;
  m.table_dim_ = rule.dim;
  return m;
}

AngularModulator AngularModulator::custom(
    std::function<cplx(const double*, int)> f,
    const QuadratureRule& validation_rule) {
  for (std::size_t j = 0; j < validation_rule.size(); ++j)
    if (std::abs(f(validation_rule.node(j), validation_rule.dim)) > 1.0 + 1e-12)
      throw std::invalid_argument("AngularModulator: sampled sup exceeds 1");
  AngularModulator m;
  m.kind_ = Kind::Custom;
  m.fn_ = std::move(f);
  return m;
}

cplx AngularModulator::operator()(const double* theta, int dim) const {
  switch (kind_) {
    case Kind::Constant:
      return constant_;
    case Kind::SecondHarmonic: {
      if (dim != 2)
        throw std::invalid_argument("second-harmonic modulator needs n=2");
      cplx z(theta[0], theta[1]);
      cplx u = z / std::abs(z);
      cplx e2 = u * u;  // e^{2i arg}
      return sign_ > 0 ? e2 : std::conj(e2);
    }
    case Kind::Tabulated: {
      // Nearest tabulation node.
      std::size_t best = 0;
      double best_d = 1e300;
      const std::size_t count = table_.size();
      for (std::size_t j = 0; j < count; ++j) {
        double d = 0.0;
        for (int i = 0; i < table_dim_; ++i) {
          double t = theta[i] - table_nodes_[j * table_dim_ + i];
          d += t * t;
        }
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      return table_[best];
    }
    case Kind::Custom:
      return fn_(theta, dim);
  }
  return {};
}

cplx AngularModulator::at_node(const QuadratureRule& rule, std::size_t j) const {
  if (kind_ == Kind::Tabulated && table_.size() == rule.size() &&
      table_dim_ == rule.dim)
    return table_[j];
  return (*this)(rule.node(j), rule.dim);
}

bool AngularModulator::is_constant_one() const {
  return kind_ == Kind::Constant && constant_ == cplx(1.0, 0.0);
}

json AngularModulator::to_json() const {
  switch (kind_) {
    case Kind::Constant:
      return json{{"kind", "constant"},
                  {"value", {constant_.real(), constant_.imag()}}};
    case Kind::SecondHarmonic:
      return json{{"kind", "second-harmonic"}, {"sign", sign_}};
    default:
      throw std::runtime_error("AngularModulator: kind not serializable");
  }
}

AngularModulator AngularModulator::from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") {
    auto v = j.at("value");
    return constant(cplx(v.at(0).get<double>(), v.at(1).get<double>()));
  }
  if (kind == "second-harmonic")
    return second_harmonic(j.value("sign", -1));
  throw std::invalid_argument("AngularModulator: unknown kind " + kind);
}

// ---------------------------------------------------------------------------
// RadialProfile

RadialProfile RadialProfile::closed_form(std::function<double(double)> L,
                                         std::function<double(double)> Lprime) {
  RadialProfile p;
  p.l_ = std::move(L);
  p.lp_ = std::move(Lprime);
  return p;
}

double RadialProfile::operator()(double x) const {
  if (!l_) throw std::runtime_error("RadialProfile: empty");
  return l_(std::fabs(x));  // L is even
}

double RadialProfile::derivative(double x) const {
  if (!lp_) throw std::runtime_error("RadialProfile: no derivative rule");
  double v = lp_(std::fabs(x));
  return x < 0.0 ? -v : v;  // L' is odd
}

namespace {

struct PanelIntegrator {
  std::vector<double> breaks;  // ascending, breaks.front() == 0
  std::vector<double> gl_x, gl_w;

  // int over all panels of g(r), subdividing each panel so that no GL
  // subinterval spans more than ~half a period of cos(r*x).
  double integrate(const std::function<double(double)>& g, double x) const {
    const double ax = std::fabs(x);
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
      const double a = breaks[p], b = breaks[p + 1];
      const double width = b - a;
      int parts = 1;
      if (ax > 0.0)
        parts = std::min(1 << 20, std::max(1, int(width * ax / 2.5) + 1));
      const double sub = width / parts;
      for (int q = 0; q < parts; ++q) {
        const double lo = a + sub * q;
        for (std::size_t i = 0; i < gl_x.size(); ++i) {
          const double r = lo + sub * 0.5 * (gl_x[i] + 1.0);
          total += gl_w[i] * sub * 0.5 * g(r);
        }
      }
    }
    return total;
  }
};

}  // namespace

RadialProfile radial_profile_from_density(std::function<double(double)> v,
                                          double cutoff, int substeps) {
  if (cutoff <= 0.0 || substeps < 4)
    throw std::invalid_argument("radial_profile_from_density: bad parameters");

  auto pi = std::make_shared<PanelIntegrator>();
  gauss_legendre(12, pi->gl_x, pi->gl_w);
  pi->breaks.push_back(0.0);
  const double first = 1e-6;
  const double ratio = std::pow(cutoff / first, 1.0 / (substeps - 1));
  double b = first;
  for (int i = 0; i < substeps; ++i) {
    pi->breaks.push_back(std::min(b, cutoff));
    b *= ratio;
  }
  pi->breaks.back() = cutoff;

  // Integrability of min{r^2, 1} v(r): per-decade contributions toward 0
  // must not grow, and the total must be finite.
  auto vfn = std::make_shared<std::function<double(double)>>(std::move(v));
  std::vector<double> gx, gw;
  gauss_legendre(12, gx, gw);
  double prev_decade = -1.0;
  for (double lo = 1e-6; lo < 0.9; lo *= 10.0) {
    const double hi = lo * 10.0, half = (hi - lo) / 2.0;
    double c = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      const double r = lo + half * (gx[i] + 1.0);
      c += gw[i] * half * std::min(r * r, 1.0) * (*vfn)(r);
    }
    if (prev_decade >= 0.0 && prev_decade > 1.3 * c)
      throw std::invalid_argument(
          "radial_profile_from_density: r^2 v(r) is not integrable at 0");
    prev_decade = c;
  }
  const double levy_mass = pi->integrate(
      [&](double r) { return std::min(r * r, 1.0) * (*vfn)(r); }, 0.0);
  if (!std::isfinite(levy_mass) || levy_mass > 1e12)
    throw std::invalid_argument(
        "radial_profile_from_density: density fails the Levy integrability check");

  RadialProfile profile;
  profile.tail_bound_ = 2.0 * pi->integrate(
      [&](double r) { return (*vfn)(cutoff + r); }, 0.0);
  profile.l_ = [pi, vfn](double x) {
    return pi->integrate(
        [&](double r) { return (std::cos(r * x) - 1.0) * (*vfn)(r); }, x);
  };
  profile.lp_ = [pi, vfn](double x) {
    return pi->integrate(
        [&](double r) { return -r * std::sin(r * x) * (*vfn)(r); }, x);
  };
  return profile;
}

std::function<double(double)> synthetic_relativistic_density(double alpha,
                                                             int n) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("synthetic density: alpha must be in (0,2)");
  const double p = (n + alpha - 1.0) / 2.0;
  return [alpha, p](double r) {
    if (r <= 0.0) return 0.0;
    const double env = std::min(1.0, std::exp(-r) * std::pow(r, p));
    return std::pow(r, -1.0 - alpha) * env;
  };
}

// ---------------------------------------------------------------------------
// Symbol evaluation

double normalization_constant(int n, double r) {
  if (n < 2 || n > 4) throw std::domain_error("normalization_constant: n must be 2..4");
  if (!(r > 0.0)) throw std::domain_error("normalization_constant: r must be positive");
  return 2.0 * std::pow(M_PI, (n - 1) / 2.0) *
         std::exp(log_gamma((1.0 + r) / 2.0) - log_gamma((n + r) / 2.0));
}

cplx eval_stable_symbol(const double* xi, int n, double r,
                        const AngularModulator& phi,
                        const QuadratureRule& rule) {
  if (rule.dim != n) throw std::invalid_argument("eval_stable_symbol: rule dimension mismatch");
  if (norm(xi, n) <= 0.0) throw std::invalid_argument("eval_stable_symbol: xi must be nonzero");
  cplx num(0.0, 0.0);
  double den = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double t = rule.weights[j] * std::pow(std::fabs(dot(xi, rule.node(j), n)), r);
    num += t * phi.at_node(rule, j);
    den += t;
  }
  if (den < 1e-300) throw std::runtime_error("eval_stable_symbol: vanishing denominator");
  return num / den;
}

cplx eval_mixed_symbol(const double* xi, int n, double r, double s, double C_r,
                       double C_s, const AngularModulator& phi,
                       const QuadratureRule& rule) {
  if (!(r > 0.0 && r < s)) throw std::invalid_argument("eval_mixed_symbol: need 0 < r < s");
  if (rule.dim != n) throw std::invalid_argument("eval_mixed_symbol: rule dimension mismatch");
  cplx num(0.0, 0.0);
  double den = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double d = std::fabs(dot(xi, rule.node(j), n));
    const double t = rule.weights[j] * (C_r * std::pow(d, r) + C_s * std::pow(d, s));
    num += t * phi.at_node(rule, j);
    den += t;
  }
  if (den < 1e-300) throw std::runtime_error("eval_mixed_symbol: vanishing denominator");
  return num / den;
}

cplx eval_general_symbol(const double* xi, int n, const RadialProfile& L,
                         const AngularModulator& phi,
                         const QuadratureRule& rule) {
  if (rule.dim != n) throw std::invalid_argument("eval_general_symbol: rule dimension mismatch");
  cplx num(0.0, 0.0);
  double den = 0.0, scale = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double lv = L(dot(xi, rule.node(j), n));
    const double t = rule.weights[j] * lv;
    num += t * phi.at_node(rule, j);
    den += t;
    scale = std::max(scale, std::fabs(lv));
  }
  if (std::fabs(den) < 1e-12 * rule.total_weight() * scale)
    throw std::runtime_error("eval_general_symbol: vanishing denominator");
  return num / den;
}

void second_moment_matrices(const std::vector<std::vector<double>>& atoms,
                            const std::vector<double>& masses,
                            const AngularModulator& psi, int n,
                            std::vector<cplx>& A, std::vector<double>& B) {
  if (atoms.size() != masses.size())
    throw std::invalid_argument("second_moment_matrices: size mismatch");
  A.assign(std::size_t(n) * n, cplx(0.0, 0.0));
  B.assign(std::size_t(n) * n, 0.0);
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const auto& th = atoms[k];
    if (static_cast<int>(th.size()) != n ||
        std::fabs(norm(th.data(), n) - 1.0) > 1e-10)
      throw std::invalid_argument("second_moment_matrices: atom is not a unit vector");
    const cplx pv = psi(th.data(), n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double outer = masses[k] * th[i] * th[j];
        A[std::size_t(i) * n + j] += pv * outer;
        B[std::size_t(i) * n + j] += outer;
      }
  }
}

cplx eval_levy_gauss_symbol(const double* xi, int n, const RadialProfile& L,
                            const AngularModulator& phi,
                            const std::vector<cplx>& A,
                            const std::vector<double>& B,
                            const QuadratureRule& rule) {
  cplx num(0.0, 0.0);
  double den = 0.0;
  bool have_profile = true;
  try {
    L(0.0);
  } catch (const std::runtime_error&) {
    have_profile = false;
  }
  if (have_profile) {
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const double lv = L(dot(xi, rule.node(j), n));
      num += rule.weights[j] * lv * phi.at_node(rule, j);
      den += rule.weights[j] * lv;
    }
  }
  cplx qa(0.0, 0.0);
  double qb = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      qa += A[std::size_t(i) * n + j] * xi[i] * xi[j];
      qb += B[std::size_t(i) * n + j] * xi[i] * xi[j];
    }
  const cplx numerator = num - qa;
  const double denominator = den - qb;
  if (std::fabs(denominator) < 1e-300)
    throw std::runtime_error("eval_levy_gauss_symbol: vanishing denominator");
  return numerator / denominator;
}

double relativistic_exponent(const double* xi, int n, double alpha, double M) {
  if (!(alpha > 0.0 && alpha < 2.0) || !(M > 0.0))
    throw std::domain_error("relativistic_exponent: need 0<alpha<2, M>0");
  const double q = dot(xi, xi, n);
  return std::pow(q + std::pow(M, 2.0 / alpha), alpha / 2.0) - M;
}

cplx beurling_symbol(const double* xi) {
  if (xi[0] == 0.0 && xi[1] == 0.0)
    throw std::invalid_argument("beurling_symbol: zero frequency");
  return cplx(xi[0], -xi[1]) / cplx(xi[0], xi[1]);
}

double riesz_power_symbol(const double* xi, int n, int k) {
  const double nn = norm(xi, n);
  if (nn == 0.0) throw std::invalid_argument("riesz_power_symbol: zero frequency");
  return std::pow(xi[0] / nn, 2 * k);
}

// ---------------------------------------------------------------------------
// SymbolDescriptor

SymbolDescriptor SymbolDescriptor::stable(int n, double r, AngularModulator phi) {
  if (!(r > 0.0)) throw std::invalid_argument("stable symbol: r must be positive");
  SymbolDescriptor d;
  d.family = SymbolFamily::Stable;
  d.n = n;
  d.r = r;
  d.phi = std::move(phi);
  return d;
}

SymbolDescriptor SymbolDescriptor::mixed(int n, double r, double s, double C_r,
                                         double C_s, AngularModulator phi) {
  if (!(r > 0.0 && r < s && C_r > 0.0 && C_s >= 0.0))
    throw std::invalid_argument("mixed symbol: need 0 < r < s, positive weights");
  SymbolDescriptor d;
  d.family = SymbolFamily::Mixed;
  d.n = n;
  d.r = r;
  d.s = s;
  d.C_r = C_r;
  d.C_s = C_s;
  d.phi = std::move(phi);
  return d;
}

SymbolDescriptor SymbolDescriptor::general(int n, RadialProfile L,
                                           AngularModulator phi) {
  SymbolDescriptor d;
  d.family = SymbolFamily::GeneralL;
  d.n = n;
  d.profile = std::move(L);
  d.phi = std::move(phi);
  return d;
}

SymbolDescriptor SymbolDescriptor::beurling() {
  SymbolDescriptor d;
  d.family = SymbolFamily::Beurling;
  d.n = 2;
  return d;
}

SymbolDescriptor SymbolDescriptor::riesz_power(int n, int k) {
  if (k < 1) throw std::invalid_argument("riesz power: k must be >= 1");
  SymbolDescriptor d;
  d.family = SymbolFamily::RieszPower;
  d.n = n;
  d.k = k;
  return d;
}

SymbolDescriptor SymbolDescriptor::direction_power(int n, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("direction power: r must be positive");
  SymbolDescriptor d;
  d.family = SymbolFamily::DirectionPower;
  d.n = n;
  d.r = r;
  return d;
}

SymbolDescriptor SymbolDescriptor::constant(int n, cplx c) {
  SymbolDescriptor d;
  d.family = SymbolFamily::Constant;
  d.n = n;
  d.c = c;
  d.dc = c;
  return d;
}

cplx SymbolDescriptor::eval(const double* xi, const QuadratureRule& rule) const {
  switch (family) {
    case SymbolFamily::Stable:
      return eval_stable_symbol(xi, n, r, phi, rule);
    case SymbolFamily::Mixed:
      return eval_mixed_symbol(xi, n, r, s, C_r, C_s, phi, rule);
    case SymbolFamily::GeneralL:
      return eval_general_symbol(xi, n, profile, phi, rule);
    case SymbolFamily::LevyGauss:
      return eval_levy_gauss_symbol(xi, n, profile, phi, A, B, rule);
    case SymbolFamily::Beurling:
      return beurling_symbol(xi);
    case SymbolFamily::RieszPower:
      return riesz_power_symbol(xi, n, k);
    case SymbolFamily::DirectionPower: {
      double q = 0.0;
      for (int i = 0; i < n; ++i) q += xi[i] * xi[i];
      if (q == 0.0) throw std::invalid_argument("direction power: zero frequency");
      return std::pow(std::fabs(xi[0]) / std::sqrt(q), r);
    }
    case SymbolFamily::Constant:
      return c;
  }
  throw std::logic_error("SymbolDescriptor: bad family");
}

bool SymbolDescriptor::homogeneous() const {
  switch (family) {
    case SymbolFamily::Stable:
    case SymbolFamily::Beurling:
    case SymbolFamily::RieszPower:
    case SymbolFamily::DirectionPower:
    case SymbolFamily::Constant:
      return true;
    default:
      return false;
  }
}

double SymbolDescriptor::max_exponent() const {
  switch (family) {
    case SymbolFamily::Stable: return r;
    case SymbolFamily::DirectionPower: return r;
    case SymbolFamily::Mixed: return s;
    default: return 1.0;  // treated as non-even for refinement purposes
  }
}

namespace {
const char* family_name(SymbolFamily f) {
  switch (f) {
    case SymbolFamily::Stable: return "stable";
    case SymbolFamily::Mixed: return "mixed";
    case SymbolFamily::GeneralL: return "general-l";
    case SymbolFamily::LevyGauss: return "levy-gauss";
    case SymbolFamily::Beurling: return "beurling";
    case SymbolFamily::RieszPower: return "riesz-power";
    case SymbolFamily::DirectionPower: return "direction-power";
    case SymbolFamily::Constant: return "constant";
  }
  return "?";
}
}  // namespace

json SymbolDescriptor::to_json() const {
  json j{{"family", family_name(family)}, {"n", n},
         {"dc", {dc.real(), dc.imag()}}};
  switch (family) {
    case SymbolFamily::Stable:
      j["r"] = r;
      j["phi"] = phi.to_json();
      break;
    case SymbolFamily::Mixed:
      j["r"] = r;
      j["s"] = s;
      j["C_r"] = C_r;
      j["C_s"] = C_s;
      j["phi"] = phi.to_json();
      break;
    case SymbolFamily::GeneralL:
      j["density"] = json{{"kind", "synthetic-relativistic"}, {"alpha", r}};
      j["phi"] = phi.to_json();
      break;
    case SymbolFamily::RieszPower:
      j["k"] = k;
      break;
    case SymbolFamily::DirectionPower:
      j["r"] = r;
      break;
    case SymbolFamily::Constant:
      j["value"] = {c.real(), c.imag()};
      break;
    case SymbolFamily::Beurling:
      break;
    default:
      throw std::runtime_error("SymbolDescriptor: family not serializable");
  }
  return j;
}

SymbolDescriptor SymbolDescriptor::from_json(const json& j) {
  const std::string fam = j.at("family").get<std::string>();
  const int n = j.value("n", 2);
  SymbolDescriptor d;
  if (fam == "stable") {
    d = stable(n, j.at("r").get<double>(),
               AngularModulator::from_json(j.at("phi")));
  } else if (fam == "mixed") {
    d = mixed(n, j.at("r").get<double>(), j.at("s").get<double>(),
              j.value("C_r", 1.0), j.value("C_s", 1.0),
              AngularModulator::from_json(j.at("phi")));
  } else if (fam == "general-l") {
    const auto& dens = j.at("density");
    if (dens.at("kind").get<std::string>() != "synthetic-relativistic")
      throw std::invalid_argument("SymbolDescriptor: unknown density kind");
    const double alpha = dens.at("alpha").get<double>();
    d = general(n,
                radial_profile_from_density(
                    synthetic_relativistic_density(alpha, n)),
                AngularModulator::from_json(j.at("phi")));
    d.r = alpha;
  } else if (fam == "beurling") {
    d = beurling();
  } else if (fam == "riesz-power") {
    d = riesz_power(n, j.at("k").get<int>());
  } else if (fam == "direction-power") {
    d = direction_power(n, j.at("r").get<double>());
  } else if (fam == "constant") {
    auto v = j.at("value");
    d = constant(n, cplx(v.at(0).get<double>(), v.at(1).get<double>()));
  } else {
    throw std::invalid_argument("SymbolDescriptor: unknown family " + fam);
  }
  if (j.contains("dc")) {
    auto v = j.at("dc");
    d.dc = cplx(v.at(0).get<double>(), v.at(1).get<double>());
  }
  return d;
}

}  // namespace levymult
