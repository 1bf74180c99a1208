#include "loja/curve.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>

#include "loja/dual.hpp"
#include "loja/error.hpp"

namespace loja {

// ---------------------------------------------------------------------------
// Coefficients

CurveCoefficient::CurveCoefficient(GaussianRational exact) : kind_(Kind::Exact), exact_(std::move(exact)) {}

CurveCoefficient CurveCoefficient::from_float(Complex value) {
  CurveCoefficient c;
  c.kind_ = Kind::Float;
  c.value_ = value;
  return c;
}

CurveCoefficient CurveCoefficient::root(Rational base, int index, Rational phase_turns) {
  if (sgn(base) <= 0) throw precondition_error("root literal base must be positive");
  if (index < 1) throw precondition_error("root literal index must be >= 1");
  CurveCoefficient c;
  c.kind_ = Kind::Root;
  c.base_ = std::move(base);
  c.index_ = index;
  c.phase_ = std::move(phase_turns);
  return c;
}

Complex CurveCoefficient::numeric() const {
  switch (kind_) {
    case Kind::Exact:
      return exact_.to_complex();
    case Kind::Float:
      return value_;
    case Kind::Root: {
      long double mod = std::pow(to_long_double(base_), 1.0L / static_cast<long double>(index_));
      long double angle = 2.0L * std::numbers::pi_v<long double> * to_long_double(phase_);
      return std::polar(mod, angle);
    }
  }
  return {};
}

bool CurveCoefficient::is_zero() const {
  switch (kind_) {
    case Kind::Exact:
      return exact_.is_zero();
    case Kind::Float:
      return value_ == Complex(0, 0);
    case Kind::Root:
      return false;
  }
  return true;
}

nlohmann::json to_json(const CurveCoefficient& c) {
  using nlohmann::json;
  switch (c.kind_) {
    case CurveCoefficient::Kind::Exact:
      if (c.exact_.is_real()) return to_string(c.exact_.re());
      return {{"re", to_string(c.exact_.re())}, {"im", to_string(c.exact_.im())}};
    case CurveCoefficient::Kind::Float:
      return {{"re", static_cast<double>(c.value_.real())}, {"im", static_cast<double>(c.value_.imag())}};
    case CurveCoefficient::Kind::Root:
      return {{"root", {{"base", to_string(c.base_)}, {"index", c.index_}, {"phase_turns", to_string(c.phase_)}}}};
  }
  return nullptr;
}

namespace {

Rational rational_from_json(const nlohmann::json& j, const char* what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError(0, std::string("expected a rational string for ") + what);
}

}  // namespace

CurveCoefficient coefficient_from_json(const nlohmann::json& j) {
  if (j.is_string() || j.is_number_integer()) return CurveCoefficient(GaussianRational(rational_from_json(j, "coeff")));
  if (j.is_number_float()) return CurveCoefficient::from_float({static_cast<long double>(j.get<double>()), 0});
  if (j.is_object() && j.contains("root")) {
    const auto& r = j.at("root");
    if (!r.contains("base") || !r.contains("index")) throw ParseError(0, "root literal needs base and index");
    Rational phase = r.contains("phase_turns") ? rational_from_json(r.at("phase_turns"), "phase_turns") : Rational(0);
    return CurveCoefficient::root(rational_from_json(r.at("base"), "base"), r.at("index").get<int>(), phase);
  }
  if (j.is_object() && j.contains("re")) {
    const auto& re = j.at("re");
    nlohmann::json im = j.contains("im") ? j.at("im") : nlohmann::json(0);
    if (re.is_number_float() || im.is_number_float()) {
      return CurveCoefficient::from_float({static_cast<long double>(re.get<double>()),
                                           static_cast<long double>(im.get<double>())});
    }
    return CurveCoefficient(GaussianRational(rational_from_json(re, "re"), rational_from_json(im, "im")));
  }
  throw ParseError(0, "unrecognized curve coefficient");
}

// ---------------------------------------------------------------------------
// Curves

Curve::Curve(std::vector<std::vector<CurveTerm>> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw precondition_error("curve needs at least one coordinate");
  for (auto& terms : coords_) {
    std::sort(terms.begin(), terms.end(), [](const CurveTerm& a, const CurveTerm& b) { return a.exp < b.exp; });
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (sgn(terms[i].exp) <= 0) throw precondition_error("curve exponents must be positive");
      if (terms[i].coeff.is_zero()) throw precondition_error("curve coefficients must be nonzero");
      if (i > 0 && terms[i].exp == terms[i - 1].exp) throw precondition_error("repeated exponent in a curve coordinate");
    }
  }
}

Curve Curve::monomial(const std::vector<Integer>& weights, const std::vector<CurveCoefficient>& coeffs) {
  if (weights.size() != coeffs.size()) throw precondition_error("weight/coefficient length mismatch");
  std::vector<std::vector<CurveTerm>> coords;
  for (std::size_t j = 0; j < weights.size(); ++j) coords.push_back({CurveTerm{coeffs[j], Rational(weights[j])}});
  return Curve(std::move(coords));
}

bool Curve::is_exact() const {
  for (const auto& terms : coords_) {
    for (const auto& t : terms) {
      if (!t.coeff.is_exact()) return false;
    }
  }
  return true;
}

IndexSet Curve::support() const {
  IndexSet out;
  for (int j = 0; j < n(); ++j) {
    if (!vanishes(j)) out.push_back(j);
  }
  return out;
}

Curve curve_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("coords") || !j.at("coords").is_array()) {
    throw ParseError(0, "curve JSON needs a \"coords\" array");
  }
  std::vector<std::vector<CurveTerm>> coords;
  for (const auto& c : j.at("coords")) {
    std::vector<CurveTerm> terms;
    for (const auto& t : c) {
      if (!t.contains("coeff") || !t.contains("exp")) throw ParseError(0, "curve term needs coeff and exp");
      terms.push_back({coefficient_from_json(t.at("coeff")), rational_from_json(t.at("exp"), "exp")});
    }
    coords.push_back(std::move(terms));
  }
  return Curve(std::move(coords));
}

nlohmann::json to_json(const Curve& c) {
  nlohmann::json coords = nlohmann::json::array();
  for (const auto& terms : c.coords()) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& t : terms) row.push_back({{"coeff", to_json(t.coeff)}, {"exp", to_string(t.exp)}});
    coords.push_back(row);
  }
  return {{"coords", coords}};
}

// ---------------------------------------------------------------------------
// Truncated Puiseux series

namespace {

template <class S>
struct Entry {
  S value{};
  long double mag = 0;  // sum of |contributions|, used by the numeric zero test
};

template <class S>
using Series = std::map<Rational, Entry<S>>;

template <class S>
struct Scalar;

template <>
struct Scalar<GaussianRational> {
  static GaussianRational of(const CurveCoefficient& c) { return c.exact(); }
  static GaussianRational of(const GaussianRational& c) { return c; }
  static long double mag(const GaussianRational&) { return 0; }
  static bool zero(const Entry<GaussianRational>& e, long double) { return e.value.is_zero(); }
};

template <>
struct Scalar<Complex> {
  static Complex of(const CurveCoefficient& c) { return c.numeric(); }
  static Complex of(const GaussianRational& c) { return c.to_complex(); }
  static long double mag(const Complex& c) { return std::abs(c); }
  static bool zero(const Entry<Complex>& e, long double tol) { return std::abs(e.value) <= tol * e.mag; }
};

template <class S>
Series<S> multiply(const Series<S>& a, const Series<S>& b, const Rational& T) {
  Series<S> out;
  for (const auto& [ea, va] : a) {
    for (const auto& [eb, vb] : b) {
      Rational e = ea + eb;
      if (e > T) break;
      auto& slot = out[e];
      slot.value += va.value * vb.value;
      slot.mag += va.mag * vb.mag;
    }
  }
  return out;
}

template <class S>
class Evaluator {
 public:
  Evaluator(const Curve& c, Rational T) : T_(std::move(T)), powers_(static_cast<std::size_t>(c.n())) {
    for (int j = 0; j < c.n(); ++j) {
      Series<S> one;
      one[Rational(0)] = {S(1), 1};
      Series<S> z;
      for (const auto& t : c.coords()[static_cast<std::size_t>(j)]) {
        if (t.exp > T_) break;
        S v = Scalar<S>::of(t.coeff);
        z[t.exp] = {v, Scalar<S>::mag(v)};
      }
      powers_[j].push_back(std::move(one));
      base_.push_back(std::move(z));
      empty_.push_back(c.vanishes(j));
    }
  }

  Series<S> eval(const Polynomial& p) {
    Series<S> out;
    for (const auto& [e, c] : p.terms()) {
      bool skip = false;
      for (std::size_t j = 0; j < e.size() && !skip; ++j) skip = e[j] > 0 && empty_[j];
      if (skip) continue;
      S cv = Scalar<S>::of(c);
      Series<S> term;
      term[Rational(0)] = {cv, Scalar<S>::mag(cv)};
      for (std::size_t j = 0; j < e.size() && !term.empty(); ++j) {
        if (e[j] > 0) term = multiply(term, power(j, e[j]), T_);
      }
      for (const auto& [k, v] : term) {
        auto& slot = out[k];
        slot.value += v.value;
        slot.mag += v.mag;
      }
    }
    return out;
  }

  std::optional<Rational> order(const Series<S>& s, long double tol) const {
    for (const auto& [k, v] : s) {
      if (!Scalar<S>::zero(v, tol)) return k;
    }
    return std::nullopt;
  }

 private:
  const Series<S>& power(std::size_t j, int k) {
    auto& cache = powers_[j];
    while (static_cast<int>(cache.size()) <= k) cache.push_back(multiply(cache.back(), base_[j], T_));
    return cache[static_cast<std::size_t>(k)];
  }

  Rational T_;
  std::vector<std::vector<Series<S>>> powers_;
  std::vector<Series<S>> base_;
  std::vector<bool> empty_;
};

template <class S>
ProbeResult run_probe(const Polynomial& f, const Curve& c, const Rational& T, long double tol) {
  Evaluator<S> ev(c, T);
  ProbeResult r;
  r.truncation_used = T;
  r.exact = std::is_same_v<S, GaussianRational>;
  r.tolerance = r.exact ? 0 : tol;
  auto of = ev.order(ev.eval(f), tol);
  if (!of) throw truncation_error("order of f along the curve exceeds truncation bound T=" + to_string(T));
  r.ord_f = *of;
  std::optional<Rational> best;
  for (int j = 0; j < f.n(); ++j) {
    Polynomial d = partial_derivative(f, j);
    std::optional<Rational> o = d.is_zero() ? std::nullopt : ev.order(ev.eval(d), tol);
    if (o && (!best || *o < *best)) best = *o;
    r.ord_partials.push_back(o);
  }
  if (!best) throw truncation_error("order of the gradient along the curve exceeds truncation bound T=" + to_string(T));
  r.ord_grad = *best;
  r.theta = Rational(r.ord_grad / r.ord_f);
  return r;
}

// d of the curve's leading weight over the terms of f that survive on the curve.
std::optional<Rational> curve_degree(const Polynomial& f, const Curve& c) {
  std::optional<Rational> best;
  for (const auto& [e, coeff] : f.terms()) {
    Rational v(0);
    bool alive = true;
    for (int j = 0; j < f.n() && alive; ++j) {
      if (e[j] == 0) continue;
      if (c.vanishes(j)) {
        alive = false;
      } else {
        v += c.leading_exponent(j) * e[j];
      }
    }
    if (alive && (!best || v < *best)) best = v;
  }
  return best;
}

}  // namespace

Rational default_truncation(const Polynomial& f, const Curve& c, const GeometryGuard& guard) {
  std::optional<Rational> dc = curve_degree(f, c);
  if (!dc) throw precondition_error("curve lies in V(f): every term of f vanishes on it");
  Rational m = *dc;
  try {
    for (const auto& facet : facets(f, guard)) m = std::max(m, Rational(facet.offset));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Guard) throw;
  }
  return Rational(4 * m);
}

ProbeResult probe(const Polynomial& f, const Curve& c, const ProbeOptions& options) {
  if (f.n() != c.n()) throw precondition_error("curve dimension differs from n");
  if (f.is_zero()) throw precondition_error("probe of the zero polynomial");
  if (!curve_degree(f, c)) throw precondition_error("curve lies in V(f): every term of f vanishes on it");
  Rational T = options.truncation ? *options.truncation : default_truncation(f, c, options.guard);
  if (c.is_exact()) return run_probe<GaussianRational>(f, c, T, 0);
  return run_probe<Complex>(f, c, T, options.tolerance);
}

Curve lift_subspace_curve(const Polynomial& f, const Curve& c, const IndexSet& I, std::optional<int> N,
                          const ProbeOptions& options) {
  if (f.n() != c.n()) throw precondition_error("curve dimension differs from n");
  for (int j = 0; j < c.n(); ++j) {
    bool inside = std::binary_search(I.begin(), I.end(), j);
    if (!inside && !c.vanishes(j)) throw precondition_error("curve is not supported on C^I");
  }
  if (restrict_to(f, I).is_zero()) throw precondition_error("C^I is a vanishing coordinate subspace");
  int pad = 0;
  if (N) {
    if (*N < 1) throw precondition_error("lift exponent N must be positive");
    pad = *N;
  } else {
    Rational T = options.truncation ? *options.truncation : default_truncation(restrict_to(f, I), c, options.guard);
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), T.get_num_mpz_t(), T.get_den_mpz_t());
    pad = static_cast<int>(fl.get_si()) + 1;
  }
  std::vector<std::vector<CurveTerm>> coords = c.coords();
  for (int j = 0; j < c.n(); ++j) {
    if (!std::binary_search(I.begin(), I.end(), j)) coords[j] = {CurveTerm{GaussianRational(1), Rational(pad)}};
  }
  return Curve(std::move(coords));
}

// ---------------------------------------------------------------------------
// Sweep

namespace {

// Gaussian elimination with partial pivoting; false when singular.
bool solve_linear(std::vector<std::vector<Complex>> a, std::vector<Complex>& b) {
  std::size_t m = b.size();
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < m; ++i) {
      if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
    }
    if (std::abs(a[p][k]) < 1e-30L) return false;
    std::swap(a[k], a[p]);
    std::swap(b[k], b[p]);
    for (std::size_t i = k + 1; i < m; ++i) {
      Complex r = a[i][k] / a[k][k];
      for (std::size_t j = k; j < m; ++j) a[i][j] -= r * a[k][j];
      b[i] -= r * b[k];
    }
  }
  for (std::size_t k = m; k-- > 0;) {
    for (std::size_t j = k + 1; j < m; ++j) b[k] -= a[k][j] * b[j];
    b[k] /= a[k][k];
  }
  return true;
}

GaussianRational random_gaussian(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-7, 7);
  std::uniform_int_distribution<int> den(1, 5);
  for (;;) {
    Rational re(num(rng), den(rng));
    Rational im(num(rng), den(rng));
    re.canonicalize();
    im.canonicalize();
    GaussianRational g(re, im);
    if (!g.is_zero()) return g;
  }
}

struct TermData {
  ExponentVector e;
  std::vector<GaussianRational> values;  // c * a^e per sample
};

struct Orders {
  std::optional<long> ord_f;
  std::vector<std::optional<long>> ord_j;
};

// Exact orders of f and each partial along z_j = a_j t^{p_j} by grouping terms by weight.
Orders grouped_orders(const std::vector<TermData>& terms, const std::vector<long>& w, const std::vector<int>& order,
                      const std::vector<long>& p, std::optional<std::size_t> sample) {
  const std::size_t n = p.size();
  Orders out;
  out.ord_j.assign(n, std::nullopt);
  auto scan = [&](int j) -> std::optional<long> {
    std::size_t i = 0;
    while (i < order.size()) {
      long key = w[static_cast<std::size_t>(order[i])];
      std::size_t k = i;
      GaussianRational sum;
      int members = 0;
      while (k < order.size() && w[static_cast<std::size_t>(order[k])] == key) {
        const auto& t = terms[static_cast<std::size_t>(order[k])];
        int mult = j < 0 ? 1 : t.e[static_cast<std::size_t>(j)];
        if (mult != 0) {
          ++members;
          if (sample) sum += t.values[*sample] * GaussianRational(static_cast<long>(mult));
        }
        ++k;
      }
      if (members == 1 || (members > 1 && sample && !sum.is_zero())) return key;
      if (members > 1 && !sample) return std::nullopt;  // caller retries with samples
      i = k;
    }
    return std::nullopt;
  };
  out.ord_f = scan(-1);
  for (std::size_t j = 0; j < n; ++j) {
    auto o = scan(static_cast<int>(j));
    if (o) out.ord_j[j] = *o - p[j];
  }
  return out;
}

// True when the minimal group of f and of every nonzero partial is a single term.
bool coefficient_free(const std::vector<TermData>& terms, const std::vector<long>& w, const std::vector<int>& order,
                      std::size_t n) {
  for (int j = -1; j < static_cast<int>(n); ++j) {
    std::optional<long> key;
    int members = 0;
    for (int idx : order) {
      const auto& t = terms[static_cast<std::size_t>(idx)];
      if (j >= 0 && t.e[static_cast<std::size_t>(j)] == 0) continue;
      long v = w[static_cast<std::size_t>(idx)];
      if (!key) key = v;
      if (v != *key) break;
      ++members;
    }
    if (members > 1) return false;
  }
  return true;
}

std::optional<ProbeResult> result_from(const Orders& o) {
  if (!o.ord_f) return std::nullopt;
  std::optional<long> g;
  ProbeResult r;
  for (const auto& oj : o.ord_j) {
    if (oj && (!g || *oj < *g)) g = *oj;
    r.ord_partials.push_back(oj ? std::optional<Rational>(Rational(*oj)) : std::nullopt);
  }
  if (!g) return std::nullopt;
  r.ord_f = Rational(*o.ord_f);
  r.ord_grad = Rational(*g);
  r.theta = Rational(r.ord_grad / r.ord_f);
  r.exact = true;
  return r;
}

// Laurent polynomial evaluated in logarithmic coordinates z = exp(u).
struct Laurent {
  std::vector<std::pair<Complex, std::vector<int>>> terms;

  Complex value(const std::vector<Complex>& z) const {
    Complex s(0, 0);
    for (const auto& [c, e] : terms) s += c * monomial(z, e);
    return s;
  }
  // d/du_k = z_k d/dz_k
  Complex log_derivative(const std::vector<Complex>& z, int k) const {
    Complex s(0, 0);
    for (const auto& [c, e] : terms) {
      if (e[k] != 0) s += c * static_cast<long double>(e[k]) * monomial(z, e);
    }
    return s;
  }
  static Complex monomial(const std::vector<Complex>& z, const std::vector<int>& e) {
    Complex t(1, 0);
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] > 0) {
        for (int k = 0; k < e[j]; ++k) t *= z[j];
      } else {
        for (int k = 0; k < -e[j]; ++k) t /= z[j];
      }
    }
    return t;
  }
};

// p divided by its first monomial, so the origin is not an attracting solution.
Laurent dehomogenize(const Polynomial& p) {
  Laurent out;
  const ExponentVector& shift = p.terms().begin()->first;
  for (const auto& [e, c] : p.terms()) {
    std::vector<int> d(e.size());
    for (std::size_t j = 0; j < e.size(); ++j) d[j] = e[j] - shift[j];
    out.terms.emplace_back(c.to_complex(), std::move(d));
  }
  return out;
}

// Torus solutions of d f_face / dz_j = 0 (j in unknowns), other variables fixed at 1.
std::vector<std::vector<Complex>> critical_points(const Polynomial& face, const IndexSet& unknowns, int n,
                                                  std::mt19937_64& rng) {
  const std::size_t m = unknowns.size();
  std::vector<Laurent> eqs;
  for (int j : unknowns) {
    Polynomial d = partial_derivative(face, j);
    if (d.is_zero()) return {};
    eqs.push_back(dehomogenize(d));
  }
  std::uniform_real_distribution<double> logmod(-0.8, 0.8);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  std::vector<std::vector<Complex>> found;
  for (int start = 0; start < 12; ++start) {
    std::vector<Complex> u(m);
    for (auto& v : u) v = Complex(logmod(rng), ang(rng));
    std::vector<Complex> z(static_cast<std::size_t>(n), Complex(1, 0));
    auto sync = [&] {
      for (std::size_t k = 0; k < m; ++k) z[unknowns[k]] = std::exp(u[k]);
    };
    sync();
    bool ok = false;
    int polish = 0;
    for (int it = 0; it < 100; ++it) {
      std::vector<Complex> rhs(m);
      std::vector<std::vector<Complex>> a(m, std::vector<Complex>(m));
      for (std::size_t i = 0; i < m; ++i) {
        rhs[i] = -eqs[i].value(z);
        for (std::size_t k = 0; k < m; ++k) a[i][k] = eqs[i].log_derivative(z, unknowns[k]);
      }
      if (!solve_linear(a, rhs)) break;
      long double step = 0;
      for (std::size_t k = 0; k < m; ++k) {
        u[k] += rhs[k];
        step = std::max(step, std::abs(rhs[k]));
      }
      bool finite = std::all_of(u.begin(), u.end(), [](const Complex& v) {
        return std::isfinite(static_cast<double>(v.real())) && std::abs(v.real()) < 40;
      });
      if (!finite) break;
      sync();
      if (step <= 1e-13L && ++polish == 3) {
        ok = true;
        break;
      }
    }
    if (!ok) continue;
    bool dup = std::any_of(found.begin(), found.end(), [&](const std::vector<Complex>& y) {
      long double dmax = 0;
      for (int j : unknowns) dmax = std::max(dmax, std::abs(z[j] - y[j]) / (1 + std::abs(y[j])));
      return dmax < 1e-9L;
    });
    if (!dup) found.push_back(z);
  }
  return found;
}

}  // namespace

SweepResult sweep_monomial_curves(const Polynomial& f, const SweepOptions& options) {
  if (options.budget < 1 || options.samples < 1) throw precondition_error("sweep budgets must be >= 1");
  if (f.is_zero()) throw precondition_error("sweep of the zero polynomial");
  const int n = f.n();
  long double total = std::pow(static_cast<long double>(options.budget), n);
  if (total > static_cast<long double>(options.max_tuples)) {
    throw guard_error("sweep guard exceeded: budget^n = " + std::to_string(static_cast<long long>(total)) + " > " +
                      std::to_string(options.max_tuples));
  }

  std::mt19937_64 rng(options.seed);
  std::vector<std::vector<GaussianRational>> samples;
  for (int s = 0; s < options.samples; ++s) {
    std::vector<GaussianRational> a;
    for (int j = 0; j < n; ++j) a.push_back(random_gaussian(rng));
    samples.push_back(std::move(a));
  }
  std::vector<TermData> terms;
  for (const auto& [e, c] : f.terms()) {
    TermData t{e, {}};
    for (const auto& a : samples) {
      GaussianRational v = c;
      for (int j = 0; j < n; ++j) {
        if (e[j]) v *= pow(a[j], static_cast<unsigned>(e[j]));
      }
      t.values.push_back(std::move(v));
    }
    terms.push_back(std::move(t));
  }

  SweepResult out;
  std::vector<long> p(static_cast<std::size_t>(n), 1);
  std::vector<long> w(terms.size());
  std::vector<int> order(terms.size());
  for (;;) {
    long g = 0;
    for (long v : p) g = std::gcd(g, v);
    if (g == 1) {
      ++out.tuples;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        long s = 0;
        for (int j = 0; j < n; ++j) s += p[j] * terms[i].e[j];
        w[i] = s;
      }
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return w[a] < w[b]; });
      std::optional<ProbeResult> best_here;
      std::size_t best_sample = 0;
      if (coefficient_free(terms, w, order, static_cast<std::size_t>(n))) {
        best_here = result_from(grouped_orders(terms, w, order, p, std::nullopt));
      } else {
        for (std::size_t s = 0; s < samples.size(); ++s) {
          auto r = result_from(grouped_orders(terms, w, order, p, s));
          if (r && (!best_here || r->theta > best_here->theta)) {
            best_here = std::move(r);
            best_sample = s;
          }
        }
      }
      if (best_here && (!out.best || best_here->theta > out.best->result.theta)) {
        std::vector<Integer> weight(p.begin(), p.end());
        std::vector<CurveCoefficient> coeffs;
        for (const auto& a : samples[best_sample]) coeffs.emplace_back(a);
        best_here->truncation_used = Rational(*std::max_element(w.begin(), w.end()));
        out.best = SweepHit{weight, Curve::monomial(weight, coeffs), *best_here};
      }
    }
    int j = n - 1;
    while (j >= 0 && p[j] == options.budget) p[j--] = 1;
    if (j < 0) break;
    ++p[j];
  }

  // Critical-system witnesses on positive cells with a face of dimension >= 1.
  std::optional<DualDiagram> diagram;
  try {
    diagram.emplace(build_dual_diagram(f, options.guard));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Guard) throw;
  }
  if (diagram) {
    for (const auto& cell : diagram->cells()) {
      if (cell.cls != CellClass::Positive || cell.face.dim < 1) continue;
      bool fits = std::all_of(cell.rep.begin(), cell.rep.end(), [&](const Integer& z) { return z <= options.budget; });
      if (!fits) continue;
      Polynomial face = cell_polynomial(*diagram, cell);
      for (int k : cell.var) {
        IndexSet unknowns;
        for (int j : cell.var) {
          if (j != k) unknowns.push_back(j);
        }
        if (unknowns.empty()) continue;
        for (const auto& x : critical_points(face, unknowns, n, rng)) {
          std::vector<CurveCoefficient> coeffs;
          for (const auto& v : x) coeffs.push_back(CurveCoefficient::from_float(v));
          Curve curve = Curve::monomial(cell.rep, coeffs);
          try {
            ProbeResult r = probe(f, curve, {std::nullopt, 1e-9L, options.guard});
            out.critical.push_back({cell.rep, curve, r});
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::Truncation) throw;
          }
        }
      }
    }
    for (const auto& hit : out.critical) {
      if (!out.best || hit.result.theta > out.best->result.theta) out.best = hit;
    }
  }
  return out;
}

}  // namespace loja
