#pragma once

#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "loja/curve.hpp"
#include "loja/polynomial.hpp"

namespace loja::testing {

inline std::string corpus_text(const std::string& name) {
  std::ifstream in(std::string(LOJA_CORPUS_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing corpus file " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Polynomial corpus(const std::string& name) { return parse_polynomial_any(corpus_text(name)); }

inline Curve corpus_curve(const std::string& name) {
  return curve_from_json(nlohmann::json::parse(corpus_text(name)));
}

inline Polynomial P(const std::string& text) { return parse_polynomial(text); }

inline Rational Q(const std::string& text) { return parse_rational(text); }

inline WeightVector W(std::vector<long> w) { return WeightVector::from_ints(w); }

inline std::vector<Integer> Z(std::vector<long> w) {
  std::vector<Integer> out;
  for (long v : w) out.emplace_back(v);
  return out;
}

inline Rational random_rational(std::mt19937_64& rng, int num = 5, int den = 4) {
  std::uniform_int_distribution<int> a(-num, num), b(1, den);
  int n = 0;
  while (n == 0) n = a(rng);
  Rational q(n, b(rng));
  q.canonicalize();
  return q;
}

/// Random polynomial: `terms` distinct exponents in [0, max_exp]^n without the constant term.
inline Polynomial random_polynomial(std::mt19937_64& rng, int n, int terms, int max_exp) {
  std::uniform_int_distribution<int> e(0, max_exp);
  Polynomial f(n);
  int guard = 0;
  while (static_cast<int>(f.size()) < terms && guard++ < 1000) {
    ExponentVector v(static_cast<std::size_t>(n));
    for (auto& x : v) x = e(rng);
    if (total_degree(v) == 0 || !f.coefficient(v).is_zero()) continue;
    f.add_term(v, random_rational(rng));
  }
  return f;
}

/// Dense truncated power series with exact rational coefficients, index = t-degree.
using Dense = std::vector<Rational>;

inline Dense dense_mul(const Dense& a, const Dense& b, std::size_t len) {
  Dense c(len, Rational(0));
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

/// Order of f(z(t)) by full dense expansion up to degree len-1, or nullopt if it all cancels.
inline std::optional<int> brute_order(const std::vector<std::pair<ExponentVector, Rational>>& terms,
                                      const std::vector<Dense>& z, std::size_t len) {
  Dense total(len, Rational(0));
  for (const auto& [e, c] : terms) {
    Dense acc(len, Rational(0));
    acc[0] = c;
    for (std::size_t j = 0; j < z.size(); ++j) {
      for (int k = 0; k < e[j]; ++k) acc = dense_mul(acc, z[j], len);
    }
    for (std::size_t i = 0; i < len; ++i) total[i] += acc[i];
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (sgn(total[i]) != 0) return static_cast<int>(i);
  }
  return std::nullopt;
}

/// Terms of f (real coefficients) and of each partial derivative, differentiated here independently.
inline std::vector<std::pair<ExponentVector, Rational>> real_terms(const Polynomial& f) {
  std::vector<std::pair<ExponentVector, Rational>> out;
  for (const auto& [e, c] : f.terms()) out.emplace_back(e, c.re());
  return out;
}

inline std::vector<std::pair<ExponentVector, Rational>> derive(const std::vector<std::pair<ExponentVector, Rational>>& t,
                                                                int j) {
  std::vector<std::pair<ExponentVector, Rational>> out;
  for (auto [e, c] : t) {
    if (e[j] == 0) continue;
    c *= e[j];
    e[j] -= 1;
    out.emplace_back(e, c);
  }
  return out;
}

}  // namespace loja::testing
