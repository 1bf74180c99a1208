#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "loja/rational.hpp"

namespace loja {

/// Exponent vector of a monomial; entries are non-negative.
using ExponentVector = std::vector<int>;

/// Sorted set of 0-based variable indices.
using IndexSet = std::vector<int>;

int total_degree(const ExponentVector& e);

/// Graded lexicographic order, larger monomials first.
struct GrlexGreater {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const;
};

/// Sparse polynomial in n variables with Gaussian-rational coefficients.
///
/// Stored terms never carry a zero coefficient, and every exponent vector has
/// length n. Iteration order is graded lexicographic (largest first), which
/// is also the printing order.
class Polynomial {
 public:
  using TermMap = std::map<ExponentVector, GaussianRational, GrlexGreater>;

  explicit Polynomial(int n);

  int n() const { return n_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_real() const;

  /// Adds c*z^e, combining with an existing term and dropping the result if it cancels.
  void add_term(const ExponentVector& e, const GaussianRational& c);
  GaussianRational coefficient(const ExponentVector& e) const;

  std::vector<ExponentVector> support() const;
  int max_exponent(int j) const;

  GaussianRational evaluate(std::span<const GaussianRational> point) const;

  Polynomial& operator+=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  int n_;
  TermMap terms_;
};

/// Parses the text grammar; n is inferred from the highest variable index when omitted.
Polynomial parse_polynomial(std::string_view text, std::optional<int> n = std::nullopt);

/// Parses either the text grammar or the JSON form, chosen by the first non-space byte.
Polynomial parse_polynomial_any(std::string_view text);

Polynomial polynomial_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Polynomial& f);

/// Canonical text; parse_polynomial(to_string(f), f.n()) == f.
std::string to_string(const Polynomial& f);
std::string monomial_string(const ExponentVector& e);

/// f^I: keeps the terms whose exponents vanish outside I.
Polynomial restrict_to(const Polynomial& f, const IndexSet& indices);
Polynomial partial_derivative(const Polynomial& f, int j);
/// Substitutes z_i = w_i^{m_i}.
Polynomial power_pullback(const Polynomial& f, std::span<const int> m);
Polynomial product(std::span<const Polynomial> factors);
Polynomial power(const Polynomial& f, int m);
/// Terms of f whose exponents lie in the given point set.
Polynomial face_polynomial(const Polynomial& f, const std::vector<ExponentVector>& points);

IndexSet full_index_set(int n);

}  // namespace loja
