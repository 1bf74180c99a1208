#include "loja/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "loja/error.hpp"

namespace loja {

int total_degree(const ExponentVector& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool GrlexGreater::operator()(const ExponentVector& a, const ExponentVector& b) const {
  int da = total_degree(a);
  int db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

Polynomial::Polynomial(int n) : n_(n) {
  if (n < 1) throw precondition_error("polynomial needs at least one variable");
}

bool Polynomial::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
}

void Polynomial::add_term(const ExponentVector& e, const GaussianRational& c) {
  if (static_cast<int>(e.size()) != n_) throw precondition_error("exponent vector length differs from n");
  if (std::any_of(e.begin(), e.end(), [](int v) { return v < 0; })) {
    throw precondition_error("negative exponent");
  }
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

GaussianRational Polynomial::coefficient(const ExponentVector& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? GaussianRational() : it->second;
}

std::vector<ExponentVector> Polynomial::support() const {
  std::vector<ExponentVector> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) out.push_back(e);
  return out;
}

int Polynomial::max_exponent(int j) const {
  int m = 0;
  for (const auto& [e, c] : terms_) m = std::max(m, e[static_cast<std::size_t>(j)]);
  return m;
}

GaussianRational Polynomial::evaluate(std::span<const GaussianRational> point) const {
  if (static_cast<int>(point.size()) != n_) throw precondition_error("evaluation point has wrong length");
  GaussianRational sum;
  for (const auto& [e, c] : terms_) {
    GaussianRational term = c;
    for (int j = 0; j < n_; ++j) {
      if (e[j] != 0) term *= pow(point[j], static_cast<unsigned>(e[j]));
    }
    sum += term;
  }
  return sum;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.n_ != n_) throw precondition_error("polynomials have different variable counts");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.n_ != b.n_) throw precondition_error("polynomials have different variable counts");
  Polynomial out(a.n_);
  ExponentVector e(static_cast<std::size_t>(a.n_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int j = 0; j < a.n_; ++j) e[j] = ea[j] + eb[j];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text grammar

namespace {

struct ParsedTerm {
  GaussianRational coeff;
  std::map<int, int> powers;  // 1-based variable index -> exponent
};

class TextParser {
 public:
  explicit TextParser(std::string_view text) : s_(text) {}

  std::vector<ParsedTerm> parse() {
    std::vector<ParsedTerm> terms;
    skip_ws();
    if (at_end()) throw ParseError(pos_, "empty polynomial");
    bool negative = false;
    if (int sign = read_sign(); sign != 0) negative = sign < 0;
    terms.push_back(parse_term(negative));
    for (;;) {
      skip_ws();
      if (at_end()) break;
      int sign = read_sign();
      if (sign == 0) throw ParseError(pos_, "expected '+' or '-' between terms");
      skip_ws();
      bool neg = sign < 0;
      if (int extra = read_sign(); extra != 0) neg = (neg != (extra < 0));
      terms.push_back(parse_term(neg));
    }
    return terms;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  // Returns +1, -1 or 0 (no sign). Accepts the UTF-8 minus sign U+2212.
  int read_sign() {
    if (peek() == '+') {
      ++pos_;
      return 1;
    }
    if (peek() == '-') {
      ++pos_;
      return -1;
    }
    if (s_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
      return -1;
    }
    return 0;
  }

  Integer read_int() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError(pos_, "expected integer");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  Rational read_unsigned_rational() {
    std::size_t start = pos_;
    Integer num = read_int();
    skip_ws();
    if (peek() == '/') {
      ++pos_;
      skip_ws();
      std::size_t den_pos = pos_;
      Integer den = read_int();
      if (den == 0) throw ParseError(den_pos, "zero denominator");
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
    (void)start;
    return Rational(num);
  }

  GaussianRational read_complex() {
    ++pos_;  // '('
    skip_ws();
    int sign = read_sign();
    skip_ws();
    Rational re = read_unsigned_rational();
    if (sign < 0) re = -re;
    skip_ws();
    int im_sign = read_sign();
    if (im_sign == 0) throw ParseError(pos_, "expected '+' or '-' in complex coefficient");
    skip_ws();
    Rational im = read_unsigned_rational();
    if (im_sign < 0) im = -im;
    skip_ws();
    if (peek() != 'i') throw ParseError(pos_, "expected 'i' in complex coefficient");
    ++pos_;
    skip_ws();
    if (peek() != ')') throw ParseError(pos_, "expected ')'");
    ++pos_;
    return {re, im};
  }

  ParsedTerm parse_term(bool negative) {
    ParsedTerm term;
    term.coeff = GaussianRational(1);
    bool have_factor = false;
    skip_ws();
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      term.coeff = GaussianRational(read_unsigned_rational());
      have_factor = true;
    } else if (peek() == '(') {
      term.coeff = read_complex();
      have_factor = true;
    }
    for (;;) {
      skip_ws();
      std::size_t save = pos_;
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        if (peek() != 'z') throw ParseError(pos_, "expected variable after '*'");
      }
      if (peek() != 'z') {
        pos_ = save;
        break;
      }
      ++pos_;
      skip_ws();
      std::size_t index_pos = pos_;
      Integer index = read_int();
      if (index == 0) throw ParseError(index_pos, "variable index 0");
      if (!index.fits_sint_p()) throw ParseError(index_pos, "variable index too large");
      int exponent = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        if (peek() == '-' || s_.substr(pos_, 3) == "\xE2\x88\x92") throw ParseError(pos_, "negative exponent");
        std::size_t exp_pos = pos_;
        Integer e = read_int();
        if (!e.fits_sint_p()) throw ParseError(exp_pos, "exponent too large");
        exponent = static_cast<int>(e.get_si());
      }
      term.powers[static_cast<int>(index.get_si())] += exponent;
      have_factor = true;
    }
    if (!have_factor) throw ParseError(pos_, "expected coefficient or variable");
    if (negative) term.coeff = -term.coeff;
    return term;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::optional<int> n) {
  std::vector<ParsedTerm> terms = TextParser(text).parse();
  int highest = 0;
  for (const auto& t : terms) {
    if (!t.powers.empty()) highest = std::max(highest, t.powers.rbegin()->first);
  }
  int dim = n.value_or(std::max(highest, 1));
  if (highest > dim) {
    throw ParseError(0, "variable z" + std::to_string(highest) + " exceeds n=" + std::to_string(dim));
  }
  Polynomial f(dim);
  for (const auto& t : terms) {
    ExponentVector e(static_cast<std::size_t>(dim), 0);
    for (const auto& [var, exp] : t.powers) e[static_cast<std::size_t>(var - 1)] = exp;
    f.add_term(e, t.coeff);
  }
  return f;
}

namespace {

Rational json_rational(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(Integer(std::to_string(v.get<long long>())));
  throw ParseError(0, "expected rational as string \"p/q\" or integer");
}

GaussianRational json_coefficient(const nlohmann::json& v) {
  if (v.is_object()) {
    Rational re = v.contains("re") ? json_rational(v.at("re")) : Rational(0);
    Rational im = v.contains("im") ? json_rational(v.at("im")) : Rational(0);
    return {re, im};
  }
  return GaussianRational(json_rational(v));
}

nlohmann::json coefficient_json(const GaussianRational& c) {
  if (c.is_real()) return to_string(c.re());
  return {{"re", to_string(c.re())}, {"im", to_string(c.im())}};
}

}  // namespace

Polynomial polynomial_from_json(const nlohmann::json& j) {
  try {
    int n = j.at("n").get<int>();
    Polynomial f(n);
    for (const auto& term : j.at("terms")) {
      ExponentVector e = term.at("exp").get<ExponentVector>();
      if (static_cast<int>(e.size()) != n) throw ParseError(0, "term exponent length differs from n");
      if (std::any_of(e.begin(), e.end(), [](int v) { return v < 0; })) throw ParseError(0, "negative exponent");
      f.add_term(e, json_coefficient(term.at("coeff")));
    }
    return f;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(0, std::string("malformed polynomial JSON: ") + ex.what());
  }
}

nlohmann::json to_json(const Polynomial& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back({{"exp", e}, {"coeff", coefficient_json(c)}});
  return {{"n", f.n()}, {"terms", terms}};
}

Polynomial parse_polynomial_any(std::string_view text) {
  std::size_t p = 0;
  while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
  if (p < text.size() && text[p] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
      throw ParseError(ex.byte, "invalid JSON");
    }
    return polynomial_from_json(j);
  }
  return parse_polynomial(text);
}

std::string monomial_string(const ExponentVector& e) {
  std::string out;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] == 0) continue;
    if (!out.empty()) out += "*";
    out += "z" + std::to_string(j + 1);
    if (e[j] != 1) out += "^" + std::to_string(e[j]);
  }
  return out.empty() ? "1" : out;
}

std::string to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    bool constant = total_degree(e) == 0;
    GaussianRational coeff = c;
    bool negative = coeff.is_real() && sgn(coeff.re()) < 0;
    if (negative) coeff = -coeff;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    bool unit = coeff == GaussianRational(1);
    if (constant) {
      out += to_string(coeff);
    } else if (unit) {
      out += monomial_string(e);
    } else {
      out += to_string(coeff) + "*" + monomial_string(e);
    }
  }
  return out;
}

Polynomial restrict_to(const Polynomial& f, const IndexSet& indices) {
  std::vector<bool> keep(static_cast<std::size_t>(f.n()), false);
  for (int i : indices) {
    if (i < 0 || i >= f.n()) throw precondition_error("index outside 1..n");
    keep[static_cast<std::size_t>(i)] = true;
  }
  Polynomial out(f.n());
  for (const auto& [e, c] : f.terms()) {
    bool inside = true;
    for (int j = 0; j < f.n(); ++j) {
      if (e[j] != 0 && !keep[j]) {
        inside = false;
        break;
      }
    }
    if (inside) out.add_term(e, c);
  }
  return out;
}

Polynomial partial_derivative(const Polynomial& f, int j) {
  if (j < 0 || j >= f.n()) throw precondition_error("derivative index outside 1..n");
  Polynomial out(f.n());
  for (const auto& [e, c] : f.terms()) {
    if (e[j] == 0) continue;
    ExponentVector d = e;
    --d[j];
    out.add_term(d, c * GaussianRational(static_cast<long>(e[j])));
  }
  return out;
}

Polynomial power_pullback(const Polynomial& f, std::span<const int> m) {
  if (static_cast<int>(m.size()) != f.n()) throw precondition_error("pullback multiplicity vector has wrong length");
  if (std::any_of(m.begin(), m.end(), [](int v) { return v < 1; })) {
    throw precondition_error("pullback multiplicities must be >= 1");
  }
  Polynomial out(f.n());
  for (const auto& [e, c] : f.terms()) {
    ExponentVector scaled = e;
    for (int j = 0; j < f.n(); ++j) scaled[j] *= m[j];
    out.add_term(scaled, c);
  }
  return out;
}

Polynomial product(std::span<const Polynomial> factors) {
  if (factors.empty()) throw precondition_error("product of an empty list");
  Polynomial out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = out * factors[i];
  return out;
}

Polynomial power(const Polynomial& f, int m) {
  if (m < 1) throw precondition_error("power exponent must be >= 1");
  Polynomial out = f;
  for (int i = 1; i < m; ++i) out = out * f;
  return out;
}

Polynomial face_polynomial(const Polynomial& f, const std::vector<ExponentVector>& points) {
  Polynomial out(f.n());
  for (const auto& p : points) out.add_term(p, f.coefficient(p));
  return out;
}

IndexSet full_index_set(int n) {
  IndexSet s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), 0);
  return s;
}

}  // namespace loja
