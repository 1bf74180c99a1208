#include "loja/rational.hpp"

#include <cctype>
#include <cmath>

#include "loja/error.hpp"

namespace loja {

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  auto digits = [&](std::size_t start) {
    std::size_t p = start;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
    if (p == start) throw ParseError(start, "expected digits in rational '" + std::string(text) + "'");
    return p;
  };
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::size_t num_end = digits(pos);
  Integer num(std::string(text.substr(pos, num_end - pos)));
  Integer den(1);
  pos = num_end;
  if (pos < text.size() && text[pos] == '/') {
    std::size_t den_end = digits(pos + 1);
    den = Integer(std::string(text.substr(pos + 1, den_end - pos - 1)));
    if (den == 0) throw ParseError(pos + 1, "zero denominator");
    pos = den_end;
  }
  if (pos != text.size()) throw ParseError(pos, "trailing characters in rational '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

Integer gcd_of(const std::vector<Integer>& values) {
  Integer g(0);
  for (const auto& v : values) {
    Integer a = abs(v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  }
  return g;
}

long double to_long_double(const Rational& q) {
  // A double has 53 bits; take the head and the remainder separately.
  mpf_class f(q, 192);
  long exp = 0;
  double mant = mpf_get_d_2exp(&exp, f.get_mpf_t());
  mpf_class head(mant, 192);
  if (exp >= 0) {
    mpf_mul_2exp(head.get_mpf_t(), head.get_mpf_t(), static_cast<mp_bitcnt_t>(exp));
  } else {
    mpf_div_2exp(head.get_mpf_t(), head.get_mpf_t(), static_cast<mp_bitcnt_t>(-exp));
  }
  mpf_class rest = f - head;
  long exp2 = 0;
  double mant2 = mpf_get_d_2exp(&exp2, rest.get_mpf_t());
  return std::ldexp(static_cast<long double>(mant), static_cast<int>(exp)) +
         std::ldexp(static_cast<long double>(mant2), static_cast<int>(exp2));
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw precondition_error("division by zero");
  Rational n = o.norm();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

GaussianRational pow(const GaussianRational& base, unsigned exponent) {
  GaussianRational result(1);
  GaussianRational b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

std::string to_string(const GaussianRational& c) {
  if (c.is_real()) return to_string(c.re());
  std::string out = "(" + to_string(c.re());
  if (sgn(c.im()) < 0) {
    out += "-" + to_string(Rational(-c.im()));
  } else {
    out += "+" + to_string(c.im());
  }
  return out + "i)";
}

}  // namespace loja
