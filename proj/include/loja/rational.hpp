#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace loja {

using Integer = mpz_class;
using Rational = mpq_class;
using Complex = std::complex<long double>;

/// Canonical text form: "p/q" with q > 1, or "p" for integers.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "p", "-p" or "p/q". Throws ParseError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

Integer gcd_of(const std::vector<Integer>& values);
long double to_long_double(const Rational& q);

/// Exact complex number with rational real and imaginary parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)), im_(0) {}  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  Rational norm() const { return Rational(re_ * re_ + im_ * im_); }
  GaussianRational conj() const { return {re_, -im_}; }
  Complex to_complex() const { return {to_long_double(re_), to_long_double(im_)}; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

 private:
  Rational re_{0};
  Rational im_{0};
};

GaussianRational pow(const GaussianRational& base, unsigned exponent);

/// "3/2", "-1", or "(1/2+3i)" style text; the last form is accepted by the polynomial grammar.
std::string to_string(const GaussianRational& c);

}  // namespace loja
