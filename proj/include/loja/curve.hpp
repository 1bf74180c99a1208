#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "loja/newton.hpp"
#include "loja/polynomial.hpp"

namespace loja {

/// Coefficient of a curve term: exact, floating, or r^{1/k} * exp(2*pi*i*phase).
class CurveCoefficient {
 public:
  enum class Kind { Exact, Float, Root };

  CurveCoefficient() = default;
  CurveCoefficient(GaussianRational exact);  // NOLINT(google-explicit-constructor)
  static CurveCoefficient from_float(Complex value);
  static CurveCoefficient root(Rational base, int index, Rational phase_turns);

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::Exact; }
  const GaussianRational& exact() const { return exact_; }
  Complex numeric() const;
  bool is_zero() const;

 private:
  Kind kind_ = Kind::Exact;
  GaussianRational exact_;
  Complex value_{0, 0};
  Rational base_;
  int index_ = 1;
  Rational phase_;

  friend nlohmann::json to_json(const CurveCoefficient& c);
};

nlohmann::json to_json(const CurveCoefficient& c);
CurveCoefficient coefficient_from_json(const nlohmann::json& j);

struct CurveTerm {
  CurveCoefficient coeff;
  Rational exp;
};

/// z_j(t) = sum of a * t^p per coordinate; an empty coordinate is identically zero.
class Curve {
 public:
  explicit Curve(std::vector<std::vector<CurveTerm>> coords);
  /// z_j = a_j t^{p_j}.
  static Curve monomial(const std::vector<Integer>& weights, const std::vector<CurveCoefficient>& coeffs);

  int n() const { return static_cast<int>(coords_.size()); }
  const std::vector<std::vector<CurveTerm>>& coords() const { return coords_; }
  bool is_exact() const;
  bool vanishes(int j) const { return coords_[static_cast<std::size_t>(j)].empty(); }
  /// Coordinates that are not identically zero.
  IndexSet support() const;
  /// Leading exponent of a coordinate that is not identically zero.
  const Rational& leading_exponent(int j) const { return coords_[static_cast<std::size_t>(j)].front().exp; }

 private:
  std::vector<std::vector<CurveTerm>> coords_;
};

Curve curve_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Curve& c);

struct ProbeOptions {
  std::optional<Rational> truncation;
  long double tolerance = 1e-9L;
  GeometryGuard guard;
};

struct ProbeResult {
  Rational ord_f;
  Rational ord_grad;
  Rational theta;
  Rational truncation_used;
  bool exact = true;
  long double tolerance = 0;
  std::vector<std::optional<Rational>> ord_partials;  // absent: beyond the truncation
};

/// The default truncation bound for probing f along c.
Rational default_truncation(const Polynomial& f, const Curve& c, const GeometryGuard& guard = {});

ProbeResult probe(const Polynomial& f, const Curve& c, const ProbeOptions& options = {});

/// Pads coordinates outside I with t^N; N = floor(T) + 1 when not given.
Curve lift_subspace_curve(const Polynomial& f, const Curve& c, const IndexSet& I, std::optional<int> N = std::nullopt,
                          const ProbeOptions& options = {});

struct SweepHit {
  std::vector<Integer> weight;
  Curve curve;
  ProbeResult result;
};

struct SweepResult {
  std::optional<SweepHit> best;
  std::vector<SweepHit> critical;  // probes at solutions of face critical systems
  long tuples = 0;
};

struct SweepOptions {
  int budget = 1;
  int samples = 1;
  long max_tuples = 5'000'000;
  std::uint64_t seed = 20240601;
  GeometryGuard guard;
};

SweepResult sweep_monomial_curves(const Polynomial& f, const SweepOptions& options);

}  // namespace loja
