#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loja/curve.hpp"
#include "loja/dual.hpp"
#include "loja/tameness.hpp"

namespace loja {

enum class BoundKind { Convenient, General, Refined, Product };
enum class BoundStatus { Certified, Conditional };

std::string to_string(BoundKind k);
std::string to_string(BoundStatus s);

enum class MonomialTag { LojasiewiczNonexceptional, LojasiewiczExceptional, Plain };

std::string to_string(MonomialTag t);

struct AxisMonomial {
  int j = 0;  // 0-based
  int b = 0;
  MonomialTag tag = MonomialTag::Plain;
  std::optional<ExponentVector> witness;  // z_j^{B'} z_k showing exceptionality
};

/// Axis monomials z_j^{b_j}, tagged against B.
std::vector<AxisMonomial> exceptional_monomials(const Polynomial& f);

struct EqualityCertificate {
  int variable = 0;  // 0-based j0
  Curve curve;
  ProbeResult probe;
};

struct CellContribution {
  int cell = 0;
  std::vector<Integer> weight;
  Rational value;
  std::string rule;
};

struct BoundReport {
  BoundKind kind = BoundKind::General;
  std::optional<int> B;  // B, or B~ for products
  std::optional<Rational> theta_tilde;
  std::optional<Rational> L;
  Rational bound;
  std::optional<EqualityCertificate> equality;
  std::vector<CellContribution> per_cell;
  std::vector<Certificate> certificates;
  std::vector<std::string> assumptions;
  std::vector<std::string> notes;
  BoundStatus status = BoundStatus::Certified;
  std::optional<CellContribution> source;  // the contribution attaining the bound
};

struct BoundOptions {
  bool assume_nondegenerate = false;
  bool assume_inv_tame = false;
  GeometryGuard guard;
};

BoundReport bound_convenient(const Polynomial& f, const BoundOptions& options = {});
BoundReport bound_general(const Polynomial& f, const BoundOptions& options = {});
BoundReport refine_bound(const Polynomial& f, const BoundOptions& options = {});

struct ProductFamily {
  std::vector<Polynomial> members;
  std::vector<int> multiplicities;
};

BoundReport bound_product(const ProductFamily& family, const BoundOptions& options = {});

/// (m-1)/m + theta0/m
Rational power_exponent(const Rational& theta0, int m);

enum class Conversion { EtaToTheta, ThetaToEta };
Rational eta_theta_convert(const Rational& value, Conversion direction);

/// Kouchnirenko Newton number for n <= 3, stabilized on missing axes.
Integer milnor_number(const Polynomial& f, const GeometryGuard& guard = {});
/// Newton number of a convenient polynomial.
Integer newton_number(const Polynomial& f, const GeometryGuard& guard = {});

}  // namespace loja
