#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "loja/dual.hpp"

namespace loja {

enum class CertStatus { Certified, Refuted, Undecided, Assumed };

std::string to_string(CertStatus s);

struct Certificate {
  CertStatus status = CertStatus::Undecided;
  std::string kind;    // "nondegenerate" or "inv_tame"
  std::string reason;
  int cell = -1;
  std::optional<int> monomial_partial;                 // 0-based variable with a monomial partial
  std::optional<std::vector<GaussianRational>> witness;  // exact torus point (all n coordinates)
};

/// Extra torus points tried during refutation, in addition to the built-in grid.
using WitnessPoints = std::span<const std::vector<GaussianRational>>;

/// Strong inv-tameness of f for the cell: no critical point in the invulnerable variables.
Certificate inv_tame_certificate(const DualDiagram& diagram, const DualCell& cell, WitnessPoints extra = {});

/// Non-degeneracy of the face function of a strictly positive cell.
Certificate nondegeneracy_certificate(const DualDiagram& diagram, const DualCell& cell, WitnessPoints extra = {});

/// Upgrades an Undecided certificate to Assumed; other states are left unchanged.
Certificate assume(Certificate c, const std::string& flag);

}  // namespace loja
