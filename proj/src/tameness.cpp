#include "loja/tameness.hpp"

#include "loja/error.hpp"

namespace loja {

std::string to_string(CertStatus s) {
  switch (s) {
    case CertStatus::Certified:
      return "certified";
    case CertStatus::Refuted:
      return "refuted";
    case CertStatus::Undecided:
      return "undecided";
    case CertStatus::Assumed:
      return "assumed";
  }
  return "?";
}

namespace {

std::string vars_string(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i] + 1);
  }
  return out + "}";
}

// Exponents restricted to the given coordinates, tested for linear independence.
bool projected_independent(const Polynomial& face, const IndexSet& coords) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& [e, c] : face.terms()) {
    std::vector<Rational> row;
    for (int j : coords) row.emplace_back(e[j]);
    rows.push_back(std::move(row));
  }
  return rank_of(rows) == static_cast<int>(rows.size());
}

bool all_vanish(const std::vector<Polynomial>& partials, const std::vector<GaussianRational>& point) {
  for (const auto& p : partials) {
    if (!p.evaluate(point).is_zero()) return false;
  }
  return true;
}

// Exact search over {±1, ±2, ±1/2} on the given variables; the rest stay 1.
std::optional<std::vector<GaussianRational>> grid_search(const std::vector<Polynomial>& partials, int n,
                                                        const IndexSet& vars, WitnessPoints extra) {
  for (const auto& pt : extra) {
    if (static_cast<int>(pt.size()) != n) throw precondition_error("witness point has wrong length");
    bool torus = true;
    for (const auto& c : pt) torus &= !c.is_zero();
    if (torus && all_vanish(partials, pt)) return pt;
  }
  static const Rational grid[] = {Rational(1), Rational(-1), Rational(2), Rational(-2), Rational(1, 2), Rational(-1, 2)};
  constexpr std::size_t g = std::size(grid);
  std::vector<std::size_t> idx(vars.size(), 0);
  std::vector<GaussianRational> point(static_cast<std::size_t>(n), GaussianRational(1));
  for (;;) {
    for (std::size_t k = 0; k < vars.size(); ++k) point[static_cast<std::size_t>(vars[k])] = grid[idx[k]];
    if (all_vanish(partials, point)) return point;
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == g) idx[k++] = 0;
    if (k == idx.size()) return std::nullopt;
  }
}

}  // namespace

Certificate inv_tame_certificate(const DualDiagram& diagram, const DualCell& cell, WitnessPoints extra) {
  if (cell.cls == CellClass::Nonvanishing) throw precondition_error("inv-tameness of a non-vanishing cell");
  if (cell.face.dim < 1) throw precondition_error("inv-tameness needs a face of dimension >= 1");
  Certificate cert;
  cert.kind = "inv_tame";
  cert.cell = cell.id;
  if (cell.var_inv.empty()) {
    cert.status = CertStatus::Refuted;
    cert.reason = "invulnerable variable set empty";
    return cert;
  }
  Polynomial fp = cell_polynomial(diagram, cell);
  std::vector<Polynomial> partials;
  for (int j : cell.var_inv) {
    Polynomial d = partial_derivative(fp, j);
    if (d.size() == 1) {
      cert.status = CertStatus::Certified;
      cert.monomial_partial = j;
      cert.reason = "monomial partial df_P/dz" + std::to_string(j + 1) + " = " + to_string(d);
      return cert;
    }
    partials.push_back(std::move(d));
  }
  if (projected_independent(fp, cell.var_inv)) {
    cert.status = CertStatus::Certified;
    cert.reason = "exponents independent on invulnerable variables " + vars_string(cell.var_inv);
    return cert;
  }
  if (auto w = grid_search(partials, diagram.n(), cell.var, extra)) {
    cert.status = CertStatus::Refuted;
    cert.reason = "exact torus witness point";
    cert.witness = std::move(w);
    return cert;
  }
  cert.status = CertStatus::Undecided;
  cert.reason = "no sufficient criterion fired and grid search found no critical point";
  return cert;
}

Certificate nondegeneracy_certificate(const DualDiagram& diagram, const DualCell& cell, WitnessPoints extra) {
  if (cell.cls != CellClass::Positive) throw precondition_error("non-degeneracy is checked on positive cells");
  Certificate cert;
  cert.kind = "nondegenerate";
  cert.cell = cell.id;
  Polynomial fp = cell_polynomial(diagram, cell);
  if (fp.size() == 1) {
    cert.status = CertStatus::Certified;
    cert.reason = "face function is a single monomial";
    return cert;
  }
  for (int j : cell.var) {
    Polynomial d = partial_derivative(fp, j);
    if (d.size() == 1) {
      cert.status = CertStatus::Certified;
      cert.monomial_partial = j;
      cert.reason = "monomial partial df_P/dz" + std::to_string(j + 1) + " = " + to_string(d);
      return cert;
    }
  }
  if (projected_independent(fp, full_index_set(diagram.n()))) {
    cert.status = CertStatus::Certified;
    cert.reason = "face exponents linearly independent";
    return cert;
  }
  std::vector<Polynomial> partials;
  for (int j : cell.var) partials.push_back(partial_derivative(fp, j));
  if (auto w = grid_search(partials, diagram.n(), cell.var, extra)) {
    cert.status = CertStatus::Refuted;
    cert.reason = "exact torus critical point";
    cert.witness = std::move(w);
    return cert;
  }
  cert.status = CertStatus::Undecided;
  cert.reason = "no sufficient criterion fired and grid search found no critical point";
  return cert;
}

Certificate assume(Certificate c, const std::string& flag) {
  if (c.status == CertStatus::Undecided) {
    c.status = CertStatus::Assumed;
    c.reason = "user flag " + flag;
  }
  return c;
}

}  // namespace loja
