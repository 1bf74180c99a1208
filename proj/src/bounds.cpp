#include "loja/bounds.hpp"

#include <algorithm>

#include "loja/error.hpp"

namespace loja {

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::Convenient:
      return "convenient";
    case BoundKind::General:
      return "general";
    case BoundKind::Refined:
      return "refined";
    case BoundKind::Product:
      return "product";
  }
  return "?";
}

std::string to_string(BoundStatus s) { return s == BoundStatus::Certified ? "certified" : "conditional"; }

std::string to_string(MonomialTag t) {
  switch (t) {
    case MonomialTag::LojasiewiczNonexceptional:
      return "lojasiewicz_nonexceptional";
    case MonomialTag::LojasiewiczExceptional:
      return "lojasiewicz_exceptional";
    case MonomialTag::Plain:
      return "plain";
  }
  return "?";
}

namespace {

void require_germ(const Polynomial& f) {
  if (f.is_zero()) throw precondition_error("bound of the zero polynomial");
  if (!f.coefficient(ExponentVector(static_cast<std::size_t>(f.n()), 0)).is_zero()) {
    throw precondition_error("f(0) != 0: the germ does not vanish at the origin");
  }
}

std::string var_name(int j) { return "z" + std::to_string(j + 1); }

// Certificates consumed by the polyhedral bounds, with assumption flags applied.
void consume_certificates(const DualDiagram& diagram, const BoundOptions& options, BoundReport& report,
                          bool inv_tame) {
  bool used_nd = false;
  bool used_it = false;
  for (const auto& cell : diagram.cells()) {
    if (cell.cls == CellClass::Positive) {
      Certificate c = nondegeneracy_certificate(diagram, cell);
      if (options.assume_nondegenerate && c.status == CertStatus::Undecided) {
        c = assume(std::move(c), "--assume-nondegenerate");
        used_nd = true;
      }
      report.certificates.push_back(std::move(c));
    }
    if (inv_tame && cell.cls != CellClass::Nonvanishing && cell.face.dim >= 1) {
      Certificate c = inv_tame_certificate(diagram, cell);
      if (options.assume_inv_tame && c.status == CertStatus::Undecided) {
        c = assume(std::move(c), "--assume-inv-tame");
        used_it = true;
      }
      report.certificates.push_back(std::move(c));
    }
  }
  if (used_nd) report.assumptions.push_back("non-degeneracy assumed (--assume-nondegenerate)");
  if (used_it) report.assumptions.push_back("strong inv-tameness assumed (--assume-inv-tame)");
  report.status = BoundStatus::Certified;
  for (const auto& c : report.certificates) {
    if (c.status != CertStatus::Certified && c.status != CertStatus::Assumed) report.status = BoundStatus::Conditional;
  }
}

void pick_source(BoundReport& report) {
  for (const auto& c : report.per_cell) {
    if (c.value == report.bound) {
      report.source = c;
      return;
    }
  }
}

Rational region_value(const DualCell& cell) {
  return Rational(1) - Rational(1, total_degree(cell.face.on_points.front()));
}

std::optional<EqualityCertificate> equality_witness(const Polynomial& f, const std::vector<AxisMonomial>& axis,
                                                    int B, const GeometryGuard& guard) {
  for (const auto& m : axis) {
    if (m.tag != MonomialTag::LojasiewiczNonexceptional) continue;
    std::vector<std::vector<CurveTerm>> coords;
    for (int j = 0; j < f.n(); ++j) {
      Rational e = j == m.j ? Rational(1) : Rational(B + 1);
      coords.push_back({CurveTerm{GaussianRational(1), e}});
    }
    Curve c(std::move(coords));
    ProbeOptions po;
    po.guard = guard;
    ProbeResult r = probe(f, c, po);
    if (r.theta != Rational(1) - Rational(1, B)) {
      throw std::logic_error("equality witness curve does not attain 1 - 1/B");
    }
    return EqualityCertificate{m.j, std::move(c), std::move(r)};
  }
  return std::nullopt;
}

}  // namespace

std::vector<AxisMonomial> exceptional_monomials(const Polynomial& f) {
  AxisData ax = axis_data(f);
  if (!ax.B) throw precondition_error("f has no axis monomial");
  const int B = *ax.B;
  std::vector<AxisMonomial> out;
  for (int j = 0; j < f.n(); ++j) {
    if (!ax.b[j]) continue;
    AxisMonomial m{j, *ax.b[j], MonomialTag::Plain, std::nullopt};
    if (m.b == B) {
      m.tag = MonomialTag::LojasiewiczNonexceptional;
      for (const auto& [e, c] : f.terms()) {
        if (e[j] >= B - 1) continue;
        int others = 0;
        bool linear = true;
        for (int k = 0; k < f.n(); ++k) {
          if (k == j || e[k] == 0) continue;
          others += e[k];
          linear &= e[k] == 1;
        }
        if (others == 1 && linear) {
          m.tag = MonomialTag::LojasiewiczExceptional;
          m.witness = e;
          break;
        }
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

BoundReport bound_convenient(const Polynomial& f, const BoundOptions& options) {
  require_germ(f);
  if (!is_convenient(f)) throw precondition_error("f is not convenient");
  BoundReport report;
  report.kind = BoundKind::Convenient;
  AxisData ax = axis_data(f);
  report.B = *ax.B;
  report.bound = Rational(1) - Rational(1, *ax.B);
  DualDiagram diagram = build_dual_diagram(f, options.guard);
  consume_certificates(diagram, options, report, false);
  auto axis = exceptional_monomials(f);
  report.equality = equality_witness(f, axis, *ax.B, options.guard);
  if (!report.equality) {
    report.notes.push_back("every Lojasiewicz monomial is exceptional; the bound may be strict");
  }
  return report;
}

BoundReport bound_general(const Polynomial& f, const BoundOptions& options) {
  require_germ(f);
  DualDiagram diagram = build_dual_diagram(f, options.guard);
  BoundReport report;
  report.kind = BoundKind::General;
  for (const auto& cell : diagram.cells()) {
    if (cell.is_facet_vertex() && cell.cls != CellClass::Nonvanishing) {
      Rational v = theta_prime(diagram, cell);
      if (!report.theta_tilde || v > *report.theta_tilde) report.theta_tilde = v;
      report.per_cell.push_back({cell.id, cell.rep, v, "theta_prime"});
    }
  }
  for (const auto& cell : diagram.cells()) {
    if (cell.is_region()) {
      Rational v = region_value(cell);
      if (!report.L || v > *report.L) report.L = v;
      report.per_cell.push_back({cell.id, cell.rep, v, "region " + monomial_string(cell.face.on_points.front())});
    }
  }
  report.bound = std::max(report.theta_tilde.value_or(Rational(0)), report.L.value_or(Rational(0)));
  consume_certificates(diagram, options, report, true);
  pick_source(report);
  return report;
}

BoundReport refine_bound(const Polynomial& f, const BoundOptions& options) {
  require_germ(f);
  DualDiagram diagram = build_dual_diagram(f, options.guard);
  BoundReport general = bound_general(f, options);
  BoundReport report;
  report.kind = BoundKind::Refined;
  report.theta_tilde = general.theta_tilde;
  report.L = general.L;
  const Polynomial& poly = diagram.polynomial();

  for (const auto& cell : diagram.cells()) {
    if (cell.cls == CellClass::Nonvanishing) continue;
    if (cell.is_region()) {
      report.per_cell.push_back({cell.id, cell.rep, region_value(cell),
                                 "region " + monomial_string(cell.face.on_points.front())});
      continue;
    }
    std::vector<const DualCell*> rays;
    for (int r : cell.ray_cells) {
      const DualCell& q = diagram.cell(r);
      if (q.cls != CellClass::Nonvanishing) rays.push_back(&q);
    }
    if (rays.empty()) throw std::logic_error("cell without a vanishing or positive extreme ray");
    if (cell.var_inv.empty()) {
      if (cell.is_facet_vertex()) theta_prime(diagram, cell);  // throws the hypothesis error
      Rational v(0);
      for (const auto* q : rays) v = std::max(v, theta_prime(diagram, *q));
      report.per_cell.push_back({cell.id, cell.rep, v, "empty invulnerable set; max theta' of rays"});
      report.notes.push_back("cell " + to_string(cell.weight()) + " has an empty invulnerable set");
      continue;
    }
    std::vector<WeightVector> hats;
    for (const auto* q : rays) hats.push_back(normalize(q->weight(), poly));
    Polynomial fc = cell_polynomial(diagram, cell);
    std::optional<Rational> best;
    std::optional<int> best_j;
    for (int j : cell.var_inv) {
      if (partial_derivative(fc, j).size() != 1) continue;
      Rational v(0);
      for (const auto& h : hats) v = std::max(v, Rational(1 - h[j]));
      if (!best || v < *best) {
        best = v;
        best_j = j;
      }
    }
    if (best) {
      report.per_cell.push_back({cell.id, cell.rep, *best, "monomial partial d/d" + var_name(*best_j)});
      continue;
    }
    Rational v(0);
    for (const auto& h : hats) {
      Rational lo = h[cell.var_inv.front()];
      for (int j : cell.var_inv) lo = std::min(lo, h[j]);
      v = std::max(v, Rational(1 - lo));
    }
    report.per_cell.push_back({cell.id, cell.rep, v, "invulnerable minimum over rays"});
  }
  report.bound = Rational(0);
  for (const auto& c : report.per_cell) report.bound = std::max(report.bound, c.value);
  if (report.bound > general.bound) throw std::logic_error("refined bound exceeds the general bound");
  report.certificates = std::move(general.certificates);
  report.assumptions = std::move(general.assumptions);
  report.status = general.status;
  for (const auto& c : report.certificates) {
    if (c.status == CertStatus::Refuted) report.status = BoundStatus::Conditional;
  }
  pick_source(report);
  return report;
}

BoundReport bound_product(const ProductFamily& family, const BoundOptions& options) {
  if (family.members.empty()) throw precondition_error("product family needs at least one member");
  if (family.multiplicities.size() != family.members.size()) {
    throw precondition_error("one multiplicity per member is required");
  }
  const int n = family.members.front().n();
  for (std::size_t a = 0; a < family.members.size(); ++a) {
    const Polynomial& f = family.members[a];
    if (f.n() != n) throw precondition_error("product members must share n");
    if (family.multiplicities[a] < 1) throw precondition_error("multiplicities must be positive");
    require_germ(f);
    if (!is_convenient(f)) throw precondition_error("product member " + std::to_string(a + 1) + " is not convenient");
  }
  BoundReport report;
  report.kind = BoundKind::Product;
  std::vector<long> bt(static_cast<std::size_t>(n), 0);
  for (std::size_t a = 0; a < family.members.size(); ++a) {
    AxisData ax = axis_data(family.members[a]);
    for (int j = 0; j < n; ++j) bt[j] += static_cast<long>(family.multiplicities[a]) * *ax.b[j];
  }
  long Bt = *std::max_element(bt.begin(), bt.end());
  report.B = static_cast<int>(Bt);
  report.bound = Rational(1) - Rational(1, Bt);

  if (family.members.size() == 1) {
    DualDiagram diagram = build_dual_diagram(family.members.front(), options.guard);
    consume_certificates(diagram, options, report, false);
  } else if (options.assume_nondegenerate) {
    report.assumptions.push_back("complete-intersection non-degeneracy assumed (--assume-nondegenerate)");
    report.status = BoundStatus::Certified;
  } else {
    report.notes.push_back("complete-intersection non-degeneracy of the family is not checked");
    report.status = BoundStatus::Conditional;
  }

  std::vector<Polynomial> factors;
  for (std::size_t a = 0; a < family.members.size(); ++a) {
    factors.push_back(power(family.members[a], family.multiplicities[a]));
  }
  Polynomial g = product(factors);
  auto axis = exceptional_monomials(g);
  report.equality = equality_witness(g, axis, static_cast<int>(Bt), options.guard);
  if (!report.equality) report.notes.push_back("no non-exceptional Lojasiewicz monomial in the product");
  return report;
}

Rational power_exponent(const Rational& theta0, int m) {
  if (sgn(theta0) < 0 || theta0 >= 1) throw precondition_error("theta0 must lie in [0,1)");
  if (m < 1) throw precondition_error("m must be >= 1");
  return Rational(Rational(m - 1, m) + theta0 / m);
}

Rational eta_theta_convert(const Rational& value, Conversion direction) {
  if (direction == Conversion::EtaToTheta) {
    if (sgn(value) < 0) throw precondition_error("eta0 must be >= 0");
    return Rational(value / (1 + value));
  }
  if (sgn(value) < 0 || value >= 1) throw precondition_error("theta0 must lie in [0,1)");
  return Rational(value / (1 - value));
}

// ---------------------------------------------------------------------------
// Newton number

namespace {

using Pt2 = std::pair<long, long>;

long cross(const Pt2& o, const Pt2& a, const Pt2& b) {
  return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

// Indices of the convex hull in counter-clockwise order (Andrew's monotone chain).
std::vector<std::size_t> hull(const std::vector<Pt2>& pts) {
  std::vector<std::size_t> idx(pts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
  if (idx.size() < 3) return idx;
  std::vector<std::size_t> h(2 * idx.size());
  std::size_t k = 0;
  for (std::size_t i : idx) {
    while (k >= 2 && cross(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  for (std::size_t t = idx.size() - 1, lo = k + 1; t-- > 0;) {
    std::size_t i = idx[t];
    while (k >= lo && cross(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  return h;
}

// |I|! * Vol(Gamma_-(g)) for a convenient g in k <= 3 variables.
Integer normalized_volume(const Polynomial& g, const GeometryGuard& guard) {
  const int k = g.n();
  if (k == 1) return Integer(g.terms().rbegin()->first[0]);
  Integer total(0);
  for (const auto& facet : facets(g, guard)) {
    bool compact = std::all_of(facet.normal.begin(), facet.normal.end(), [](const Integer& z) { return sgn(z) > 0; });
    if (!compact) continue;
    const auto& pts = facet.face.on_points;
    if (k == 2) {
      const auto& a = pts.front();
      const auto& b = pts.back();
      Integer det = Integer(a[0]) * b[1] - Integer(a[1]) * b[0];
      total += abs(det);
      continue;
    }
    std::vector<Pt2> flat;
    for (const auto& p : pts) flat.emplace_back(p[0], p[1]);
    auto h = hull(flat);
    for (std::size_t i = 1; i + 1 < h.size(); ++i) {
      std::vector<std::vector<Integer>> m;
      for (std::size_t idx : {h[0], h[i], h[i + 1]}) {
        m.push_back({Integer(pts[idx][0]), Integer(pts[idx][1]), Integer(pts[idx][2])});
      }
      total += abs(determinant(m));
    }
  }
  return total;
}

}  // namespace

Integer newton_number(const Polynomial& f, const GeometryGuard& guard) {
  const int n = f.n();
  if (n > 3) throw precondition_error("Newton number is implemented for n <= 3");
  require_germ(f);
  if (!is_convenient(f)) throw precondition_error("Newton number needs a convenient polynomial");
  Integer nu = (n % 2 == 0) ? Integer(1) : Integer(-1);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    IndexSet I;
    for (int j = 0; j < n; ++j) {
      if (mask & (1u << j)) I.push_back(j);
    }
    const int k = static_cast<int>(I.size());
    Polynomial g(k);
    Polynomial fi = restrict_to(f, I);
    for (const auto& [e, c] : fi.terms()) {
      ExponentVector p;
      for (int j : I) p.push_back(e[j]);
      g.add_term(p, c);
    }
    Integer v = normalized_volume(g, guard);
    nu += ((n - k) % 2 == 0) ? v : Integer(-v);
  }
  return nu;
}

Integer milnor_number(const Polynomial& f, const GeometryGuard& guard) {
  if (f.n() > 3) throw precondition_error("Milnor number is implemented for n <= 3");
  require_germ(f);
  if (is_convenient(f)) return newton_number(f, guard);
  AxisData ax = axis_data(f);
  auto padded = [&](int N) {
    Polynomial g = f;
    for (int j = 0; j < f.n(); ++j) {
      if (ax.b[j]) continue;
      ExponentVector e(static_cast<std::size_t>(f.n()), 0);
      e[j] = N;
      g.add_term(e, GaussianRational(1));
    }
    return newton_number(g, guard);
  };
  for (int N : {25, 32, 64}) {
    Integer a = padded(N);
    if (a == padded(N + 7)) return a;
  }
  throw guard_error("Milnor number did not stabilize for N in {25, 32, 64}");
}

}  // namespace loja
