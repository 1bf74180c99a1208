#include <doctest.h>

#include <algorithm>

#include "loja/error.hpp"
#include "loja/tameness.hpp"
#include "support.hpp"

using namespace loja;
using namespace loja::testing;

namespace {

// Independent re-verification of a certificate against the face polynomial.
void reverify(const DualDiagram& d, const Certificate& c) {
  const DualCell& cell = d.cell(c.cell);
  Polynomial fc = cell_polynomial(d, cell);
  const IndexSet& vars = c.kind == "inv_tame" ? cell.var_inv : cell.var;
  if (c.status == CertStatus::Certified && c.monomial_partial) {
    int j = *c.monomial_partial;
    CHECK(std::binary_search(vars.begin(), vars.end(), j));
    int terms = 0;
    for (const auto& [e, coef] : fc.terms()) terms += e[j] > 0;
    CHECK(terms == 1);
  } else if (c.status == CertStatus::Certified && fc.size() > 1) {
    // Rows independent iff the Gram determinant is nonzero.
    std::vector<std::vector<Integer>> gram;
    for (const auto& [a, ca] : fc.terms()) {
      std::vector<Integer> row;
      for (const auto& [b, cb] : fc.terms()) {
        Integer s(0);
        for (int j : vars) s += Integer(a[j]) * b[j];
        row.push_back(s);
      }
      gram.push_back(row);
    }
    CHECK(determinant(gram) != 0);
  }
  if (c.status == CertStatus::Refuted && c.witness) {
    for (const auto& z : *c.witness) CHECK_FALSE(z.is_zero());
    for (int j : vars) CHECK(partial_derivative(fc, j).evaluate(*c.witness).is_zero());
  }
}

}  // namespace

TEST_CASE("certificates on corpus items re-verify independently") {
  for (const char* name : {"f1.poly", "f2_333.poly", "f3.poly", "ex21.poly", "g4.poly", "f4.poly", "g.poly"}) {
    DualDiagram d = build_dual_diagram(corpus(name));
    for (const auto& cell : d.cells()) {
      if (cell.cls == CellClass::Positive) {
        Certificate a = nondegeneracy_certificate(d, cell);
        reverify(d, a);
        Certificate b = nondegeneracy_certificate(d, cell);
        CHECK(a.status == b.status);
      }
      if (cell.cls != CellClass::Nonvanishing && cell.face.dim >= 1) reverify(d, inv_tame_certificate(d, cell));
    }
  }
}

TEST_CASE("corpus polynomials with monomial partials are certified") {
  DualDiagram d = build_dual_diagram(corpus("f1.poly"));
  for (const auto& cell : d.cells()) {
    if (cell.cls == CellClass::Positive) CHECK(nondegeneracy_certificate(d, cell).status == CertStatus::Certified);
  }
}

TEST_CASE("degenerate face function is refuted with an exact witness") {
  DualDiagram d = build_dual_diagram(P("z1^2 - 2*z1*z2 + z2^2"));
  const DualCell& c = d.cell_of(W({1, 1}));
  Certificate cert = nondegeneracy_certificate(d, c);
  CHECK(cert.status == CertStatus::Refuted);
  REQUIRE(cert.witness);
  reverify(d, cert);
  CHECK(assume(cert, "--assume-nondegenerate").status == CertStatus::Refuted);

  DualDiagram cubic = build_dual_diagram(P("z1^3 + z2^3 + z3^3 - 3*z1*z2*z3"));
  Certificate c3 = nondegeneracy_certificate(cubic, cubic.cell_of(W({1, 1, 1})));
  CHECK(c3.status == CertStatus::Refuted);
  reverify(cubic, c3);
}

TEST_CASE("undecided certificates can be assumed") {
  DualDiagram d = build_dual_diagram(P("z1^2 + z1*z2 + z2^2"));
  const DualCell& c = d.cell_of(W({1, 1}));
  Certificate cert = nondegeneracy_certificate(d, c);
  CHECK(cert.status == CertStatus::Undecided);
  Certificate a = assume(cert, "--assume-nondegenerate");
  CHECK(a.status == CertStatus::Assumed);
  CHECK(a.reason.find("--assume-nondegenerate") != std::string::npos);

  std::vector<std::vector<GaussianRational>> extra{{GaussianRational(1), GaussianRational(1)}};
  CHECK(nondegeneracy_certificate(d, c, extra).status == CertStatus::Undecided);
}

TEST_CASE("extra witness points can refute") {
  // z1^2 + z2^2 has torus critical points of the face function only at the origin; scale a
  // face with a critical point off the grid: (z1 - 3 z2)^2.
  DualDiagram d = build_dual_diagram(P("z1^2 - 6*z1*z2 + 9*z2^2"));
  const DualCell& c = d.cell_of(W({1, 1}));
  CHECK(nondegeneracy_certificate(d, c).status == CertStatus::Undecided);
  std::vector<std::vector<GaussianRational>> extra{{GaussianRational(3), GaussianRational(1)}};
  Certificate cert = nondegeneracy_certificate(d, c, extra);
  CHECK(cert.status == CertStatus::Refuted);
  reverify(d, cert);
}

TEST_CASE("preconditions") {
  DualDiagram d = build_dual_diagram(corpus("f1.poly"));
  const DualCell& nv = d.cell_of(W({0, 1, 0}));
  CHECK_THROWS_AS(inv_tame_certificate(d, nv), Error);
  const DualCell& vanishing = d.cell_of(W({2, 1, 0}));
  CHECK_THROWS_AS(nondegeneracy_certificate(d, vanishing), Error);
}
