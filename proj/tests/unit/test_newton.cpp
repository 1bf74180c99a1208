#include <doctest.h>

#include <algorithm>
#include <set>

#include "loja/error.hpp"
#include "loja/newton.hpp"
#include "support.hpp"

using namespace loja;
using namespace loja::testing;

namespace {

std::set<std::pair<std::vector<long>, long>> facet_set(const Polynomial& f) {
  std::set<std::pair<std::vector<long>, long>> out;
  for (const auto& ft : facets(f)) {
    std::vector<long> nrm;
    for (const auto& z : ft.normal) nrm.push_back(z.get_si());
    out.insert({nrm, ft.offset.get_si()});
  }
  return out;
}

// Independent oracle: scan every primitive weight in [0, K]^n and keep those whose face is (n-1)-dimensional.
std::set<std::vector<long>> scanned_facets(const Polynomial& f, long K) {
  std::set<std::vector<long>> out;
  const int n = f.n();
  std::vector<long> w(static_cast<std::size_t>(n), 0);
  while (true) {
    std::size_t i = 0;
    while (i < w.size() && w[i] == K) w[i++] = 0;
    if (i == w.size()) break;
    ++w[i];
    std::vector<Integer> zw(w.begin(), w.end());
    if (gcd_of(zw) != 1) continue;
    DFace df = d_and_face(W(w), f);
    if (df.face.dim == n - 1) out.insert(w);
  }
  return out;
}

}  // namespace

TEST_CASE("facets of f1 with offsets") {
  auto fs = facet_set(corpus("f1.poly"));
  std::set<std::pair<std::vector<long>, long>> expected{
      {{0, 0, 1}, 0}, {{0, 1, 0}, 0}, {{0, 1, 2}, 2},  {{1, 0, 0}, 0},
      {{2, 0, 5}, 10}, {{2, 1, 0}, 6}, {{8, 7, 6}, 54}, {{10, 9, 6}, 66}};
  CHECK(fs == expected);
}

TEST_CASE("facet lists agree with the weight-scan oracle on corpus items") {
  for (const char* name : {"f1.poly", "ex21.poly", "f2_333.poly", "f3.poly"}) {
    Polynomial f = corpus(name);
    std::set<std::vector<long>> got;
    for (const auto& [nrm, d] : facet_set(f)) got.insert(nrm);
    CHECK_MESSAGE(got == scanned_facets(f, 12), name);
  }
}

TEST_CASE("f4 and g4 facet normals") {
  auto f4 = facet_set(corpus("f4.poly"));
  CHECK(f4.count({{70, 19, 12}, 202}) == 1);
  CHECK(std::none_of(f4.begin(), f4.end(), [](const auto& p) { return p.first == std::vector<long>{100, 91, 81}; }));
  CHECK(d_of(W({100, 91, 81}), corpus("f4.poly")) == 544);
  auto g4 = facet_set(corpus("g4.poly"));
  CHECK(g4.count({{100, 91, 81}, 991}) == 1);
}

TEST_CASE("support domination, scaling, and facet completeness on random polynomials") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> wd(1, 9);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + trial % 2;
    Polynomial f = random_polynomial(rng, n, 2 + trial % 7, 5);
    auto fs = facets(f);
    for (const auto& ft : fs) {
      for (const auto& e : f.support()) CHECK(ft.weight().dot(e) >= ft.offset);
      CHECK(ft.face.dim == n - 1);
    }
    for (int s = 0; s < 20; ++s) {
      std::vector<long> w;
      for (int j = 0; j < n; ++j) w.push_back(wd(rng));
      DFace df = d_and_face(W(w), f);
      Rational lam = Q("7/3");
      DFace scaled = d_and_face(W(w).scaled(lam), f);
      CHECK(scaled.d == lam * df.d);
      CHECK(scaled.face == df.face);
      if (df.face.on_points.size() < 2) continue;
      bool inside = std::any_of(fs.begin(), fs.end(), [&](const Facet& ft) {
        return std::includes(ft.face.on_points.begin(), ft.face.on_points.end(), df.face.on_points.begin(),
                             df.face.on_points.end());
      });
      CHECK(inside);
    }
  }
}

TEST_CASE("every polyhedron vertex is the unique minimizer of a positive weight") {
  std::mt19937_64 rng(99);
  std::vector<Polynomial> polys{corpus("f1.poly"), corpus("g4.poly"), corpus("ex21.poly")};
  for (int i = 0; i < 60; ++i) polys.push_back(random_polynomial(rng, 2 + i % 2, 3 + i % 6, 6));
  for (const auto& f : polys) {
    auto fs = facets(f);
    for (const auto& v : polyhedron_vertices(f, fs)) {
      std::vector<Integer> sum(static_cast<std::size_t>(f.n()), Integer(0));
      int containing = 0;
      for (const auto& ft : fs) {
        if (!std::binary_search(ft.face.on_points.begin(), ft.face.on_points.end(), v.point)) continue;
        ++containing;
        for (int j = 0; j < f.n(); ++j) sum[j] += ft.normal[j];
      }
      CHECK(v.degree == total_degree(v.point));
      CHECK(containing >= f.n());
      std::vector<Integer> witness;
      for (const auto& z : sum) witness.push_back(1000 * z + 1);
      DFace df = d_and_face(WeightVector::from_integers(witness), f);
      CHECK(df.face.on_points == std::vector<ExponentVector>{v.point});
      CHECK(df.face.recession.empty());
    }
  }
}

TEST_CASE("vertex degrees of f1") {
  std::multiset<int> deg;
  for (const auto& v : polyhedron_vertices(corpus("f1.poly"))) deg.insert(total_degree(v.point));
  CHECK(deg == std::multiset<int>{7, 7, 8, 9});
}

TEST_CASE("convenience and axis data") {
  Polynomial ex21 = corpus("ex21.poly");
  CHECK(is_convenient(ex21));
  CHECK(convenience_level(ex21) == 2);
  AxisData ax = axis_data(ex21);
  CHECK(ax.b == std::vector<std::optional<int>>{5, 4, 4});
  CHECK(ax.B == 5);
  CHECK(ax.I_B == IndexSet{0});
  Polynomial f1 = corpus("f1.poly");
  CHECK_FALSE(is_convenient(f1));
  CHECK_FALSE(axis_data(f1).B.has_value());
  CHECK(is_k_convenient(f1, 1));
  CHECK(convenience_level(P("z1*z2")) == 0);
  CHECK(convenience_level(Polynomial(2)) == -1);
}

TEST_CASE("guards and exact linear algebra") {
  Polynomial big(7);
  big.add_term({1, 0, 0, 0, 0, 0, 0}, 1);
  CHECK_THROWS_AS(facets(big), Error);
  Polynomial many(2);
  for (int i = 1; i <= 65; ++i) many.add_term({i, 66 - i}, 1);
  CHECK_THROWS_AS(facets(many), Error);
  CHECK(determinant({{Integer(2), Integer(1)}, {Integer(7), Integer(4)}}) == 1);
  CHECK(rank_of({{Q("1"), Q("2")}, {Q("2"), Q("4")}}) == 1);
}
