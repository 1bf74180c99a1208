#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "../unit/support.hpp"
#include "loja/bounds.hpp"
#include "loja/dual.hpp"
#include "loja/error.hpp"

using namespace loja;
using namespace loja::testing;

namespace {

// Exact results compare with tolerance 0; probes use this coefficient-zero tolerance.
constexpr long double kProbeTolerance = 1e-9L;
constexpr double kItemSeconds = 5.0;

class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) failed_.push_back(what);
  }
  template <class A, class B>
  void equal(const A& actual, const B& expected, const std::string& what) {
    bool ok = actual == expected;
    std::ostringstream s;
    if (!ok) s << what << " (got " << show(actual) << ", want " << show(expected) << ")";
    expect(ok, s.str());
  }
  bool ok() const { return failed_.empty(); }
  int total() const { return total_; }
  const std::vector<std::string>& failed() const { return failed_; }

 private:
  static std::string show(const Rational& q) { return to_string(q); }
  static std::string show(const Integer& z) { return z.get_str(); }
  static std::string show(long v) { return std::to_string(v); }
  static std::string show(int v) { return std::to_string(v); }
  static std::string show(std::size_t v) { return std::to_string(v); }
  static std::string show(const std::vector<Integer>& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + w[i].get_str();
    return s + ")";
  }
  static std::string show(const std::multiset<Rational>& v) {
    std::string s = "{";
    bool first = true;
    for (const auto& q : v) {
      s += (first ? "" : ", ") + to_string(q);
      first = false;
    }
    return s + "}";
  }
  static std::string show(const std::set<Rational>& v) { return show(std::multiset<Rational>(v.begin(), v.end())); }

  int total_ = 0;
  std::vector<std::string> failed_;
};

ProbeOptions probe_options() {
  ProbeOptions o;
  o.tolerance = kProbeTolerance;
  return o;
}

std::multiset<Rational> Rs(std::initializer_list<const char*> v) {
  std::multiset<Rational> out;
  for (const char* s : v) out.insert(Q(s));
  return out;
}

// 1. f1 diagram, vertex and region values, both bounds, sweep.
void criterion_f1(Checks& c) {
  Polynomial f1 = corpus("f1.poly");
  DualDiagram d = build_dual_diagram(f1);
  auto count = [&](int k) {
    return d.count(k, CellClass::Positive) + d.count(k, CellClass::Vanishing) + d.count(k, CellClass::Nonvanishing);
  };
  c.equal(count(1), 8, "vertex cells");
  c.equal(count(2), 11, "edge cells");
  c.equal(count(3), 4, "full cells");
  std::set<Rational> thetas;
  std::multiset<Rational> regions;
  for (const auto& cell : d.cells()) {
    if (cell.is_facet_vertex() && cell.cls != CellClass::Nonvanishing) thetas.insert(theta_prime(d, cell));
    if (cell.is_region()) {
      int deg = total_degree(cell.face.on_points.front());
      Rational v(deg - 1, deg);
      v.canonicalize();
      regions.insert(v);
    }
  }
  auto want = Rs({"10/11", "8/9", "1/2", "4/5", "5/6"});
  c.equal(thetas, std::set<Rational>(want.begin(), want.end()), "vertex theta' set");
  c.equal(regions, Rs({"6/7", "6/7", "7/8", "8/9"}), "region values");
  c.equal(bound_general(f1).bound, Q("10/11"), "bound_general");
  c.equal(refine_bound(f1).bound, Q("8/9"), "refine_bound");
  SweepOptions so;
  so.budget = 66;
  so.samples = 8;
  SweepResult sw = sweep_monomial_curves(f1, so);
  bool found = false;
  for (const auto& h : sw.critical) found = found || h.result.theta == Q("8/9");
  if (sw.best) found = found || sw.best->result.theta == Q("8/9");
  c.expect(found, "sweep(66) probe with theta = 8/9");
}

// 2. Normalized facet-vertex weights of f1.
void criterion_normalized(Checks& c) {
  Polynomial f1 = corpus("f1.poly");
  DualDiagram d = build_dual_diagram(f1);
  std::set<std::vector<Rational>> got;
  for (const auto& cell : d.cells()) {
    if (!cell.is_facet_vertex() || cell.cls == CellClass::Nonvanishing) continue;
    WeightVector hat = normalize(cell.weight(), f1);
    got.insert(hat.entries());
  }
  std::set<std::vector<Rational>> want;
  for (auto v : std::vector<std::vector<const char*>>{{"5/33", "3/22", "1/11"},
                                                  {"4/27", "7/54", "1/9"},
                                                  {"0", "1/2", "1"},
                                                  {"1/5", "0", "1/2"},
                                                  {"1/3", "1/6", "0"}}) {
    std::vector<Rational> w;
    for (const char* s : v) w.push_back(Q(s));
    want.insert(w);
  }
  c.expect(got == want, "normalized facet-vertex weights");
}

// 3. f2 with a = b = c = 3.
void criterion_f2(Checks& c) {
  Polynomial f2 = corpus("f2_333.poly");
  BoundReport r = refine_bound(f2);
  Rational frac(3 * 3 - 2 * 3 + 4, 3 * 3 * 3 + 8);
  frac.canonicalize();
  c.equal(r.bound, Q("4/5"), "refine_bound");
  c.equal(r.bound, Rational(1 - frac), "closed formula");
  DualDiagram d = build_dual_diagram(f2);
  int vanishing = 0;
  for (const auto& pc : r.per_cell) {
    const DualCell& cell = d.cell(pc.cell);
    if (!cell.is_facet_vertex() || cell.cls != CellClass::Vanishing) continue;
    ++vanishing;
    c.equal(pc.value, Q("1/2"), "vanishing vertex contribution");
    c.expect(pc.rule.rfind("monomial partial", 0) == 0, "vanishing vertex uses a monomial partial");
  }
  c.expect(vanishing > 0, "vanishing facet vertices present");
}

// 4. f3 bounds and the lifted subspace curve.
void criterion_f3(Checks& c) {
  Polynomial f3 = corpus("f3.poly");
  c.equal(bound_general(f3).bound, Q("5/6"), "bound_general");
  c.equal(refine_bound(f3).bound, Q("5/6"), "refine_bound");
  Curve sub = corpus_curve("f3_subspace.curve.json");
  for (int N : {7, 8, 10, 15}) {
    Rational theta = probe(f3, lift_subspace_curve(f3, sub, {0, 1}, N), probe_options()).theta;
    c.equal(theta, Q("5/6"), "lift probe N=" + std::to_string(N));
  }
}

// 5. Axis data and the convenient bound of the exceptional example.
void criterion_ex21(Checks& c) {
  Polynomial f = corpus("ex21.poly");
  BoundReport r = bound_convenient(f);
  c.expect(r.B && *r.B == 5, "B = 5");
  auto ax = exceptional_monomials(f);
  bool flagged = false;
  for (const auto& a : ax) {
    if (a.j == 0 && a.b == 5 && a.tag == MonomialTag::LojasiewiczExceptional && a.witness == ExponentVector{3, 1, 0}) {
      flagged = true;
    }
  }
  c.expect(flagged, "z1^5 exceptional with witness z1^3 z2");
  c.equal(r.bound, Q("4/5"), "bound_convenient");
  c.expect(!r.equality.has_value(), "no equality certificate");
}

// 6. Power pullback and the moduli member g.
void criterion_pullback(Checks& c) {
  Polynomial f1 = corpus("f1.poly");
  std::vector<int> m{2, 2, 2};
  Polynomial pb = power_pullback(f1, m);
  c.expect(pb == corpus("f1_pullback2.poly"), "pullback matches corpus");
  c.equal(refine_bound(pb).bound, Q("17/18"), "pullback refine_bound");
  Polynomial g = corpus("g.poly");
  c.expect(g == pb + P("z1^3*z2^6*z3^8"), "g = pullback + w1^3 w2^6 w3^8");
  BoundReport r = refine_bound(g);
  c.equal(r.bound, Q("21/22"), "g refine_bound");
  c.expect(r.source.has_value() && r.source->weight == Z({10, 9, 6}), "g bound from vertex (10,9,6)");
  c.equal(d_of(W({10, 9, 6}), g), Rational(132), "d(10,9,6)");
  ProbeResult p = probe(g, corpus_curve("g_witness.curve.json"), probe_options());
  c.equal(p.ord_grad, Rational(126), "witness ord grad");
  c.equal(p.ord_f, Rational(132), "witness ord f");
  c.equal(p.theta, Q("21/22"), "witness theta");
}

// 7. g4 and f4.
void criterion_f4(Checks& c) {
  c.equal(refine_bound(corpus("g4.poly")).bound, Q("910/991"), "g4 refine_bound");
  Polynomial f4 = corpus("f4.poly");
  BoundReport r = bound_general(f4);
  c.equal(r.bound, Q("95/101"), "f4 bound_general");
  c.expect(r.source.has_value() && r.source->weight == Z({70, 19, 12}), "f4 bound from facet vertex (70,19,12)");
  c.equal(d_of(W({70, 19, 12}), f4), Rational(202), "d(70,19,12)");
  Curve w = corpus_curve("f4_witness.curve.json");
  const auto& co = w.coords();
  bool shape = co.size() == 3 && co[0].size() == 1 && co[1].size() == 1 && co[2].size() == 1 && co[0][0].exp == 70 &&
               co[1][0].exp == 19 && co[2][0].exp == 12;
  c.expect(shape, "witness exponents (70,19,12)");
  if (shape) {
    auto near = [](Complex a, long double re) { return std::abs(a - Complex(re, 0)) < 1e-15L; };
    c.expect(near(co[0][0].coeff.numeric(), std::pow(5.0L / 16.0L, 1.0L / 6.0L)), "b1 = (5/16)^(1/6)");
    c.expect(near(co[1][0].coeff.numeric(), std::pow(1.0L / 20.0L, 1.0L / 12.0L)), "b2 = (1/20)^(1/12)");
    c.expect(near(co[2][0].coeff.numeric(), -1.0L), "b3 = -1");
  }
  ProbeResult p = probe(f4, w, probe_options());
  c.equal(p.ord_grad, Rational(190), "witness ord grad");
  c.equal(p.ord_f, Rational(202), "witness ord f");
  c.equal(p.theta, Q("95/101"), "witness theta");
}

// 8. Milnor numbers.
void criterion_milnor(Checks& c) {
  c.equal(milnor_number(corpus("g4.poly")), Integer(990), "mu(g4)");
  c.equal(milnor_number(corpus("f4.poly")), Integer(543), "mu(f4)");
  c.equal(milnor_number(P("z1^3 + z2^3 + z3^3")), Integer(8), "mu(Fermat cubic)");
}

// 9. Product of a single member against the power formula.
void criterion_product(Checks& c) {
  std::mt19937_64 rng(9001);
  std::uniform_int_distribution<int> axis(2, 9), mult(1, 3);
  int members = 0;
  while (members < 50) {
    int a = axis(rng), b = axis(rng);
    Polynomial f(2);
    f.add_term({a, 0}, random_rational(rng, 4, 3));
    f.add_term({0, b}, random_rational(rng, 4, 3));
    std::uniform_int_distribution<int> ea(1, a), eb(1, b);
    for (int k = 0; k < 2; ++k) f.add_term({ea(rng), eb(rng)}, random_rational(rng, 4, 3));
    bool nonexceptional = false;
    for (const auto& m : exceptional_monomials(f)) nonexceptional |= m.tag == MonomialTag::LojasiewiczNonexceptional;
    if (!is_convenient(f) || !nonexceptional) continue;
    ++members;
    int m = mult(rng);
    Rational want = power_exponent(bound_convenient(f).bound, m);
    c.equal(bound_product({{f}, {m}}).bound, want, to_string(f) + " m=" + std::to_string(m));
  }
}

std::vector<std::string> corpus_polys() {
  return {"f1.poly", "f2_333.poly", "f3.poly", "ex21.poly", "g4.poly", "f4.poly", "g.poly", "f1_pullback2.poly",
          "prod_a.poly", "prod_b.poly"};
}

// 10a. Probes never exceed the refined bound.
void soundness_probes(Checks& c, int& probed) {
  std::mt19937_64 rng(1010);
  std::uniform_int_distribution<int> wd(1, 12), extra(0, 1);
  auto check = [&](const Polynomial& f, const Rational& bound, const Curve& curve, const std::string& name) {
    try {
      Rational t = probe(f, curve, probe_options()).theta;
      c.expect(t <= bound, name + ": probe theta " + to_string(t) + " above " + to_string(bound));
      ++probed;
    } catch (const Error& e) {
      // Curves inside the zero set of f carry no order ratio.
      if (e.kind() != ErrorKind::Truncation) throw;
    }
  };
  for (const auto& name : corpus_polys()) {
    Polynomial f = corpus(name);
    Rational bound = refine_bound(f).bound;
    for (int i = 0; i < 100; ++i) {
      std::vector<std::vector<CurveTerm>> coords;
      for (int j = 0; j < f.n(); ++j) {
        int e = wd(rng);
        std::vector<CurveTerm> terms{CurveTerm{GaussianRational(random_rational(rng, 5, 4)), Rational(e)}};
        if (extra(rng)) terms.push_back(CurveTerm{GaussianRational(random_rational(rng, 5, 4)), Rational(e + wd(rng))});
        coords.push_back(terms);
      }
      check(f, bound, Curve(coords), name);
    }
  }
  check(corpus("f1.poly"), refine_bound(corpus("f1.poly")).bound, corpus_curve("f1_witness.curve.json"), "f1 witness");
  check(corpus("g.poly"), refine_bound(corpus("g.poly")).bound, corpus_curve("g_witness.curve.json"), "g witness");
  check(corpus("f4.poly"), refine_bound(corpus("f4.poly")).bound, corpus_curve("f4_witness.curve.json"), "f4 witness");
}

// 10b. Normalized weights inside an edge lie above the componentwise minimum of its end points.
void soundness_segments(Checks& c, int& pairs) {
  std::mt19937_64 rng(2020);
  std::uniform_int_distribution<int> tn(1, 99);
  std::vector<std::pair<Polynomial, std::pair<int, int>>> edges;
  for (const auto& name : corpus_polys()) {
    Polynomial f = corpus(name);
    DualDiagram d = build_dual_diagram(f);
    for (int id : d.cells_with_dim(2)) {
      const auto& cell = d.cell(id);
      if (cell.cls == CellClass::Nonvanishing || cell.ray_cells.size() != 2) continue;
      if (d.cell(cell.ray_cells[0]).cls == CellClass::Nonvanishing) continue;
      if (d.cell(cell.ray_cells[1]).cls == CellClass::Nonvanishing) continue;
      edges.push_back({f, {cell.ray_cells[0], cell.ray_cells[1]}});
    }
  }
  c.expect(!edges.empty(), "adjacent pairs available");
  if (edges.empty()) return;
  std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
  while (pairs < 200) {
    const auto& [f, ab] = edges[pick(rng)];
    DualDiagram d = build_dual_diagram(f);
    WeightVector pa = d.cell(ab.first).weight(), pb = d.cell(ab.second).weight();
    WeightVector ha = normalize(pa, f), hb = normalize(pb, f);
    Rational t(tn(rng), 100);
    t.canonicalize();
    std::vector<Rational> mix;
    for (int j = 0; j < f.n(); ++j) mix.push_back((1 - t) * pa[j] + t * pb[j]);
    WeightVector h = normalize(WeightVector(mix), f);
    bool ok = true;
    for (int j = 0; j < f.n(); ++j) ok = ok && h[j] >= std::min(ha[j], hb[j]);
    c.expect(ok, "componentwise minimum on " + to_string(f));
    ++pairs;
  }
}

// 10c. Lifted subspace curves give the same ratio for three increasing N.
void soundness_lifts(Checks& c, int& lifted) {
  std::mt19937_64 rng(3030);
  std::vector<Polynomial> polys{corpus("f1.poly"), corpus("ex21.poly"), corpus("g4.poly"), corpus("f2_333.poly"),
                                corpus("f3.poly")};
  std::uniform_int_distribution<int> pick(0, 4), drop(0, 2), wd(1, 4);
  for (int trial = 0; trial < 400 && lifted < 20; ++trial) {
    const Polynomial& f = polys[static_cast<std::size_t>(pick(rng))];
    int k = drop(rng);
    IndexSet I;
    for (int j = 0; j < 3; ++j) {
      if (j != k) I.push_back(j);
    }
    if (restrict_to(f, I).is_zero()) continue;
    std::vector<std::vector<CurveTerm>> coords(3);
    for (int j : I) coords[static_cast<std::size_t>(j)] = {CurveTerm{GaussianRational(random_rational(rng, 3, 2)), Rational(wd(rng))}};
    Curve sub(coords);
    try {
      Curve base = lift_subspace_curve(f, sub, I);
      long N0 = base.coords()[static_cast<std::size_t>(k)][0].exp.get_num().get_si();
      std::vector<Rational> thetas;
      for (long N : {N0, N0 + 3, 2 * N0 + 5}) {
        thetas.push_back(probe(f, lift_subspace_curve(f, sub, I, static_cast<int>(N)), probe_options()).theta);
      }
      c.expect(thetas[0] == thetas[1] && thetas[1] == thetas[2], "lift stability on " + to_string(f));
      ++lifted;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Truncation) throw;
    }
  }
  c.equal(lifted, 20, "lifted curves");
}

// 10d. Probe orders against a dense exact expansion.
void soundness_oracle(Checks& c, int& compared) {
  std::mt19937_64 rng(4040);
  std::uniform_int_distribution<int> first(1, 3), step(1, 2), count(1, 3);
  for (int trial = 0; compared < 100 && trial < 400; ++trial) {
    const int n = 2 + trial % 2;
    Polynomial f = random_polynomial(rng, n, 2 + trial % 4, 4);
    std::vector<std::vector<CurveTerm>> coords;
    std::vector<std::vector<std::pair<int, Rational>>> sparse;
    for (int j = 0; j < n; ++j) {
      std::vector<CurveTerm> terms;
      std::vector<std::pair<int, Rational>> s;
      int e = first(rng);
      for (int k = count(rng); k > 0; --k, e += step(rng)) {
        Rational a = random_rational(rng, 3, 2);
        terms.push_back({GaussianRational(a), Rational(e)});
        s.emplace_back(e, a);
      }
      coords.push_back(terms);
      sparse.push_back(s);
    }
    Curve curve(coords);
    ProbeResult r;
    try {
      r = probe(f, curve, probe_options());
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Truncation) throw;
      continue;
    }
    Integer T = r.truncation_used.get_num() / r.truncation_used.get_den();
    std::size_t len = static_cast<std::size_t>(T.get_si()) + 1;
    std::vector<Dense> dense;
    for (const auto& s : sparse) {
      Dense d(len, Rational(0));
      for (const auto& [e, a] : s) {
        if (static_cast<std::size_t>(e) < len) d[static_cast<std::size_t>(e)] = a;
      }
      dense.push_back(d);
    }
    auto terms = real_terms(f);
    auto of = brute_order(terms, dense, len);
    std::optional<int> og;
    bool partials_ok = true;
    for (int j = 0; j < n; ++j) {
      auto oj = brute_order(derive(terms, j), dense, len);
      const auto& pj = r.ord_partials[static_cast<std::size_t>(j)];
      partials_ok = partials_ok && (oj.has_value() == pj.has_value()) && (!oj || Rational(*oj) == *pj);
      if (oj && (!og || *oj < *og)) og = oj;
    }
    bool ok = of && Rational(*of) == r.ord_f && og && Rational(*og) == r.ord_grad && partials_ok &&
              r.theta == r.ord_grad / r.ord_f;
    c.expect(ok, "oracle mismatch on " + to_string(f));
    ++compared;
  }
  c.equal(compared, 100, "oracle instances");
}

void criterion_soundness(Checks& c) {
  int probed = 0, pairs = 0, lifted = 0, compared = 0;
  soundness_probes(c, probed);
  c.expect(probed >= 900, "at least 900 corpus probes (got " + std::to_string(probed) + ")");
  soundness_segments(c, pairs);
  soundness_lifts(c, lifted);
  soundness_oracle(c, compared);
}

}  // namespace

int main() {
  struct Item {
    int id;
    const char* title;
    std::function<void(Checks&)> run;
  };
  const std::vector<Item> items{
      {1, "f1 diagram, vertex values, bounds and sweep", criterion_f1},
      {2, "f1 normalized facet-vertex weights", criterion_normalized},
      {3, "f2(3,3,3) refined bound", criterion_f2},
      {4, "f3 bounds and lifted subspace curve", criterion_f3},
      {5, "exceptional Lojasiewicz monomial", criterion_ex21},
      {6, "power pullback and moduli member g", criterion_pullback},
      {7, "g4 and f4 bounds and witness curve", criterion_f4},
      {8, "Milnor numbers", criterion_milnor},
      {9, "product of one member versus power formula", criterion_product},
      {10, "soundness properties", criterion_soundness},
  };
  int failures = 0;
  double total_seconds = 0;
  for (const auto& item : items) {
    Checks c;
    auto start = std::chrono::steady_clock::now();
    try {
      item.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("unexpected exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    total_seconds += secs;
    char budget[64];
    std::snprintf(budget, sizeof budget, "time %.2fs under %.0fs", secs, kItemSeconds);
    c.expect(secs < kItemSeconds, budget);
    std::string detail = std::to_string(c.total() - static_cast<int>(c.failed().size())) + "/" +
                         std::to_string(c.total()) + " checks";
    for (const auto& f : c.failed()) detail += "; failed: " + f;
    std::printf("%s criterion %d (%s): %s [%.2fs]\n", c.ok() ? "PASS" : "FAIL", item.id, item.title, detail.c_str(),
                secs);
    failures += !c.ok();
  }
  std::printf("%d of %zu criteria passed in %.2fs\n", static_cast<int>(items.size()) - failures, items.size(),
              total_seconds);
  return failures == 0 ? 0 : 1;
}
