#include <doctest.h>

#include <functional>

#include "loja/error.hpp"
#include "loja/report.hpp"
#include "support.hpp"

using namespace loja;
using namespace loja::testing;

TEST_CASE("config parsing") {
  Config c = parse_config("# guards\nmax_n = 4\nmax_support=20\n\ntruncation = 300/2\ntolerance = 1e-12\n");
  CHECK(c.guard.max_n == 4);
  CHECK(c.guard.max_support == 20);
  CHECK(c.truncation == 150);
  CHECK(c.tolerance == doctest::Approx(1e-12));
  CHECK_THROWS_AS(parse_config("max_n 4"), ParseError);
  CHECK_THROWS_AS(parse_config("colour = red"), ParseError);
  CHECK_THROWS_AS(parse_config("max_n = four"), ParseError);
}

TEST_CASE("analysis report is deterministic and self-hashing") {
  Polynomial f = corpus("f1.poly");
  AnalyzeOptions o;
  o.input_text = corpus_text("f1.poly");
  AnalysisReport a = analyze(f, o);
  AnalysisReport b = analyze(f, o);
  CHECK(render(a.document) == render(b.document));
  CHECK(a.document["content_hash"] == content_hash(a.document));
  CHECK(a.document["schema"] == "loja-report/1");
  CHECK(a.document["bounds"]["general"]["bound"] == "10/11");
  CHECK(a.document["diagram"]["counts"][0]["positive"] == 2);
  CHECK(a.status == BoundStatus::Certified);

  o.bounds.assume_nondegenerate = true;
  AnalysisReport g1 = analyze(corpus("g.poly"), o);
  o.bounds.assume_inv_tame = true;
  AnalysisReport g2 = analyze(corpus("g.poly"), o);
  CHECK(g1.status == BoundStatus::Conditional);
  CHECK(g2.status == BoundStatus::Certified);
  CHECK(g1.document["content_hash"] != g2.document["content_hash"]);
}

TEST_CASE("rationals are strings, never floats") {
  AnalyzeOptions o;
  o.curve = corpus_curve("f4_witness.curve.json");
  AnalysisReport r = analyze(corpus("f4.poly"), o);
  std::function<void(const nlohmann::json&)> walk = [&](const nlohmann::json& j) {
    CHECK_FALSE(j.is_number_float());
    if (j.is_structured()) {
      for (const auto& v : j) walk(v);
    }
  };
  walk(r.document["bounds"]);
  walk(r.document["facet_vertices"]);
  walk(r.document["probe"]["result"]);
  CHECK(r.document["probe"]["result"]["theta"] == "95/101");
}
