#include "loja/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <openssl/sha.h>

#include "loja/error.hpp"

namespace loja {

using nlohmann::json;

namespace {

json rat(const Rational& q) { return to_string(q); }

json ints(const std::vector<Integer>& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(z.get_si());
  return out;
}

json one_based(const IndexSet& s) {
  json out = json::array();
  for (int j : s) out.push_back(j + 1);
  return out;
}

json contribution(const CellContribution& c) {
  return {{"cell", c.cell}, {"weight", ints(c.weight)}, {"value", rat(c.value)}, {"rule", c.rule}};
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config parse_config(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    std::size_t here = offset;
    offset += line.size() + 1;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(here, "config line without '=': " + t);
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    try {
      if (key == "max_n") {
        cfg.guard.max_n = std::stoi(value);
      } else if (key == "max_support") {
        cfg.guard.max_support = std::stoi(value);
      } else if (key == "truncation") {
        cfg.truncation = parse_rational(value);
      } else if (key == "tolerance") {
        cfg.tolerance = std::stold(value);
      } else {
        throw ParseError(here, "unknown config key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw ParseError(here, "bad value for config key '" + key + "'");
    }
  }
  return cfg;
}

Config load_config_from_env() {
  const char* path = std::getenv("LOJA_CONFIG");
  if (path == nullptr || *path == '\0') return {};
  std::ifstream in(path);
  if (!in) throw precondition_error(std::string("cannot read LOJA_CONFIG file ") + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

json to_json(const Certificate& c) {
  json j = {{"status", to_string(c.status)}, {"kind", c.kind}, {"reason", c.reason}, {"cell", c.cell}};
  j["monomial_partial"] = c.monomial_partial ? json(*c.monomial_partial + 1) : json(nullptr);
  if (c.witness) {
    json w = json::array();
    for (const auto& z : *c.witness) w.push_back(to_string(z));
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

json to_json(const ProbeResult& r) {
  json partials = json::array();
  for (const auto& p : r.ord_partials) partials.push_back(p ? rat(*p) : json(nullptr));
  char tol[32];
  std::snprintf(tol, sizeof tol, "%.3Lg", r.tolerance);
  return {{"ord_f", rat(r.ord_f)},
          {"ord_grad", rat(r.ord_grad)},
          {"theta", rat(r.theta)},
          {"truncation", rat(r.truncation_used)},
          {"exact", r.exact},
          {"tolerance", r.exact ? std::string("0") : std::string(tol)},
          {"ord_partials", partials}};
}

json to_json(const BoundReport& r) {
  json j = {{"kind", to_string(r.kind)}, {"bound", rat(r.bound)}, {"status", to_string(r.status)}};
  j["B"] = r.B ? json(*r.B) : json(nullptr);
  j["theta_tilde"] = r.theta_tilde ? rat(*r.theta_tilde) : json(nullptr);
  j["L"] = r.L ? rat(*r.L) : json(nullptr);
  j["source"] = r.source ? contribution(*r.source) : json(nullptr);
  json cells = json::array();
  for (const auto& c : r.per_cell) cells.push_back(contribution(c));
  j["per_cell"] = cells;
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  j["certificates"] = certs;
  j["assumptions"] = r.assumptions;
  j["notes"] = r.notes;
  if (r.equality) {
    j["equality"] = {{"variable", r.equality->variable + 1},
                     {"curve", to_json(r.equality->curve)},
                     {"probe", to_json(r.equality->probe)}};
  } else {
    j["equality"] = nullptr;
  }
  return j;
}

json to_json(const SweepResult& r) {
  auto hit = [](const SweepHit& h) {
    return json{{"weight", ints(h.weight)}, {"curve", to_json(h.curve)}, {"probe", to_json(h.result)}};
  };
  json crit = json::array();
  for (const auto& h : r.critical) crit.push_back(hit(h));
  return {{"tuples", r.tuples}, {"best", r.best ? hit(*r.best) : json(nullptr)}, {"critical", crit}};
}

std::string render(const json& document) { return document.dump(2) + "\n"; }

std::string content_hash(json document) {
  document.erase("content_hash");
  std::string text = document.dump();
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), digest);
  std::string hex;
  char buf[3];
  for (unsigned char byte : digest) {
    std::snprintf(buf, sizeof buf, "%02x", byte);
    hex += buf;
  }
  return hex;
}

AnalysisReport analyze(const Polynomial& f, const AnalyzeOptions& options) {
  if (f.is_zero()) throw precondition_error("cannot analyze the zero polynomial");
  AnalysisReport out;
  json doc;
  doc["schema"] = kReportSchema;
  doc["tool_version"] = kToolVersion;
  doc["input"] = {{"text", options.input_text}, {"polynomial", to_string(f)}, {"terms", to_json(f)}};
  doc["n"] = f.n();
  json support = json::array();
  for (const auto& e : f.support()) support.push_back(e);
  doc["support"] = support;
  doc["convenience_level"] = convenience_level(f);

  AxisData ax = axis_data(f);
  json b = json::array();
  for (const auto& v : ax.b) b.push_back(v ? json(*v) : json(nullptr));
  json tagged = json::array();
  if (ax.B) {
    for (const auto& a : exceptional_monomials(f)) {
      tagged.push_back({{"variable", a.j + 1},
                        {"b", a.b},
                        {"tag", to_string(a.tag)},
                        {"witness", a.witness ? json(*a.witness) : json(nullptr)}});
    }
  }
  doc["axis"] = {{"b", b}, {"B", ax.B ? json(*ax.B) : json(nullptr)}, {"I_B", one_based(ax.I_B)}, {"monomials", tagged}};

  DualDiagram diagram = build_dual_diagram(f, options.bounds.guard);
  json counts = json::array();
  for (int k = 1; k <= f.n(); ++k) {
    counts.push_back({{"cell_dim", k},
                      {"positive", diagram.count(k, CellClass::Positive)},
                      {"vanishing", diagram.count(k, CellClass::Vanishing)},
                      {"nonvanishing", diagram.count(k, CellClass::Nonvanishing)}});
  }
  doc["diagram"] = {{"facets", diagram.facets().size()}, {"cells", diagram.cells().size()}, {"counts", counts}};

  json vertices = json::array();
  json regions = json::array();
  for (const auto& cell : diagram.cells()) {
    if (cell.is_facet_vertex()) {
      json v = {{"cell", cell.id}, {"weight", ints(cell.rep)}, {"d", rat(cell.d)}, {"class", to_string(cell.cls)}};
      json certs = json::array();
      if (cell.cls == CellClass::Nonvanishing) {
        v["normalized"] = nullptr;
        v["theta_prime"] = nullptr;
      } else {
        json nw = json::array();
        WeightVector hat = normalize(cell.weight(), f);
        for (const auto& q : hat.entries()) nw.push_back(rat(q));
        v["normalized"] = nw;
        try {
          v["theta_prime"] = rat(theta_prime(diagram, cell));
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::Hypothesis) throw;
          v["theta_prime"] = nullptr;
          out.hypothesis_failed = true;
        }
        if (cell.cls == CellClass::Positive) certs.push_back(to_json(nondegeneracy_certificate(diagram, cell)));
        if (cell.face.dim >= 1) certs.push_back(to_json(inv_tame_certificate(diagram, cell)));
      }
      v["certificates"] = certs;
      vertices.push_back(v);
    }
    if (cell.is_region()) {
      const auto& p = cell.face.on_points.front();
      int deg = total_degree(p);
      regions.push_back({{"cell", cell.id},
                         {"vertex", p},
                         {"monomial", monomial_string(p)},
                         {"degree", deg},
                         {"value", deg == 0 ? json(nullptr) : rat(Rational(1) - Rational(1, deg))}});
    }
  }
  doc["facet_vertices"] = vertices;
  doc["regions"] = regions;

  json bounds = json::object();
  std::vector<std::string> assumptions;
  auto run = [&](const char* name, auto&& fn) {
    try {
      BoundReport r = fn();
      if (r.status == BoundStatus::Conditional) out.status = BoundStatus::Conditional;
      for (const auto& a : r.assumptions) {
        if (std::find(assumptions.begin(), assumptions.end(), a) == assumptions.end()) assumptions.push_back(a);
      }
      bounds[name] = to_json(r);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Hypothesis && e.kind() != ErrorKind::Precondition) throw;
      if (e.kind() == ErrorKind::Hypothesis) out.hypothesis_failed = true;
      bounds[name] = {{"error", e.what()}, {"error_kind", e.kind() == ErrorKind::Hypothesis ? "hypothesis" : "precondition"}};
    }
  };
  run("general", [&] { return bound_general(f, options.bounds); });
  run("refined", [&] { return refine_bound(f, options.bounds); });
  if (is_convenient(f)) run("convenient", [&] { return bound_convenient(f, options.bounds); });
  doc["bounds"] = bounds;

  if (options.curve) {
    doc["probe"] = {{"curve", to_json(*options.curve)}, {"result", to_json(probe(f, *options.curve, options.probe))}};
  } else {
    doc["probe"] = nullptr;
  }
  doc["assumptions"] = assumptions;
  if (out.hypothesis_failed) out.status = BoundStatus::Conditional;
  doc["status"] = to_string(out.status);
  doc["content_hash"] = content_hash(doc);
  out.document = std::move(doc);
  return out;
}

}  // namespace loja
