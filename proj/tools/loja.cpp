// loja: command-line front end for the exponent toolkit.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "loja/bounds.hpp"
#include "loja/error.hpp"
#include "loja/report.hpp"

using namespace loja;

namespace {

enum Exit { kOk = 0, kUsage = 2, kConditional = 3, kGuard = 4 };

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw precondition_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw precondition_error("cannot write " + path);
  out << text;
}

std::string weight_string(const std::vector<Integer>& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + to_string(w[i]);
  return s + ")";
}

int status_exit(BoundStatus s) { return s == BoundStatus::Conditional ? kConditional : kOk; }

void print_notes(const BoundReport& r) {
  for (const auto& a : r.assumptions) std::cerr << "assumption: " << a << "\n";
  for (const auto& n : r.notes) std::cerr << "note: " << n << "\n";
  if (r.status == BoundStatus::Conditional) {
    for (const auto& c : r.certificates) {
      if (c.status == CertStatus::Undecided || c.status == CertStatus::Refuted) {
        std::cerr << "conditional: " << c.kind << " certificate " << to_string(c.status) << " on cell " << c.cell
                  << " (" << c.reason << ")\n";
      }
    }
  }
}

// Large enough to reach every facet normal on the corpus, small enough to stay under the tuple guard.
int default_budget(const Polynomial& f, const GeometryGuard& guard) {
  long top = 1;
  for (const auto& facet : facets(f, guard)) {
    for (const auto& z : facet.normal) top = std::max(top, z.get_si());
  }
  long cap = static_cast<long>(std::floor(std::pow(5e6, 1.0 / f.n())));
  return static_cast<int>(std::min({top, 66L, std::max(cap, 1L)}));
}

struct Common {
  bool assume_nd = false;
  bool assume_it = false;
  std::optional<std::string> truncation;
  std::optional<double> tolerance;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lojasiewicz gradient exponent toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Common common;
  auto add_assume = [&](CLI::App* sub) {
    sub->add_flag("--assume-nondegenerate", common.assume_nd, "Treat undecided non-degeneracy as assumed");
    sub->add_flag("--assume-inv-tame", common.assume_it, "Treat undecided strong inv-tameness as assumed");
  };

  std::string file;
  std::vector<std::string> files;
  std::string json_out;
  std::string curve_file;
  bool refine = false;
  int budget = 0;
  int samples = 8;
  std::string mults;
  int m = 0;
  std::string eta, theta;
  std::string format, out_path;

  auto* analyze_cmd = app.add_subcommand("analyze", "Full analysis report as JSON");
  analyze_cmd->add_option("FILE", file)->required();
  analyze_cmd->add_option("--json", json_out, "Write the report here instead of stdout");
  analyze_cmd->add_option("--curve", curve_file, "Also probe this curve");
  add_assume(analyze_cmd);

  auto* bound_cmd = app.add_subcommand("bound", "Upper bound for theta0");
  bound_cmd->add_option("FILE", file)->required();
  bound_cmd->add_flag("--refine", refine, "Refined bound bracketed by a curve sweep");
  bound_cmd->add_option("--budget", budget, "Sweep exponent budget for --refine");
  bound_cmd->add_option("--samples", samples, "Sweep coefficient samples for --refine");
  bound_cmd->add_option("--json", json_out, "Also write the bound report as JSON");
  add_assume(bound_cmd);

  auto* probe_cmd = app.add_subcommand("probe", "Orders of f and grad f along a curve");
  probe_cmd->add_option("FILE", file)->required();
  probe_cmd->add_option("--curve", curve_file)->required();
  probe_cmd->add_option("--truncation", common.truncation, "Truncation order T (p/q)");
  probe_cmd->add_option("--tolerance", common.tolerance, "Relative zero tolerance for numeric coefficients");

  auto* sweep_cmd = app.add_subcommand("sweep", "Search monomial curves for large theta");
  sweep_cmd->add_option("FILE", file)->required();
  sweep_cmd->add_option("--budget", budget)->required();
  sweep_cmd->add_option("--samples", samples)->required();
  sweep_cmd->add_option("--json", json_out, "Write the sweep result as JSON");

  auto* product_cmd = app.add_subcommand("product", "Bound for a product of convenient germs");
  product_cmd->add_option("FILE", files)->required();
  product_cmd->add_option("--mult", mults, "Comma separated multiplicities");
  add_assume(product_cmd);

  auto* power_cmd = app.add_subcommand("power", "theta0 of f^m from theta0 of f");
  power_cmd->add_option("FILE", file)->required();
  power_cmd->add_option("-m", m)->required();
  add_assume(power_cmd);

  auto* convert_cmd = app.add_subcommand("convert", "Convert between eta0 and theta0");
  auto* eta_opt = convert_cmd->add_option("--eta", eta);
  auto* theta_opt = convert_cmd->add_option("--theta", theta);
  eta_opt->excludes(theta_opt);
  convert_cmd->require_option(1);

  auto* milnor_cmd = app.add_subcommand("milnor", "Milnor number via the Newton number (n <= 3)");
  milnor_cmd->add_option("FILE", file)->required();

  auto* diagram_cmd = app.add_subcommand("diagram", "Dual Newton diagram as SVG or JSON");
  diagram_cmd->add_option("FILE", file)->required();
  diagram_cmd->add_option("--format", format)->required()->check(CLI::IsMember({"svg", "json"}));
  diagram_cmd->add_option("-o", out_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Config cfg = load_config_from_env();
    BoundOptions bopts;
    bopts.assume_nondegenerate = common.assume_nd;
    bopts.assume_inv_tame = common.assume_it;
    bopts.guard = cfg.guard;
    ProbeOptions popts;
    popts.guard = cfg.guard;
    popts.truncation = cfg.truncation;
    popts.tolerance = cfg.tolerance;
    if (common.truncation) popts.truncation = parse_rational(*common.truncation);
    if (common.tolerance) popts.tolerance = *common.tolerance;

    if (*analyze_cmd) {
      std::string text = slurp(file);
      AnalyzeOptions opts;
      opts.bounds = bopts;
      opts.probe = popts;
      opts.input_text = text;
      if (!curve_file.empty()) opts.curve = curve_from_json(nlohmann::json::parse(slurp(curve_file)));
      AnalysisReport report = analyze(parse_polynomial_any(text), opts);
      write_file(json_out.empty() ? "-" : json_out, render(report.document));
      return status_exit(report.status);
    }

    if (*bound_cmd) {
      Polynomial f = parse_polynomial_any(slurp(file));
      if (!refine) {
        BoundReport r = bound_general(f, bopts);
        std::cout << "theta0 <= " << to_string(r.bound) << " (general; theta~ = "
                  << (r.theta_tilde ? to_string(*r.theta_tilde) : "none")
                  << ", L = " << (r.L ? to_string(*r.L) : "none") << ")\n";
        int code = status_exit(r.status);
        if (is_convenient(f)) {
          BoundReport c = bound_convenient(f, bopts);
          std::cout << "theta0 <= " << to_string(c.bound) << " (convenient; B = " << *c.B << ")";
          if (c.equality && c.status == BoundStatus::Certified) std::cout << ", equality attained";
          std::cout << "\n";
          print_notes(c);
          code = std::max(code, status_exit(c.status));
        }
        print_notes(r);
        if (!json_out.empty()) write_file(json_out, render(to_json(r)));
        return code;
      }
      BoundReport r = refine_bound(f, bopts);
      SweepOptions so;
      so.budget = budget > 0 ? budget : default_budget(f, bopts.guard);
      so.samples = samples;
      so.guard = bopts.guard;
      SweepResult s = sweep_monomial_curves(f, so);
      const SweepHit* lo = s.best ? &*s.best : nullptr;
      for (const auto& h : s.critical) {
        if (!lo || h.result.theta > lo->result.theta) lo = &h;
      }
      if (lo && lo->result.theta > r.bound) {
        throw std::logic_error("probe ratio exceeds the refined bound");
      }
      if (lo) {
        std::cout << "theta0 in [" << to_string(lo->result.theta) << ", " << to_string(r.bound)
                  << "] (refined; probe witness weight " << weight_string(lo->weight) << ")\n";
      } else {
        std::cout << "theta0 <= " << to_string(r.bound) << " (refined; no probe witness)\n";
      }
      if (r.source) {
        std::cerr << "refined bound attained at cell " << weight_string(r.source->weight) << ": " << r.source->rule
                  << "\n";
      }
      print_notes(r);
      if (!json_out.empty()) {
        nlohmann::json j = to_json(r);
        j["sweep"] = to_json(s);
        write_file(json_out, render(j));
      }
      return status_exit(r.status);
    }

    if (*probe_cmd) {
      Polynomial f = parse_polynomial_any(slurp(file));
      Curve c = curve_from_json(nlohmann::json::parse(slurp(curve_file)));
      ProbeResult r = probe(f, c, popts);
      std::cout << "ord_grad = " << to_string(r.ord_grad) << ", ord_f = " << to_string(r.ord_f)
                << ", theta = " << to_string(r.theta);
      if (!r.exact) std::cout << " (numeric, tolerance " << static_cast<double>(r.tolerance) << ")";
      std::cout << "\n";
      return kOk;
    }

    if (*sweep_cmd) {
      Polynomial f = parse_polynomial_any(slurp(file));
      SweepOptions so;
      so.budget = budget;
      so.samples = samples;
      so.guard = cfg.guard;
      SweepResult s = sweep_monomial_curves(f, so);
      if (s.best) {
        std::cout << "best theta = " << to_string(s.best->result.theta) << " at weight "
                  << weight_string(s.best->weight) << " (" << s.tuples << " tuples)\n";
      } else {
        std::cout << "no curve avoids V(f) (" << s.tuples << " tuples)\n";
      }
      for (const auto& h : s.critical) {
        std::cout << "critical-point curve at weight " << weight_string(h.weight) << ": theta = "
                  << to_string(h.result.theta) << "\n";
      }
      if (!json_out.empty()) write_file(json_out, render(to_json(s)));
      return kOk;
    }

    if (*product_cmd) {
      ProductFamily fam;
      for (const auto& p : files) fam.members.push_back(parse_polynomial_any(slurp(p)));
      if (mults.empty()) {
        fam.multiplicities.assign(fam.members.size(), 1);
      } else {
        std::stringstream ss(mults);
        std::string item;
        while (std::getline(ss, item, ',')) {
          try {
            fam.multiplicities.push_back(std::stoi(item));
          } catch (const std::logic_error&) {
            throw ParseError(0, "bad multiplicity '" + item + "'");
          }
        }
      }
      BoundReport r = bound_product(fam, bopts);
      std::cout << "theta0 <= " << to_string(r.bound) << " (product; B~ = " << *r.B << ")";
      if (r.equality) std::cout << ", equality witness on z" << r.equality->variable + 1;
      std::cout << "\n";
      print_notes(r);
      return status_exit(r.status);
    }

    if (*power_cmd) {
      Polynomial f = parse_polynomial_any(slurp(file));
      if (is_convenient(f)) {
        BoundReport c = bound_convenient(f, bopts);
        if (c.equality) {
          std::cout << "theta0(f^" << m << ") = " << to_string(power_exponent(c.bound, m)) << " (from theta0(f) = "
                    << to_string(c.bound) << ")\n";
          print_notes(c);
          return status_exit(c.status);
        }
      }
      BoundReport r = refine_bound(f, bopts);
      std::cout << "theta0(f^" << m << ") <= " << to_string(power_exponent(r.bound, m)) << " (from theta0(f) <= "
                << to_string(r.bound) << ")\n";
      print_notes(r);
      return status_exit(r.status);
    }

    if (*convert_cmd) {
      if (!eta.empty()) {
        std::cout << "theta0 = " << to_string(eta_theta_convert(parse_rational(eta), Conversion::EtaToTheta)) << "\n";
      } else {
        std::cout << "eta0 = " << to_string(eta_theta_convert(parse_rational(theta), Conversion::ThetaToEta)) << "\n";
      }
      return kOk;
    }

    if (*milnor_cmd) {
      std::cout << to_string(milnor_number(parse_polynomial_any(slurp(file)), cfg.guard)) << "\n";
      return kOk;
    }

    if (*diagram_cmd) {
      Polynomial f = parse_polynomial_any(slurp(file));
      DualDiagram d = build_dual_diagram(f, cfg.guard);
      if (format == "svg") {
        write_file(out_path, simplex_svg(d, export_simplex_projection(d)));
      } else {
        nlohmann::json j;
        if (f.n() == 3) {
          j = simplex_json(d, export_simplex_projection(d));
        } else {
          j = nlohmann::json::object();
        }
        nlohmann::json cells = nlohmann::json::array();
        for (const auto& c : d.cells()) {
          nlohmann::json w = nlohmann::json::array();
          for (const auto& z : c.rep) w.push_back(z.get_si());
          cells.push_back({{"cell", c.id},
                           {"cell_dim", c.cell_dim},
                           {"weight", w},
                           {"d", to_string(c.d)},
                           {"class", to_string(c.cls)}});
        }
        j["cells"] = cells;
        write_file(out_path, render(j));
      }
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Parse:
      case ErrorKind::Precondition:
        return kUsage;
      case ErrorKind::Hypothesis:
        return kConditional;
      case ErrorKind::Guard:
      case ErrorKind::Truncation:
        return kGuard;
    }
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
