#include "loja/dual.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "loja/error.hpp"

namespace loja {

std::string to_string(CellClass c) {
  switch (c) {
    case CellClass::Positive:
      return "positive";
    case CellClass::Vanishing:
      return "vanishing";
    case CellClass::Nonvanishing:
      return "nonvanishing";
  }
  return "?";
}

DualDiagram::DualDiagram(Polynomial f, std::vector<Facet> facets, std::vector<DualCell> cells,
                         std::vector<std::pair<int, int>> incidence)
    : f_(std::move(f)), facets_(std::move(facets)), cells_(std::move(cells)), incidence_(std::move(incidence)) {}

bool DualDiagram::succeeds(int q, int p) const {
  return std::binary_search(incidence_.begin(), incidence_.end(), std::make_pair(q, p));
}

const DualCell& DualDiagram::cell_of(const WeightVector& P) const {
  Face face = d_and_face(P, f_).face;
  for (const auto& c : cells_) {
    if (c.face == face) return c;
  }
  throw precondition_error("weight vector " + to_string(P) + " does not lie in any cell");
}

std::vector<int> DualDiagram::cells_with_dim(int cell_dim) const {
  std::vector<int> out;
  for (const auto& c : cells_) {
    if (c.cell_dim == cell_dim) out.push_back(c.id);
  }
  return out;
}

int DualDiagram::count(int cell_dim, CellClass cls) const {
  return static_cast<int>(std::count_if(cells_.begin(), cells_.end(), [&](const DualCell& c) {
    return c.cell_dim == cell_dim && c.cls == cls;
  }));
}

CellClass classify_weight(const WeightVector& P, const Polynomial& f) {
  if (P.is_strictly_positive()) return CellClass::Positive;
  return sgn(d_of(P, f)) > 0 ? CellClass::Vanishing : CellClass::Nonvanishing;
}

WeightVector normalize(const WeightVector& P, const Polynomial& f) {
  Rational d = d_of(P, f);
  if (sgn(d) == 0) throw precondition_error("weight vector " + to_string(P) + " has d = 0 and no normalized form");
  std::vector<Rational> out = P.entries();
  for (auto& p : out) p /= d;
  return WeightVector(std::move(out), true);
}

namespace {

IndexSet variables_of(const std::vector<ExponentVector>& points, int n) {
  IndexSet out;
  for (int j = 0; j < n; ++j) {
    for (const auto& p : points) {
      if (p[j] != 0) {
        out.push_back(j);
        break;
      }
    }
  }
  return out;
}

std::optional<Face> intersect(const Face& a, const Face& b, int n) {
  std::vector<ExponentVector> pts;
  std::set_intersection(a.on_points.begin(), a.on_points.end(), b.on_points.begin(), b.on_points.end(),
                        std::back_inserter(pts));
  if (pts.empty()) return std::nullopt;
  IndexSet rec;
  std::set_intersection(a.recession.begin(), a.recession.end(), b.recession.begin(), b.recession.end(),
                        std::back_inserter(rec));
  return make_face(std::move(pts), std::move(rec), n);
}

}  // namespace

DualDiagram build_dual_diagram(const Polynomial& f, const GeometryGuard& guard) {
  const int n = f.n();
  std::vector<Facet> fs = facets(f, guard);

  // Close the facet faces under pairwise intersection.
  std::set<Face> faces;
  std::vector<Face> frontier;
  for (const auto& facet : fs) {
    if (faces.insert(facet.face).second) frontier.push_back(facet.face);
  }
  while (!frontier.empty()) {
    std::vector<Face> next;
    for (const auto& a : frontier) {
      for (const auto& facet : fs) {
        auto c = intersect(a, facet.face, n);
        if (c && faces.insert(*c).second) next.push_back(*c);
      }
    }
    frontier = std::move(next);
  }

  std::vector<DualCell> cells;
  for (const auto& face : faces) {
    DualCell cell;
    cell.face = face;
    cell.cell_dim = n - face.dim;
    std::vector<Integer> sum(static_cast<std::size_t>(n), Integer(0));
    for (const auto& facet : fs) {
      if (!facet.face.contains(face)) continue;
      cell.extreme_rays.push_back(facet.normal);
      for (int j = 0; j < n; ++j) sum[j] += facet.normal[j];
    }
    Integer g = gcd_of(sum);
    for (auto& z : sum) z /= g;
    cell.rep = sum;
    DFace df = d_and_face(cell.weight(), f);
    if (!(df.face == face)) throw std::logic_error("cell representative is not interior to its cell");
    cell.d = df.d;
    cell.cls = classify_weight(cell.weight(), f);
    cell.I = cell.weight().zero_indices();
    cell.var = variables_of(face.on_points, n);
    cells.push_back(std::move(cell));
  }
  std::sort(cells.begin(), cells.end(), [](const DualCell& a, const DualCell& b) {
    if (a.cell_dim != b.cell_dim) return a.cell_dim < b.cell_dim;
    return a.rep > b.rep;
  });
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i].id = static_cast<int>(i);

  std::vector<std::pair<int, int>> incidence;
  for (const auto& q : cells) {
    for (const auto& p : cells) {
      if (q.id != p.id && q.face.contains(p.face)) incidence.emplace_back(q.id, p.id);
    }
  }
  std::sort(incidence.begin(), incidence.end());

  for (auto& p : cells) {
    for (const auto& q : cells) {
      if (q.id == p.id && q.cls == CellClass::Vanishing) {
        p.itilde.insert(p.itilde.end(), q.I.begin(), q.I.end());
      }
    }
    for (const auto& [qi, pi] : incidence) {
      if (pi != p.id) continue;
      const DualCell& q = cells[static_cast<std::size_t>(qi)];
      if (q.cls == CellClass::Vanishing) p.itilde.insert(p.itilde.end(), q.I.begin(), q.I.end());
    }
    std::sort(p.itilde.begin(), p.itilde.end());
    p.itilde.erase(std::unique(p.itilde.begin(), p.itilde.end()), p.itilde.end());
    std::set_difference(p.var.begin(), p.var.end(), p.itilde.begin(), p.itilde.end(), std::back_inserter(p.var_inv));
    for (const auto& ray : p.extreme_rays) {
      for (const auto& q : cells) {
        if (q.cell_dim == 1 && q.rep == ray) p.ray_cells.push_back(q.id);
      }
    }
  }
  return DualDiagram(f, std::move(fs), std::move(cells), std::move(incidence));
}

VariableSets variable_sets(const DualDiagram&, const DualCell& cell) {
  if (cell.cls == CellClass::Nonvanishing) throw precondition_error("variable sets of a non-vanishing cell");
  return {cell.var, cell.I, cell.itilde, cell.var_inv};
}

Polynomial cell_polynomial(const DualDiagram& diagram, const DualCell& cell) {
  return face_polynomial(diagram.polynomial(), cell.face.on_points);
}

Rational theta_prime(const DualDiagram& diagram, const DualCell& cell) {
  if (cell.cls == CellClass::Nonvanishing) throw precondition_error("theta' of a non-vanishing cell");
  if (cell.face.dim == 0) return Rational(1) - Rational(1, total_degree(cell.face.on_points.front()));
  if (cell.var_inv.empty()) {
    throw hypothesis_error("invulnerable variable set is empty for cell " + to_string(cell.weight()));
  }
  WeightVector hat = normalize(cell.weight(), diagram.polynomial());
  Rational lo = hat[cell.var_inv.front()];
  for (int j : cell.var_inv) lo = std::min(lo, hat[j]);
  return Rational(1) - lo;
}

// ---------------------------------------------------------------------------
// Simplex picture

namespace {

constexpr double kWidth = 1000.0;
constexpr double kHeight = 866.0;
constexpr double kMargin = 60.0;

struct Corner {
  double x;
  double y;
};

// E2 top-left, E1 top-right, E3 bottom.
std::array<Corner, 3> corners() {
  double side = kWidth - 2 * kMargin;
  double top = kMargin;
  return {Corner{kWidth - kMargin, top}, Corner{kMargin, top}, Corner{kWidth / 2, top + side * std::sqrt(3.0) / 2}};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string ray_label(const std::vector<Integer>& r) {
  std::string s = "(";
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (j) s += ",";
    s += r[j].get_str();
  }
  return s + ")";
}

std::string color(CellClass c) {
  switch (c) {
    case CellClass::Positive:
      return "black";
    case CellClass::Vanishing:
      return "blue";
    case CellClass::Nonvanishing:
      return "red";
  }
  return "gray";
}

std::optional<Rational> maybe_theta(const DualDiagram& d, const DualCell& c) {
  if (c.cls == CellClass::Nonvanishing) return std::nullopt;
  if (c.face.dim >= 1 && c.var_inv.empty()) return std::nullopt;
  return theta_prime(d, c);
}

}  // namespace

SimplexProjection export_simplex_projection(const DualDiagram& diagram) {
  if (diagram.n() != 3) throw precondition_error("simplex projection needs n = 3");
  auto cs = corners();
  SimplexProjection plan;
  std::map<int, int> point_of;
  for (int id : diagram.cells_with_dim(1)) {
    const auto& cell = diagram.cell(id);
    Integer total = cell.rep[0] + cell.rep[1] + cell.rep[2];
    ProjectedPoint pt;
    pt.cell = id;
    for (int j = 0; j < 3; ++j) {
      Rational b(cell.rep[j], total);
      b.canonicalize();
      pt.bary.push_back(b);
      double w = b.get_d();
      pt.x += w * cs[j].x;
      pt.y += w * cs[j].y;
    }
    point_of[id] = static_cast<int>(plan.points.size());
    plan.points.push_back(std::move(pt));
  }
  for (int id : diagram.cells_with_dim(2)) {
    const auto& cell = diagram.cell(id);
    if (cell.ray_cells.size() != 2) throw std::logic_error("edge cell without two rays");
    plan.segments.emplace_back(point_of.at(cell.ray_cells[0]), point_of.at(cell.ray_cells[1]));
    plan.segment_cells.push_back(id);
  }
  for (int id : diagram.cells_with_dim(3)) {
    const auto& cell = diagram.cell(id);
    std::vector<int> poly;
    double cx = 0;
    double cy = 0;
    for (int r : cell.ray_cells) {
      poly.push_back(point_of.at(r));
      cx += plan.points[poly.back()].x;
      cy += plan.points[poly.back()].y;
    }
    cx /= static_cast<double>(poly.size());
    cy /= static_cast<double>(poly.size());
    std::sort(poly.begin(), poly.end(), [&](int a, int b) {
      double ta = std::atan2(plan.points[a].y - cy, plan.points[a].x - cx);
      double tb = std::atan2(plan.points[b].y - cy, plan.points[b].x - cx);
      if (ta != tb) return ta < tb;
      return a < b;
    });
    plan.regions.push_back(std::move(poly));
    plan.region_cells.push_back(id);
  }
  return plan;
}

nlohmann::json simplex_json(const DualDiagram& diagram, const SimplexProjection& plan) {
  using nlohmann::json;
  auto xy = [](const ProjectedPoint& p) { return json::array({std::stod(fmt(p.x)), std::stod(fmt(p.y))}); };
  json points = json::array();
  for (const auto& p : plan.points) {
    const auto& cell = diagram.cell(p.cell);
    json bary = json::array();
    for (const auto& b : p.bary) bary.push_back(to_string(b));
    auto theta = maybe_theta(diagram, cell);
    points.push_back({{"cell", p.cell},
                      {"xy", xy(p)},
                      {"bary", bary},
                      {"label", ray_label(cell.rep)},
                      {"class", to_string(cell.cls)},
                      {"theta_prime", theta ? json(to_string(*theta)) : json(nullptr)}});
  }
  json segments = json::array();
  for (std::size_t i = 0; i < plan.segments.size(); ++i) {
    const auto& cell = diagram.cell(plan.segment_cells[i]);
    segments.push_back({{"cell", cell.id},
                        {"from", xy(plan.points[plan.segments[i].first])},
                        {"to", xy(plan.points[plan.segments[i].second])},
                        {"label", ray_label(cell.rep)},
                        {"class", to_string(cell.cls)}});
  }
  json regions = json::array();
  for (std::size_t i = 0; i < plan.regions.size(); ++i) {
    const auto& cell = diagram.cell(plan.region_cells[i]);
    json poly = json::array();
    for (int k : plan.regions[i]) poly.push_back(xy(plan.points[k]));
    regions.push_back({{"cell", cell.id},
                       {"polygon", poly},
                       {"label", monomial_string(cell.face.on_points.front())},
                       {"class", to_string(cell.cls)},
                       {"value", to_string(theta_prime(diagram, cell))}});
  }
  return {{"points", points}, {"segments", segments}, {"regions", regions}};
}

std::string simplex_svg(const DualDiagram& diagram, const SimplexProjection& plan) {
  auto cs = corners();
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 866\" width=\"1000\" height=\"866\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"866\" fill=\"white\"/>\n";
  os << "<polygon points=\"";
  for (int j = 0; j < 3; ++j) os << (j ? " " : "") << fmt(cs[j].x) << "," << fmt(cs[j].y);
  os << "\" fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>\n";

  os << "<g id=\"regions\">\n";
  for (std::size_t i = 0; i < plan.regions.size(); ++i) {
    const auto& cell = diagram.cell(plan.region_cells[i]);
    double cx = 0;
    double cy = 0;
    os << "<polygon points=\"";
    for (std::size_t k = 0; k < plan.regions[i].size(); ++k) {
      const auto& p = plan.points[plan.regions[i][k]];
      os << (k ? " " : "") << fmt(p.x) << "," << fmt(p.y);
      cx += p.x;
      cy += p.y;
    }
    cx /= static_cast<double>(plan.regions[i].size());
    cy /= static_cast<double>(plan.regions[i].size());
    os << "\" fill=\"" << color(cell.cls) << "\" fill-opacity=\"0.06\" stroke=\"none\"/>\n";
    os << "<text x=\"" << fmt(cx) << "\" y=\"" << fmt(cy) << "\" font-size=\"14\" text-anchor=\"middle\" fill=\"#444\">"
       << monomial_string(cell.face.on_points.front()) << " : " << to_string(theta_prime(diagram, cell))
       << "</text>\n";
  }
  os << "</g>\n<g id=\"segments\">\n";
  for (std::size_t i = 0; i < plan.segments.size(); ++i) {
    const auto& cell = diagram.cell(plan.segment_cells[i]);
    const auto& a = plan.points[plan.segments[i].first];
    const auto& b = plan.points[plan.segments[i].second];
    os << "<line x1=\"" << fmt(a.x) << "\" y1=\"" << fmt(a.y) << "\" x2=\"" << fmt(b.x) << "\" y2=\"" << fmt(b.y)
       << "\" stroke=\"" << color(cell.cls) << "\" stroke-width=\"2\"/>\n";
  }
  os << "</g>\n<g id=\"points\">\n";
  for (const auto& p : plan.points) {
    const auto& cell = diagram.cell(p.cell);
    os << "<circle cx=\"" << fmt(p.x) << "\" cy=\"" << fmt(p.y) << "\" r=\"6\" fill=\"" << color(cell.cls) << "\"/>\n";
    std::string label = ray_label(cell.rep);
    if (auto t = maybe_theta(diagram, cell)) label += " " + to_string(*t);
    os << "<text x=\"" << fmt(p.x + 9) << "\" y=\"" << fmt(p.y - 9) << "\" font-size=\"13\" fill=\""
       << color(cell.cls) << "\">" << label << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace loja
