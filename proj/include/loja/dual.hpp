#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "loja/newton.hpp"

namespace loja {

enum class CellClass { Positive, Vanishing, Nonvanishing };

std::string to_string(CellClass c);

/// One equivalence class [P] of the dual Newton diagram.
struct DualCell {
  int id = 0;
  Face face;
  int cell_dim = 0;
  std::vector<Integer> rep;  // primitive interior representative
  Rational d;                // d(rep, f)
  CellClass cls = CellClass::Positive;
  IndexSet I;
  IndexSet var;
  IndexSet itilde;
  IndexSet var_inv;
  std::vector<std::vector<Integer>> extreme_rays;  // sorted facet normals
  std::vector<int> ray_cells;                      // ids of the matching vertex cells

  WeightVector weight() const { return WeightVector::from_integers(rep); }
  /// A facet of Gamma_+ (a vertex of the diagram).
  bool is_facet_vertex() const { return cell_dim == 1; }
  /// A vertex of Gamma_+ (a full-dimensional region).
  bool is_region() const { return face.dim == 0; }
};

class DualDiagram {
 public:
  DualDiagram(Polynomial f, std::vector<Facet> facets, std::vector<DualCell> cells,
              std::vector<std::pair<int, int>> incidence);

  const Polynomial& polynomial() const { return f_; }
  int n() const { return f_.n(); }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<DualCell>& cells() const { return cells_; }
  const DualCell& cell(int id) const { return cells_.at(static_cast<std::size_t>(id)); }
  /// Pairs (Q, P) with Delta(Q) strictly containing Delta(P).
  const std::vector<std::pair<int, int>>& incidence() const { return incidence_; }
  bool succeeds(int q, int p) const;

  /// The cell containing P in its relative interior.
  const DualCell& cell_of(const WeightVector& P) const;
  std::vector<int> cells_with_dim(int cell_dim) const;
  int count(int cell_dim, CellClass cls) const;

 private:
  Polynomial f_;
  std::vector<Facet> facets_;
  std::vector<DualCell> cells_;
  std::vector<std::pair<int, int>> incidence_;
};

DualDiagram build_dual_diagram(const Polynomial& f, const GeometryGuard& guard = {});

CellClass classify_weight(const WeightVector& P, const Polynomial& f);

/// P / d(P, f); throws PreconditionError when d = 0.
WeightVector normalize(const WeightVector& P, const Polynomial& f);

struct VariableSets {
  IndexSet var;
  IndexSet I;
  IndexSet itilde;
  IndexSet var_inv;
};

VariableSets variable_sets(const DualDiagram& diagram, const DualCell& cell);

/// The face polynomial f_P of a cell.
Polynomial cell_polynomial(const DualDiagram& diagram, const DualCell& cell);

/// Ratio value theta(P)' of a positive or vanishing cell.
Rational theta_prime(const DualDiagram& diagram, const DualCell& cell);

struct ProjectedPoint {
  int cell = 0;
  double x = 0;
  double y = 0;
  std::vector<Rational> bary;
};

struct SimplexProjection {
  std::vector<ProjectedPoint> points;                  // one per facet vertex
  std::vector<std::pair<int, int>> segments;           // cell id -> point indices, parallel to segment_cells
  std::vector<int> segment_cells;
  std::vector<std::vector<int>> regions;               // polygon point indices, parallel to region_cells
  std::vector<int> region_cells;
};

SimplexProjection export_simplex_projection(const DualDiagram& diagram);
nlohmann::json simplex_json(const DualDiagram& diagram, const SimplexProjection& plan);
std::string simplex_svg(const DualDiagram& diagram, const SimplexProjection& plan);

}  // namespace loja
