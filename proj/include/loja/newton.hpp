#pragma once

#include <optional>
#include <vector>

#include "loja/polynomial.hpp"
#include "loja/rational.hpp"

namespace loja {

/// Non-negative weight vector P = (p_1, ..., p_n).
class WeightVector {
 public:
  explicit WeightVector(std::vector<Rational> entries, bool normalized = false);
  static WeightVector from_integers(const std::vector<Integer>& entries);
  static WeightVector from_ints(const std::vector<long>& entries);

  int n() const { return static_cast<int>(entries_.size()); }
  const std::vector<Rational>& entries() const { return entries_; }
  const Rational& operator[](int j) const { return entries_[static_cast<std::size_t>(j)]; }
  bool is_normalized() const { return normalized_; }
  bool is_strictly_positive() const;
  /// {j : p_j = 0}
  IndexSet zero_indices() const;
  Rational dot(const ExponentVector& e) const;
  WeightVector scaled(const Rational& factor) const;
  /// Smallest positive integer multiple with coprime entries.
  std::vector<Integer> primitive() const;

  friend bool operator==(const WeightVector& a, const WeightVector& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<Rational> entries_;
  bool normalized_ = false;
};

std::string to_string(const WeightVector& w);

/// A face of the Newton polyhedron: conv(on_points) + cone(e_j, j in recession).
struct Face {
  std::vector<ExponentVector> on_points;  // sorted ascending
  IndexSet recession;                     // sorted, 0-based
  int dim = 0;

  bool contains(const Face& other) const;
  friend bool operator==(const Face& a, const Face& b) {
    return a.on_points == b.on_points && a.recession == b.recession;
  }
  friend bool operator<(const Face& a, const Face& b) {
    if (a.on_points != b.on_points) return a.on_points < b.on_points;
    return a.recession < b.recession;
  }
};

/// Affine dimension of conv(points) + cone(e_j : j in directions).
int face_dimension(const std::vector<ExponentVector>& points, const IndexSet& directions, int n);

/// Builds a Face from its point and recession sets (sorting both and computing dim).
Face make_face(std::vector<ExponentVector> points, IndexSet recession, int n);

struct Facet {
  std::vector<Integer> normal;  // primitive, non-negative
  Integer offset;               // d(normal, f)
  Face face;                    // dim n-1

  WeightVector weight() const { return WeightVector::from_integers(normal); }
};

struct AxisData {
  std::vector<std::optional<int>> b;  // b_j, absent when f^{j} == 0
  std::optional<int> B;
  IndexSet I_B;
};

struct GeometryGuard {
  int max_n = 6;
  int max_support = 64;
};

struct DFace {
  Rational d;
  Face face;
};

/// d(P,f) and the face Delta(P,f) where the minimum is attained.
DFace d_and_face(const WeightVector& P, const Polynomial& f);
Rational d_of(const WeightVector& P, const Polynomial& f);

/// All facets of the Newton polyhedron, sorted by normal. Coordinate facets are included.
std::vector<Facet> facets(const Polynomial& f, const GeometryGuard& guard = {});

struct PolyhedronVertex {
  ExponentVector point;
  int degree = 0;
};

std::vector<PolyhedronVertex> polyhedron_vertices(const Polynomial& f, const GeometryGuard& guard = {});
std::vector<PolyhedronVertex> polyhedron_vertices(const Polynomial& f, const std::vector<Facet>& fs);

bool is_k_convenient(const Polynomial& f, int k);
bool is_convenient(const Polynomial& f);
/// Largest k with f k-convenient, or -1 when f is zero.
int convenience_level(const Polynomial& f);

AxisData axis_data(const Polynomial& f);

/// Rank of a set of rational row vectors (exact Gaussian elimination).
int rank_of(std::vector<std::vector<Rational>> rows);
/// Exact determinant of a square integer matrix.
Integer determinant(const std::vector<std::vector<Integer>>& m);

}  // namespace loja
