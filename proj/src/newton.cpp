#include "loja/newton.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "loja/error.hpp"

namespace loja {

// ---------------------------------------------------------------------------
// Exact linear algebra helpers

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(std::vector<std::vector<Rational>>& rows) {
  std::vector<int> pivots;
  if (rows.empty()) return pivots;
  std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      Rational factor = rows[i][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= factor * rows[r][k];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

// The primitive integer generator of a one-dimensional null space, if the
// system has rank cols-1; sign is not normalized.
std::optional<std::vector<Integer>> null_line(std::vector<std::vector<Rational>> rows, std::size_t cols) {
  std::vector<int> pivots = rref(rows);
  if (pivots.size() + 1 != cols) return std::nullopt;
  std::size_t free_col = 0;
  for (std::size_t c = 0, k = 0; c < cols; ++c) {
    if (k < pivots.size() && pivots[k] == static_cast<int>(c)) {
      ++k;
    } else {
      free_col = c;
      break;
    }
  }
  std::vector<Rational> v(cols, Rational(0));
  v[free_col] = 1;
  for (std::size_t i = 0; i < pivots.size(); ++i) v[static_cast<std::size_t>(pivots[i])] = -rows[i][free_col];
  Integer lcm(1);
  for (const auto& q : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(cols);
  for (const auto& q : v) out.emplace_back(Rational(q * lcm).get_num());
  Integer g = gcd_of(out);
  for (auto& z : out) z /= g;
  return out;
}

void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

int rank_of(std::vector<std::vector<Rational>> rows) { return static_cast<int>(rref(rows).size()); }

Integer determinant(const std::vector<std::vector<Integer>>& m) {
  // Bareiss fraction-free elimination.
  std::size_t n = m.size();
  if (n == 0) return Integer(1);
  std::vector<std::vector<Integer>> a = m;
  Integer sign(1);
  Integer prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return Integer(0);
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// ---------------------------------------------------------------------------
// WeightVector

WeightVector::WeightVector(std::vector<Rational> entries, bool normalized)
    : entries_(std::move(entries)), normalized_(normalized) {
  if (entries_.empty()) throw precondition_error("weight vector must have at least one entry");
  bool positive = false;
  for (const auto& p : entries_) {
    if (sgn(p) < 0) throw precondition_error("weight vector entries must be non-negative");
    if (sgn(p) > 0) positive = true;
  }
  if (!positive) throw precondition_error("weight vector must have a positive entry");
}

WeightVector WeightVector::from_integers(const std::vector<Integer>& entries) {
  std::vector<Rational> q;
  q.reserve(entries.size());
  for (const auto& z : entries) q.emplace_back(z);
  return WeightVector(std::move(q));
}

WeightVector WeightVector::from_ints(const std::vector<long>& entries) {
  std::vector<Rational> q;
  q.reserve(entries.size());
  for (long z : entries) q.emplace_back(z);
  return WeightVector(std::move(q));
}

bool WeightVector::is_strictly_positive() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& p) { return sgn(p) > 0; });
}

IndexSet WeightVector::zero_indices() const {
  IndexSet out;
  for (int j = 0; j < n(); ++j) {
    if (sgn(entries_[j]) == 0) out.push_back(j);
  }
  return out;
}

Rational WeightVector::dot(const ExponentVector& e) const {
  if (static_cast<int>(e.size()) != n()) throw precondition_error("weight/exponent length mismatch");
  Rational s(0);
  for (int j = 0; j < n(); ++j) {
    if (e[j] != 0) s += entries_[j] * e[j];
  }
  return s;
}

WeightVector WeightVector::scaled(const Rational& factor) const {
  std::vector<Rational> out = entries_;
  for (auto& p : out) p *= factor;
  return WeightVector(std::move(out));
}

std::vector<Integer> WeightVector::primitive() const {
  Integer lcm(1);
  for (const auto& q : entries_) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> out;
  for (const auto& q : entries_) out.emplace_back(Rational(q * lcm).get_num());
  Integer g = gcd_of(out);
  for (auto& z : out) z /= g;
  return out;
}

std::string to_string(const WeightVector& w) {
  std::string out = "(";
  for (int j = 0; j < w.n(); ++j) {
    if (j) out += ",";
    out += to_string(w[j]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// Faces

bool Face::contains(const Face& other) const {
  return std::includes(on_points.begin(), on_points.end(), other.on_points.begin(), other.on_points.end()) &&
         std::includes(recession.begin(), recession.end(), other.recession.begin(), other.recession.end());
}

int face_dimension(const std::vector<ExponentVector>& points, const IndexSet& directions, int n) {
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 1; i < points.size(); ++i) {
    std::vector<Rational> row(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) row[j] = points[i][j] - points[0][j];
    rows.push_back(std::move(row));
  }
  for (int j : directions) {
    std::vector<Rational> row(static_cast<std::size_t>(n), Rational(0));
    row[static_cast<std::size_t>(j)] = 1;
    rows.push_back(std::move(row));
  }
  return rank_of(std::move(rows));
}

Face make_face(std::vector<ExponentVector> points, IndexSet recession, int n) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::sort(recession.begin(), recession.end());
  Face face;
  face.dim = face_dimension(points, recession, n);
  face.on_points = std::move(points);
  face.recession = std::move(recession);
  return face;
}

DFace d_and_face(const WeightVector& P, const Polynomial& f) {
  if (f.is_zero()) throw precondition_error("d(P,f) of the zero polynomial");
  if (P.n() != f.n()) throw precondition_error("weight vector length differs from n");
  std::optional<Rational> best;
  std::vector<ExponentVector> argmin;
  for (const auto& [e, c] : f.terms()) {
    Rational v = P.dot(e);
    if (!best || v < *best) {
      best = v;
      argmin.clear();
      argmin.push_back(e);
    } else if (v == *best) {
      argmin.push_back(e);
    }
  }
  return {*best, make_face(std::move(argmin), P.zero_indices(), f.n())};
}

Rational d_of(const WeightVector& P, const Polynomial& f) {
  if (f.is_zero()) throw precondition_error("d(P,f) of the zero polynomial");
  std::optional<Rational> best;
  for (const auto& [e, c] : f.terms()) {
    Rational v = P.dot(e);
    if (!best || v < *best) best = v;
  }
  return *best;
}

// ---------------------------------------------------------------------------
// Facets

namespace {

void check_guard(const Polynomial& f, const GeometryGuard& guard) {
  if (f.is_zero()) throw precondition_error("Newton polyhedron of the zero polynomial");
  if (f.n() > guard.max_n) {
    throw guard_error("dimension guard exceeded: n=" + std::to_string(f.n()) + " > " + std::to_string(guard.max_n));
  }
  if (static_cast<int>(f.size()) > guard.max_support) {
    throw guard_error("support guard exceeded: " + std::to_string(f.size()) + " terms > " +
                      std::to_string(guard.max_support));
  }
}

// Points not dominated componentwise by another support point; these span every facet.
std::vector<ExponentVector> minimal_points(const std::vector<ExponentVector>& pts) {
  std::vector<ExponentVector> out;
  for (const auto& p : pts) {
    bool dominated = false;
    for (const auto& q : pts) {
      if (q == p) continue;
      bool le = true;
      for (std::size_t j = 0; j < p.size() && le; ++j) le = q[j] <= p[j];
      if (le) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(p);
  }
  return out;
}

Facet facet_from_normal(const std::vector<Integer>& normal, const Polynomial& f) {
  WeightVector w = WeightVector::from_integers(normal);
  DFace df = d_and_face(w, f);
  return {normal, Integer(df.d.get_num()), std::move(df.face)};
}

}  // namespace

std::vector<Facet> facets(const Polynomial& f, const GeometryGuard& guard) {
  check_guard(f, guard);
  const int n = f.n();
  const std::vector<ExponentVector> support = f.support();
  const std::vector<ExponentVector> cand = minimal_points(support);

  std::set<std::vector<Integer>> normals;
  if (cand.size() == 1) {
    // Single-point support: Gamma_+ is a shifted orthant.
    for (int j = 0; j < n; ++j) {
      std::vector<Integer> e(static_cast<std::size_t>(n), Integer(0));
      e[j] = 1;
      normals.insert(e);
    }
  } else {
    const int m = static_cast<int>(cand.size());
    for (int t = 1; t <= std::min(n, m); ++t) {
      for_each_combination(m, t, [&](const std::vector<int>& pts) {
        for_each_combination(n, n - t, [&](const std::vector<int>& dirs) {
          std::vector<std::vector<Rational>> rows;
          for (int i = 1; i < t; ++i) {
            std::vector<Rational> row(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) row[j] = cand[pts[i]][j] - cand[pts[0]][j];
            rows.push_back(std::move(row));
          }
          for (int j : dirs) {
            std::vector<Rational> row(static_cast<std::size_t>(n), Rational(0));
            row[static_cast<std::size_t>(j)] = 1;
            rows.push_back(std::move(row));
          }
          auto normal = null_line(std::move(rows), static_cast<std::size_t>(n));
          if (!normal) return;
          bool has_pos = false;
          bool has_neg = false;
          for (const auto& z : *normal) {
            has_pos |= sgn(z) > 0;
            has_neg |= sgn(z) < 0;
          }
          if (has_pos && has_neg) return;
          if (has_neg) {
            for (auto& z : *normal) z = -z;
          }
          if (normals.count(*normal)) return;
          Integer d0(0);
          for (int j = 0; j < n; ++j) d0 += (*normal)[j] * cand[pts[0]][j];
          for (const auto& p : cand) {
            Integer v(0);
            for (int j = 0; j < n; ++j) v += (*normal)[j] * p[j];
            if (v < d0) return;
          }
          normals.insert(*normal);
        });
      });
    }
  }

  std::vector<Facet> out;
  out.reserve(normals.size());
  for (const auto& normal : normals) {
    Facet facet = facet_from_normal(normal, f);
    if (facet.face.dim != n - 1) throw std::logic_error("facet candidate is not a facet");
    out.push_back(std::move(facet));
  }
  return out;
}

std::vector<PolyhedronVertex> polyhedron_vertices(const Polynomial& f, const GeometryGuard& guard) {
  return polyhedron_vertices(f, facets(f, guard));
}

std::vector<PolyhedronVertex> polyhedron_vertices(const Polynomial& f, const std::vector<Facet>& fs) {
  std::vector<PolyhedronVertex> out;
  for (const auto& p : f.support()) {
    std::optional<std::vector<ExponentVector>> pts;
    std::optional<IndexSet> rec;
    for (const auto& facet : fs) {
      if (!std::binary_search(facet.face.on_points.begin(), facet.face.on_points.end(), p)) continue;
      if (!pts) {
        pts = facet.face.on_points;
        rec = facet.face.recession;
        continue;
      }
      std::vector<ExponentVector> ip;
      std::set_intersection(pts->begin(), pts->end(), facet.face.on_points.begin(), facet.face.on_points.end(),
                            std::back_inserter(ip));
      IndexSet ir;
      std::set_intersection(rec->begin(), rec->end(), facet.face.recession.begin(), facet.face.recession.end(),
                            std::back_inserter(ir));
      pts = std::move(ip);
      rec = std::move(ir);
    }
    if (pts && pts->size() == 1 && rec->empty()) out.push_back({p, total_degree(p)});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.point < b.point; });
  return out;
}

// ---------------------------------------------------------------------------
// Convenience and axis data

bool is_k_convenient(const Polynomial& f, int k) {
  const int n = f.n();
  if (k < 0 || k > n - 1) throw precondition_error("k must lie in 0..n-1");
  bool ok = true;
  for_each_combination(n, n - k, [&](const std::vector<int>& idx) {
    if (ok && restrict_to(f, IndexSet(idx.begin(), idx.end())).is_zero()) ok = false;
  });
  return ok;
}

bool is_convenient(const Polynomial& f) { return is_k_convenient(f, f.n() - 1); }

int convenience_level(const Polynomial& f) {
  if (f.is_zero()) return -1;
  int level = 0;
  for (int k = 1; k <= f.n() - 1; ++k) {
    if (!is_k_convenient(f, k)) break;
    level = k;
  }
  return level;
}

AxisData axis_data(const Polynomial& f) {
  if (f.is_zero()) throw precondition_error("axis data of the zero polynomial");
  const int n = f.n();
  AxisData out;
  out.b.assign(static_cast<std::size_t>(n), std::nullopt);
  for (const auto& [e, c] : f.terms()) {
    int nonzero = 0;
    int which = -1;
    for (int j = 0; j < n; ++j) {
      if (e[j] != 0) {
        ++nonzero;
        which = j;
      }
    }
    if (nonzero == 0) throw precondition_error("f(0) != 0: axis data needs a germ vanishing at the origin");
    if (nonzero != 1) continue;
    auto& slot = out.b[static_cast<std::size_t>(which)];
    if (!slot || e[which] < *slot) slot = e[which];
  }
  for (int j = 0; j < n; ++j) {
    if (!out.b[j]) continue;
    if (!out.B || *out.b[j] > *out.B) out.B = *out.b[j];
  }
  if (out.B) {
    for (int j = 0; j < n; ++j) {
      if (out.b[j] && *out.b[j] == *out.B) out.I_B.push_back(j);
    }
  }
  return out;
}

}  // namespace loja
