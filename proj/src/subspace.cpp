#include <algorithm>
#include <string>

#include "glc/error.hpp"
#include "glc/linalg.hpp"

namespace glc::linalg {

namespace {

// In-place reduced row echelon form; returns the pivot columns.
std::vector<int> reduce(const Field& f, std::vector<Vec>& rows, int ncols) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int col = 0; col < ncols && r < rows.size(); ++col) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    const Fe inv = f.inv(rows[r][col]);
    for (Fe& x : rows[r]) x = f.mul(x, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      const Fe c = rows[i][col];
      for (int j = 0; j < ncols; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(c, rows[r][j]));
    }
    pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

void check_same_space(const Subspace& a, const Subspace& b) {
  if (a.n() != b.n() || &a.field() != &b.field())
    throw Error(ErrorCode::DimensionMismatch, "subspaces live in different ambient spaces");
}

}  // namespace

Subspace rref(const Field& field, int n, std::vector<Vec> rows) {
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw Error(ErrorCode::DimensionMismatch, "row length differs from n");
    for (Fe x : r)
      if (!field.valid(x)) throw Error(ErrorCode::InvalidElement, "entry outside the field");
  }
  reduce(field, rows, n);
  Subspace s(field, n);
  s.basis_ = std::move(rows);
  return s;
}

Subspace full_space(const Field& field, int n) {
  std::vector<Vec> rows(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) rows[i][i] = 1;
  return rref(field, n, std::move(rows));
}

bool Subspace::contains(const Vec& v) const {
  if (static_cast<int>(v.size()) != n_) throw Error(ErrorCode::DimensionMismatch, "vector length differs from n");
  const Field& f = *field_;
  Vec w = v;
  for (const auto& row : basis_) {
    int pivot = 0;
    while (row[pivot] == 0) ++pivot;
    const Fe c = w[pivot];
    if (c == 0) continue;
    for (int j = 0; j < n_; ++j) w[j] = f.sub(w[j], f.mul(c, row[j]));
  }
  return std::all_of(w.begin(), w.end(), [](Fe x) { return x == 0; });
}

bool Subspace::operator<(const Subspace& o) const {
  if (dim() != o.dim()) return dim() < o.dim();
  return basis_ < o.basis_;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  check_same_space(a, b);
  std::vector<Vec> rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return rref(a.field(), a.n(), std::move(rows));
}

Subspace left_null_space(const Field& field, const std::vector<Vec>& rows, int ncols) {
  const int nrows = static_cast<int>(rows.size());
  // c * rows = 0  <=>  rows^T * c^T = 0; solve the column system.
  std::vector<Vec> t(static_cast<std::size_t>(ncols), Vec(static_cast<std::size_t>(nrows), 0));
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < ncols; ++j) t[j][i] = rows[i][j];
  const auto pivots = reduce(field, t, nrows);
  std::vector<bool> is_pivot(static_cast<std::size_t>(nrows), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (int free = 0; free < nrows; ++free) {
    if (is_pivot[free]) continue;
    Vec v(static_cast<std::size_t>(nrows), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = field.neg(t[r][free]);
    basis.push_back(std::move(v));
  }
  return rref(field, nrows, std::move(basis));
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  check_same_space(a, b);
  // (alpha, beta) with alpha*A + beta*B = 0 gives alpha*A in A ∩ B.
  std::vector<Vec> stacked = a.basis();
  stacked.insert(stacked.end(), b.basis().begin(), b.basis().end());
  const Subspace relations = left_null_space(a.field(), stacked, a.n());
  const Field& f = a.field();
  std::vector<Vec> rows;
  for (const auto& rel : relations.basis()) {
    Vec v(static_cast<std::size_t>(a.n()), 0);
    for (int i = 0; i < a.dim(); ++i) {
      if (rel[i] == 0) continue;
      for (int j = 0; j < a.n(); ++j) v[j] = f.add(v[j], f.mul(rel[i], a.basis()[i][j]));
    }
    rows.push_back(std::move(v));
  }
  return rref(f, a.n(), std::move(rows));
}

bool subspace_leq(const Subspace& a, const Subspace& b) {
  check_same_space(a, b);
  return std::all_of(a.basis().begin(), a.basis().end(), [&](const Vec& v) { return b.contains(v); });
}

namespace {

std::uint64_t count_subspaces(int n, std::uint64_t q, std::uint64_t cap) {
  // Gaussian binomials by the recurrence C(n,k) = C(n-1,k-1) + q^k C(n-1,k).
  std::vector<std::uint64_t> row = {1};
  for (int m = 1; m <= n; ++m) {
    std::vector<std::uint64_t> next(static_cast<std::size_t>(m + 1), 0);
    std::uint64_t qk = 1;
    for (int k = 0; k <= m; ++k) {
      const std::uint64_t left = k > 0 ? row[k - 1] : 0;
      const std::uint64_t right = k < m ? row[k] : 0;
      const long double approx = static_cast<long double>(left) + static_cast<long double>(qk) * right;
      next[k] = approx > static_cast<long double>(cap) ? cap + 1 : left + qk * right;
      if (qk <= cap) qk *= q;
    }
    row = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto c : row) total = std::min<std::uint64_t>(total + c, cap + 1);
  return total;
}

}  // namespace

std::vector<Subspace> all_subspaces(int n, const Field& field, std::uint64_t cap) {
  const std::uint64_t total = count_subspaces(n, static_cast<std::uint64_t>(field.q()), cap);
  if (total > cap)
    throw Error(ErrorCode::CapExceeded, "F_" + std::to_string(field.q()) + "^" + std::to_string(n) +
                                            " has more than " + std::to_string(cap) + " subspaces");
  std::vector<Subspace> out;
  out.reserve(total);
  const int q = field.q();
  for (int d = 0; d <= n; ++d) {
    std::vector<Subspace> layer;
    // Pivot column sets as increasing index vectors.
    std::vector<int> pivots(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) pivots[i] = i;
    while (true) {
      // Free positions: row r, column c > pivots[r], c not a pivot column.
      std::vector<std::pair<int, int>> free;
      for (int r = 0; r < d; ++r)
        for (int c = pivots[r] + 1; c < n; ++c)
          if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.emplace_back(r, c);
      std::vector<int> values(free.size(), 0);
      while (true) {
        std::vector<Vec> rows(static_cast<std::size_t>(d), Vec(static_cast<std::size_t>(n), 0));
        for (int r = 0; r < d; ++r) rows[r][pivots[r]] = 1;
        for (std::size_t i = 0; i < free.size(); ++i) rows[free[i].first][free[i].second] = static_cast<Fe>(values[i]);
        layer.push_back(rref(field, n, std::move(rows)));
        std::size_t pos = 0;
        while (pos < values.size() && ++values[pos] == q) values[pos++] = 0;
        if (pos == values.size()) break;
      }
      // Next combination of d pivot columns out of n.
      int i = d - 1;
      while (i >= 0 && pivots[i] == n - d + i) --i;
      if (i < 0) break;
      ++pivots[i];
      for (int j = i + 1; j < d; ++j) pivots[j] = pivots[j - 1] + 1;
    }
    std::sort(layer.begin(), layer.end());
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

Subspace image_unchecked(const Subspace& w, const Matrix& g) {
  std::vector<Vec> rows;
  rows.reserve(w.basis().size());
  for (const auto& v : w.basis()) rows.push_back(row_times(v, g));
  return rref(w.field(), w.n(), std::move(rows));
}

Subspace image(const Subspace& w, const Matrix& g) {
  if (w.n() != g.n() || &w.field() != &g.field())
    throw Error(ErrorCode::DimensionMismatch, "matrix does not act on this space");
  if (!g.invertible()) throw Error(ErrorCode::SingularMatrix, "image under a singular matrix");
  return image_unchecked(w, g);
}

Subspace kernel(const Matrix& m) {
  std::vector<Vec> rows;
  for (int i = 0; i < m.n(); ++i) rows.emplace_back(m.row(i).begin(), m.row(i).end());
  return left_null_space(m.field(), rows, m.n());
}

}  // namespace glc::linalg
