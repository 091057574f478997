#pragma once

#include "revnf/rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace revnf::linalg {

/// Sparse row: (column, value) pairs, strictly increasing columns, no zeros.
using SparseRow = std::vector<std::pair<int, Rational>>;
using DenseVec = std::vector<Rational>;

/// a + f*b
inline auto axpy(const SparseRow &a, const Rational &f, const SparseRow &b) -> SparseRow {
  SparseRow out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, f * ib->second);
      ++ib;
    } else {
      Rational v = ia->second + f * ib->second;
      if (!v.is_zero()) out.emplace_back(ia->first, std::move(v));
      ++ia;
      ++ib;
    }
  }
  return out;
}

inline auto to_sparse(const DenseVec &v) -> SparseRow {
  SparseRow r;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (!v[i].is_zero()) r.emplace_back(i, v[i]);
  return r;
}

/// Incremental exact Gaussian elimination. Rows are reduced on insertion, so
/// rank is available at any time; reduced() back-substitutes to RREF.
class Echelon {
public:
  explicit Echelon(int ncols) : ncols_(ncols) {}

  /// Returns true when the row was independent of those already present.
  auto insert(SparseRow row) -> bool {
    while (!row.empty()) {
      auto lead = row.front().first;
      auto it = pivots_.find(lead);
      if (it == pivots_.end()) {
        Rational inv = Rational{1} / row.front().second;
        for (auto &[c, v] : row) v *= inv;
        pivots_.emplace(lead, std::move(row));
        return true;
      }
      row = axpy(row, -row.front().second, it->second);
    }
    return false;
  }

  [[nodiscard]] auto rank() const -> int { return static_cast<int>(pivots_.size()); }
  [[nodiscard]] auto ncols() const -> int { return ncols_; }
  [[nodiscard]] auto nullity() const -> int { return ncols_ - rank(); }
  [[nodiscard]] auto is_pivot(int c) const -> bool { return pivots_.count(c) != 0; }

  /// Fully reduced pivot rows, keyed by pivot column.
  [[nodiscard]] auto reduced() const -> std::map<int, SparseRow> {
    std::map<int, SparseRow> rows = pivots_;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
      auto &row = it->second;
      for (std::size_t k = 1; k < row.size();) {
        auto c = row[k].first;
        auto p = rows.find(c);
        if (p != rows.end() && p->first != it->first) {
          Rational f = -row[k].second;
          row = axpy(row, f, p->second);
          // entries before k are untouched since pivot rows only hold columns >= their pivot
        } else {
          ++k;
        }
      }
    }
    return rows;
  }

  /// Basis of the null space, one dense vector per free column.
  [[nodiscard]] auto nullspace() const -> std::vector<DenseVec> {
    auto rows = reduced();
    std::vector<DenseVec> basis;
    for (int f = 0; f < ncols_; ++f) {
      if (rows.count(f)) continue;
      DenseVec v(ncols_, Rational{0});
      v[f] = Rational{1};
      for (const auto &[c, row] : rows) {
        auto hit = std::lower_bound(row.begin(), row.end(), f,
                                    [](const auto &e, int col) { return e.first < col; });
        if (hit != row.end() && hit->first == f) v[c] = -hit->second;
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

private:
  int ncols_;
  std::map<int, SparseRow> pivots_;
};

/// Solves M x = b where M is given by its columns. Returns one solution
/// (free variables zero) or nullopt when inconsistent.
inline auto solve_columns(const std::vector<SparseRow> &columns, int nrows, const SparseRow &b)
    -> std::optional<DenseVec> {
  int n = static_cast<int>(columns.size());
  // Work on the transposed problem row-wise: build rows of [M | b].
  std::vector<SparseRow> rows(nrows);
  for (int j = 0; j < n; ++j)
    for (const auto &[i, v] : columns[j]) rows[i].emplace_back(j, v);
  for (const auto &[i, v] : b) rows[i].emplace_back(n, v);
  Echelon ech(n + 1);
  for (auto &r : rows) ech.insert(std::move(r));
  if (ech.is_pivot(n)) return std::nullopt;
  auto red = ech.reduced();
  DenseVec x(n, Rational{0});
  for (const auto &[c, row] : red)
    if (!row.empty() && row.back().first == n) x[c] = row.back().second;
  return x;
}

} // namespace revnf::linalg
