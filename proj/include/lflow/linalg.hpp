#ifndef LFLOW_LINALG_HPP
#define LFLOW_LINALG_HPP

#include "lflow/graph.hpp"
#include "lflow/rational.hpp"

#include <boost/integer/common_factor.hpp>

#include <algorithm>
#include <optional>
#include <vector>

namespace lflow::linalg {

using IntMatrix = std::vector<std::vector<Integer>>;
using Matrix = std::vector<std::vector<Rational>>;

/// Dense 0/1 vertex-by-edge incidence matrix.
inline IntMatrix incidence_matrix(const Graph& g) {
  IntMatrix a(g.n(), std::vector<Integer>(g.m(), 0));
  for (EdgeId e = 0; e < g.m(); ++e) {
    a[g.edge(e).u][e] = 1;
    a[g.edge(e).v][e] = 1;
  }
  return a;
}

inline Matrix to_rational(const IntMatrix& a) {
  Matrix r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i].assign(a[i].begin(), a[i].end());
  return r;
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
inline Integer bareiss_determinant(IntMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// Reduced row echelon form over the rationals.
struct Rref {
  Matrix reduced;
  std::vector<int> pivot_columns;
};

inline Rref rref(Matrix a) {
  Rref out;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    out.pivot_columns.push_back(static_cast<int>(c));
    ++r;
  }
  out.reduced = std::move(a);
  return out;
}

inline int rank(const Matrix& a) { return static_cast<int>(rref(a).pivot_columns.size()); }

/// Some solution of a x = b (free variables zero), or nullopt when inconsistent.
/// Generic dense route; used as an independent check of the structured solvers.
inline std::optional<std::vector<Rational>> dense_solve(const Matrix& a, const std::vector<Rational>& b) {
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  Matrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  if (a.empty()) return std::vector<Rational>{};
  auto red = rref(std::move(aug));
  std::vector<Rational> x(cols, 0);
  for (std::size_t k = 0; k < red.pivot_columns.size(); ++k) {
    if (static_cast<std::size_t>(red.pivot_columns[k]) == cols) return std::nullopt;
    x[red.pivot_columns[k]] = red.reduced[k][cols];
  }
  return x;
}

namespace detail {
inline Integer content(const std::vector<Integer>& row) {
  Integer g = 0;
  for (const auto& x : row)
    if (x != 0) g = boost::multiprecision::gcd(g, boost::multiprecision::abs(x));
  return g;
}
}  // namespace detail

/// Integer basis of {x : a x = 0} via fraction-free Gauss-Jordan elimination.
/// Each vector is primitive (gcd 1) with its first nonzero entry positive.
inline std::vector<std::vector<Integer>> integer_nullspace(IntMatrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Integer f = a[i][c], piv = a[r][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = piv * a[i][j] - f * a[r][j];
      if (Integer g = detail::content(a[i]); g > 1)
        for (auto& x : a[i]) x /= g;
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  Integer scale = 1;
  for (std::size_t k = 0; k < pivot_col.size(); ++k)
    scale = boost::multiprecision::lcm(scale, boost::multiprecision::abs(a[k][pivot_col[k]]));

  std::vector<std::vector<Integer>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Integer> x(cols, 0);
    x[f] = scale;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) x[pivot_col[k]] = -a[k][f] * scale / a[k][pivot_col[k]];
    Integer g = detail::content(x);
    for (auto& v : x) v /= g;
    auto first = std::find_if(x.begin(), x.end(), [](const Integer& v) { return v != 0; });
    if (*first < 0)
      for (auto& v : x) v = -v;
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace lflow::linalg

#endif  // LFLOW_LINALG_HPP
