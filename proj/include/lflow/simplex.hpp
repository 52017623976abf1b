#ifndef LFLOW_SIMPLEX_HPP
#define LFLOW_SIMPLEX_HPP

// Exact rational two-phase simplex with Bland's rule.

#include "lflow/errors.hpp"
#include "lflow/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace lflow::lp {

/// Variable bounds; nullopt means infinite in that direction.
struct Bound {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
};

using Terms = std::vector<std::pair<int, Rational>>;

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  /// Model variable values (Optimal only).
  std::vector<Rational> values;
  Rational objective = 0;
  /// Infeasible only: multipliers y over the model's equality rows with
  /// y^T (rows) <= 0 on every admissible direction and y^T rhs > 0 after the
  /// variables are shifted to their finite bounds.
  std::vector<Rational> farkas;
};

/// A linear program over bounded variables with equality rows.
///
/// Internally each variable is rewritten as lo + x (x >= 0, plus a row
/// x + s = hi - lo when hi is finite), hi - x when only hi is finite, or
/// x+ - x- when free. The equality rows keep their identity so phase-1 duals can
/// be reported per model row.
class LinearProgram {
 public:
  int add_variable(Bound b) {
    if (b.lo && b.hi && *b.lo > *b.hi) throw PreconditionError("variable bound lo > hi");
    bounds_.push_back(std::move(b));
    return static_cast<int>(bounds_.size()) - 1;
  }

  int add_equality(Terms terms, Rational rhs) {
    rows_.push_back(std::move(terms));
    rhs_.push_back(std::move(rhs));
    return static_cast<int>(rows_.size()) - 1;
  }

  /// sum terms <= rhs, through a fresh slack variable in [0, inf).
  int add_less_equal(Terms terms, Rational rhs) {
    int slack = add_variable({Rational(0), std::nullopt});
    terms.emplace_back(slack, 1);
    return add_equality(std::move(terms), std::move(rhs));
  }

  [[nodiscard]] int num_variables() const { return static_cast<int>(bounds_.size()); }
  [[nodiscard]] int num_rows() const { return static_cast<int>(rows_.size()); }

  [[nodiscard]] Result feasible() const { return solve(nullptr); }
  [[nodiscard]] Result minimize(const Terms& objective) const { return solve(&objective); }
  [[nodiscard]] Result maximize(const Terms& objective) const {
    Terms neg = objective;
    for (auto& t : neg) t.second = -t.second;
    Result r = solve(&neg);
    r.objective = -r.objective;
    return r;
  }

 private:
  enum class Kind { Lower, Upper, Free };

  struct Standard {
    // Column map for each model variable.
    std::vector<Kind> kind;
    std::vector<int> col;       // x' (or x+ for Free)
    std::vector<int> col_neg;   // x- for Free
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    int num_cols = 0;
  };

  [[nodiscard]] Standard standardize() const {
    Standard s;
    const int nv = num_variables();
    s.kind.resize(nv);
    s.col.assign(nv, -1);
    s.col_neg.assign(nv, -1);
    for (int j = 0; j < nv; ++j) {
      const auto& b = bounds_[j];
      if (b.lo) {
        s.kind[j] = Kind::Lower;
      } else if (b.hi) {
        s.kind[j] = Kind::Upper;
      } else {
        s.kind[j] = Kind::Free;
      }
      s.col[j] = s.num_cols++;
      if (s.kind[j] == Kind::Free) s.col_neg[j] = s.num_cols++;
    }
    std::vector<int> upper_slack(nv, -1);
    for (int j = 0; j < nv; ++j)
      if (s.kind[j] == Kind::Lower && bounds_[j].hi) upper_slack[j] = s.num_cols++;

    for (std::size_t i = 0; i < rows_.size(); ++i) {
      std::vector<Rational> row(s.num_cols, 0);
      Rational rhs = rhs_[i];
      for (const auto& [j, a] : rows_[i]) {
        switch (s.kind[j]) {
          case Kind::Lower:
            row[s.col[j]] += a;
            rhs -= a * *bounds_[j].lo;
            break;
          case Kind::Upper:
            row[s.col[j]] -= a;
            rhs -= a * *bounds_[j].hi;
            break;
          case Kind::Free:
            row[s.col[j]] += a;
            row[s.col_neg[j]] -= a;
            break;
        }
      }
      s.rows.push_back(std::move(row));
      s.rhs.push_back(std::move(rhs));
    }
    for (int j = 0; j < nv; ++j) {
      if (upper_slack[j] < 0) continue;
      std::vector<Rational> row(s.num_cols, 0);
      row[s.col[j]] = 1;
      row[upper_slack[j]] = 1;
      s.rows.push_back(std::move(row));
      s.rhs.push_back(*bounds_[j].hi - *bounds_[j].lo);
    }
    return s;
  }

  [[nodiscard]] Result solve(const Terms* objective) const {
    Standard s = standardize();
    const int R = static_cast<int>(s.rows.size());
    const int N = s.num_cols;
    const int C = N + R;  // structural + artificial
    std::vector<int> sign(R, 1);
    // Tableau rows: [structural | artificial | rhs].
    std::vector<std::vector<Rational>> t(R, std::vector<Rational>(C + 1, 0));
    for (int i = 0; i < R; ++i) {
      if (s.rhs[i] < 0) sign[i] = -1;
      for (int j = 0; j < N; ++j)
        if (s.rows[i][j] != 0) t[i][j] = sign[i] * s.rows[i][j];
      t[i][N + i] = 1;
      t[i][C] = sign[i] * s.rhs[i];
    }
    std::vector<int> basis(R);
    for (int i = 0; i < R; ++i) basis[i] = N + i;
    std::vector<bool> row_alive(R, true);

    auto pivot = [&](int r, int c, std::vector<Rational>& cost_row) {
      Rational inv = 1 / t[r][c];
      for (auto& x : t[r])
        if (x != 0) x *= inv;
      for (int i = 0; i < R; ++i) {
        if (i == r || !row_alive[i] || t[i][c] == 0) continue;
        Rational f = t[i][c];
        for (int j = 0; j <= C; ++j)
          if (t[r][j] != 0) t[i][j] -= f * t[r][j];
      }
      if (cost_row[c] != 0) {
        Rational f = cost_row[c];
        for (int j = 0; j <= C; ++j)
          if (t[r][j] != 0) cost_row[j] -= f * t[r][j];
      }
      basis[r] = c;
    };

    // Returns false if unbounded. cost_row holds reduced costs; entry C is -objective.
    auto run = [&](std::vector<Rational>& cost_row, int max_col) -> bool {
      while (true) {
        int enter = -1;
        for (int j = 0; j < max_col; ++j)
          if (cost_row[j] < 0) {
            enter = j;
            break;
          }
        if (enter == -1) return true;
        int leave = -1;
        Rational best;
        for (int i = 0; i < R; ++i) {
          if (!row_alive[i] || t[i][enter] <= 0) continue;
          Rational ratio = t[i][C] / t[i][enter];
          if (leave == -1 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
            leave = i;
            best = ratio;
          }
        }
        if (leave == -1) return false;
        pivot(leave, enter, cost_row);
      }
    };

    // Phase 1: minimize the sum of artificials.
    std::vector<Rational> cost(C + 1, 0);
    for (int i = 0; i < R; ++i)
      for (int j = 0; j < N; ++j)
        if (t[i][j] != 0) cost[j] -= t[i][j];
    for (int i = 0; i < R; ++i) cost[C] -= t[i][C];
    run(cost, C);

    Result result;
    Rational infeasibility = -cost[C];
    if (infeasibility > 0) {
      result.status = Status::Infeasible;
      // y_i = c_B^T B^{-1} e_i, read from the artificial columns.
      std::vector<Rational> y(R, 0);
      for (int i = 0; i < R; ++i) {
        for (int r = 0; r < R; ++r)
          if (row_alive[r] && basis[r] >= N && t[r][N + i] != 0) y[i] += t[r][N + i];
        y[i] *= sign[i];
      }
      result.farkas.assign(y.begin(), y.begin() + num_rows());
      return result;
    }

    // Drive zero-valued artificials out of the basis; drop redundant rows.
    for (int r = 0; r < R; ++r) {
      if (basis[r] < N) continue;
      int c = -1;
      for (int j = 0; j < N; ++j)
        if (t[r][j] != 0) {
          c = j;
          break;
        }
      if (c == -1) {
        row_alive[r] = false;
      } else {
        pivot(r, c, cost);
      }
    }

    // Phase 2.
    std::vector<Rational> phase2(C + 1, 0);
    if (objective) {
      std::vector<Rational> c_std(N, 0);
      Rational offset = 0;
      for (const auto& [j, a] : *objective) {
        switch (s.kind[j]) {
          case Kind::Lower:
            c_std[s.col[j]] += a;
            offset += a * *bounds_[j].lo;
            break;
          case Kind::Upper:
            c_std[s.col[j]] -= a;
            offset += a * *bounds_[j].hi;
            break;
          case Kind::Free:
            c_std[s.col[j]] += a;
            c_std[s.col_neg[j]] -= a;
            break;
        }
      }
      for (int j = 0; j < N; ++j) phase2[j] = c_std[j];
      for (int r = 0; r < R; ++r) {
        if (!row_alive[r]) continue;
        const Rational& cb = c_std[basis[r]];
        if (cb == 0) continue;
        for (int j = 0; j <= C; ++j)
          if (t[r][j] != 0) phase2[j] -= cb * t[r][j];
      }
      if (!run(phase2, N)) {
        result.status = Status::Unbounded;
        return result;
      }
      result.objective = -phase2[C] + offset;
    }

    std::vector<Rational> x(N, 0);
    for (int r = 0; r < R; ++r)
      if (row_alive[r] && basis[r] < N) x[basis[r]] = t[r][C];
    result.status = Status::Optimal;
    result.values.resize(num_variables());
    for (int j = 0; j < num_variables(); ++j) {
      switch (s.kind[j]) {
        case Kind::Lower:
          result.values[j] = *bounds_[j].lo + x[s.col[j]];
          break;
        case Kind::Upper:
          result.values[j] = *bounds_[j].hi - x[s.col[j]];
          break;
        case Kind::Free:
          result.values[j] = x[s.col[j]] - x[s.col_neg[j]];
          break;
      }
    }
    if (!objective) result.objective = 0;
    return result;
  }

  std::vector<Bound> bounds_;
  std::vector<Terms> rows_;
  std::vector<Rational> rhs_;
};

}  // namespace lflow::lp

#endif  // LFLOW_SIMPLEX_HPP
