#include "geopart/chebyshev.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace geopart {

namespace {

// Dense tableau simplex with Bland's rule for
//   maximize c.x  subject to  A x = b, x >= 0, b >= 0.
// Phase one starts from one artificial per row.
class Simplex {
 public:
  Simplex(std::vector<std::vector<Rational>> a, std::vector<Rational> b, std::vector<Rational> c)
      : rows_(static_cast<int>(a.size())), cols_(static_cast<int>(c.size())), cost_(std::move(c)) {
    const int width = cols_ + rows_ + 1;
    tab_.assign(rows_, std::vector<Rational>(width));
    for (int r = 0; r < rows_; ++r) {
      for (int j = 0; j < cols_; ++j) tab_[r][j] = a[r][j];
      tab_[r][cols_ + r] = 1;
      tab_[r][width - 1] = b[r];
      basis_.push_back(cols_ + r);
      kept_.push_back(r);
    }
    original_ = std::move(a);
  }

  void solve() {
    std::vector<Rational> phase1(cols_ + rows_);
    for (int r = 0; r < rows_; ++r) phase1[cols_ + r] = -1;
    run(phase1, cols_ + rows_);
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] >= cols_ && sgn(tab_[r].back()) != 0) throw std::logic_error("plane fit program infeasible");
    }
    drive_out_artificials();
    std::vector<Rational> phase2(cost_);
    phase2.resize(cols_ + rows_);
    run(phase2, cols_);
  }

  // Multipliers y with y.A_B = c_B over the kept rows; dropped rows get zero.
  std::vector<Rational> duals() const {
    const int k = static_cast<int>(kept_.size());
    std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k + 1));
    for (int i = 0; i < k; ++i) {
      const int col = basis_[i];
      for (int j = 0; j < k; ++j) m[i][j] = original_[kept_[j]][col];
      m[i][k] = cost_[col];
    }
    gauss(m);
    std::vector<Rational> y(original_.size());
    for (int j = 0; j < k; ++j) y[kept_[j]] = m[j][k];
    return y;
  }

 private:
  Rational reduced_cost(const std::vector<Rational>& c, int j) const {
    Rational r = c[j];
    for (int i = 0; i < rows_; ++i) {
      if (sgn(tab_[i][j]) != 0) r -= c[basis_[i]] * tab_[i][j];
    }
    return r;
  }

  void run(const std::vector<Rational>& c, int enter_limit) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < enter_limit; ++j) {
        if (std::find(basis_.begin(), basis_.end(), j) != basis_.end()) continue;
        if (sgn(reduced_cost(c, j)) > 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;
      int leave = -1;
      Rational best;
      for (int i = 0; i < rows_; ++i) {
        if (sgn(tab_[i][enter]) <= 0) continue;
        Rational ratio = tab_[i].back() / tab_[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) throw std::logic_error("plane fit program unbounded");
      pivot(leave, enter);
    }
  }

  void pivot(int row, int col) {
    const Rational p = tab_[row][col];
    for (auto& v : tab_[row]) v /= p;
    for (int i = 0; i < rows_; ++i) {
      if (i == row || sgn(tab_[i][col]) == 0) continue;
      const Rational f = tab_[i][col];
      for (std::size_t j = 0; j < tab_[i].size(); ++j) tab_[i][j] -= f * tab_[row][j];
    }
    basis_[row] = col;
  }

  void drive_out_artificials() {
    for (int r = 0; r < rows_;) {
      if (basis_[r] < cols_) {
        ++r;
        continue;
      }
      int col = -1;
      for (int j = 0; j < cols_ && col < 0; ++j) {
        if (sgn(tab_[r][j]) != 0) col = j;
      }
      if (col >= 0) {
        pivot(r, col);
        ++r;
        continue;
      }
      // redundant equation
      tab_.erase(tab_.begin() + r);
      basis_.erase(basis_.begin() + r);
      kept_.erase(kept_.begin() + r);
      --rows_;
    }
  }

  static void gauss(std::vector<std::vector<Rational>>& m) {
    const int k = static_cast<int>(m.size());
    for (int c = 0; c < k; ++c) {
      int p = c;
      while (p < k && sgn(m[p][c]) == 0) ++p;
      if (p == k) throw std::logic_error("singular basis in plane fit");
      std::swap(m[p], m[c]);
      const Rational d = m[c][c];
      for (auto& v : m[c]) v /= d;
      for (int i = 0; i < k; ++i) {
        if (i == c || sgn(m[i][c]) == 0) continue;
        const Rational f = m[i][c];
        for (int j = c; j <= k; ++j) m[i][j] -= f * m[c][j];
      }
    }
  }

  int rows_;
  int cols_;
  std::vector<Rational> cost_;
  std::vector<std::vector<Rational>> tab_;
  std::vector<std::vector<Rational>> original_;
  std::vector<int> basis_;
  std::vector<int> kept_;
};

}  // namespace

Rational max_vertical_error(const PlaneFit& plane, std::span<const Point3> pts) {
  Rational worst = 0;
  for (const auto& p : pts) {
    Rational r = abs_value(plane.a * p.x + plane.b * p.y + plane.c - p.z);
    if (r > worst) worst = r;
  }
  return worst;
}

// The dual of  min t  s.t.  |a x_i + b y_i + c - z_i| <= t  is
//   max sum z_i (v_i - u_i)
//   s.t. sum (v_i - u_i) (x_i, y_i, 1) = 0,  sum (u_i + v_i) = 1,  u, v >= 0,
// whose optimal multipliers are exactly (a, b, c, t).
PlaneFit chebyshev_plane_fit(std::span<const Point3> pts) {
  if (pts.empty()) throw std::invalid_argument("plane fit needs at least one point");
  const int m = static_cast<int>(pts.size());
  std::vector<std::vector<Rational>> a(4, std::vector<Rational>(2 * m));
  std::vector<Rational> cost(2 * m);
  for (int i = 0; i < m; ++i) {
    const int u = i, v = m + i;
    a[0][v] = pts[i].x;
    a[0][u] = -pts[i].x;
    a[1][v] = pts[i].y;
    a[1][u] = -pts[i].y;
    a[2][v] = 1;
    a[2][u] = -1;
    a[3][v] = 1;
    a[3][u] = 1;
    cost[v] = pts[i].z;
    cost[u] = -pts[i].z;
  }
  Simplex lp(a, {0, 0, 0, 1}, cost);
  lp.solve();
  const auto y = lp.duals();
  PlaneFit fit{y[0], y[1], y[2], 0};
  fit.t = max_vertical_error(fit, pts);
  if (fit.t != y[3]) throw std::logic_error("plane fit duality gap");
  return fit;
}

}  // namespace geopart
