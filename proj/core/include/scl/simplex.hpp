#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstddef>
#include <optional>
#include <vector>

#include "scl/errors.hpp"
#include "scl/rational.hpp"

namespace scl {

/// One linear program in computational standard form:
/// min c'x  s.t.  Ax = b, x >= 0, with sparse integer columns.
struct StandardLp {
  int num_rows = 0;
  std::vector<std::vector<std::pair<int, int>>> cols;  // (row, coefficient)
  std::vector<Rational> cost;
  std::vector<Rational> rhs;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

template <typename T>
struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  T objective{};
  std::vector<T> x;  // primal values, one per column
  std::vector<T> y;  // dual values, one per row
  std::vector<int> basis;
  long iterations = 0;
};

namespace detail {

template <typename T>
struct ScalarOps {
  static bool is_zero(const T& v) { return v == 0; }
  static bool is_neg(const T& v) { return v < 0; }
  static bool is_pos(const T& v) { return v > 0; }
};

template <>
struct ScalarOps<double> {
  static constexpr double kEps = 1e-9;
  static bool is_zero(double v) { return v > -kEps && v < kEps; }
  static bool is_neg(double v) { return v <= -kEps; }
  static bool is_pos(double v) { return v >= kEps; }
};

}  // namespace detail

/// Revised primal simplex with a dense basis inverse. Dantzig pricing
/// with a Bland fallback after degenerate stalls, which makes every run
/// finite. Exact for T = Rational; tolerance 1e-9 for T = double.
template <typename T>
class RevisedSimplex {
 public:
  explicit RevisedSimplex(const StandardLp& lp) : lp_(lp), m_(lp.num_rows) {
    n_ = static_cast<int>(lp.cols.size());
    cost_.reserve(n_);
    for (const auto& c : lp_.cost) cost_.push_back(T(convert(c)));
    rhs_.reserve(m_);
    for (const auto& b : lp_.rhs) rhs_.push_back(T(convert(b)));
    rhs_work_ = rhs_;
  }

  /// Solves from scratch (two phases) or from a starting basis when
  /// `basis_hint` yields a nonsingular, primal-feasible basis.
  LpSolution<T> solve(const std::vector<int>* basis_hint = nullptr) {
    if (basis_hint && warm_start(*basis_hint)) {
      run_phase(/*phase1=*/false);
      return finish();
    }
    init_artificial_basis();
    run_phase(/*phase1=*/true);
    phase1_iterations = iterations_;
    T infeas{};
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) infeas += xb_[i];
    }
    if (!Ops::is_zero(infeas)) {
      LpSolution<T> sol;
      sol.status = LpStatus::kInfeasible;
      sol.iterations = iterations_;
      return sol;
    }
    pivot_out_artificials();
    run_phase(/*phase1=*/false);
    return finish();
  }

  /// Dual simplex from the all-artificial basis. Requires c >= 0 (the
  /// start is then dual feasible with y = 0) and b >= 0. Artificial
  /// variables are fixed at zero; a basic artificial with positive
  /// value counts as a bound violation and is driven out. No phase 1.
  LpSolution<T> solve_dual() {
    for (const auto& c : cost_) {
      if (Ops::is_neg(c)) throw InternalError("dual start needs c >= 0");
    }
    init_artificial_basis();
    std::vector<T> y, rho, alpha(n_, T{});
    constexpr long kRefactorInterval = 200;
    while (true) {
      ++iterations_;
      if (iterations_ > iteration_cap_) {
        throw InternalError("dual simplex iteration cap exceeded");
      }
      if constexpr (std::is_same_v<T, double>) {
        if (iterations_ % kRefactorInterval == 0) refactorize();
      }
      // Most-violated row: artificials must sit at zero, structurals at
      // or above zero.
      int leave = -1;
      T worst{};
      bool above = false;  // leaving variable exits at its upper bound
      for (int i = 0; i < m_; ++i) {
        T viol{};
        bool up = false;
        if (basis_[i] >= n_) {
          viol = xb_[i] < 0 ? -xb_[i] : xb_[i];
          up = xb_[i] > 0;
        } else if (Ops::is_neg(xb_[i])) {
          viol = -xb_[i];
        }
        if (Ops::is_pos(viol) && (leave < 0 || viol > worst)) {
          leave = i;
          worst = viol;
          above = up;
        }
      }
      if (leave < 0) return finish();  // primal feasible: optimal
      // Pivot row over nonbasic structural columns.
      compute_dual(y, /*phase1=*/false);
      rho.assign(m_, T{});
      const T* brow = &binv_[static_cast<std::size_t>(leave) * m_];
      for (int j = 0; j < m_; ++j) rho[j] = brow[j];
      int entering = -1;
      T best_ratio{};
      double best_alpha_mag = 0;
      for (int j = 0; j < n_; ++j) {
        if (in_basis_[j]) continue;
        T a{};
        for (const auto& [row, coef] : structural(j)) {
          if (!Ops::is_zero(rho[row])) a += rho[row] * coef;
        }
        alpha[j] = a;
        bool usable = above ? Ops::is_pos(a) : Ops::is_neg(a);
        if (!usable) continue;
        T rc = reduced_cost(j, y, /*phase1=*/false);
        if (Ops::is_neg(rc)) rc = T{};  // tolerance dust
        T mag = a < 0 ? -a : a;
        T ratio = rc / mag;
        if (entering < 0 || ratio < best_ratio ||
            (ratio == best_ratio && value_of(mag) > best_alpha_mag)) {
          entering = j;
          best_ratio = ratio;
          best_alpha_mag = value_of(mag);
        }
      }
      if (entering < 0) {
        throw InternalError("gluing LP: dual simplex found it primal infeasible");
      }
      std::vector<T> d = ftran(entering);
      pivot(entering, leave, d);
    }
  }

 private:
  using Ops = detail::ScalarOps<T>;

  static T convert(const Rational& q) {
    if constexpr (std::is_same_v<T, Rational>) {
      return q;
    } else {
      return to_double(q);
    }
  }

  // Column access covering both structural and artificial columns.
  // Artificial j (j >= n_) is the unit column on row j - n_.
  const std::vector<std::pair<int, int>>& structural(int j) const { return lp_.cols[j]; }

  T reduced_cost(int j, const std::vector<T>& y, bool phase1) const {
    T r = phase1 ? T{} : cost_[j];
    for (const auto& [row, coef] : structural(j)) r -= y[row] * coef;
    return r;
  }

  void compute_dual(std::vector<T>& y, bool phase1) const {
    y.assign(m_, T{});
    for (int i = 0; i < m_; ++i) {
      T cb{};
      if (basis_[i] >= n_) {
        cb = phase1 ? T(1) : T{};
      } else {
        cb = phase1 ? T{} : cost_[basis_[i]];
      }
      if (Ops::is_zero(cb)) continue;
      const T* row = &binv_[static_cast<std::size_t>(i) * m_];
      for (int j = 0; j < m_; ++j) {
        if (!Ops::is_zero(row[j])) y[j] += cb * row[j];
      }
    }
  }

  std::vector<T> ftran(int j) const {
    std::vector<T> d(m_, T{});
    for (const auto& [row, coef] : structural(j)) {
      for (int i = 0; i < m_; ++i) {
        const T& v = binv_[static_cast<std::size_t>(i) * m_ + row];
        if (!Ops::is_zero(v)) d[i] += v * coef;
      }
    }
    return d;
  }

  void init_artificial_basis() {
    basis_.resize(m_);
    in_basis_.assign(n_, false);
    binv_.assign(static_cast<std::size_t>(m_) * m_, T{});
    xb_ = rhs_work_;
    for (int i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      binv_[static_cast<std::size_t>(i) * m_ + i] = T(1);
      if (Ops::is_neg(xb_[i])) {
        // Flip the row so the artificial starts feasible.
        xb_[i] = -xb_[i];
        for (int j = 0; j < m_; ++j) {
          binv_[static_cast<std::size_t>(i) * m_ + j] = -binv_[static_cast<std::size_t>(i) * m_ + j];
        }
      }
    }
  }

  /// Gauss-Jordan inverse of the column set `cols`. Entries >= n_ are
  /// artificial unit columns. False when singular.
  bool invert_columns(const std::vector<int>& cols, std::vector<T>& inv) const {
    std::vector<T> mat(static_cast<std::size_t>(m_) * m_, T{});
    for (int i = 0; i < m_; ++i) {
      if (cols[i] >= n_) {
        mat[static_cast<std::size_t>(cols[i] - n_) * m_ + i] = T(1);
        continue;
      }
      for (const auto& [row, coef] : structural(cols[i])) {
        mat[static_cast<std::size_t>(row) * m_ + i] = T(coef);
      }
    }
    inv.assign(static_cast<std::size_t>(m_) * m_, T{});
    for (int i = 0; i < m_; ++i) inv[static_cast<std::size_t>(i) * m_ + i] = T(1);
    for (int col = 0; col < m_; ++col) {
      int pivot = -1;
      if constexpr (std::is_same_v<T, double>) {
        double best = 0;
        for (int r = col; r < m_; ++r) {
          double v = std::abs(mat[static_cast<std::size_t>(r) * m_ + col]);
          if (v > best) {
            best = v;
            pivot = r;
          }
        }
        if (best <= detail::ScalarOps<double>::kEps) return false;
      } else {
        for (int r = col; r < m_; ++r) {
          if (!Ops::is_zero(mat[static_cast<std::size_t>(r) * m_ + col])) {
            pivot = r;
            break;
          }
        }
        if (pivot < 0) return false;
      }
      if (pivot != col) {
        for (int j = 0; j < m_; ++j) {
          std::swap(mat[static_cast<std::size_t>(pivot) * m_ + j],
                    mat[static_cast<std::size_t>(col) * m_ + j]);
          std::swap(inv[static_cast<std::size_t>(pivot) * m_ + j],
                    inv[static_cast<std::size_t>(col) * m_ + j]);
        }
      }
      T piv = mat[static_cast<std::size_t>(col) * m_ + col];
      for (int j = 0; j < m_; ++j) {
        mat[static_cast<std::size_t>(col) * m_ + j] /= piv;
        inv[static_cast<std::size_t>(col) * m_ + j] /= piv;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == col) continue;
        T f = mat[static_cast<std::size_t>(r) * m_ + col];
        if (Ops::is_zero(f)) continue;
        for (int j = 0; j < m_; ++j) {
          mat[static_cast<std::size_t>(r) * m_ + j] -=
              f * mat[static_cast<std::size_t>(col) * m_ + j];
          inv[static_cast<std::size_t>(r) * m_ + j] -=
              f * inv[static_cast<std::size_t>(col) * m_ + j];
        }
      }
    }
    return true;
  }

  bool warm_start(const std::vector<int>& hint) {
    if (static_cast<int>(hint.size()) != m_) return false;
    for (int j : hint) {
      if (j < 0 || j >= n_ + m_) return false;
    }
    std::vector<T> inv;
    if (!invert_columns(hint, inv)) return false;
    // Primal feasibility of the hinted basis.
    std::vector<T> xb(m_, T{});
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < m_; ++j) {
        const T& v = inv[static_cast<std::size_t>(i) * m_ + j];
        if (!Ops::is_zero(v)) xb[i] += v * rhs_work_[j];
      }
    }
    for (int i = 0; i < m_; ++i) {
      if (Ops::is_neg(xb[i])) return false;
      // A basic artificial must sit at zero or the start is infeasible.
      if (hint[i] >= n_ && !Ops::is_zero(xb[i])) return false;
    }
    basis_ = hint;
    binv_ = std::move(inv);
    xb_ = std::move(xb);
    in_basis_.assign(n_, false);
    for (int j : basis_) {
      if (j < n_) in_basis_[j] = true;
    }
    return true;
  }

  void pivot_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      // Try a degenerate pivot on any structural column with a nonzero
      // entry in this row; otherwise the row is redundant and the
      // artificial stays pinned at zero.
      for (int j = 0; j < n_; ++j) {
        if (in_basis_[j]) continue;
        T d{};
        const T* row = &binv_[static_cast<std::size_t>(i) * m_];
        for (const auto& [r, coef] : structural(j)) {
          if (!Ops::is_zero(row[r])) d += row[r] * coef;
        }
        if (!Ops::is_zero(d)) {
          std::vector<T> dir = ftran(j);
          pivot(j, i, dir);
          break;
        }
      }
    }
  }

  void run_phase(bool phase1) {
    std::vector<T> y;
    std::vector<double> weight(n_, 1.0);  // Devex reference weights
    std::vector<std::pair<double, int>> candidates;
    int degenerate_streak = 0;
    constexpr int kBlandThreshold = 60;
    constexpr long kRefactorInterval = 100;
    // Double mode: anti-cycling by escalation. When the objective makes
    // no progress for a long window, coarsen the entering threshold; the
    // exact stage repairs whatever optimality gap this leaves.
    double enter_tol = 1e-9;
    double best_obj = std::numeric_limits<double>::infinity();
    long last_progress = 0;
    auto phase_objective = [&]() {
      T obj{};
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] >= n_) {
          if (phase1) obj += xb_[i];
        } else if (!phase1) {
          obj += cost_[basis_[i]] * xb_[i];
        }
      }
      return value_of(obj);
    };
    const bool trace = std::getenv("SCL_SIMPLEX_TRACE") != nullptr;
    while (true) {
      ++iterations_;
      if (iterations_ > iteration_cap_) {
        throw InternalError("simplex iteration cap exceeded");
      }
      if constexpr (std::is_same_v<T, double>) {
        if (iterations_ % kRefactorInterval == 0) refactorize();
        double obj = phase_objective();
        if (obj < best_obj - 1e-10 * (1.0 + std::abs(best_obj))) {
          best_obj = obj;
          last_progress = iterations_;
        } else if (iterations_ - last_progress > 2 * m_ + 500) {
          refactorize();
          enter_tol = std::min(enter_tol * 100, 1e-3);
          std::fill(weight.begin(), weight.end(), 1.0);
          last_progress = iterations_;
          if (enter_tol >= 1e-3 && iterations_ - last_progress_hard_ > 20 * m_ + 5000) {
            return;  // stuck at noise level; hand over as-is
          }
        }
      }
      compute_dual(y, phase1);
      if (trace && iterations_ % 500 == 0) {
        T obj{};
        for (int i = 0; i < m_; ++i) {
          if (basis_[i] >= n_) {
            if (phase1) obj += xb_[i];
          } else if (!phase1) {
            obj += cost_[basis_[i]] * xb_[i];
          }
        }
        std::fprintf(stderr, "[simplex] it=%ld phase%d obj=%.12f degen=%ld streak=%d\n",
                     iterations_, phase1 ? 1 : 2, value_of(obj), degenerate_pivots,
                     degenerate_streak);
      }
      bool bland = degenerate_streak > kBlandThreshold;
      // Devex pricing: among negative reduced costs, order by rc^2 / w.
      candidates.clear();
      std::vector<T> rcs(n_, T{});
      for (int j = 0; j < n_; ++j) {
        if (in_basis_[j]) continue;
        T r = reduced_cost(j, y, phase1);
        if constexpr (std::is_same_v<T, double>) {
          if (r > -enter_tol) continue;
        } else {
          if (!Ops::is_neg(r)) continue;
        }
        rcs[j] = r;
        if (bland) {
          candidates.emplace_back(static_cast<double>(j), j);
        } else {
          double rd = value_of(r);
          candidates.emplace_back(-(rd * rd) / weight[j], j);
        }
      }
      if (candidates.empty()) return;  // optimal for this phase
      std::sort(candidates.begin(), candidates.end());
      if (bland) {
        int entering = candidates[0].second;
        std::vector<T> d = ftran(entering);
        int leave = select_leaving(d, true);
        if (leave < 0) {
          if constexpr (std::is_same_v<T, Rational>) {
            throw InternalError("gluing LP is unbounded below");
          }
          return;  // numerically stuck; caller checks the residual
        }
        if (Ops::is_zero(xb_[leave])) {
          ++degenerate_streak;
          ++degenerate_pivots;
        } else {
          degenerate_streak = 0;
        }
        update_devex(weight, d, leave, entering, rcs);
        pivot(entering, leave, d);
        continue;
      }
      // Prefer a candidate with a nondegenerate step among the best few.
      constexpr std::size_t kScan = 8;
      int entering = -1, leave = -1;
      std::vector<T> dir;
      for (std::size_t c = 0; c < std::min(kScan, candidates.size()); ++c) {
        int j = candidates[c].second;
        std::vector<T> d = ftran(j);
        int row = select_leaving(d, false);
        if (row < 0) {
          if constexpr (std::is_same_v<T, Rational>) {
            throw InternalError("gluing LP is unbounded below");
          }
          continue;
        }
        if (entering < 0) {
          entering = j;
          leave = row;
          dir = d;
        }
        if (!Ops::is_zero(xb_[row])) {
          entering = j;
          leave = row;
          dir = std::move(d);
          break;
        }
      }
      if (entering < 0) {
        if constexpr (std::is_same_v<T, Rational>) {
          throw InternalError("gluing LP is unbounded below");
        }
        return;
      }
      if (Ops::is_zero(xb_[leave])) {
        ++degenerate_streak;
        ++degenerate_pivots;
      } else {
        degenerate_streak = 0;
      }
      update_devex(weight, dir, leave, entering, rcs);
      pivot(entering, leave, dir);
    }
  }

  static double value_of(const T& v) {
    if constexpr (std::is_same_v<T, Rational>) {
      return to_double(v);
    } else {
      return v;
    }
  }

  /// Forrest-style Devex weight update from the pivot row.
  void update_devex(std::vector<double>& weight, const std::vector<T>& d, int leave_row,
                    int entering, const std::vector<T>& rcs) {
    (void)rcs;
    double alpha_q = value_of(d[leave_row]);
    if (alpha_q == 0) return;
    double wq = std::max(weight[entering], 1.0);
    const T* rho = &binv_[static_cast<std::size_t>(leave_row) * m_];
    double wq_over = wq / (alpha_q * alpha_q);
    for (int j = 0; j < n_; ++j) {
      if (in_basis_[j] || j == entering) continue;
      // alpha_rj = rho . a_j over the sparse column.
      double alpha = 0;
      bool touched = false;
      for (const auto& [row, coef] : structural(j)) {
        if (!Ops::is_zero(rho[row])) {
          alpha += value_of(rho[row]) * coef;
          touched = true;
        }
      }
      if (!touched || alpha == 0) continue;
      double cand = alpha * alpha * wq_over;
      if (cand > weight[j]) weight[j] = cand;
    }
    // The leaving variable re-enters the nonbasic set.
    weight[entering] = 1.0;
    int leaving_var = basis_[leave_row];
    if (leaving_var < n_) weight[leaving_var] = std::max(wq_over, 1.0);
    // Reset when the framework degrades.
    double wmax = 0;
    for (double w : weight) wmax = std::max(wmax, w);
    if (wmax > 1e10) std::fill(weight.begin(), weight.end(), 1.0);
  }

  /// Ratio test. Ties on the minimum ratio are broken lexicographically
  /// on the rows of (x_B | B^-1) scaled by the direction, the classical
  /// anti-cycling rule; under Bland, by smallest basic variable index.
  int select_leaving(const std::vector<T>& d, bool bland) const {
    int leave = -1;
    T theta{};
    std::vector<int> ties;
    for (int i = 0; i < m_; ++i) {
      if (!Ops::is_pos(d[i])) continue;
      T ratio = xb_[i] / d[i];
      if (ratio < 0) ratio = T{};  // numerical dust on degenerate rows
      if (leave < 0 || ratio < theta) {
        leave = i;
        theta = ratio;
        ties.clear();
        ties.push_back(i);
      } else if (ratio == theta) {
        ties.push_back(i);
      }
    }
    if (leave < 0 || ties.size() == 1) return leave;
    if (bland) {
      int best = ties[0];
      for (int i : ties) {
        if (basis_[i] < basis_[best]) best = i;
      }
      return best;
    }
    for (int col = 0; col < m_ && ties.size() > 1; ++col) {
      std::vector<int> keep;
      T best{};
      for (std::size_t t = 0; t < ties.size(); ++t) {
        int i = ties[t];
        T v = binv_[static_cast<std::size_t>(i) * m_ + col] / d[i];
        if (keep.empty() || v < best) {
          best = v;
          keep.assign(1, i);
        } else if (v == best) {
          keep.push_back(i);
        }
      }
      ties = std::move(keep);
    }
    return ties[0];
  }

  /// Rebuilds the inverse and the basic values from the current basis;
  /// keeps the incrementally updated state when the rebuild fails.
  void refactorize() {
    std::vector<T> inv;
    if (!invert_columns(basis_, inv)) return;
    binv_ = std::move(inv);
    for (int i = 0; i < m_; ++i) {
      T v{};
      for (int j = 0; j < m_; ++j) {
        const T& b = binv_[static_cast<std::size_t>(i) * m_ + j];
        if (!Ops::is_zero(b)) v += b * rhs_work_[j];
      }
      if constexpr (std::is_same_v<T, double>) {
        if (v < 0 && v > -1e-6) v = 0;  // clamp refactorization dust
      }
      xb_[i] = v;
    }
  }

  void pivot(int entering, int leave_row, const std::vector<T>& d) {
    T piv = d[leave_row];
    T* lrow = &binv_[static_cast<std::size_t>(leave_row) * m_];
    for (int j = 0; j < m_; ++j) lrow[j] /= piv;
    T theta = xb_[leave_row] / piv;
    for (int i = 0; i < m_; ++i) {
      if (i == leave_row || Ops::is_zero(d[i])) continue;
      T* row = &binv_[static_cast<std::size_t>(i) * m_];
      const T& f = d[i];
      for (int j = 0; j < m_; ++j) {
        if (!Ops::is_zero(lrow[j])) row[j] -= f * lrow[j];
      }
      xb_[i] -= f * theta;
    }
    xb_[leave_row] = theta;
    if (basis_[leave_row] < n_) in_basis_[basis_[leave_row]] = false;
    basis_[leave_row] = entering;
    in_basis_[entering] = true;
  }

  LpSolution<T> finish() {
    LpSolution<T> sol;
    sol.status = LpStatus::kOptimal;
    if constexpr (std::is_same_v<T, double>) {
      // Report basic values for the true (unperturbed) rhs.
      for (int i = 0; i < m_; ++i) {
        double v = 0;
        for (int j = 0; j < m_; ++j) {
          double b = binv_[static_cast<std::size_t>(i) * m_ + j];
          if (b != 0) v += b * rhs_[j];
        }
        if (v < 0 && v > -1e-6) v = 0;
        xb_[i] = v;
      }
    }
    sol.x.assign(n_, T{});
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) sol.x[basis_[i]] = xb_[i];
    }
    sol.objective = T{};
    for (int j = 0; j < n_; ++j) {
      if (!Ops::is_zero(sol.x[j])) sol.objective += cost_[j] * sol.x[j];
    }
    sol.y.assign(m_, T{});
    compute_dual(sol.y, /*phase1=*/false);
    sol.basis = basis_;
    sol.iterations = iterations_;
    return sol;
  }

  const StandardLp& lp_;
  int m_ = 0;
  int n_ = 0;
  std::vector<T> cost_;
  std::vector<T> rhs_;
  std::vector<T> rhs_work_;
  std::vector<int> basis_;
  std::vector<bool> in_basis_;
  std::vector<T> binv_;  // row-major m x m
  std::vector<T> xb_;
  long iterations_ = 0;
  long iteration_cap_ = 2'000'000;
  long last_progress_hard_ = 0;

 public:
  long degenerate_pivots = 0;
  long phase1_iterations = 0;
};

}  // namespace scl
