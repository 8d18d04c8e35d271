#include "scl/scl_solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "scl/errors.hpp"

namespace scl {

namespace {

StandardLp to_standard(const GluingLP& lp) {
  StandardLp std_lp;
  std_lp.num_rows = lp.num_rows();
  std_lp.cols.reserve(lp.cols().size());
  std_lp.cost.reserve(lp.cols().size());
  for (const auto& col : lp.cols()) {
    std_lp.cols.push_back(col.entries);
    std_lp.cost.push_back(col.cost);
  }
  std_lp.rhs.reserve(lp.rows().size());
  for (const auto& row : lp.rows()) std_lp.rhs.push_back(row.rhs);
  return std_lp;
}

// The gluing LP has thousands of alternative optima (all triangles cost
// the same), which stalls the simplex inside degenerate vertices. Tiny
// distinct cost perturbations make the optimum nearly unique; the basis
// found there is then reoptimized against the true costs, so reported
// numbers never see the perturbation.
StandardLp perturb_costs(const StandardLp& lp) {
  StandardLp out = lp;
  for (std::size_t j = 0; j < out.cost.size(); ++j) {
    if (out.cost[j] == 0) continue;
    unsigned long h = (j * 2654435761UL) % 4093UL + 1;
    Rational delta(h, 40930000000UL);
    delta.canonicalize();
    out.cost[j] += delta;
  }
  return out;
}

template <typename T>
LpSolution<T> solve_standard(const StandardLp& lp, const std::vector<int>* hint) {
  StandardLp perturbed = perturb_costs(lp);
  RevisedSimplex<T> stage1(perturbed);
  auto sol1 = hint ? stage1.solve(hint) : stage1.solve_dual();
  if (sol1.status != LpStatus::kOptimal) return sol1;
  RevisedSimplex<T> stage2(lp);
  return stage2.solve(&sol1.basis);
}

}  // namespace

SclResult solve_gluing_lp(const GluingLP& lp, SolveMode mode) {
  if (mode == SolveMode::kAuto) {
    mode = lp.system().chain().total_letters() <= kExactAutoLimit ? SolveMode::kExact
                                                                  : SolveMode::kInexact;
  }
  SclResult result;
  result.mode = mode;
  if (lp.num_cols() == 0 && lp.num_rows() == 0) {
    result.exact = mode == SolveMode::kExact;
    result.value = 0;
    result.strong_duality_verified = true;
    return result;
  }
  StandardLp std_lp = to_standard(lp);
  if (mode == SolveMode::kExact) {
    result.exact = true;
    // A double pre-solve supplies the starting basis; every number the
    // result reports comes from the exact phase.
    std::vector<int> hint;
    if (lp.num_rows() > 120) {
      auto approx = solve_standard<double>(std_lp, nullptr);
      if (approx.status == LpStatus::kOptimal) hint = approx.basis;
    }
    auto sol = solve_standard<Rational>(std_lp, hint.empty() ? nullptr : &hint);
    if (sol.status != LpStatus::kOptimal) {
      throw InternalError("gluing LP unsolvable for a homologically trivial chain");
    }
    result.value = sol.objective;
    result.primal = std::move(sol.x);
    result.dual = std::move(sol.y);
    result.iterations = sol.iterations;
    // Strong duality: primal objective equals y . b, exactly.
    Rational dual_obj = 0;
    for (int i = 0; i < lp.num_rows(); ++i) dual_obj += result.dual[i] * lp.rows()[i].rhs;
    result.strong_duality_verified = (dual_obj == result.value);
    if (!result.strong_duality_verified) {
      throw InternalError("exact solve lost strong duality");
    }
  } else {
    result.exact = false;
    auto sol = solve_standard<double>(std_lp, nullptr);
    if (sol.status != LpStatus::kOptimal) {
      throw InternalError("gluing LP unsolvable for a homologically trivial chain");
    }
    result.value_inexact = sol.objective;
    result.primal_inexact = std::move(sol.x);
    result.dual_inexact = std::move(sol.y);
    result.iterations = sol.iterations;
    // Feasibility residual of the returned point.
    std::vector<double> ax(lp.num_rows(), 0.0);
    for (int j = 0; j < lp.num_cols(); ++j) {
      if (result.primal_inexact[j] == 0.0) continue;
      for (const auto& [row, coef] : lp.cols()[j].entries) {
        ax[row] += coef * result.primal_inexact[j];
      }
    }
    double residual = 0.0;
    for (int i = 0; i < lp.num_rows(); ++i) {
      residual = std::max(residual, std::abs(ax[i] - to_double(lp.rows()[i].rhs)));
    }
    result.feasibility_residual = residual;
  }
  return result;
}

SclResult scl(const Chain& chain, SolveMode mode) {
  Chain normalized = chain.normalized() ? chain : normalize_chain(chain);
  if (normalized.is_zero()) {
    SclResult r;
    r.mode = mode == SolveMode::kInexact ? SolveMode::kInexact : SolveMode::kExact;
    r.exact = r.mode == SolveMode::kExact;
    r.value = 0;
    r.strong_duality_verified = true;
    return r;
  }
  PieceSystem system = enumerate_pieces(normalized);
  GluingLP lp = build_gluing_lp(system);
  return solve_gluing_lp(lp, mode);
}

SclResult scl(const std::string& chain_text, const Alphabet& alphabet, SolveMode mode) {
  return scl(chain_of(chain_text, alphabet), mode);
}

}  // namespace scl
