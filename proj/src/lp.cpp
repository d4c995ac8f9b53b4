#include "ridealloc/lp.hpp"

#include <cmath>
#include <iostream>
#include <limits>

namespace ridealloc::lp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Standard-form translation of one original variable:
//   x = offset + sign * xhat[col]            (single column)
//   x = xhat[col] - xhat[col_neg]            (free split, offset 0, sign +1)
struct VarMap {
  double offset = 0;
  double sign = 1;
  Index col = -1;
  Index col_neg = -1;
};

struct Tableau {
  MatX t;                 // m x (cols + 1); last column is the rhs
  VecX phase1, phase2;    // reduced-cost rows, each with a trailing value cell
  std::vector<Index> basis;
  std::vector<Index> dual_col;   // per row: its +e_i column (slack or artificial)
  std::vector<double> row_sign;  // +1, or -1 when the row was negated
  std::vector<bool> artificial;  // per column
  Index cols = 0;
};

void pivot(Tableau& tb, Index r, Index s) {
  tb.t.row(r) /= tb.t(r, s);
  for (Index i = 0; i < tb.t.rows(); ++i) {
    if (i == r) continue;
    const double f = tb.t(i, s);
    if (f != 0.0) tb.t.row(i) -= f * tb.t.row(r);
  }
  for (VecX* obj : {&tb.phase1, &tb.phase2}) {
    const double f = (*obj)(s);
    if (f != 0.0) *obj -= f * tb.t.row(r).transpose();
  }
  tb.basis[r] = s;
}

void dump(const Tableau& tb, const VecX& obj, const char* tag) {
  std::cerr << "[lp] " << tag << " objective row: " << obj.transpose() << "\n"
            << tb.t << "\n";
}

// Bland's rule over one objective row. Returns optimal / unbounded.
SolveStatus run_simplex(Tableau& tb, VecX& obj, bool allow_artificial, bool trace) {
  const Index m = tb.t.rows();
  while (true) {
    Index enter = -1;
    for (Index j = 0; j < tb.cols; ++j) {
      if (!allow_artificial && tb.artificial[j]) continue;
      if (obj(j) < -tol::optimality) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return SolveStatus::optimal;

    Index leave = -1;
    double best_ratio = kInf;
    for (Index i = 0; i < m; ++i) {
      const double a = tb.t(i, enter);
      if (a <= tol::optimality) continue;
      const double ratio = std::max(tb.t(i, tb.cols), 0.0) / a;
      if (ratio < best_ratio ||
          (ratio == best_ratio && (leave < 0 || tb.basis[i] < tb.basis[leave]))) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave < 0) return SolveStatus::unbounded;
    if (trace) dump(tb, obj, "pivot");
    pivot(tb, leave, enter);
  }
}

}  // namespace

LinearProgram::LinearProgram(Index num_vars_) : num_vars(num_vars_) {
  objective = VecX::Zero(num_vars);
  lower = VecX::Constant(num_vars, -kInf);
  upper = VecX::Constant(num_vars, kInf);
}

void LinearProgram::add_le(VecX coeffs, double rhs) {
  rows.push_back({std::move(coeffs), RowSense::le, rhs});
}

void LinearProgram::add_eq(VecX coeffs, double rhs) {
  rows.push_back({std::move(coeffs), RowSense::eq, rhs});
}

LpSolution solve(const LinearProgram& lp) {
  const Index n = lp.num_vars;
  for (const auto& row : lp.rows)
    if (row.coeffs.size() != n) throw DomainError("row arity does not match variable count");
  if (!lp.objective.allFinite()) throw DomainError("objective coefficients must be finite");

  // Translate variables to xhat >= 0.
  std::vector<VarMap> vmap(n);
  Index nhat = 0;
  for (Index j = 0; j < n; ++j) {
    const double lo = lp.lower(j), hi = lp.upper(j);
    if (std::isfinite(lo)) {
      vmap[j] = {lo, 1.0, nhat++, -1};
    } else if (std::isfinite(hi)) {
      vmap[j] = {hi, -1.0, nhat++, -1};
    } else {
      vmap[j].col = nhat++;
      vmap[j].col_neg = nhat++;
    }
  }

  struct HatRow {
    VecX a;
    RowSense sense;
    double rhs;
    Index source;  // original row index, or -1 for a bound row
  };
  std::vector<HatRow> hat;
  auto translate = [&](const VecX& coeffs, RowSense sense, double rhs, Index source) {
    HatRow hr{VecX::Zero(nhat), sense, rhs, source};
    for (Index j = 0; j < n; ++j) {
      const double c = coeffs(j);
      if (c == 0.0) continue;
      hr.a(vmap[j].col) += c * vmap[j].sign;
      if (vmap[j].col_neg >= 0) hr.a(vmap[j].col_neg) -= c;
      hr.rhs -= c * vmap[j].offset;
    }
    hat.push_back(std::move(hr));
  };
  for (Index i = 0; i < static_cast<Index>(lp.rows.size()); ++i)
    translate(lp.rows[i].coeffs, lp.rows[i].sense, lp.rows[i].rhs, i);
  for (Index j = 0; j < n; ++j) {  // boxed vars get an upper-bound row
    if (std::isfinite(lp.lower(j)) && std::isfinite(lp.upper(j))) {
      VecX e = VecX::Zero(n);
      e(j) = 1.0;
      translate(e, RowSense::le, lp.upper(j), -1);
    }
  }

  double obj_const = 0;
  VecX chat = VecX::Zero(nhat);
  for (Index j = 0; j < n; ++j) {
    const double c = lp.objective(j);
    chat(vmap[j].col) += c * vmap[j].sign;
    if (vmap[j].col_neg >= 0) chat(vmap[j].col_neg) -= c;
    obj_const += c * vmap[j].offset;
  }

  // Assemble the tableau: structural columns, then one auxiliary block per
  // row (slack for <=, surplus+artificial for >=, artificial for =).
  const Index m = static_cast<Index>(hat.size());
  Tableau tb;
  tb.basis.assign(m, -1);
  tb.dual_col.assign(m, -1);
  tb.row_sign.assign(m, 1.0);
  Index cols = nhat;
  struct Aux {
    Index row;
    double coef;
    bool art;
    bool basic;
  };
  std::vector<Aux> aux;
  for (Index i = 0; i < m; ++i) {
    bool ge = false;
    if (hat[i].rhs < 0) {  // flip to keep rhs nonnegative
      hat[i].a = -hat[i].a;
      hat[i].rhs = -hat[i].rhs;
      tb.row_sign[i] = -1.0;
      ge = hat[i].sense == RowSense::le;
    }
    if (hat[i].sense == RowSense::le && !ge) {
      aux.push_back({i, 1.0, false, true});  // slack
    } else if (ge) {
      aux.push_back({i, -1.0, false, false});  // surplus
      aux.push_back({i, 1.0, true, true});     // artificial
    } else {
      aux.push_back({i, 1.0, true, true});  // artificial for =
    }
  }
  cols += static_cast<Index>(aux.size());
  tb.cols = cols;
  tb.artificial.assign(cols, false);
  tb.t = MatX::Zero(m, cols + 1);
  for (Index i = 0; i < m; ++i) {
    tb.t.row(i).head(nhat) = hat[i].a.transpose();
    tb.t(i, cols) = hat[i].rhs;
  }
  {
    Index j = nhat;
    for (const Aux& a : aux) {
      tb.t(a.row, j) = a.coef;
      tb.artificial[j] = a.art;
      if (a.basic) tb.basis[a.row] = j;
      if (a.coef > 0) tb.dual_col[a.row] = j;
      ++j;
    }
  }

  // Reduced-cost rows. Phase 1 maximizes -(sum of artificials); phase 2 the
  // translated objective (artificials cost 0 and are barred from entering).
  tb.phase1 = VecX::Zero(cols + 1);
  tb.phase2 = VecX::Zero(cols + 1);
  tb.phase2.head(nhat) = -chat;
  for (Index i = 0; i < m; ++i) {
    if (tb.basis[i] >= 0 && tb.artificial[tb.basis[i]])
      tb.phase1 -= tb.t.row(i).transpose();
  }
  for (Index j = 0; j < cols; ++j)
    if (tb.artificial[j]) tb.phase1(j) += 1.0;

  LpSolution out;
  const double feas_scale = 1.0 + (m > 0 ? tb.t.col(cols).cwiseAbs().maxCoeff() : 0.0);
  if (run_simplex(tb, tb.phase1, true, lp.trace) != SolveStatus::optimal ||
      tb.phase1(cols) < -tol::feasibility * feas_scale) {
    out.status = SolveStatus::infeasible;
    return out;
  }
  // Drive leftover basic artificials out on the largest usable column; rows
  // that stay artificial-basic are redundant and inert afterwards.
  for (Index i = 0; i < m; ++i) {
    if (tb.basis[i] < 0 || !tb.artificial[tb.basis[i]]) continue;
    Index best = -1;
    for (Index j = 0; j < cols; ++j) {
      if (tb.artificial[j]) continue;
      if (best < 0 || std::abs(tb.t(i, j)) > std::abs(tb.t(i, best))) best = j;
    }
    if (best >= 0 && std::abs(tb.t(i, best)) > tol::optimality) pivot(tb, i, best);
  }

  const SolveStatus phase2 = run_simplex(tb, tb.phase2, false, lp.trace);
  if (phase2 == SolveStatus::unbounded) {
    out.status = SolveStatus::unbounded;
    return out;
  }
  if (lp.trace) dump(tb, tb.phase2, "final");

  VecX xhat = VecX::Zero(cols);
  for (Index i = 0; i < m; ++i)
    if (tb.basis[i] >= 0) xhat(tb.basis[i]) = tb.t(i, cols);
  out.primal = VecX::Zero(n);
  for (Index j = 0; j < n; ++j) {
    double v = vmap[j].offset + vmap[j].sign * xhat(vmap[j].col);
    if (vmap[j].col_neg >= 0) v -= xhat(vmap[j].col_neg);
    out.primal(j) = v;
  }
  out.objective = tb.phase2(cols) + obj_const;
  out.row_duals = VecX::Zero(static_cast<Index>(lp.rows.size()));
  double dual_total = 0;
  for (Index i = 0; i < m; ++i) {
    const double y = tb.phase2(tb.dual_col[i]);
    dual_total += y * hat[i].rhs;
    if (hat[i].source >= 0) out.row_duals(hat[i].source) = tb.row_sign[i] * y;
  }

  // Self-checks: primal feasibility on the original rows, then strong duality.
  out.status = SolveStatus::optimal;
  for (const auto& row : lp.rows) {
    const double lhs = row.coeffs.dot(out.primal);
    const double resid =
        row.sense == RowSense::eq ? std::abs(lhs - row.rhs) : std::max(0.0, lhs - row.rhs);
    if (resid > tol::feasibility * (1.0 + std::abs(row.rhs))) {
      out.status = SolveStatus::numerical;
      return out;
    }
  }
  for (Index j = 0; j < n; ++j) {
    if (out.primal(j) < lp.lower(j) - tol::feasibility ||
        out.primal(j) > lp.upper(j) + tol::feasibility) {
      out.status = SolveStatus::numerical;
      return out;
    }
  }
  const double gap = std::abs(tb.phase2(cols) - dual_total);
  if (gap > tol::duality * (1.0 + std::abs(tb.phase2(cols)))) out.status = SolveStatus::numerical;
  return out;
}

std::pair<double, double> probe_functional(const LinearProgram& lp, double optimal_value,
                                           const VecX& coeffs) {
  LinearProgram probe = lp;
  probe.add_eq(lp.objective, optimal_value);
  auto directed = [&](double direction) -> double {
    probe.objective = direction * coeffs;
    const LpSolution sol = solve(probe);
    if (sol.status == SolveStatus::unbounded) return direction * kInf;
    if (sol.status != SolveStatus::optimal)
      throw NumericalError("optimal-face probe failed to resolve");
    return direction * sol.objective;
  };
  const double hi = directed(1.0);
  const double lo = directed(-1.0);
  return {lo, hi};
}

std::pair<double, double> probe_range(const LinearProgram& lp, double optimal_value, Index var) {
  return probe_functional(lp, optimal_value, VecX::Unit(lp.num_vars, var));
}

}  // namespace ridealloc::lp
