#include "ridealloc/nucleolus.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>

namespace ridealloc::nucleolus {
namespace {

// Candidate filter for the shared generation scan.
enum class Domain { all_proper, feasible, feasible_profitable };

double row_value(const Game& game, Mode mode, Coalition s) {
  return mode == Mode::approximate ? game.feasible_cost(s) : game.cost(s);
}

// Orthonormal basis of the indicator span of {efficiency} u {frozen rows}.
// Coalitions inside this span have affinely determined excesses: they cannot
// constrain the allocation, only echo constants.
MatX equality_span(const MasterState& state, int n) {
  MatX m(n, 1 + static_cast<Index>(state.equality_rows.size()));
  m.col(0) = VecX::Ones(n);
  for (std::size_t j = 0; j < state.equality_rows.size(); ++j) {
    VecX v = VecX::Zero(n);
    for (int p : state.equality_rows[j].coalition.members()) v(p) = 1.0;
    m.col(1 + static_cast<Index>(j)) = v;
  }
  const Eigen::ColPivHouseholderQR<MatX> qr(m);
  return qr.householderQ() * MatX::Identity(n, qr.rank());
}

std::optional<GeneratedRow> scan(const Game& game, const VecX& y, double w,
                                 const MasterState& state, Domain domain) {
  const int n = game.player_count();
  const std::uint32_t grand = Coalition::grand(n).mask();
  const MatX span = state.equality_rows.empty() ? MatX() : equality_span(state, n);
  std::optional<GeneratedRow> best;
  for (std::uint32_t m = 1; m < grand; ++m) {
    if (state.in_master[m]) continue;
    const Coalition s(m);
    if (span.size() > 0) {
      VecX v = VecX::Zero(n);
      for (int p : s.members()) v(p) = 1.0;
      if ((v - span * (span.transpose() * v)).norm() <= 1e-9) continue;  // determined
    }
    double value;
    if (domain == Domain::all_proper) {
      value = game.cost(s);
    } else {
      if (!is_feasible(s, game.capacity())) continue;
      value = game.feasible_cost(s);
      if (domain == Domain::feasible_profitable) {
        double solo = 0;
        for (int p : s.members()) solo += game.feasible_cost(Coalition::singleton(p));
        if (solo < value) continue;
      }
    }
    double violation = value - w;
    for (int p : s.members()) violation -= y(p);
    if (!best || violation < best->violation) best = GeneratedRow{s, violation};
  }
  if (best && best->violation <= tol::generation) return best;
  return std::nullopt;
}

lp::LinearProgram build_master_lp(const MasterState& state, const Game& game) {
  const int n = game.player_count();
  lp::LinearProgram prog(n + 1);  // y_0..y_{n-1}, then w
  prog.objective = VecX::Unit(n + 1, n);
  auto coalition_row = [&](Coalition s, double w_coef) {
    VecX row = VecX::Zero(n + 1);
    for (int p : s.members()) row(p) = 1.0;
    row(n) = w_coef;
    return row;
  };
  for (const MasterRow& r : state.inequality_rows)
    prog.add_le(coalition_row(r.coalition, 1.0), r.value);  // w + y(S) <= c(S)
  for (const FixedRow& f : state.equality_rows)
    prog.add_eq(coalition_row(f.coalition, 0.0), f.value - f.level);  // y(S) = c(S) - w_tau
  VecX eff = VecX::Ones(n + 1);
  eff(n) = 0.0;
  prog.add_eq(eff, game.grand_cost());
  return prog;
}

bool allocation_unique(const MasterState& state, const lp::LinearProgram& prog,
                       const StepResult& out, int n) {
  std::vector<bool> pinned(n, false);  // singleton equality rows determine y_i
  for (const FixedRow& f : state.equality_rows)
    if (f.coalition.cardinality() == 1) pinned[f.coalition.lowest_member()] = true;
  for (int i = 0; i < n; ++i) {
    if (pinned[i]) continue;
    const auto [lo, hi] = lp::probe_range(prog, out.w, i);
    if (!(hi - lo <= tol::uniqueness)) return false;
  }
  return true;
}

// Rows to freeze when a stage settles: the level each one is pinned at, or
// NaN to keep it active. Two parts:
//  - rows whose excess equals w* in every optimal solution, at level w*.
//    `safe` certifies each tight row with an optimal-face probe; the dual
//    rule trusts the returned dual vector.
//  - rows whose excess is already determined by the equality system (their
//    indicator lies in its row span). Retiring them keeps later stages from
//    burning one stage per constant level, so the stage count stays <= n.
std::vector<double> fixation_levels(const MasterState& state, const lp::LinearProgram& prog,
                                    const StepResult& out, FixationRule rule, int n) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> level(state.inequality_rows.size(), nan);
  auto vertex_slack = [&](const MasterRow& r) {
    double slack = r.value - out.w;
    for (int p : r.coalition.members()) slack -= out.y(p);
    return slack;
  };

  for (std::size_t i = 0; i < state.inequality_rows.size(); ++i) {
    const MasterRow& r = state.inequality_rows[i];
    if (rule == FixationRule::dual) {
      if (out.duals(static_cast<Index>(i)) > tol::optimality) level[i] = out.w;
      continue;
    }
    if (vertex_slack(r) > tol::duplicate_excess) continue;  // not tight even here
    const double lo = lp::probe_functional(prog, out.w, prog.rows[i].coeffs).first;
    if (r.value - lo <= tol::duplicate_excess) level[i] = out.w;  // tight on the whole face
  }

  // Retirement rank test: indicators spanned by {efficiency} u {frozen rows}.
  // Each pass may grow the span, so iterate to the fixed point.
  auto indicator = [&](Coalition s) {
    VecX v = VecX::Zero(n);
    for (int p : s.members()) v(p) = 1.0;
    return v;
  };
  std::vector<VecX> span_rows;
  span_rows.push_back(VecX::Ones(n));
  for (const FixedRow& f : state.equality_rows) span_rows.push_back(indicator(f.coalition));
  for (std::size_t i = 0; i < level.size(); ++i)
    if (!std::isnan(level[i])) span_rows.push_back(indicator(state.inequality_rows[i].coalition));
  bool grew = true;
  while (grew) {
    grew = false;
    MatX basis(n, static_cast<Index>(span_rows.size()));
    for (std::size_t j = 0; j < span_rows.size(); ++j)
      basis.col(static_cast<Index>(j)) = span_rows[j];
    const Eigen::ColPivHouseholderQR<MatX> qr(basis);
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (!std::isnan(level[i])) continue;
      const MasterRow& r = state.inequality_rows[i];
      const VecX v = indicator(r.coalition);
      if ((basis * qr.solve(v) - v).norm() <= 1e-9) {
        level[i] = vertex_slack(r) + out.w;  // excess is this constant on the face
        span_rows.push_back(v);
        grew = true;
      }
    }
  }
  return level;
}

}  // namespace

void MasterState::add_row(Coalition s, double value) {
  inequality_rows.push_back({s, value});
  in_master[s.mask()] = true;
}

MasterState initial_master(const Game& game, Mode mode) {
  const int n = game.player_count();
  MasterState state;
  state.in_master.assign(std::size_t(1) << n, false);
  state.y = VecX::Zero(n);
  for (int p = 0; p < n; ++p) {
    const Coalition s = Coalition::singleton(p);
    state.add_row(s, row_value(game, mode, s));
  }
  for (Coalition block : game.plan_blocks()) {
    if (n > 1 && block == game.grand()) continue;  // not a proper coalition
    if (!state.contains(block)) state.add_row(block, row_value(game, mode, block));
  }
  return state;
}

StepResult step_master(MasterState& state, const Game& game) {
  const lp::LinearProgram prog = build_master_lp(state, game);
  const lp::LpSolution sol = lp::solve(prog);
  if (sol.status != lp::SolveStatus::optimal)
    throw NumericalError("master LP did not solve to optimality; state is inconsistent");
  const int n = game.player_count();
  StepResult out;
  out.y = sol.primal.head(n);
  out.w = sol.primal(n);
  out.duals = sol.row_duals.head(static_cast<Index>(state.inequality_rows.size()));
  state.y = out.y;
  state.w = out.w;
  return out;
}

std::optional<GeneratedRow> general_generator(const Game& game, const VecX& y, double w,
                                              const MasterState& state) {
  return scan(game, y, w, state, Domain::all_proper);
}

std::optional<GeneratedRow> feasible_generator(const Game& game, const VecX& y, double w,
                                               const MasterState& state) {
  return scan(game, y, w, state, Domain::feasible);
}

Result run(const Game& game, Mode mode, RunOptions options) {
  const int n = game.player_count();
  MasterState state = initial_master(game, mode);
  if (mode == Mode::brute) {
    const std::uint32_t grand = game.grand().mask();
    for (std::uint32_t m = 1; m < grand; ++m) {
      const Coalition s(m);
      if (state.contains(s)) continue;
      if (options.brute_feasible_only && !is_feasible(s, game.capacity())) continue;
      state.add_row(s, options.brute_feasible_only ? game.feasible_cost(s) : game.cost(s));
    }
  }

  Result result;
  result.mode = mode;
  result.total_proper_coalitions = (std::int64_t(1) << n) - 2;
  result.grand_cost = game.grand_cost();

  int iteration = 0;
  while (true) {
    if (state.stage > n + 50)
      throw NumericalError("stage count exceeded the player count; fixation is not progressing");
    StageRecord record;
    record.stage = state.stage;

    StepResult out = step_master(state, game);
    ++iteration;
    while (true) {
      std::optional<GeneratedRow> gen;
      if (mode == Mode::exact)
        gen = general_generator(game, out.y, out.w, state);
      else if (mode == Mode::approximate)
        gen = feasible_generator(game, out.y, out.w, state);
      result.events.push_back({state.stage, iteration, out.y, out.w,
                               gen ? std::optional<Coalition>(gen->coalition) : std::nullopt});
      if (!gen) break;
      state.add_row(gen->coalition, row_value(game, mode, gen->coalition));
      record.generated.push_back(gen->coalition);
      out = step_master(state, game);
      ++iteration;
    }
    record.level = out.w;

    const lp::LinearProgram prog = build_master_lp(state, game);
    if (allocation_unique(state, prog, out, n)) {
      result.stages.push_back(std::move(record));
      result.allocation = Allocation{out.y};
      break;
    }

    const std::vector<double> level = fixation_levels(state, prog, out, options.fixation, n);
    std::vector<MasterRow> keep;
    for (std::size_t i = 0; i < state.inequality_rows.size(); ++i) {
      const MasterRow& r = state.inequality_rows[i];
      if (std::isnan(level[i])) {
        keep.push_back(r);
      } else {
        state.equality_rows.push_back({r.coalition, r.value, level[i]});
        record.fixed.push_back(r.coalition);
      }
    }
    if (record.fixed.empty())
      throw NumericalError("no row certified tight on a non-unique optimal face");
    state.inequality_rows = std::move(keep);
    result.stages.push_back(std::move(record));
    ++state.stage;
  }

  result.generated_count = static_cast<long>(state.row_count());
  return result;
}

CoreCheck core_check(const Game& game) {
  MasterState state = initial_master(game, Mode::approximate);
  StepResult out = step_master(state, game);
  while (auto gen = scan(game, out.y, out.w, state, Domain::feasible_profitable)) {
    state.add_row(gen->coalition, game.feasible_cost(gen->coalition));
    out = step_master(state, game);
  }
  return {out.w >= -tol::generation, out.w, Allocation{out.y}};
}

Result brute_nucleolus(const Game& game) {
  if (game.player_count() > 12)
    throw ScaleLimitError("brute nucleolus supports at most 12 players");
  return run(game, Mode::brute);
}

}  // namespace ridealloc::nucleolus
