#pragma once

#include <optional>
#include <vector>

#include "ridealloc/coalition.hpp"
#include "ridealloc/game.hpp"
#include "ridealloc/lp.hpp"

namespace ridealloc::nucleolus {

enum class Mode { exact, approximate, brute };

/// How settled stages pick the rows to freeze: `safe` fixes exactly the rows
/// that are tight in every optimal solution (certified by optimal-face
/// probes); `dual` fixes rows with a positive dual in the one solution
/// returned, which can mis-fix under degeneracy.
enum class FixationRule { safe, dual };

struct RunOptions {
  FixationRule fixation = FixationRule::safe;
  /// Brute mode loads only feasible coalitions instead of all proper ones.
  bool brute_feasible_only = false;
};

/// One master row: a coalition and the characteristic value it was generated
/// with (approximate mode records single-route values).
struct MasterRow {
  Coalition coalition;
  double value;
};

struct FixedRow {
  Coalition coalition;
  double value;
  double level;  // the settled maximin excess of the stage that froze it
};

/// The staged master program: active inequality rows, frozen equality rows
/// with their per-stage levels, and the incumbent solution.
struct MasterState {
  int stage = 1;
  std::vector<MasterRow> inequality_rows;
  std::vector<FixedRow> equality_rows;
  std::vector<bool> in_master;  // by coalition mask
  VecX y;
  double w = 0;

  bool contains(Coalition s) const { return in_master[s.mask()]; }
  void add_row(Coalition s, double value);
  std::size_t row_count() const { return inequality_rows.size() + equality_rows.size(); }
};

struct StepResult {
  VecX y;
  double w = 0;
  VecX duals;  // aligned with inequality_rows
};

struct GeneratedRow {
  Coalition coalition;
  double violation;  // c(S) - y(S) - w*
};

struct StageRecord {
  int stage = 0;
  double level = 0;
  std::vector<Coalition> generated;
  std::vector<Coalition> fixed;
};

/// One master solve: the incumbent after it and the row the subproblem added
/// in response (none when the stage settled).
struct IterationEvent {
  int stage = 0;
  int iteration = 0;  // 1-based, global
  VecX incumbent;
  double w = 0;
  std::optional<Coalition> generated;
};

struct Result {
  Allocation allocation;
  Mode mode = Mode::exact;
  std::vector<StageRecord> stages;
  std::vector<IterationEvent> events;
  long generated_count = 0;  // all master rows, initial set included
  long total_proper_coalitions = 0;
  double grand_cost = 0;
};

struct CoreCheck {
  bool nonempty = false;
  double least_core_value = 0;  // stage-1 maximin over the reduced family
  Allocation witness;
};

/// Master seeded with the singleton coalitions and the blocks of the optimal
/// ridesharing plan (the grand block is dropped for n > 1).
MasterState initial_master(const Game& game, Mode mode);

/// Solves the stage LP max w_t subject to the state's rows and efficiency.
StepResult step_master(MasterState& state, const Game& game);

/// Most violated proper coalition outside the master, over all coalitions
/// (exact search against the memoized characteristic table). None when every
/// candidate clears the generation tolerance.
std::optional<GeneratedRow> general_generator(const Game& game, const VecX& y, double w,
                                              const MasterState& state);

/// Same search restricted to feasible coalitions, valued by single routes.
std::optional<GeneratedRow> feasible_generator(const Game& game, const VecX& y, double w,
                                               const MasterState& state);

/// The staged procedure: iterate master and generator, freeze the rows that
/// are tight on the whole optimal face, and stop once the allocation is
/// certified unique.
Result run(const Game& game, Mode mode, RunOptions options = {});

/// Core emptiness via the stage-1 maximin over feasible, profitable
/// coalitions; the witness is the least-core allocation of that family.
CoreCheck core_check(const Game& game);

/// Nucleolus with the complete proper-coalition row set (n <= 12); the
/// ground-truth oracle for the generating modes.
Result brute_nucleolus(const Game& game);

}  // namespace ridealloc::nucleolus
