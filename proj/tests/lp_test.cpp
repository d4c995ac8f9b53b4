#include <doctest.h>

#include <cstring>
#include <random>

#include "test_support.hpp"

using namespace ridealloc;
using namespace ridealloc::lp;
using namespace testsupport;

namespace {

// max w  s.t.  w + y(S) <= c(S) for every proper coalition, sum y = c(N).
LinearProgram least_core_lp(const CharTable& table) {
  const int n = table.player_count();
  LinearProgram prog(n + 1);
  prog.objective = VecX::Unit(n + 1, n);
  const std::uint32_t grand = Coalition::grand(n).mask();
  for (std::uint32_t m = 1; m < grand; ++m) {
    VecX row = VecX::Zero(n + 1);
    for (int p : Coalition(m).members()) row(p) = 1.0;
    row(n) = 1.0;
    prog.add_le(row, table.at(Coalition(m)));
  }
  VecX eff = VecX::Ones(n + 1);
  eff(n) = 0.0;
  prog.add_eq(eff, table.at(Coalition::grand(n)));
  return prog;
}

}  // namespace

TEST_CASE("two ceilings give the tight one's dual") {
  LinearProgram prog(1);
  prog.objective = VecX::Ones(1);
  prog.add_le(VecX::Ones(1), 1.0);
  prog.add_le(VecX::Ones(1), 2.0);
  const LpSolution sol = solve(prog);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.objective == doctest::Approx(1.0));
  CHECK(sol.primal(0) == doctest::Approx(1.0));
  CHECK(sol.row_duals(0) == doctest::Approx(1.0));
  CHECK(sol.row_duals(1) == doctest::Approx(0.0));
}

TEST_CASE("symmetric ceilings pin a free variable at zero") {
  LinearProgram prog(2);  // vars: w, y
  prog.objective = VecX::Unit(2, 0);
  VecX r1(2), r2(2);
  r1 << 1.0, 1.0;   // w <= -y
  r2 << 1.0, -1.0;  // w <= y
  prog.add_le(r1, 0.0);
  prog.add_le(r2, 0.0);
  const LpSolution sol = solve(prog);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.objective == doctest::Approx(0.0));
  CHECK(sol.primal(1) == doctest::Approx(0.0));
}

TEST_CASE("full least-core program of the empty-core example") {
  const LinearProgram prog = least_core_lp(empty_core_table().table);
  const LpSolution sol = solve(prog);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.objective == doctest::Approx(-1.0 / 3).epsilon(1e-9));
  CHECK(sol.primal(0) == doctest::Approx(14.0 / 3).epsilon(1e-9));
  CHECK(sol.primal(1) == doctest::Approx(8.0 / 3).epsilon(1e-9));
  CHECK(sol.primal(2) == doctest::Approx(14.0 / 3).epsilon(1e-9));
}

TEST_CASE("statuses: infeasible and unbounded") {
  LinearProgram infeas(1);
  infeas.add_le(VecX::Ones(1), 1.0);
  infeas.add_eq(VecX::Ones(1), 2.0);
  CHECK(solve(infeas).status == SolveStatus::infeasible);

  LinearProgram unbounded(1);
  unbounded.objective = VecX::Ones(1);
  CHECK(solve(unbounded).status == SolveStatus::unbounded);
}

TEST_CASE("boxed variables and equality rows") {
  LinearProgram prog(2);
  prog.objective << 3.0, 1.0;
  prog.lower << 0.0, -1.0;
  prog.upper << 2.0, 4.0;
  VecX row(2);
  row << 1.0, 1.0;
  prog.add_eq(row, 3.0);
  const LpSolution sol = solve(prog);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.primal(0) == doctest::Approx(2.0));
  CHECK(sol.primal(1) == doctest::Approx(1.0));
  CHECK(sol.objective == doctest::Approx(7.0));
}

TEST_CASE("deterministic: identical programs give bit-identical output") {
  const LinearProgram prog = least_core_lp(nonempty_core_table().table);
  const LpSolution a = solve(prog);
  const LpSolution b = solve(prog);
  CHECK(std::memcmp(a.primal.data(), b.primal.data(), sizeof(double) * a.primal.size()) == 0);
  CHECK(std::memcmp(a.row_duals.data(), b.row_duals.data(),
                    sizeof(double) * a.row_duals.size()) == 0);
  CHECK(a.objective == b.objective);
}

TEST_CASE("random boxed programs agree with vertex enumeration") {
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_int_distribution<int> nv(1, 4), nr(0, 6), coin(0, 4);
  int solved = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const Index n = nv(rng);
    LinearProgram prog(n);
    for (Index j = 0; j < n; ++j) {
      prog.objective(j) = coef(rng);
      prog.lower(j) = -2.0 - std::abs(coef(rng));
      prog.upper(j) = 2.0 + std::abs(coef(rng));
    }
    const int rows = nr(rng);
    for (int i = 0; i < rows; ++i) {
      VecX a(n);
      for (Index j = 0; j < n; ++j) a(j) = coef(rng);
      if (coin(rng) == 0)
        prog.add_eq(a, coef(rng));
      else
        prog.add_le(a, coef(rng) + 3.0);
    }
    const LpSolution sol = solve(prog);
    const VertexOracle oracle = enumerate_vertices(prog);
    if (sol.status == SolveStatus::infeasible) {
      CHECK_FALSE(oracle.feasible);
      continue;
    }
    REQUIRE(sol.status == SolveStatus::optimal);
    REQUIRE(oracle.feasible);
    CHECK(sol.objective ==
          doctest::Approx(oracle.objective).epsilon(1e-7).scale(1.0 + std::abs(oracle.objective)));
    ++solved;
  }
  CHECK(solved > 40);  // the generator must actually exercise the optimal path
}

TEST_CASE("complementary slackness on optimal solves") {
  std::mt19937 rng(67);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = 1 + Index(rng() % 3);
    LinearProgram prog(n);
    for (Index j = 0; j < n; ++j) {
      prog.objective(j) = coef(rng);
      prog.lower(j) = -5.0;
      prog.upper(j) = 5.0;
    }
    for (int i = 0; i < 4; ++i) {
      VecX a(n);
      for (Index j = 0; j < n; ++j) a(j) = coef(rng);
      prog.add_le(a, std::abs(coef(rng)) + 0.5);
    }
    const LpSolution sol = solve(prog);
    if (sol.status != SolveStatus::optimal) continue;
    for (std::size_t i = 0; i < prog.rows.size(); ++i) {
      CHECK(sol.row_duals(Index(i)) >= -1e-9);  // max sense, <= rows
      if (sol.row_duals(Index(i)) > 1e-9) {
        const double resid = prog.rows[i].coeffs.dot(sol.primal) - prog.rows[i].rhs;
        CHECK(std::abs(resid) <= 1e-8);
      }
    }
  }
}

TEST_CASE("optimal-face probes") {
  SUBCASE("a single-point face collapses every range") {
    const LinearProgram prog = least_core_lp(empty_core_table().table);
    const LpSolution sol = solve(prog);
    REQUIRE(sol.status == SolveStatus::optimal);
    for (Index v = 0; v < 3; ++v) {
      const auto [lo, hi] = probe_range(prog, sol.objective, v);
      CHECK(hi - lo <= 1e-7);
      CHECK(lo == doctest::Approx(sol.primal(v)).epsilon(1e-7));
    }
  }
  SUBCASE("an unconstrained variable probes unbounded") {
    LinearProgram prog(2);  // w, y with only w <= 0
    prog.objective = VecX::Unit(2, 0);
    VecX row(2);
    row << 1.0, 0.0;
    prog.add_le(row, 0.0);
    const LpSolution sol = solve(prog);
    REQUIRE(sol.status == SolveStatus::optimal);
    const auto [lo, hi] = probe_range(prog, sol.objective, 1);
    CHECK(lo == -std::numeric_limits<double>::infinity());
    CHECK(hi == std::numeric_limits<double>::infinity());
  }
  SUBCASE("a partially generated master leaves the middle player loose") {
    // Rows {1},{2},{3},{2,3} of the empty-core game: the maximin is 0 and the
    // face leaves y2 anywhere in [2,5].
    const CharTable& table = empty_core_table().table;
    LinearProgram prog(4);
    prog.objective = VecX::Unit(4, 3);
    auto add = [&](std::initializer_list<int> players, double rhs) {
      VecX row = VecX::Zero(4);
      for (int p : players) row(p) = 1.0;
      row(3) = 1.0;
      prog.add_le(row, rhs);
    };
    add({0}, table.at(Coalition::singleton(0)));
    add({1}, table.at(Coalition::singleton(1)));
    add({2}, table.at(Coalition::singleton(2)));
    add({1, 2}, table.at(Coalition::of({1, 2})));
    VecX eff = VecX::Ones(4);
    eff(3) = 0.0;
    prog.add_eq(eff, table.at(Coalition::grand(3)));
    const LpSolution sol = solve(prog);
    REQUIRE(sol.status == SolveStatus::optimal);
    CHECK(sol.objective == doctest::Approx(0.0));
    const auto [lo, hi] = probe_range(prog, sol.objective, 1);
    CHECK(lo == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(hi == doctest::Approx(5.0).epsilon(1e-9));
  }
}
