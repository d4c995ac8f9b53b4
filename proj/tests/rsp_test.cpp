#include <doctest.h>

#include <random>

#include "test_support.hpp"

using namespace ridealloc;
using namespace testsupport;

TEST_CASE("single players ride alone") {
  std::mt19937 rng(41);
  const Instance inst = random_instance(rng, 4, 2);
  const Partition p = solve_rsp(inst, Coalition::singleton(1));
  REQUIRE(p.routes.size() == 1);
  CHECK(p.cost == solve_tsppd(inst, Coalition::singleton(1)).cost);
}

TEST_CASE("three-player plans split by capacity") {
  SUBCASE("one passenger seat") {
    const Partition p = solve_rsp(three_player_instance(2), Coalition::grand(3));
    CHECK(p.cost == doctest::Approx(12.0));
    CHECK(p.blocks() == std::vector<Coalition>{Coalition::singleton(0), Coalition::of({1, 2})});
  }
  SUBCASE("two passenger seats") {
    const Partition p = solve_rsp(three_player_instance(3), Coalition::grand(3));
    CHECK(p.cost == doctest::Approx(9.0));
    CHECK(p.blocks() == std::vector<Coalition>{Coalition::grand(3)});
  }
}

TEST_CASE("ten-player optimal plans match the published blocks") {
  SUBCASE("prob10c") {
    const Partition p = solve_rsp(load_instance("prob10c.txt"), Coalition::grand(10));
    // 1-based: {1}, {2,9}, {3,5}, {4,6,7}, {8}, {10}
    const std::vector<Coalition> expected = {
        Coalition::of({0}),       Coalition::of({1, 8}), Coalition::of({2, 4}),
        Coalition::of({3, 5, 6}), Coalition::of({7}),    Coalition::of({9})};
    auto got = p.blocks();
    std::sort(got.begin(), got.end());
    auto want = expected;
    std::sort(want.begin(), want.end());
    CHECK(got == want);
  }
  SUBCASE("prob10d") {
    const Partition p = solve_rsp(load_instance("prob10d.txt"), Coalition::grand(10));
    // 1-based: {1}, {2,3,4,6}, {5,8}, {7}, {9}, {10}
    const std::vector<Coalition> expected = {
        Coalition::of({0}), Coalition::of({1, 2, 3, 5}), Coalition::of({4, 7}),
        Coalition::of({6}), Coalition::of({8}),          Coalition::of({9})};
    auto got = p.blocks();
    std::sort(got.begin(), got.end());
    auto want = expected;
    std::sort(want.begin(), want.end());
    CHECK(got == want);
  }
}

TEST_CASE("plan cost equals partition enumeration on small instances") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4 + int(rng() % 3);
    const int q = 2 + int(rng() % 2);
    const Instance inst = random_instance(rng, n, q);
    const Coalition grand = Coalition::grand(n);
    CHECK(solve_rsp(inst, grand).cost ==
          doctest::Approx(brute_partition_cost(inst, grand)).epsilon(1e-12));
    std::uniform_int_distribution<std::uint32_t> pick(1, grand.mask());
    const Coalition s(pick(rng));
    CHECK(solve_rsp(inst, s).cost ==
          doctest::Approx(brute_partition_cost(inst, s)).epsilon(1e-12));
  }
}

TEST_CASE("optimal plans use only profitable routes") {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 15; ++trial) {
    const Instance inst = random_instance(rng, 6, 3);
    for (const Route& r : solve_rsp(inst, Coalition::grand(6)).routes)
      CHECK(is_profitable_route(inst, r.covered));
  }
  for (const Route& r : solve_rsp(load_instance("prob10c.txt"), Coalition::grand(10)).routes)
    CHECK(is_profitable_route(load_instance("prob10c.txt"), r.covered));
}

TEST_CASE("plan costs are monotone and subadditive") {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 5 + int(rng() % 2);
    const Instance inst = random_instance(rng, n, 3);
    const RouteGame game(inst);
    std::uniform_int_distribution<std::uint32_t> pick(1, Coalition::grand(n).mask());
    for (int pair = 0; pair < 60; ++pair) {
      const Coalition t(pick(rng));
      const Coalition s = Coalition(t.mask() & pick(rng));
      if (!s.empty() && s != t) CHECK(game.cost(s) <= game.cost(t) + 1e-9);
      const Coalition disjoint = Coalition(pick(rng) & ~t.mask());
      if (!disjoint.empty())
        CHECK(game.cost(t) + game.cost(disjoint) >= game.cost(t.united(disjoint)) - 1e-9);
    }
  }
}

TEST_CASE("route profitability detects wasteful detours") {
  SUBCASE("singletons are trivially profitable") {
    CHECK(is_profitable_route(three_player_instance(2), Coalition::singleton(1)));
  }
  SUBCASE("a pair that saves distance") {
    // Shared route costs 13 against solo costs 7 + 7.
    MatX cost = MatX::Constant(5, 5, 100.0);
    cost.row(0).setZero();
    cost.col(0).setZero();
    cost.diagonal().setZero();
    auto sym = [&](int a, int b, double v) { cost(a, b) = cost(b, a) = v; };
    sym(1, 3, 7);
    sym(2, 4, 7);
    sym(1, 2, 3);
    sym(4, 3, 3);
    const Instance inst = Instance::from_cost_matrix(2, 2, std::move(cost));
    CHECK(solve_tsppd(inst, Coalition::of({0, 1})).cost == doctest::Approx(13.0));
    CHECK(is_profitable_route(inst, Coalition::of({0, 1})));
  }
  SUBCASE("a pair that wastes distance") {
    MatX cost = MatX::Constant(5, 5, 100.0);
    cost.row(0).setZero();
    cost.col(0).setZero();
    cost.diagonal().setZero();
    cost(1, 3) = cost(3, 1) = 5.0;
    cost(2, 4) = cost(4, 2) = 5.0;
    const Instance inst = Instance::from_cost_matrix(2, 2, std::move(cost));
    CHECK_FALSE(is_profitable_route(inst, Coalition::of({0, 1})));
  }
  SUBCASE("cost above the solo sum implies a cheaper split") {
    std::mt19937 rng(59);
    for (int trial = 0; trial < 20; ++trial) {
      const Instance inst = random_instance(rng, 5, 3);
      std::uniform_int_distribution<std::uint32_t> pick(1, Coalition::grand(5).mask());
      Coalition s(pick(rng));
      while (!is_feasible(s, 3)) s = Coalition(pick(rng));
      double solo = 0;
      for (int p : s.members()) solo += solve_tsppd(inst, Coalition::singleton(p)).cost;
      if (solve_tsppd(inst, s).cost > solo) CHECK_FALSE(is_profitable_route(inst, s));
    }
  }
}

TEST_CASE("empty target is rejected") {
  CHECK_THROWS_AS(solve_rsp(three_player_instance(2), Coalition()), DomainError);
  CHECK_THROWS_AS(is_profitable_route(three_player_instance(2), Coalition::grand(3)),
                  DomainError);
}
