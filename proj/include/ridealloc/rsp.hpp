#pragma once

#include <functional>
#include <vector>

#include "ridealloc/coalition.hpp"
#include "ridealloc/instance.hpp"
#include "ridealloc/tsppd.hpp"

namespace ridealloc {

/// A set of routes with pairwise-disjoint rider sets covering a target
/// coalition; its cost defines the characteristic value of that coalition.
struct Partition {
  std::vector<Route> routes;
  double cost = 0;

  std::vector<Coalition> blocks() const;
};

/// Minimum-cost partition of every subset of an n-player set into blocks of
/// size <= capacity, for an arbitrary per-block cost. Built once by a subset
/// dynamic program (3^n total transitions); ties between equal-cost partitions
/// resolve to the lexicographically smallest sorted block-mask list.
class PartitionTable {
 public:
  PartitionTable(int n, int capacity, const std::function<double(Coalition)>& block_cost);

  int player_count() const { return n_; }
  double cost(Coalition target) const;
  std::vector<Coalition> blocks(Coalition target) const;  // ascending by mask

 private:
  std::vector<Coalition> peel(Coalition target) const;  // unsorted reconstruction
  int n_;
  std::vector<double> cost_;
  std::vector<std::uint32_t> first_block_;
};

/// Optimal ridesharing plan for S: minimum-cost partition of S into feasible
/// routes, with witness routes. Defines c(S) for any non-empty S. Scale cap
/// n <= 16.
Partition solve_rsp(const Instance& inst, Coalition s);

/// True iff no split of S into two non-empty parts is served cheaper by two
/// routes than S is by one. Requires |S| <= Q.
bool is_profitable_route(const Instance& inst, Coalition s);

}  // namespace ridealloc
