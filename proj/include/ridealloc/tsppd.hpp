#pragma once

#include <vector>

#include "ridealloc/coalition.hpp"
#include "ridealloc/instance.hpp"

namespace ridealloc {

/// A single-vehicle route. Stops are instance node ids; the sequence starts at
/// the driver's origin, ends at the driver's destination, and every covered
/// player's origin precedes their destination.
struct Route {
  int driver = 0;
  std::vector<int> stops;
  double cost = 0;
  Coalition covered;
};

/// Minimum-cost feasible route serving all of S (1 <= |S| <= Q), over every
/// candidate driver in S. Among minimum-cost routes the lexicographically
/// smallest stop sequence is returned, so witnesses are reproducible.
Route solve_tsppd(const Instance& inst, Coalition s);

/// The single-route characteristic value c(S) for a feasible coalition,
/// memoized in `memo`.
double char_value_feasible(const Instance& inst, Coalition s, CharTable& memo);

}  // namespace ridealloc
