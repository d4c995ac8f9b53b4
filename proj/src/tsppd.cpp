#include "ridealloc/tsppd.hpp"

#include <limits>

namespace ridealloc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Exact solver cap: tours have 2k stops, so the state space is 4^k * 2k.
constexpr int kMaxRiders = 10;

// Per-driver state over local nodes 0..2k-1 (j < k: origin of member j,
// j >= k: destination of member j-k). Cost-to-go table g[mask][last] = cheapest
// completion that visits the remaining nodes and ends at the driver's
// destination, with every origin preceding its destination and the driver's
// destination kept last.
struct DriverPlan {
  double cost = kInf;
  std::vector<int> stops;  // global node ids
};

DriverPlan solve_for_driver(const Instance& inst, const std::vector<int>& member, int driver_idx) {
  const int k = static_cast<int>(member.size());
  const int nodes = 2 * k;
  const std::uint32_t full = (1u << nodes) - 1u;
  const int start = driver_idx;
  const int finish = driver_idx + k;

  auto global = [&](int local) {
    return local < k ? inst.origin_node(member[local])
                     : inst.destination_node(member[local - k]);
  };
  auto edge = [&](int a, int b) { return inst.edge(global(a), global(b)); };
  auto allowed = [&](std::uint32_t mask, int next) {
    if (next < k) return true;                       // origins are unconstrained
    if (((mask >> (next - k)) & 1u) == 0) return false;  // origin first
    if (next == finish) return (mask | (1u << next)) == full;  // driver ends the tour
    return true;
  };

  std::vector<double> g(std::size_t(full + 1) * nodes, kInf);
  g[std::size_t(full) * nodes + finish] = 0.0;
  for (std::uint32_t mask = full - 1;; --mask) {
    if (mask & (1u << start)) {
      for (int last = 0; last < nodes; ++last) {
        if (((mask >> last) & 1u) == 0) continue;
        double best = kInf;
        for (int next = 0; next < nodes; ++next) {
          if ((mask >> next) & 1u) continue;
          if (!allowed(mask, next)) continue;
          const double cand = edge(last, next) + g[std::size_t(mask | (1u << next)) * nodes + next];
          if (cand < best) best = cand;
        }
        g[std::size_t(mask) * nodes + last] = best;
      }
    }
    if (mask == 0) break;
  }

  DriverPlan plan;
  plan.cost = g[std::size_t(1u << start) * nodes + start];
  if (plan.cost == kInf) return plan;

  // Walk the table forward, always taking the smallest node that still attains
  // the optimum; local order matches global order, so the stop sequence is the
  // lexicographically smallest optimal one.
  std::uint32_t mask = 1u << start;
  int last = start;
  plan.stops.push_back(global(start));
  while (mask != full) {
    const double here = g[std::size_t(mask) * nodes + last];
    for (int next = 0; next < nodes; ++next) {
      if ((mask >> next) & 1u) continue;
      if (!allowed(mask, next)) continue;
      if (edge(last, next) + g[std::size_t(mask | (1u << next)) * nodes + next] == here) {
        mask |= 1u << next;
        last = next;
        plan.stops.push_back(global(next));
        break;
      }
    }
  }
  return plan;
}

}  // namespace

Route solve_tsppd(const Instance& inst, Coalition s) {
  if (s.empty()) throw DomainError("cannot route the empty coalition");
  if (s.cardinality() > inst.capacity())
    throw DomainError("coalition " + s.to_string(inst.id_base()) + " exceeds capacity " +
                      std::to_string(inst.capacity()));
  if (s.cardinality() > kMaxRiders)
    throw ScaleLimitError("coalitions above " + std::to_string(kMaxRiders) +
                          " riders exceed the exact routing solver");
  if (Coalition::grand(inst.player_count()).mask() < s.mask())
    throw DomainError("coalition outside this instance");

  const std::vector<int> member = s.members();
  DriverPlan best;
  int best_driver = -1;
  for (int d = 0; d < static_cast<int>(member.size()); ++d) {
    DriverPlan plan = solve_for_driver(inst, member, d);
    const bool better =
        plan.cost < best.cost || (plan.cost == best.cost && plan.stops < best.stops);
    if (better) {
      best = std::move(plan);
      best_driver = member[d];
    }
  }

  Route route;
  route.driver = best_driver;
  route.stops = std::move(best.stops);
  route.cost = best.cost;
  route.covered = s;
  return route;
}

double char_value_feasible(const Instance& inst, Coalition s, CharTable& memo) {
  if (memo.has(s)) return memo.at(s);
  const double cost = solve_tsppd(inst, s).cost;
  memo.set(s, cost);
  return cost;
}

}  // namespace ridealloc
