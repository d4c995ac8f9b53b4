#pragma once

#include <memory>
#include <vector>

#include "ridealloc/coalition.hpp"
#include "ridealloc/instance.hpp"
#include "ridealloc/rsp.hpp"

namespace ridealloc {

/// A cooperative cost game over n players. `cost` is the characteristic
/// value c(S); `feasible_cost` is the single-vehicle value used when
/// generation is restricted to feasible coalitions. For table games the two
/// coincide; for routing games `cost` is the optimal-plan value.
class Game {
 public:
  virtual ~Game() = default;

  virtual int player_count() const = 0;
  virtual int capacity() const = 0;
  virtual double cost(Coalition s) const = 0;
  virtual double feasible_cost(Coalition s) const = 0;
  /// Blocks of the optimal ridesharing plan for the grand coalition.
  virtual std::vector<Coalition> plan_blocks() const = 0;
  /// Fully materialized characteristic table (may be expensive to build).
  virtual const CharTable& table() const = 0;
  /// Display offset for player ids in reports.
  virtual int id_base() const = 0;

  Coalition grand() const { return Coalition::grand(player_count()); }
  double grand_cost() const { return cost(grand()); }
};

/// Game given directly by a characteristic table (in the style of worked
/// three-player examples). Capacity defaults to n, making every coalition
/// feasible.
class TableGame final : public Game {
 public:
  explicit TableGame(CharTableInput input, int capacity = 0);

  int player_count() const override { return input_.n; }
  int capacity() const override { return capacity_; }
  double cost(Coalition s) const override { return input_.table.at(s); }
  double feasible_cost(Coalition s) const override;
  std::vector<Coalition> plan_blocks() const override;
  const CharTable& table() const override { return input_.table; }
  int id_base() const override { return input_.id_base; }

 private:
  CharTableInput input_;
  int capacity_;
  mutable std::vector<Coalition> blocks_;  // lazy
};

/// Game induced by a routing instance: c(S) is the optimal-plan cost of S,
/// computed from memoized single-route values and a subset partition table.
class RouteGame final : public Game {
 public:
  explicit RouteGame(Instance inst);

  const Instance& instance() const { return inst_; }
  int player_count() const override { return inst_.player_count(); }
  int capacity() const override { return inst_.capacity(); }
  double cost(Coalition s) const override;
  double feasible_cost(Coalition s) const override;
  std::vector<Coalition> plan_blocks() const override;
  const CharTable& table() const override;
  int id_base() const override { return inst_.id_base(); }

 private:
  const PartitionTable& partition() const;
  Instance inst_;
  mutable CharTable route_costs_;
  mutable std::unique_ptr<PartitionTable> partition_;
  mutable std::unique_ptr<CharTable> full_;
};

}  // namespace ridealloc
