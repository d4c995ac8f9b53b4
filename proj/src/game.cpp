#include "ridealloc/game.hpp"

#include "ridealloc/tsppd.hpp"

namespace ridealloc {

TableGame::TableGame(CharTableInput input, int capacity)
    : input_(std::move(input)), capacity_(capacity > 0 ? capacity : input_.n) {
  if (!input_.table.complete()) throw DomainError("characteristic table incomplete");
}

double TableGame::feasible_cost(Coalition s) const {
  if (!is_feasible(s, capacity_))
    throw DomainError("coalition " + s.to_string(id_base()) + " is not feasible at capacity " +
                      std::to_string(capacity_));
  return input_.table.at(s);
}

std::vector<Coalition> TableGame::plan_blocks() const {
  if (blocks_.empty()) {
    PartitionTable table(input_.n, capacity_,
                         [&](Coalition b) { return input_.table.at(b); });
    blocks_ = table.blocks(grand());
  }
  return blocks_;
}

RouteGame::RouteGame(Instance inst) : inst_(std::move(inst)), route_costs_(inst_.player_count()) {
  if (inst_.player_count() > Coalition::kMaxPlayers)
    throw ScaleLimitError("routing games support at most " +
                          std::to_string(Coalition::kMaxPlayers) + " players");
}

const PartitionTable& RouteGame::partition() const {
  if (!partition_) {
    partition_ = std::make_unique<PartitionTable>(
        inst_.player_count(), inst_.capacity(),
        [&](Coalition b) { return char_value_feasible(inst_, b, route_costs_); });
  }
  return *partition_;
}

double RouteGame::cost(Coalition s) const { return partition().cost(s); }

double RouteGame::feasible_cost(Coalition s) const {
  if (!is_feasible(s, inst_.capacity()))
    throw DomainError("coalition " + s.to_string(id_base()) + " is not feasible at capacity " +
                      std::to_string(inst_.capacity()));
  return char_value_feasible(inst_, s, route_costs_);
}

std::vector<Coalition> RouteGame::plan_blocks() const { return partition().blocks(grand()); }

const CharTable& RouteGame::table() const {
  if (!full_) {
    const auto& part = partition();
    auto table = std::make_unique<CharTable>(inst_.player_count());
    const std::uint32_t grand_mask = grand().mask();
    for (std::uint32_t m = 1; m <= grand_mask; ++m)
      table->set(Coalition(m), part.cost(Coalition(m)));
    full_ = std::move(table);
  }
  return *full_;
}

}  // namespace ridealloc
