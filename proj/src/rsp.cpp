#include "ridealloc/rsp.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace ridealloc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Coalition> sorted_blocks(std::vector<Coalition> blocks) {
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

}  // namespace

std::vector<Coalition> Partition::blocks() const {
  std::vector<Coalition> out;
  out.reserve(routes.size());
  for (const Route& r : routes) out.push_back(r.covered);
  return sorted_blocks(std::move(out));
}

PartitionTable::PartitionTable(int n, int capacity,
                               const std::function<double(Coalition)>& block_cost)
    : n_(n) {
  if (n < 1 || n > Coalition::kMaxPlayers)
    throw ScaleLimitError("partition solver supports 1.." +
                          std::to_string(Coalition::kMaxPlayers) + " players");
  const std::uint32_t full = Coalition::grand(n).mask();
  cost_.assign(std::size_t(full) + 1, kInf);
  first_block_.assign(std::size_t(full) + 1, 0);
  cost_[0] = 0;

  // dp over masks ascending; the block containing the lowest member of m is
  // enumerated explicitly, so each partition is counted once.
  for (std::uint32_t m = 1; m <= full; ++m) {
    const std::uint32_t low = m & (~m + 1u);  // lowest set bit
    const std::uint32_t rest = m ^ low;
    double best = kInf;
    std::uint32_t best_block = 0;
    // sub runs over subsets of rest, including the empty set.
    std::uint32_t sub = rest;
    while (true) {
      const std::uint32_t block = sub | low;
      if (std::popcount(block) <= capacity) {
        const double bc = block_cost(Coalition(block));
        if (bc < kInf) {
          const double cand = bc + cost_[m ^ block];
          if (cand < best) {
            best = cand;
            best_block = block;
          } else if (cand == best && best_block != 0 && block != best_block) {
            // Equal cost: keep the partition whose sorted block list is
            // lexicographically smaller.
            std::vector<Coalition> a = peel(Coalition(m ^ best_block));
            a.push_back(Coalition(best_block));
            std::vector<Coalition> b = peel(Coalition(m ^ block));
            b.push_back(Coalition(block));
            if (sorted_blocks(std::move(b)) < sorted_blocks(std::move(a))) best_block = block;
          }
        }
      }
      if (sub == 0) break;
      sub = (sub - 1u) & rest;
    }
    cost_[m] = best;
    first_block_[m] = best_block;
  }
}

double PartitionTable::cost(Coalition target) const {
  if (target.empty()) throw DomainError("partition cost of the empty coalition");
  if (target.mask() >= cost_.size()) throw DomainError("coalition outside this game");
  return cost_[target.mask()];
}

std::vector<Coalition> PartitionTable::peel(Coalition target) const {
  std::vector<Coalition> out;
  std::uint32_t m = target.mask();
  while (m != 0) {
    const std::uint32_t block = first_block_[m];
    if (block == 0) throw DomainError("no feasible partition for " + Coalition(m).to_string());
    out.push_back(Coalition(block));
    m ^= block;
  }
  return out;
}

std::vector<Coalition> PartitionTable::blocks(Coalition target) const {
  if (target.empty()) throw DomainError("partition of the empty coalition");
  return sorted_blocks(peel(target));
}

Partition solve_rsp(const Instance& inst, Coalition s) {
  if (s.empty()) throw DomainError("cannot plan for the empty coalition");
  const int n = inst.player_count();
  if (n > Coalition::kMaxPlayers)
    throw ScaleLimitError("exact plan solver supports at most " +
                          std::to_string(Coalition::kMaxPlayers) + " players");
  if (Coalition::grand(n).mask() < s.mask()) throw DomainError("coalition outside this instance");

  CharTable memo(n);
  auto block_cost = [&](Coalition b) -> double {
    if (!b.subset_of(s)) return kInf;
    return char_value_feasible(inst, b, memo);
  };
  PartitionTable table(n, inst.capacity(), block_cost);

  Partition out;
  out.cost = table.cost(s);
  for (Coalition b : table.blocks(s)) out.routes.push_back(solve_tsppd(inst, b));
  return out;
}

bool is_profitable_route(const Instance& inst, Coalition s) {
  if (!is_feasible(s, inst.capacity()))
    throw DomainError("profitability is defined for feasible coalitions only");
  if (s.cardinality() == 1) return true;
  const double whole = solve_tsppd(inst, s).cost;
  const std::uint32_t low = s.mask() & ~(s.mask() - 1u);
  const std::uint32_t rest = s.mask() ^ low;
  // Splits enumerate the part containing the lowest member.
  for (std::uint32_t sub = rest & (rest - 1u);; sub = (sub - 1u) & rest) {
    const Coalition s1(sub | low);
    const Coalition s2(s.mask() ^ s1.mask());
    if (!s2.empty()) {
      if (solve_tsppd(inst, s1).cost + solve_tsppd(inst, s2).cost < whole) return false;
    }
    if (sub == 0) break;
  }
  return true;
}

}  // namespace ridealloc
