#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "ridealloc/types.hpp"

namespace ridealloc {

/// A subset of players encoded as a bitmask. Bit i corresponds to the
/// (0-based) player i; at most kMaxPlayers players are supported.
class Coalition {
 public:
  static constexpr int kMaxPlayers = 16;

  constexpr Coalition() = default;
  explicit constexpr Coalition(std::uint32_t mask) : mask_(mask) {}

  static Coalition singleton(int player) { return Coalition(1u << player); }
  static Coalition grand(int n) { return Coalition(n >= 32 ? 0u : (1u << n) - 1u); }
  static Coalition of(std::initializer_list<int> players) {
    std::uint32_t m = 0;
    for (int p : players) m |= 1u << p;
    return Coalition(m);
  }

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int cardinality() const { return std::popcount(mask_); }
  constexpr bool contains(int player) const { return (mask_ >> player) & 1u; }
  constexpr bool subset_of(Coalition other) const { return (mask_ & ~other.mask_) == 0; }

  constexpr Coalition with(int player) const { return Coalition(mask_ | (1u << player)); }
  constexpr Coalition without(int player) const { return Coalition(mask_ & ~(1u << player)); }
  constexpr Coalition united(Coalition o) const { return Coalition(mask_ | o.mask_); }
  constexpr Coalition minus(Coalition o) const { return Coalition(mask_ & ~o.mask_); }
  constexpr Coalition intersected(Coalition o) const { return Coalition(mask_ & o.mask_); }
  constexpr int lowest_member() const { return std::countr_zero(mask_); }

  std::vector<int> members() const;
  /// "{1,3}" with ids offset by `id_base` (display form).
  std::string to_string(int id_base = 0) const;

  friend constexpr auto operator<=>(Coalition, Coalition) = default;

 private:
  std::uint32_t mask_ = 0;
};

/// Dense memo of characteristic-function values c(S) for an n-player game,
/// indexed by coalition bitmask. Unset entries are NaN; c(empty) is 0 and
/// cannot be assigned. Writes of identical values are idempotent; concurrent
/// callers must otherwise serialize.
class CharTable {
 public:
  explicit CharTable(int n);

  int player_count() const { return n_; }
  bool has(Coalition s) const;
  double at(Coalition s) const;  // throws DomainError when unset or s empty
  void set(Coalition s, double cost);
  /// True when every non-empty coalition has a value.
  bool complete() const;
  /// Non-empty coalitions without a value, ascending by mask (for diagnostics).
  std::vector<Coalition> missing() const;

 private:
  int n_;
  std::vector<double> values_;
};

/// Per-player cost vector; the candidate or final allocation of the game.
struct Allocation {
  VecX y;

  double total() const { return y.sum(); }
  Index size() const { return y.size(); }
};

/// True when the allocation distributes exactly the grand-coalition cost.
bool is_imputation(const Allocation& a, double grand_cost, double eps = tol::efficiency);

struct ExcessEntry {
  Coalition coalition;
  double value;
};

/// All proper-coalition excesses sorted non-decreasing; ties break by
/// ascending coalition mask.
using ExcessVector = std::vector<ExcessEntry>;

enum class Ordering { less, equal, greater };

/// e(y, S) = c(S) - sum_{i in S} y_i.
double excess(const CharTable& c, Coalition s, const Allocation& y);

/// The sorted excess vector over all S with empty < S < grand; length 2^n - 2.
ExcessVector excess_vector(const CharTable& c, const Allocation& y);

/// Lexicographic comparison of two excess-value sequences of equal length.
Ordering lex_compare(const ExcessVector& a, const ExcessVector& b);

/// A coalition is feasible when one vehicle can serve it: 1 <= |S| <= Q.
bool is_feasible(Coalition s, int capacity);

/// True iff the members' solo costs sum to at least c(S).
bool is_profitable_coalition(const CharTable& c, Coalition s);

}  // namespace ridealloc
