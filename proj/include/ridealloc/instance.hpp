#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ridealloc/coalition.hpp"
#include "ridealloc/types.hpp"

namespace ridealloc {

/// One ridesharing participant: an origin and a destination in the plane.
/// Coincident origin/destination is allowed (a zero-cost leg).
struct PlayerSpec {
  int id = 0;  // dense internal id, 0..n-1
  Point origin = Point::Zero();
  Point destination = Point::Zero();
};

/// A routing instance: players, vehicle capacity Q (riders per vehicle,
/// driver included) and the travel-cost matrix over the node set
/// {dummy depot 0} u {origins 1..n} u {destinations n+1..2n}. Depot edges
/// are free. Pure value type; safe to share read-only once built.
class Instance {
 public:
  static Instance from_coordinates(std::vector<PlayerSpec> players, int capacity,
                                   int id_base = 0);
  /// Cost-matrix instance with no coordinates (synthetic games). The matrix
  /// must be (2n+1)x(2n+1), nonnegative, zero on the diagonal and on the
  /// depot row/column.
  static Instance from_cost_matrix(int n, int capacity, MatX cost);

  int player_count() const { return n_; }
  int capacity() const { return capacity_; }
  /// 0 or 1: the id numbering used by the source file, for display only.
  int id_base() const { return id_base_; }
  bool has_coordinates() const { return !players_.empty(); }
  const std::vector<PlayerSpec>& players() const { return players_; }

  const MatX& cost() const { return cost_; }
  double edge(int a, int b) const { return cost_(a, b); }
  int origin_node(int player) const { return player + 1; }
  int destination_node(int player) const { return player + 1 + n_; }

  /// Capacity override (the file value is a default, not a commitment).
  Instance with_capacity(int capacity) const;

 private:
  Instance() = default;
  int n_ = 0;
  int capacity_ = 0;
  int id_base_ = 0;
  std::vector<PlayerSpec> players_;
  MatX cost_;
};

/// A characteristic function given directly as a table, with the numbering
/// base it was written in.
struct CharTableInput {
  int n = 0;
  int id_base = 0;
  CharTable table;
};

/// Coordinate format: first line "n Q", then n lines "id xo yo xd yd".
/// Ids must be dense, either 0-based or 1-based.
Instance parse_instance(std::istream& in);
Instance parse_instance_text(const std::string& text);

/// Canonical text form; parse(serialize(i)) reproduces coordinates bit-exactly.
std::string serialize_instance(const Instance& inst);

/// JSON form: {"n": int, "coalitions": [{"members": [ints], "cost": number}, ...]}
/// covering every non-empty coalition exactly once.
CharTableInput parse_char_table(std::istream& in);
CharTableInput parse_char_table_text(const std::string& text);

/// Canonical JSON form (members ascending, coalitions ascending by mask).
std::string serialize_char_table(const CharTableInput& input);

}  // namespace ridealloc
