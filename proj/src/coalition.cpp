#include "ridealloc/coalition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ridealloc {

std::vector<int> Coalition::members() const {
  std::vector<int> out;
  out.reserve(cardinality());
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

std::string Coalition::to_string(int id_base) const {
  std::string out = "{";
  bool first = true;
  for (int p : members()) {
    if (!first) out += ",";
    out += std::to_string(p + id_base);
    first = false;
  }
  return out + "}";
}

CharTable::CharTable(int n) : n_(n) {
  if (n < 1 || n > Coalition::kMaxPlayers)
    throw ScaleLimitError("player count " + std::to_string(n) + " outside supported range 1.." +
                          std::to_string(Coalition::kMaxPlayers));
  values_.assign(std::size_t(1) << n, std::numeric_limits<double>::quiet_NaN());
}

bool CharTable::has(Coalition s) const {
  return !s.empty() && s.mask() < values_.size() && !std::isnan(values_[s.mask()]);
}

double CharTable::at(Coalition s) const {
  if (s.empty()) throw DomainError("characteristic value requested for the empty coalition");
  if (s.mask() >= values_.size() || std::isnan(values_[s.mask()]))
    throw DomainError("characteristic value undefined for coalition " + s.to_string());
  return values_[s.mask()];
}

void CharTable::set(Coalition s, double cost) {
  if (s.empty()) throw DomainError("cannot assign a cost to the empty coalition");
  if (s.mask() >= values_.size()) throw DomainError("coalition outside this game");
  values_[s.mask()] = cost;
}

bool CharTable::complete() const {
  for (std::size_t m = 1; m < values_.size(); ++m)
    if (std::isnan(values_[m])) return false;
  return true;
}

std::vector<Coalition> CharTable::missing() const {
  std::vector<Coalition> out;
  for (std::size_t m = 1; m < values_.size(); ++m)
    if (std::isnan(values_[m])) out.push_back(Coalition(std::uint32_t(m)));
  return out;
}

bool is_imputation(const Allocation& a, double grand_cost, double eps) {
  return std::abs(a.total() - grand_cost) <= eps * (1.0 + std::abs(grand_cost));
}

double excess(const CharTable& c, Coalition s, const Allocation& y) {
  double paid = 0;
  for (int p : s.members()) paid += y.y[p];
  return c.at(s) - paid;
}

ExcessVector excess_vector(const CharTable& c, const Allocation& y) {
  const int n = c.player_count();
  if (y.size() != n) throw DomainError("allocation length does not match the game");
  if (!c.complete()) throw DomainError("characteristic table incomplete");
  const std::uint32_t grand = Coalition::grand(n).mask();
  ExcessVector out;
  out.reserve((std::size_t(1) << n) - 2);
  for (std::uint32_t m = 1; m < grand; ++m) {
    Coalition s(m);
    out.push_back({s, excess(c, s, y)});
  }
  std::sort(out.begin(), out.end(), [](const ExcessEntry& a, const ExcessEntry& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.coalition.mask() < b.coalition.mask();
  });
  return out;
}

Ordering lex_compare(const ExcessVector& a, const ExcessVector& b) {
  if (a.size() != b.size()) throw DomainError("excess vectors of unequal length");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].value < b[i].value) return Ordering::less;
    if (a[i].value > b[i].value) return Ordering::greater;
  }
  return Ordering::equal;
}

bool is_feasible(Coalition s, int capacity) {
  const int k = s.cardinality();
  return k >= 1 && k <= capacity;
}

bool is_profitable_coalition(const CharTable& c, Coalition s) {
  double solo = 0;
  for (int p : s.members()) solo += c.at(Coalition::singleton(p));
  return solo >= c.at(s);
}

}  // namespace ridealloc
