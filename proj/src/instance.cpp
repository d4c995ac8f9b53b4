#include "ridealloc/instance.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <set>
#include <sstream>

namespace ridealloc {
namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Instance Instance::from_coordinates(std::vector<PlayerSpec> players, int capacity, int id_base) {
  if (players.empty()) throw DomainError("instance needs at least one player");
  if (capacity < 1) throw DomainError("capacity must be at least 1");
  Instance inst;
  inst.n_ = static_cast<int>(players.size());
  inst.capacity_ = capacity;
  inst.id_base_ = id_base;
  inst.players_ = std::move(players);

  const int nodes = 2 * inst.n_ + 1;
  inst.cost_ = MatX::Zero(nodes, nodes);
  auto point_of = [&](int node) -> const Point& {
    return node <= inst.n_ ? inst.players_[node - 1].origin
                           : inst.players_[node - 1 - inst.n_].destination;
  };
  for (int a = 1; a < nodes; ++a)
    for (int b = 1; b < nodes; ++b)
      if (a != b) inst.cost_(a, b) = (point_of(a) - point_of(b)).norm();
  return inst;
}

Instance Instance::from_cost_matrix(int n, int capacity, MatX cost) {
  if (n < 1) throw DomainError("instance needs at least one player");
  if (capacity < 1) throw DomainError("capacity must be at least 1");
  const int nodes = 2 * n + 1;
  if (cost.rows() != nodes || cost.cols() != nodes)
    throw DomainError("cost matrix must be (2n+1)x(2n+1)");
  for (int a = 0; a < nodes; ++a) {
    if (cost(a, a) != 0.0) throw DomainError("cost matrix diagonal must be zero");
    if (cost(0, a) != 0.0 || cost(a, 0) != 0.0)
      throw DomainError("depot row and column must be zero");
    for (int b = 0; b < nodes; ++b)
      if (!(cost(a, b) >= 0.0)) throw DomainError("cost matrix entries must be nonnegative");
  }
  Instance inst;
  inst.n_ = n;
  inst.capacity_ = capacity;
  inst.cost_ = std::move(cost);
  return inst;
}

Instance Instance::with_capacity(int capacity) const {
  if (capacity < 1) throw DomainError("capacity must be at least 1");
  Instance copy = *this;
  copy.capacity_ = capacity;
  return copy;
}

namespace {

// Ids in files may be 0-based or 1-based; both must be dense.
int detect_id_base(const std::vector<int>& ids, int n) {
  std::set<int> seen(ids.begin(), ids.end());
  if (static_cast<int>(seen.size()) != n) throw ParseError("duplicate id");
  const int lo = *seen.begin(), hi = *seen.rbegin();
  if (lo == 0 && hi == n - 1) return 0;
  if (lo == 1 && hi == n) return 1;
  throw ParseError("ids must be dense, 0-based or 1-based");
}

}  // namespace

Instance parse_instance(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError("missing header line", line_no);
  int n = 0, capacity = 0;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> n >> capacity) || (hs >> extra))
      throw ParseError("header must be \"n Q\"", line_no);
    if (n < 1) throw ParseError("player count must be positive", line_no);
    if (capacity < 1) throw ParseError("capacity must be at least 1", line_no);
  }

  std::vector<int> ids;
  std::vector<PlayerSpec> rows;
  for (int i = 0; i < n; ++i) {
    if (!next_line()) throw ParseError("expected " + std::to_string(n) + " player rows", line_no);
    std::istringstream ls(line);
    PlayerSpec p;
    std::string extra;
    if (!(ls >> p.id >> p.origin.x() >> p.origin.y() >> p.destination.x() >> p.destination.y()) ||
        (ls >> extra))
      throw ParseError("malformed player row (want \"id xo yo xd yd\")", line_no);
    if (!p.origin.allFinite() || !p.destination.allFinite())
      throw ParseError("non-finite coordinate", line_no);
    ids.push_back(p.id);
    rows.push_back(p);
  }
  if (next_line()) throw ParseError("unexpected trailing content", line_no);

  int base;
  try {
    base = detect_id_base(ids, n);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line_no);
  }
  std::sort(rows.begin(), rows.end(),
            [](const PlayerSpec& a, const PlayerSpec& b) { return a.id < b.id; });
  for (int i = 0; i < n; ++i) rows[i].id = i;
  return Instance::from_coordinates(std::move(rows), capacity, base);
}

Instance parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

std::string serialize_instance(const Instance& inst) {
  if (!inst.has_coordinates())
    throw DomainError("cost-matrix instances have no coordinate form");
  std::string out =
      std::to_string(inst.player_count()) + " " + std::to_string(inst.capacity()) + "\n";
  for (const PlayerSpec& p : inst.players()) {
    out += std::to_string(p.id + inst.id_base());
    for (double v : {p.origin.x(), p.origin.y(), p.destination.x(), p.destination.y()})
      out += " " + format_double(v);
    out += "\n";
  }
  return out;
}

CharTableInput parse_char_table(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("coalitions"))
    throw ParseError("expected object with \"n\" and \"coalitions\"");
  if (!doc["n"].is_number_integer()) throw ParseError("\"n\" must be an integer");
  const int n = doc["n"].get<int>();
  if (n < 1) throw ParseError("player count must be positive");
  if (n > Coalition::kMaxPlayers)
    throw ParseError("player count " + std::to_string(n) + " exceeds supported scale " +
                     std::to_string(Coalition::kMaxPlayers));
  if (!doc["coalitions"].is_array()) throw ParseError("\"coalitions\" must be an array");

  // Members may be written 0-based or 1-based; a value of n forces 1-based,
  // a value of 0 forces 0-based.
  bool saw_zero = false, saw_n = false;
  for (const auto& entry : doc["coalitions"]) {
    if (!entry.is_object() || !entry.contains("members") || !entry.contains("cost") ||
        !entry["members"].is_array())
      throw ParseError("each coalition needs \"members\" and \"cost\"");
    for (const auto& m : entry["members"]) {
      if (!m.is_number_integer()) throw ParseError("coalition members must be integers");
      const int v = m.get<int>();
      if (v == 0) saw_zero = true;
      if (v == n) saw_n = true;
    }
  }
  if (saw_zero && saw_n) throw ParseError("mixed 0-based and 1-based member ids");
  const int base = saw_n ? 1 : 0;

  CharTableInput out{n, base, CharTable(n)};
  std::vector<bool> assigned(std::size_t(1) << n, false);
  std::vector<std::string> offenders;
  for (const auto& entry : doc["coalitions"]) {
    Coalition s;
    for (const auto& m : entry["members"]) {
      const int v = m.get<int>() - base;
      if (v < 0 || v >= n)
        offenders.push_back("out-of-range member " + std::to_string(m.get<int>()));
      else
        s = s.with(v);
    }
    if (s.empty()) {
      offenders.push_back("empty coalition entry");
      continue;
    }
    if (!entry["cost"].is_number()) {
      offenders.push_back("non-numeric cost for " + s.to_string(base));
      continue;
    }
    const double cost = entry["cost"].get<double>();
    if (!(cost >= 0.0) || !std::isfinite(cost)) {
      offenders.push_back("negative cost for " + s.to_string(base));
      continue;
    }
    if (assigned[s.mask()]) {
      offenders.push_back("duplicate coalition " + s.to_string(base));
      continue;
    }
    assigned[s.mask()] = true;
    out.table.set(s, cost);
  }
  for (Coalition s : out.table.missing())
    offenders.push_back("missing coalition " + s.to_string(base));
  if (!offenders.empty()) {
    std::string msg = "characteristic table invalid:";
    for (const auto& o : offenders) msg += " " + o + ";";
    msg.pop_back();
    throw ParseError(msg);
  }
  return out;
}

CharTableInput parse_char_table_text(const std::string& text) {
  std::istringstream in(text);
  return parse_char_table(in);
}

std::string serialize_char_table(const CharTableInput& input) {
  std::string out = "{\"n\": " + std::to_string(input.n) + ", \"coalitions\": [";
  const std::uint32_t end = Coalition::grand(input.n).mask();
  for (std::uint32_t m = 1; m <= end; ++m) {
    Coalition s(m);
    out += "{\"members\": [";
    bool first = true;
    for (int p : s.members()) {
      if (!first) out += ", ";
      out += std::to_string(p + input.id_base);
      first = false;
    }
    out += "], \"cost\": " + format_double(input.table.at(s)) + "}";
    if (m != end) out += ", ";
  }
  return out + "]}";
}

}  // namespace ridealloc
