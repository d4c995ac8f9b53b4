#include "ridealloc/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

namespace ridealloc::report {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string members_json(Coalition s, int id_base) {
  std::string out = "[";
  bool first = true;
  for (int p : s.members()) {
    if (!first) out += ",";
    out += std::to_string(p + id_base);
    first = false;
  }
  return out + "]";
}

std::string coalition_list_json(const std::vector<Coalition>& list, int id_base) {
  std::string out = "[";
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) out += ",";
    out += members_json(list[i], id_base);
  }
  return out + "]";
}

}  // namespace

const char* mode_name(nucleolus::Mode mode) {
  switch (mode) {
    case nucleolus::Mode::exact: return "exact";
    case nucleolus::Mode::approximate: return "approximate";
    case nucleolus::Mode::brute: return "brute";
  }
  return "unknown";
}

RunReport make_report(const nucleolus::Result& result, std::string_view digest, int id_base,
                      double duration_seconds) {
  RunReport r;
  r.instance_digest = digest;
  r.mode = mode_name(result.mode);
  r.id_base = id_base;
  r.allocation = result.allocation.y;
  r.grand_cost = result.grand_cost;
  r.stages = result.stages;
  r.generated_count = result.generated_count;
  r.total_proper_coalitions = result.total_proper_coalitions;
  r.fraction = result.total_proper_coalitions > 0
                   ? static_cast<double>(result.generated_count) /
                         static_cast<double>(result.total_proper_coalitions)
                   : 0.0;
  r.duration_seconds = duration_seconds;
  return r;
}

std::vector<std::pair<int, double>> solution_path(
    const std::vector<nucleolus::IterationEvent>& events, const Allocation& reference) {
  std::vector<std::pair<int, double>> out;
  out.reserve(events.size());
  for (const auto& e : events) {
    if (e.incumbent.size() != reference.y.size())
      throw DomainError("reference allocation length does not match the game");
    out.emplace_back(e.iteration, (e.incumbent - reference.y).norm());
  }
  return out;
}

std::string emit(const RunReport& report, Format format) {
  if (format == Format::csv_summary) {
    std::string out = "stage,level,generated,fixed\n";
    for (const auto& st : report.stages) {
      out += std::to_string(st.stage) + "," + num(st.level) + "," +
             std::to_string(st.generated.size()) + "," + std::to_string(st.fixed.size()) + "\n";
    }
    return out;
  }

  std::string out = "{\n";
  out += "  \"instance_digest\": \"" + report.instance_digest + "\",\n";
  out += "  \"mode\": \"" + report.mode + "\",\n";
  out += "  \"allocation\": [";
  for (Index i = 0; i < report.allocation.size(); ++i) {
    if (i) out += ", ";
    out += num(report.allocation(i));
  }
  out += "],\n";
  out += "  \"grand_cost\": " + num(report.grand_cost) + ",\n";
  out += "  \"stages\": [";
  for (std::size_t i = 0; i < report.stages.size(); ++i) {
    const auto& st = report.stages[i];
    if (i) out += ",";
    out += "\n    {\"stage\": " + std::to_string(st.stage) + ", \"level\": " + num(st.level) +
           ", \"generated\": " + coalition_list_json(st.generated, report.id_base) +
           ", \"fixed\": " + coalition_list_json(st.fixed, report.id_base) + "}";
  }
  out += "\n  ],\n";
  out += "  \"generated_count\": " + std::to_string(report.generated_count) + ",\n";
  out += "  \"total_proper_coalitions\": " + std::to_string(report.total_proper_coalitions) +
         ",\n";
  out += "  \"fraction\": " + num(report.fraction) + ",\n";
  out += "  \"duration_seconds\": " + num(report.duration_seconds);
  if (!report.solution_path.empty()) {
    out += ",\n  \"solution_path\": [";
    for (std::size_t i = 0; i < report.solution_path.size(); ++i) {
      if (i) out += ", ";
      out += "[" + std::to_string(report.solution_path[i].first) + ", " +
             num(report.solution_path[i].second) + "]";
    }
    out += "]";
  }
  out += "\n}\n";
  return out;
}

std::string digest_hex(std::string_view canonical) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ridealloc::report
