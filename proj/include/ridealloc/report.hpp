#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ridealloc/nucleolus.hpp"

namespace ridealloc::report {

enum class Format { json, csv_summary };

/// Everything a run emits: the allocation, the per-stage trail, row-count
/// economy, and (optionally) the distance-to-reference series.
struct RunReport {
  std::string instance_digest;
  std::string mode;
  int id_base = 0;
  VecX allocation;
  double grand_cost = 0;
  std::vector<nucleolus::StageRecord> stages;
  long generated_count = 0;
  long total_proper_coalitions = 0;
  double fraction = 0;  // generated_count / total_proper_coalitions
  double duration_seconds = 0;
  std::vector<std::pair<int, double>> solution_path;  // empty = omitted
};

RunReport make_report(const nucleolus::Result& result, std::string_view digest, int id_base,
                      double duration_seconds);

/// Euclidean distance from each master-solve incumbent to a reference
/// allocation, one entry per master solve.
std::vector<std::pair<int, double>> solution_path(const std::vector<nucleolus::IterationEvent>& events,
                                                  const Allocation& reference);

/// Deterministic serialization: stable field order, floats at 17 significant
/// digits, byte-identical for identical reports.
std::string emit(const RunReport& report, Format format);

/// FNV-1a hash of a canonical input text, as 16 hex digits.
std::string digest_hex(std::string_view canonical);

const char* mode_name(nucleolus::Mode mode);

}  // namespace ridealloc::report
