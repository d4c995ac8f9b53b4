#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "ridealloc/game.hpp"
#include "ridealloc/nucleolus.hpp"
#include "ridealloc/report.hpp"
#include "ridealloc/rsp.hpp"

namespace {

using namespace ridealloc;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool looks_like_json(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] == '{';
}

struct LoadedGame {
  std::unique_ptr<Game> game;
  std::string digest;
};

LoadedGame load_game(const std::string& path, int capacity_flag) {
  const std::string text = read_file(path);
  LoadedGame out;
  if (looks_like_json(text)) {
    CharTableInput input = parse_char_table_text(text);
    out.digest = report::digest_hex(serialize_char_table(input));
    out.game = std::make_unique<TableGame>(std::move(input), capacity_flag);
  } else {
    Instance inst = parse_instance_text(text);
    if (capacity_flag > 0) inst = inst.with_capacity(capacity_flag);
    out.digest = report::digest_hex(serialize_instance(inst));
    out.game = std::make_unique<RouteGame>(std::move(inst));
  }
  return out;
}

VecX parse_reference(const std::string& path, Index n) {
  nlohmann::json doc = nlohmann::json::parse(read_file(path));
  const nlohmann::json& arr = doc.is_array() ? doc : doc.at("allocation");
  if (!arr.is_array() || static_cast<Index>(arr.size()) != n)
    throw ParseError("reference allocation must list " + std::to_string(n) + " values");
  VecX y(n);
  for (Index i = 0; i < n; ++i) y(i) = arr[i].get<double>();
  return y;
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ParseError("cannot write " + out_path);
  out << text;
}

std::string stop_label(const Instance& inst, int node) {
  const int n = inst.player_count();
  if (node <= n) return std::to_string(node - 1 + inst.id_base());
  return std::to_string(node - n - 1 + inst.id_base()) + "'";
}

int run_solve_rsp(const std::string& path, int capacity_flag, const std::string& out_path) {
  const std::string text = read_file(path);
  if (looks_like_json(text)) throw ParseError("solve-rsp expects a coordinate instance");
  Instance inst = parse_instance_text(text);
  if (capacity_flag > 0) inst = inst.with_capacity(capacity_flag);

  const Partition plan = solve_rsp(inst, Coalition::grand(inst.player_count()));
  std::string json = "{\n";
  json += "  \"instance_digest\": \"" + report::digest_hex(serialize_instance(inst)) + "\",\n";
  json += "  \"capacity\": " + std::to_string(inst.capacity()) + ",\n";
  char cost_buf[40];
  std::snprintf(cost_buf, sizeof cost_buf, "%.17g", plan.cost);
  json += "  \"total_cost\": " + std::string(cost_buf) + ",\n";
  json += "  \"blocks\": [";
  for (std::size_t i = 0; i < plan.routes.size(); ++i) {
    const Route& r = plan.routes[i];
    if (i) json += ",";
    json += "\n    {\"members\": [";
    const auto members = r.covered.members();
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (j) json += ", ";
      json += std::to_string(members[j] + inst.id_base());
    }
    json += "], \"driver\": " + std::to_string(r.driver + inst.id_base()) + ", \"stops\": [";
    for (std::size_t j = 0; j < r.stops.size(); ++j) {
      if (j) json += ", ";
      json += "\"" + stop_label(inst, r.stops[j]) + "\"";
    }
    std::snprintf(cost_buf, sizeof cost_buf, "%.17g", r.cost);
    json += "], \"cost\": " + std::string(cost_buf) + "}";
  }
  json += "\n  ]\n}\n";
  write_output(out_path, json);
  return 0;
}

int run_nucleolus(const std::string& path, const std::string& mode_name, int capacity_flag,
                  const std::string& fixation_name, const std::string& reference_path,
                  const std::string& out_path, const std::string& format_name) {
  LoadedGame loaded = load_game(path, capacity_flag);

  nucleolus::Mode mode = nucleolus::Mode::exact;
  if (mode_name == "approx" || mode_name == "approximate")
    mode = nucleolus::Mode::approximate;
  else if (mode_name == "brute")
    mode = nucleolus::Mode::brute;
  else if (mode_name != "exact")
    throw ParseError("unknown mode \"" + mode_name + "\"");

  nucleolus::RunOptions options;
  if (fixation_name == "dual")
    options.fixation = nucleolus::FixationRule::dual;
  else if (fixation_name != "safe")
    throw ParseError("unknown fixation rule \"" + fixation_name + "\"");

  const auto start = std::chrono::steady_clock::now();
  const nucleolus::Result result = nucleolus::run(*loaded.game, mode, options);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  report::RunReport rep =
      report::make_report(result, loaded.digest, loaded.game->id_base(), seconds);
  if (!reference_path.empty()) {
    const VecX ref = parse_reference(reference_path, loaded.game->player_count());
    rep.solution_path = report::solution_path(result.events, Allocation{ref});
  }
  const auto format =
      format_name == "csv" ? report::Format::csv_summary : report::Format::json;
  write_output(out_path, report::emit(rep, format));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cost allocation for cooperative ridesharing games"};
  app.require_subcommand(1);

  std::string rsp_file, rsp_out;
  int rsp_capacity = 0;
  auto* rsp_cmd = app.add_subcommand("solve-rsp", "Optimal ridesharing plan for an instance");
  rsp_cmd->add_option("instance", rsp_file, "coordinate instance file")->required();
  rsp_cmd->add_option("--capacity", rsp_capacity, "override the instance capacity");
  rsp_cmd->add_option("--out", rsp_out, "write the plan to a file instead of stdout");

  std::string nuc_file, nuc_mode = "exact", nuc_fixation = "safe", nuc_reference, nuc_out,
              nuc_format = "json";
  int nuc_capacity = 0;
  auto* nuc_cmd = app.add_subcommand("nucleolus", "Nucleolus of the induced cost game");
  nuc_cmd->add_option("input", nuc_file, "coordinate instance or characteristic-table JSON")
      ->required();
  nuc_cmd->add_option("--mode", nuc_mode, "exact | approx | brute (default exact)");
  nuc_cmd->add_option("--capacity", nuc_capacity,
                      "vehicle capacity (overrides instance files; tables default to n)");
  nuc_cmd->add_option("--fixation", nuc_fixation, "safe | dual (default safe)");
  nuc_cmd->add_option("--reference", nuc_reference,
                      "allocation JSON; adds the per-iteration distance series");
  nuc_cmd->add_option("--out", nuc_out, "write the report to a file instead of stdout");
  nuc_cmd->add_option("--format", nuc_format, "json | csv (default json)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (rsp_cmd->parsed()) return run_solve_rsp(rsp_file, rsp_capacity, rsp_out);
    return run_nucleolus(nuc_file, nuc_mode, nuc_capacity, nuc_fixation, nuc_reference, nuc_out,
                         nuc_format);
  } catch (const ridealloc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ridealloc::ScaleLimitError& e) {
    std::cerr << "scale limit: " << e.what() << "\n";
    return 3;
  } catch (const ridealloc::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const ridealloc::DomainError& e) {
    std::cerr << "invalid request: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
