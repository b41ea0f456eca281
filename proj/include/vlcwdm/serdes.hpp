#pragma once

#include <string>
#include <vector>

#include "vlcwdm/allocator.hpp"
#include "vlcwdm/scenario.hpp"

namespace vlcwdm {

// decimal text that parses back to the exact same double ("%.17g")
std::string format_g17(double v);

// "5" -> {5}, "1..10" -> {1,...,10}, "2,4,6" -> {2,4,6}
std::vector<int> parse_counts(const std::string& text);

// Config document: one JSON object with optional sections "room", "receiver",
// "scenario". An empty document resolves to the built-in defaults. Unknown
// keys are rejected so typos cannot silently fall back to defaults.
ScenarioSpec load_config(const std::string& json_text);
ScenarioSpec load_config_file(const std::string& path); // io_error if unreadable
std::string config_to_json(const ScenarioSpec& spec);   // resolved, round-trips

// Per-user link table for a realized assignment.
std::string link_reports_csv(const std::vector<UserPosition>& users,
                             const Assignment& assignment,
                             const std::vector<LinkReport>& reports);
std::string link_reports_json(const std::vector<UserPosition>& users,
                              const Assignment& assignment,
                              const std::vector<LinkReport>& reports);

// Standalone (a, w)-pair sweep for one position (no interferers).
struct ChannelProbe {
  int luminaire = 0;
  Wavelength wavelength = Wavelength::Red;
  LinkReport link;
};
std::string channel_table_csv(const std::vector<ChannelProbe>& rows);
std::string channel_table_json(const UserPosition& user, const std::vector<ChannelProbe>& rows);

// Solution files: assignment, objective, sum SINR, node counts. Wall time is
// deliberately left out so identical runs produce identical bytes.
std::string solution_to_json(const AllocationSolution& solution);

// Instance files: dimensions, weights, and the S/N cubes; the interference
// table is derived (inflicted(u,a,u2,a2,w) = S[u][a2][w] for a2 != a).
std::string instance_to_json(const AllocationInstance& inst);
AllocationInstance instance_from_json(const std::string& json_text);

// One row per trial: n, trial, seed, throughput, both SINR means, and the
// per-wavelength user counts.
std::string trend_to_csv(const TrendResult& trend);
std::string trend_to_json(const TrendResult& trend);

struct TrendCsvRow {
  int n_users = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  double throughput_bps = 0.0;
  double mean_sinr_db_all = 0.0;
  double mean_sinr_db_served = 0.0;
  std::array<int, kNumWavelengths> usage{};
};
std::vector<TrendCsvRow> parse_trend_csv(const std::string& csv_text);
std::string trend_rows_to_csv(const std::vector<TrendCsvRow>& rows);

// Two-column plot data (n, mean) for each curve.
std::string gnuplot_throughput(const TrendResult& trend); // Gb/s
std::string gnuplot_sinr_db(const TrendResult& trend);
std::string gnuplot_sinr_db_served(const TrendResult& trend);

// Positions file for the allocate subcommand: JSON array of [x, y] pairs or an
// object {"users": [[x, y], ...]}.
std::vector<UserPosition> users_from_json(const std::string& json_text);

void write_file(const std::string& path, const std::string& content); // io_error on failure
std::string read_file(const std::string& path);                       // io_error on failure

} // namespace vlcwdm
