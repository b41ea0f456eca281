#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vlcwdm/allocator.hpp"

namespace vlcwdm {

enum class AllocatorMode { optimal_surrogate, optimal_true_sinr, greedy, random };

const char* to_string(AllocatorMode mode);
std::optional<AllocatorMode> allocator_mode_from_string(std::string_view name);

struct ScenarioSpec {
  RoomConfig room = RoomConfig::default_room();
  ReceiverModel receiver;
  std::vector<int> user_counts = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  int trials_per_point = 5;
  std::uint64_t seed = 1;
  AllocatorMode allocator_mode = AllocatorMode::optimal_surrogate;
  ObjectiveWeights weights;
  int threads = 0; // 0 = hardware concurrency; trials are independent

  void validate() const;
};

struct TrialRecord {
  int n_users = 0;
  int trial_index = 0;
  std::uint64_t seed = 0;
  std::vector<UserPosition> users;
  Assignment assignment;
  std::vector<LinkReport> reports;
  double surrogate_objective = 0.0;
  double throughput_bps = 0.0;
  double mean_sinr_db_all = 0.0;    // every user, rate-excluded included
  double mean_sinr_db_served = 0.0; // users with nonzero rate; 0 when none
  std::array<int, kNumWavelengths> wavelength_usage{};
};

struct TrendPoint {
  int n_users = 0;
  double mean_throughput_bps = 0.0;
  double mean_sinr_db_all = 0.0;
  double mean_sinr_db_served = 0.0;
  std::vector<TrialRecord> trials;
};

struct TrendResult {
  std::uint64_t seed = 0;
  AllocatorMode allocator_mode = AllocatorMode::optimal_surrogate;
  std::vector<TrendPoint> points;
};

std::uint64_t splitmix64(std::uint64_t x);

// Seed for one trial: splitmix64 chain over (master, n, trial). Any single
// trial is re-runnable in isolation from these three values.
std::uint64_t trial_seed(std::uint64_t master_seed, int n_users, int trial_index);

// n i.i.d. uniform positions on the floor rectangle; deterministic per seed.
std::vector<UserPosition> generate_users(const RoomConfig& room, int n, std::uint64_t seed);

TrialRecord run_trial(const ScenarioSpec& spec, int n_users, std::uint64_t seed);

// Trials run per (count, trial-index) with derived seeds; aggregation order is
// fixed, so results are independent of any internal parallelism.
TrendResult run_trend(const ScenarioSpec& spec);

std::array<int, kNumWavelengths> wavelength_usage(const Assignment& assignment);

} // namespace vlcwdm
