#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "vlcwdm/linkbudget.hpp"
#include "vlcwdm/scenario.hpp"

namespace vlcwdm {

const char* to_string(AllocatorMode mode) {
  switch (mode) {
    case AllocatorMode::optimal_surrogate: return "optimal_surrogate";
    case AllocatorMode::optimal_true_sinr: return "optimal_true_sinr";
    case AllocatorMode::greedy: return "greedy";
    case AllocatorMode::random: return "random";
  }
  throw std::invalid_argument("unknown allocator mode");
}

std::optional<AllocatorMode> allocator_mode_from_string(std::string_view name) {
  if (name == "optimal_surrogate") return AllocatorMode::optimal_surrogate;
  if (name == "optimal_true_sinr") return AllocatorMode::optimal_true_sinr;
  if (name == "greedy") return AllocatorMode::greedy;
  if (name == "random") return AllocatorMode::random;
  return std::nullopt;
}

void ScenarioSpec::validate() const {
  room.validate();
  receiver.validate();
  if (user_counts.empty()) throw std::invalid_argument("user_counts must not be empty");
  for (int n : user_counts)
    if (n < 1) throw std::invalid_argument("user counts must be at least 1");
  if (trials_per_point < 1) throw std::invalid_argument("trials_per_point must be at least 1");
  if (threads < 0) throw std::invalid_argument("threads must be non-negative");
  if (!(weights.alpha_s >= 0.0) || !(weights.alpha_n >= 0.0) || !(weights.alpha_i >= 0.0))
    throw std::invalid_argument("objective weights must be non-negative and finite");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master_seed, int n_users, int trial_index) {
  std::uint64_t s = splitmix64(master_seed);
  s = splitmix64(s ^ static_cast<std::uint64_t>(n_users));
  return splitmix64(s ^ static_cast<std::uint64_t>(trial_index));
}

std::vector<UserPosition> generate_users(const RoomConfig& room, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("need at least one user");
  std::mt19937_64 rng(seed);
  auto uniform01 = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
  std::vector<UserPosition> users;
  users.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    UserPosition u;
    u.x = room.width * uniform01();
    u.y = room.length * uniform01();
    users.push_back(u);
  }
  return users;
}

std::array<int, kNumWavelengths> wavelength_usage(const Assignment& assignment) {
  std::array<int, kNumWavelengths> usage{};
  for (const PairChoice& choice : assignment)
    ++usage[static_cast<size_t>(choice.wavelength)];
  return usage;
}

TrialRecord run_trial(const ScenarioSpec& spec, int n_users, std::uint64_t seed) {
  TrialRecord rec;
  rec.n_users = n_users;
  rec.seed = seed;
  rec.users = generate_users(spec.room, n_users, seed);

  const AllocationInstance inst =
      build_instance(spec.room, rec.users, spec.receiver, spec.weights);
  AllocationSolution sol;
  switch (spec.allocator_mode) {
    case AllocatorMode::optimal_surrogate:
      sol = solve_bnb(inst, ObjectiveMode::surrogate);
      break;
    case AllocatorMode::optimal_true_sinr:
      sol = solve_bnb(inst, ObjectiveMode::true_sinr);
      break;
    case AllocatorMode::greedy:
      sol = baseline_greedy(inst);
      break;
    case AllocatorMode::random:
      // decouple the assignment stream from the position stream
      sol = baseline_random(inst, splitmix64(seed));
      break;
  }
  rec.assignment = sol.assignment;
  rec.surrogate_objective = sol.surrogate_objective;
  rec.reports = sinr(rec.users, rec.assignment, spec.room, spec.receiver);

  double sum_db = 0.0, sum_db_served = 0.0;
  int served = 0;
  for (const LinkReport& link : rec.reports) {
    rec.throughput_bps += link.achievable_rate;
    sum_db += link.sinr_db;
    if (link.achievable_rate > 0.0) {
      sum_db_served += link.sinr_db;
      ++served;
    }
  }
  rec.mean_sinr_db_all = sum_db / n_users;
  rec.mean_sinr_db_served = served > 0 ? sum_db_served / served : 0.0;
  rec.wavelength_usage = wavelength_usage(rec.assignment);
  return rec;
}

TrendResult run_trend(const ScenarioSpec& spec) {
  spec.validate();

  struct Job {
    int n_users, trial_index;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (int n : spec.user_counts)
    for (int t = 0; t < spec.trials_per_point; ++t)
      jobs.push_back({n, t, trial_seed(spec.seed, n, t)});

  std::vector<TrialRecord> slots(jobs.size());
  auto run_job = [&](size_t i) {
    slots[i] = run_trial(spec, jobs[i].n_users, jobs[i].seed);
    slots[i].trial_index = jobs[i].trial_index;
  };

  unsigned n_threads = spec.threads > 0 ? static_cast<unsigned>(spec.threads)
                                        : std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = 1;
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(jobs.size()));

  if (n_threads <= 1) {
    for (size_t i = 0; i < jobs.size(); ++i) run_job(i);
  } else {
    // each slot is written by exactly one worker; aggregation below is
    // sequential, so the schedule cannot affect the result
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t)
      workers.emplace_back([&] {
        for (;;) {
          const size_t i = next.fetch_add(1);
          if (i >= jobs.size()) return;
          try {
            run_job(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            return;
          }
        }
      });
    for (std::thread& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
  }

  TrendResult result;
  result.seed = spec.seed;
  result.allocator_mode = spec.allocator_mode;
  size_t cursor = 0;
  for (int n : spec.user_counts) {
    TrendPoint point;
    point.n_users = n;
    for (int t = 0; t < spec.trials_per_point; ++t)
      point.trials.push_back(std::move(slots[cursor++]));
    for (const TrialRecord& rec : point.trials) {
      point.mean_throughput_bps += rec.throughput_bps;
      point.mean_sinr_db_all += rec.mean_sinr_db_all;
      point.mean_sinr_db_served += rec.mean_sinr_db_served;
    }
    point.mean_throughput_bps /= spec.trials_per_point;
    point.mean_sinr_db_all /= spec.trials_per_point;
    point.mean_sinr_db_served /= spec.trials_per_point;
    result.points.push_back(std::move(point));
  }
  return result;
}

} // namespace vlcwdm
