#include "vlcwdm/allocator.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "vlcwdm/errors.hpp"

namespace vlcwdm {

AllocationInstance build_instance(const RoomConfig& room, const std::vector<UserPosition>& users,
                                  const ReceiverModel& receiver, const ObjectiveWeights& weights) {
  room.validate();
  receiver.validate();
  if (users.empty()) throw std::invalid_argument("build_instance needs at least one user");
  const int n_lum = static_cast<int>(room.luminaires.size());
  const int n = static_cast<int>(users.size());
  if (n > n_lum * kNumWavelengths)
    throw infeasible_error("cannot serve " + std::to_string(n) + " users with " +
                           std::to_string(n_lum * kNumWavelengths) +
                           " (luminaire, wavelength) pairs");

  AllocationInstance inst;
  inst.n_users = n;
  inst.n_luminaires = n_lum;
  inst.weights = weights;
  inst.signal_sq.resize(static_cast<size_t>(n) * n_lum * kNumWavelengths);
  inst.noise_var.resize(inst.signal_sq.size());

  const GainMatrix H = gain_matrix(room, users, receiver);
  for (int u = 0; u < n; ++u) {
    for (int a = 0; a < n_lum; ++a) {
      for (int w = 0; w < kNumWavelengths; ++w) {
        const double p = room.luminaires[a].tx_power[w] * room.power_multiplier;
        const double amp = signal_photocurrent(receiver, p, H[u][a]);
        // baseline background: every other luminaire lights the room on w
        std::vector<bool> carriers(n_lum, false);
        carriers[a] = true;
        const double bg =
            background_current(room, receiver, H[u], static_cast<Wavelength>(w), carriers);
        inst.signal_sq[inst.idx(u, a, w)] = amp * amp;
        inst.noise_var[inst.idx(u, a, w)] =
            noise_variance(receiver, amp, bg, receiver.bandwidth).total;
      }
    }
  }
  return inst;
}

namespace {

void check_assignment_size(const AllocationInstance& inst, const Assignment& assignment) {
  if (static_cast<int>(assignment.size()) != inst.n_users)
    throw std::invalid_argument("assignment covers " + std::to_string(assignment.size()) +
                                " users, instance has " + std::to_string(inst.n_users));
}

} // namespace

double surrogate_objective(const AllocationInstance& inst, const Assignment& assignment) {
  check_assignment_size(inst, assignment);
  // fixed summation order: equal assignments evaluate bit-identically
  double gain = 0.0;
  for (int u = 0; u < inst.n_users; ++u) {
    const int a = assignment[u].luminaire;
    const int w = static_cast<int>(assignment[u].wavelength);
    gain += inst.weights.alpha_s * inst.s(u, a, w) - inst.weights.alpha_n * inst.n(u, a, w);
  }
  double interference = 0.0;
  for (int u = 0; u < inst.n_users; ++u) {
    const int w = static_cast<int>(assignment[u].wavelength);
    for (int u2 = 0; u2 < inst.n_users; ++u2) {
      if (u2 == u || assignment[u2].wavelength != assignment[u].wavelength) continue;
      interference +=
          inst.interference(u, assignment[u].luminaire, u2, assignment[u2].luminaire, w);
    }
  }
  return gain - inst.weights.alpha_i * interference;
}

double instance_sum_sinr(const AllocationInstance& inst, const Assignment& assignment) {
  check_assignment_size(inst, assignment);
  double total = 0.0;
  for (int u = 0; u < inst.n_users; ++u) {
    const int a = assignment[u].luminaire;
    const int w = static_cast<int>(assignment[u].wavelength);
    double interference = 0.0;
    for (int u2 = 0; u2 < inst.n_users; ++u2) {
      if (u2 == u || assignment[u2].wavelength != assignment[u].wavelength) continue;
      interference += inst.interference(u, a, u2, assignment[u2].luminaire, w);
    }
    total += inst.s(u, a, w) / (inst.n(u, a, w) + interference);
  }
  return total;
}

namespace {

void finish_solution(const AllocationInstance& inst, AllocationSolution& sol) {
  validate_assignment(sol.assignment, inst.n_luminaires);
  if (static_cast<int>(sol.assignment.size()) != inst.n_users)
    throw std::logic_error("solver returned a partial assignment");
  sol.surrogate_objective = surrogate_objective(inst, sol.assignment);
  sol.sum_sinr = instance_sum_sinr(inst, sol.assignment);
}

// uniform integer in [0, n) by masked rejection; stable across platforms
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero((n - 1) | 1);
  for (;;) {
    const std::uint64_t r = rng() & mask;
    if (r < n) return r;
  }
}

} // namespace

AllocationSolution baseline_random(const AllocationInstance& inst, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int pairs = inst.pair_count();
  std::vector<int> pool(pairs);
  for (int p = 0; p < pairs; ++p) pool[p] = p;

  AllocationSolution sol;
  sol.assignment.resize(inst.n_users);
  for (int u = 0; u < inst.n_users; ++u) { // partial Fisher-Yates
    const int j = u + static_cast<int>(bounded(rng, static_cast<std::uint64_t>(pairs - u)));
    std::swap(pool[u], pool[j]);
    sol.assignment[u] = {pool[u] / kNumWavelengths,
                         static_cast<Wavelength>(pool[u] % kNumWavelengths)};
  }
  finish_solution(inst, sol);
  return sol;
}

AllocationSolution baseline_greedy(const AllocationInstance& inst) {
  const int n = inst.n_users;
  const int n_lum = inst.n_luminaires;

  std::vector<double> best_score(n, 0.0);
  for (int u = 0; u < n; ++u) {
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < n_lum; ++a)
      for (int w = 0; w < kNumWavelengths; ++w)
        best = std::max(best, inst.weights.alpha_s * inst.s(u, a, w) -
                                  inst.weights.alpha_n * inst.n(u, a, w));
    best_score[u] = best;
  }
  std::vector<int> order(n);
  for (int u = 0; u < n; ++u) order[u] = u;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return best_score[a] > best_score[b]; });

  AllocationSolution sol;
  sol.assignment.assign(n, PairChoice{});
  std::vector<bool> taken(static_cast<size_t>(n_lum) * kNumWavelengths, false);
  std::vector<std::pair<int, int>> placed; // (user, flattened pair)
  placed.reserve(n);

  for (const int u : order) {
    double best = -std::numeric_limits<double>::infinity();
    int best_pair = -1;
    for (int a = 0; a < n_lum; ++a) {
      for (int w = 0; w < kNumWavelengths; ++w) {
        const int pair = a * kNumWavelengths + w;
        if (taken[pair]) continue;
        double marginal = inst.weights.alpha_s * inst.s(u, a, w) -
                          inst.weights.alpha_n * inst.n(u, a, w);
        for (const auto& [u2, pair2] : placed) {
          if (pair2 % kNumWavelengths != w) continue;
          const int a2 = pair2 / kNumWavelengths;
          marginal -= inst.weights.alpha_i *
                      (inst.interference(u, a, u2, a2, w) + inst.interference(u2, a2, u, a, w));
        }
        if (marginal > best) { // first-found keeps the lexicographically smaller pair
          best = marginal;
          best_pair = pair;
        }
      }
    }
    if (best_pair < 0) throw std::logic_error("greedy ran out of pairs");
    taken[best_pair] = true;
    placed.emplace_back(u, best_pair);
    sol.assignment[u] = {best_pair / kNumWavelengths,
                         static_cast<Wavelength>(best_pair % kNumWavelengths)};
  }
  finish_solution(inst, sol);
  return sol;
}

double MilpDescription::objective_coefficient(int u, int a, int w) const {
  return instance.weights.alpha_s * instance.s(u, a, w) -
         instance.weights.alpha_n * instance.n(u, a, w);
}

double MilpDescription::pair_coefficient(int u, int a, int u2, int a2, int w) const {
  return -instance.weights.alpha_i * instance.interference(u, a, u2, a2, w);
}

double MilpDescription::objective_at(const Assignment& assignment) const {
  validate_assignment(assignment, instance.n_luminaires);
  const int n = instance.n_users;
  const int n_lum = instance.n_luminaires;
  double value = 0.0;
  for (int u = 0; u < n; ++u)
    value += objective_coefficient(u, assignment[u].luminaire,
                                   static_cast<int>(assignment[u].wavelength));
  // y = max(0, x + x2 - 1) over every ordered co-channel combination
  for (int u = 0; u < n; ++u) {
    for (int u2 = 0; u2 < n; ++u2) {
      if (u2 == u) continue;
      for (int a = 0; a < n_lum; ++a) {
        for (int a2 = 0; a2 < n_lum; ++a2) {
          if (a2 == a) continue;
          for (int w = 0; w < kNumWavelengths; ++w) {
            const bool x1 = assignment[u].luminaire == a &&
                            static_cast<int>(assignment[u].wavelength) == w;
            const bool x2 = assignment[u2].luminaire == a2 &&
                            static_cast<int>(assignment[u2].wavelength) == w;
            if (x1 && x2) value += pair_coefficient(u, a, u2, a2, w);
          }
        }
      }
    }
  }
  return value;
}

std::vector<double> MilpDescription::pair_values_at(const Assignment& assignment) const {
  validate_assignment(assignment, instance.n_luminaires);
  std::vector<double> values;
  values.reserve(static_cast<size_t>(n_pair_vars));
  const int n = instance.n_users;
  const int n_lum = instance.n_luminaires;
  for (int u = 0; u < n; ++u)
    for (int u2 = 0; u2 < n; ++u2) {
      if (u2 == u) continue;
      for (int a = 0; a < n_lum; ++a)
        for (int a2 = 0; a2 < n_lum; ++a2) {
          if (a2 == a) continue;
          for (int w = 0; w < kNumWavelengths; ++w) {
            const double x1 = (assignment[u].luminaire == a &&
                               static_cast<int>(assignment[u].wavelength) == w)
                                  ? 1.0
                                  : 0.0;
            const double x2 = (assignment[u2].luminaire == a2 &&
                               static_cast<int>(assignment[u2].wavelength) == w)
                                  ? 1.0
                                  : 0.0;
            values.push_back(std::max(0.0, x1 + x2 - 1.0));
          }
        }
    }
  return values;
}

MilpDescription formulate_milp(const AllocationInstance& inst) {
  MilpDescription milp;
  milp.instance = inst;
  const std::int64_t n = inst.n_users;
  const std::int64_t n_lum = inst.n_luminaires;
  milp.n_binary_vars = n * n_lum * kNumWavelengths;
  milp.n_pair_vars = n * (n - 1) * n_lum * (n_lum - 1) * kNumWavelengths;
  milp.n_equalities = n;
  milp.n_inequalities = n_lum * kNumWavelengths + milp.n_pair_vars;
  return milp;
}

} // namespace vlcwdm
