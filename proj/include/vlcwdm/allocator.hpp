#pragma once

#include <cstdint>
#include <vector>

#include "vlcwdm/linkbudget.hpp"
#include "vlcwdm/optics.hpp"

namespace vlcwdm {

// Objective: maximize sum(alpha_s*S - alpha_n*N) - alpha_i * sum(I).
// All three terms are squared photocurrents. alpha_i defaults high so the
// optimizer reuses a wavelength only when the co-channel geometry is benign;
// with unit weights the power imbalance between wavelengths makes stacking
// every user on the strongest color "optimal", which contradicts how a real
// deployment (and this model's rate map) values interference.
struct ObjectiveWeights {
  double alpha_s = 1.0;
  double alpha_n = 1.0;
  double alpha_i = 1e4;
};

// Precomputed coefficients of the allocation problem. signal_sq doubles as the
// interference table: the power user u receives from a carrier on (a, w) is the
// same quantity whether that carrier serves u or interferes with u.
struct AllocationInstance {
  int n_users = 0;
  int n_luminaires = 0;
  ObjectiveWeights weights;
  std::vector<double> signal_sq; // [u][a][w], A^2
  std::vector<double> noise_var; // [u][a][w], A^2 at full bandwidth, others-lighting background

  int pair_count() const { return n_luminaires * kNumWavelengths; }
  int idx(int u, int a, int w) const { return (u * n_luminaires + a) * kNumWavelengths + w; }

  double s(int u, int a, int w) const { return signal_sq[idx(u, a, w)]; }
  double n(int u, int a, int w) const { return noise_var[idx(u, a, w)]; }

  // interference inflicted on user u served by (a, w) when user u2 is served by
  // (a2, w); zero when the luminaires coincide, independent of u2 otherwise
  double interference(int u, int a, int u2, int a2, int w) const {
    (void)u2;
    return a2 == a ? 0.0 : s(u, a2, w);
  }
};

// throws infeasible_error when n_users exceeds the pair count
AllocationInstance build_instance(const RoomConfig& room, const std::vector<UserPosition>& users,
                                  const ReceiverModel& receiver, const ObjectiveWeights& weights = {});

enum class ObjectiveMode { surrogate, true_sinr };

struct SolverStats {
  std::uint64_t nodes_explored = 0;
  std::uint64_t nodes_pruned = 0;
  double wall_time_s = 0.0; // informational; never serialized
};

struct AllocationSolution {
  Assignment assignment;
  double surrogate_objective = 0.0; // weighted, recomputable from the instance
  double sum_sinr = 0.0;            // instance-level sum of per-user SINR
  SolverStats stats;
};

// Reference evaluators shared by every solver and test; fixed summation order
// keeps equal assignments bit-identical across solver paths.
double surrogate_objective(const AllocationInstance& inst, const Assignment& assignment);
double instance_sum_sinr(const AllocationInstance& inst, const Assignment& assignment);

// Exact optimizer. Small instances run a depth-first branch-and-bound over
// users in input order; larger ones decompose by wavelength (co-channel
// interference never crosses wavelengths) and combine per-wavelength group
// optima with a max-plus subset convolution. Both paths are exact and
// deterministic; ties resolve toward lexicographically smaller (a, w).
AllocationSolution solve_bnb(const AllocationInstance& inst,
                             ObjectiveMode mode = ObjectiveMode::surrogate);

// Exhaustive oracle; throws std::invalid_argument above kBruteForceMaxUsers.
inline constexpr int kBruteForceMaxUsers = 5;
AllocationSolution brute_force(const AllocationInstance& inst,
                               ObjectiveMode mode = ObjectiveMode::surrogate);

// Uniformly random injective assignment from a seeded generator.
AllocationSolution baseline_random(const AllocationInstance& inst, std::uint64_t seed);

// Users in descending order of their best signal-minus-noise score, each taking
// the pair with the best marginal objective given earlier picks.
AllocationSolution baseline_greedy(const AllocationInstance& inst);

namespace detail {
// direct entry points for the two exact strategies (testing/benchmarks)
AllocationSolution solve_dfs(const AllocationInstance& inst, ObjectiveMode mode);
AllocationSolution solve_wavelength_dp(const AllocationInstance& inst, ObjectiveMode mode);
} // namespace detail

// Binary assignment variables x[u][(a,w)] plus one continuous pair variable per
// ordered co-channel combination ((u,a),(u2,a2),w), linearizing the
// interference products: y >= x + x2 - 1, y >= 0, objective pays -alpha_i*I*y.
// Since interference coefficients are nonnegative and y enters negatively,
// every optimum settles y at max(0, x + x2 - 1), which is binary.
struct MilpDescription {
  AllocationInstance instance;
  std::int64_t n_binary_vars = 0;
  std::int64_t n_pair_vars = 0;
  std::int64_t n_equalities = 0;   // one per user: served exactly once
  std::int64_t n_inequalities = 0; // pair uniqueness + linearization rows

  double objective_coefficient(int u, int a, int w) const; // alpha_s*S - alpha_n*N
  double pair_coefficient(int u, int a, int u2, int a2, int w) const; // -alpha_i*I

  // objective value of a feasible assignment with y = max(0, x + x2 - 1)
  double objective_at(const Assignment& assignment) const;
  // linearization variable values induced by an assignment (all 0 or 1)
  std::vector<double> pair_values_at(const Assignment& assignment) const;
};

MilpDescription formulate_milp(const AllocationInstance& inst);

} // namespace vlcwdm
