#include <algorithm>
#include <bit>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <vector>

#include "vlcwdm/allocator.hpp"

namespace vlcwdm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void finalize_solution(const AllocationInstance& inst, AllocationSolution& sol) {
  validate_assignment(sol.assignment, inst.n_luminaires);
  if (static_cast<int>(sol.assignment.size()) != inst.n_users)
    throw std::logic_error("solver returned a partial assignment");
  sol.surrogate_objective = surrogate_objective(inst, sol.assignment);
  sol.sum_sinr = instance_sum_sinr(inst, sol.assignment);
}

struct Candidate {
  double score = 0.0;
  int pair = 0;
};

// score descending, then lexicographically smaller (a, w)
void order_candidates(std::vector<Candidate>& cands) {
  std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
    if (x.score != y.score) return x.score > y.score;
    return x.pair < y.pair;
  });
}

// Depth-first branch-and-bound over users in input order. The running score
// charges each placement its signal-minus-noise gain minus the interference it
// exchanges with already-placed co-channel users, so the optimistic bound
// (best remaining adjusted score per user) only tightens with depth.
class DfsSolver {
public:
  DfsSolver(const AllocationInstance& inst, ObjectiveMode mode)
      : inst_(inst), mode_(mode), n_(inst.n_users), n_lum_(inst.n_luminaires),
        pairs_(inst.pair_count()) {
    taken_.assign(pairs_, 0);
    if (mode_ == ObjectiveMode::surrogate) {
      score_.resize(static_cast<size_t>(n_) * pairs_);
      for (int u = 0; u < n_; ++u)
        for (int p = 0; p < pairs_; ++p) {
          const int a = p / kNumWavelengths, w = p % kNumWavelengths;
          score_[static_cast<size_t>(u) * pairs_ + p] =
              inst.weights.alpha_s * inst.s(u, a, w) - inst.weights.alpha_n * inst.n(u, a, w);
        }
    }
    recv_.assign(static_cast<size_t>(n_) * kNumWavelengths, 0.0);
    inflict_.assign(static_cast<size_t>(kNumWavelengths) * n_lum_, 0.0);
    interf_.assign(n_, 0.0);
    current_.assign(n_, PairChoice{});
  }

  AllocationSolution run() {
    recurse(0, 0.0);
    AllocationSolution sol;
    sol.assignment = best_;
    sol.stats.nodes_explored = nodes_;
    sol.stats.nodes_pruned = pruned_;
    finalize_solution(inst_, sol);
    return sol;
  }

private:
  double adjusted(int u, int p) const {
    const int a = p / kNumWavelengths, w = p % kNumWavelengths;
    if (mode_ == ObjectiveMode::surrogate)
      return score_[static_cast<size_t>(u) * pairs_ + p] -
             inst_.weights.alpha_i *
                 (recv_[static_cast<size_t>(u) * kNumWavelengths + w] +
                  inflict_[static_cast<size_t>(w) * n_lum_ + a]);
    // SINR ceiling: future placements only add interference on top of recv_
    return inst_.s(u, a, w) /
           (inst_.n(u, a, w) + recv_[static_cast<size_t>(u) * kNumWavelengths + w]);
  }

  // optimistic completion for users depth.. given current availability
  double suffix_bound(int depth) const {
    double sum = 0.0;
    for (int u = depth; u < n_; ++u) {
      double best = kNegInf;
      for (int p = 0; p < pairs_; ++p)
        if (!taken_[p]) best = std::max(best, adjusted(u, p));
      if (best == kNegInf) return kNegInf;
      sum += best;
    }
    return sum;
  }

  // Σ SINR of users [0, depth) at the current partial interference
  double placed_sinr(int depth) const {
    double sum = 0.0;
    for (int u = 0; u < depth; ++u) {
      const int a = current_[u].luminaire, w = static_cast<int>(current_[u].wavelength);
      sum += inst_.s(u, a, w) / (inst_.n(u, a, w) + interf_[u]);
    }
    return sum;
  }

  void recurse(int depth, double score) {
    ++nodes_;
    if (depth == n_) {
      if (score > best_val_) {
        best_val_ = score;
        best_ = current_;
      }
      return;
    }
    std::vector<Candidate> cands;
    cands.reserve(pairs_);
    for (int p = 0; p < pairs_; ++p)
      if (!taken_[p]) cands.push_back({adjusted(depth, p), p});
    order_candidates(cands);

    for (const Candidate& c : cands) {
      const int a = c.pair / kNumWavelengths, w = c.pair % kNumWavelengths;
      // snapshot the touched slices; restoring copies avoids float round-trip drift
      const std::vector<double> recv_save = recv_;
      const std::vector<double> inflict_save = inflict_;
      const std::vector<double> interf_save = interf_;

      taken_[c.pair] = 1;
      current_[depth] = {a, static_cast<Wavelength>(w)};
      for (int u2 = depth + 1; u2 < n_; ++u2)
        recv_[static_cast<size_t>(u2) * kNumWavelengths + w] += inst_.s(u2, a, w);
      double child_score;
      if (mode_ == ObjectiveMode::surrogate) {
        child_score = score + c.score;
        for (int b = 0; b < n_lum_; ++b)
          inflict_[static_cast<size_t>(w) * n_lum_ + b] += inst_.s(depth, b, w);
      } else {
        double own = 0.0;
        for (int u2 = 0; u2 < depth; ++u2) {
          if (static_cast<int>(current_[u2].wavelength) != w) continue;
          own += inst_.s(depth, current_[u2].luminaire, w);
          interf_[u2] += inst_.s(u2, a, w);
        }
        interf_[depth] = own;
        child_score = placed_sinr(depth + 1);
      }

      const double bound = child_score + suffix_bound(depth + 1);
      if (bound <= best_val_)
        ++pruned_;
      else
        recurse(depth + 1, child_score);

      taken_[c.pair] = 0;
      recv_ = recv_save;
      inflict_ = inflict_save;
      interf_ = interf_save;
    }
  }

  const AllocationInstance& inst_;
  ObjectiveMode mode_;
  int n_, n_lum_, pairs_;
  std::vector<char> taken_;
  std::vector<double> score_;   // [u][pair] interference-free score
  std::vector<double> recv_;    // [u][w] co-channel power u would receive now
  std::vector<double> inflict_; // [w][a] power a new carrier (a, w) inflicts on placed users
  std::vector<double> interf_;  // true-SINR mode: current interference per placed user
  Assignment current_, best_;
  double best_val_ = kNegInf;
  std::uint64_t nodes_ = 0, pruned_ = 0;
};

// Optimal serving of one user subset on a single wavelength (branch-and-bound
// over the group's access-point choices).
class GroupSolver {
public:
  GroupSolver(const AllocationInstance& inst, ObjectiveMode mode, int w,
              std::vector<int> members)
      : inst_(inst), mode_(mode), w_(w), members_(std::move(members)),
        n_lum_(inst.n_luminaires) {
    ap_taken_.assign(n_lum_, 0);
    recv_.assign(members_.size(), 0.0);
    inflict_.assign(n_lum_, 0.0);
    interf_.assign(members_.size(), 0.0);
    chosen_.assign(members_.size(), -1);
    if (mode_ == ObjectiveMode::surrogate) {
      base_.resize(members_.size() * static_cast<size_t>(n_lum_));
      for (size_t i = 0; i < members_.size(); ++i)
        for (int a = 0; a < n_lum_; ++a) {
          const int u = members_[i];
          base_[i * n_lum_ + a] = inst.weights.alpha_s * inst.s(u, a, w_) -
                                  inst.weights.alpha_n * inst.n(u, a, w_);
        }
    }
  }

  double solve(std::vector<int>* aps_out) {
    recurse(0, 0.0);
    if (aps_out) *aps_out = best_aps_;
    return best_val_;
  }

  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t pruned() const { return pruned_; }

private:
  double adjusted(size_t i, int a) const {
    if (mode_ == ObjectiveMode::surrogate)
      return base_[i * n_lum_ + a] - inst_.weights.alpha_i * (recv_[i] + inflict_[a]);
    const int u = members_[i];
    return inst_.s(u, a, w_) / (inst_.n(u, a, w_) + recv_[i]);
  }

  double suffix_bound(size_t depth) const {
    double sum = 0.0;
    for (size_t i = depth; i < members_.size(); ++i) {
      double best = kNegInf;
      for (int a = 0; a < n_lum_; ++a)
        if (!ap_taken_[a]) best = std::max(best, adjusted(i, a));
      if (best == kNegInf) return kNegInf;
      sum += best;
    }
    return sum;
  }

  double placed_sinr(size_t depth) const {
    double sum = 0.0;
    for (size_t i = 0; i < depth; ++i) {
      const int u = members_[i];
      sum += inst_.s(u, chosen_[i], w_) / (inst_.n(u, chosen_[i], w_) + interf_[i]);
    }
    return sum;
  }

  void recurse(size_t depth, double score) {
    ++nodes_;
    if (depth == members_.size()) {
      if (score > best_val_) {
        best_val_ = score;
        best_aps_ = chosen_;
      }
      return;
    }
    std::vector<Candidate> cands;
    cands.reserve(n_lum_);
    for (int a = 0; a < n_lum_; ++a)
      if (!ap_taken_[a]) cands.push_back({adjusted(depth, a), a});
    order_candidates(cands);

    const int u = members_[depth];
    for (const Candidate& c : cands) {
      const int a = c.pair;
      const std::vector<double> recv_save = recv_;
      const std::vector<double> inflict_save = inflict_;
      const std::vector<double> interf_save = interf_;

      ap_taken_[a] = 1;
      chosen_[depth] = a;
      for (size_t i2 = depth + 1; i2 < members_.size(); ++i2)
        recv_[i2] += inst_.s(members_[i2], a, w_);
      double child_score;
      if (mode_ == ObjectiveMode::surrogate) {
        child_score = score + c.score;
        for (int b = 0; b < n_lum_; ++b)
          inflict_[b] += inst_.s(u, b, w_);
      } else {
        double own = 0.0;
        for (size_t i2 = 0; i2 < depth; ++i2) {
          own += inst_.s(u, chosen_[i2], w_);
          interf_[i2] += inst_.s(members_[i2], a, w_);
        }
        interf_[depth] = own;
        child_score = placed_sinr(depth + 1);
      }

      const double bound = child_score + suffix_bound(depth + 1);
      if (bound <= best_val_)
        ++pruned_;
      else
        recurse(depth + 1, child_score);

      ap_taken_[a] = 0;
      chosen_[depth] = -1;
      recv_ = recv_save;
      inflict_ = inflict_save;
      interf_ = interf_save;
    }
  }

  const AllocationInstance& inst_;
  ObjectiveMode mode_;
  int w_;
  std::vector<int> members_;
  int n_lum_;
  std::vector<char> ap_taken_;
  std::vector<double> base_, recv_, inflict_, interf_;
  std::vector<int> chosen_, best_aps_;
  double best_val_ = kNegInf;
  std::uint64_t nodes_ = 0, pruned_ = 0;
};

std::vector<int> mask_members(unsigned mask) {
  std::vector<int> members;
  for (int u = 0; mask; ++u, mask >>= 1)
    if (mask & 1u) members.push_back(u);
  return members;
}

} // namespace

namespace detail {

AllocationSolution solve_dfs(const AllocationInstance& inst, ObjectiveMode mode) {
  return DfsSolver(inst, mode).run();
}

// Co-channel interference never crosses wavelengths and pair uniqueness
// decouples per wavelength, so the objective is additive over the partition of
// users into the four wavelength groups: optimize each (wavelength, subset)
// group separately, then pick the best partition by max-plus subset
// convolution.
AllocationSolution solve_wavelength_dp(const AllocationInstance& inst, ObjectiveMode mode) {
  const int n = inst.n_users;
  if (n > 24) throw std::invalid_argument("wavelength decomposition limited to 24 users");
  const unsigned full = (1u << n) - 1u;
  const size_t n_masks = static_cast<size_t>(full) + 1;

  std::uint64_t nodes = 0, pruned = 0;
  std::array<std::vector<double>, kNumWavelengths> value;
  for (int w = 0; w < kNumWavelengths; ++w) {
    value[w].assign(n_masks, kNegInf);
    value[w][0] = 0.0;
    for (unsigned mask = 1; mask <= full; ++mask) {
      if (std::popcount(mask) > inst.n_luminaires) continue;
      GroupSolver solver(inst, mode, w, mask_members(mask));
      value[w][mask] = solver.solve(nullptr);
      nodes += solver.nodes();
      pruned += solver.pruned();
    }
  }

  // best[T] = optimum over wavelengths 0..k serving exactly the users in T
  std::vector<double> best = value[0];
  std::array<std::vector<unsigned>, kNumWavelengths> split; // submask given to wavelength k
  for (int w = 1; w < kNumWavelengths - 1; ++w) {
    std::vector<double> merged(n_masks, kNegInf);
    split[w].assign(n_masks, 0);
    for (unsigned mask = 0; mask <= full; ++mask) {
      unsigned sub = mask;
      for (;;) { // walks every submask, descending; first best wins ties
        if (value[w][sub] != kNegInf && best[mask ^ sub] != kNegInf) {
          const double v = best[mask ^ sub] + value[w][sub];
          if (v > merged[mask]) {
            merged[mask] = v;
            split[w][mask] = sub;
          }
        }
        if (sub == 0) break;
        sub = (sub - 1) & mask;
      }
    }
    best = std::move(merged);
  }

  const int last = kNumWavelengths - 1;
  double final_val = kNegInf;
  unsigned final_sub = 0;
  {
    unsigned sub = full;
    for (;;) {
      if (value[last][sub] != kNegInf && best[full ^ sub] != kNegInf) {
        const double v = best[full ^ sub] + value[last][sub];
        if (v > final_val) {
          final_val = v;
          final_sub = sub;
        }
      }
      if (sub == 0) break;
      sub = (sub - 1) & full;
    }
  }
  if (final_val == kNegInf) throw std::logic_error("wavelength decomposition found no partition");

  // walk the splits back into per-wavelength groups
  std::array<unsigned, kNumWavelengths> group{};
  group[last] = final_sub;
  unsigned rest = full ^ final_sub;
  for (int w = kNumWavelengths - 2; w >= 1; --w) {
    group[w] = split[w][rest];
    rest ^= group[w];
  }
  group[0] = rest;

  AllocationSolution sol;
  sol.assignment.assign(n, PairChoice{});
  for (int w = 0; w < kNumWavelengths; ++w) {
    if (group[w] == 0) continue;
    const std::vector<int> members = mask_members(group[w]);
    GroupSolver solver(inst, mode, w, members);
    std::vector<int> aps;
    solver.solve(&aps);
    nodes += solver.nodes();
    pruned += solver.pruned();
    for (size_t i = 0; i < members.size(); ++i)
      sol.assignment[members[i]] = {aps[i], static_cast<Wavelength>(w)};
  }
  sol.stats.nodes_explored = nodes;
  sol.stats.nodes_pruned = pruned;
  finalize_solution(inst, sol);
  return sol;
}

} // namespace detail

AllocationSolution solve_bnb(const AllocationInstance& inst, ObjectiveMode mode) {
  const auto t0 = std::chrono::steady_clock::now();
  // the depth-first search shines on few users; the decomposition keeps large
  // instances exact without the assignment-tree blowup
  AllocationSolution sol = (inst.n_users <= 5 || inst.n_users > 16)
                               ? detail::solve_dfs(inst, mode)
                               : detail::solve_wavelength_dp(inst, mode);
  sol.stats.wall_time_s = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - t0).count();
  return sol;
}

AllocationSolution brute_force(const AllocationInstance& inst, ObjectiveMode mode) {
  if (inst.n_users > kBruteForceMaxUsers)
    throw std::invalid_argument("brute_force is an oracle for up to " +
                                std::to_string(kBruteForceMaxUsers) + " users");
  const auto t0 = std::chrono::steady_clock::now();
  const int n = inst.n_users;
  const int pairs = inst.pair_count();

  AllocationSolution sol;
  Assignment current(n);
  std::vector<char> taken(pairs, 0);
  double best_val = kNegInf;
  std::uint64_t nodes = 0;

  auto evaluate = [&](const Assignment& asg) {
    return mode == ObjectiveMode::surrogate ? surrogate_objective(inst, asg)
                                            : instance_sum_sinr(inst, asg);
  };

  // plain nested enumeration; evaluates every leaf from scratch
  auto enumerate = [&](auto&& self, int depth) -> void {
    ++nodes;
    if (depth == n) {
      const double v = evaluate(current);
      if (v > best_val) {
        best_val = v;
        sol.assignment = current;
      }
      return;
    }
    for (int p = 0; p < pairs; ++p) {
      if (taken[p]) continue;
      taken[p] = 1;
      current[depth] = {p / kNumWavelengths, static_cast<Wavelength>(p % kNumWavelengths)};
      self(self, depth + 1);
      taken[p] = 0;
    }
  };
  enumerate(enumerate, 0);

  sol.stats.nodes_explored = nodes;
  sol.stats.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  finalize_solution(inst, sol);
  return sol;
}

} // namespace vlcwdm
