// Acceptance gate: nine release checks, one PASS/FAIL line each, exit 0 only
// when every check passes. Usage: acceptance --cli /path/to/vlcwdm [--trials N]
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "vlcwdm/allocator.hpp"
#include "vlcwdm/linkbudget.hpp"
#include "vlcwdm/optics.hpp"
#include "vlcwdm/scenario.hpp"
#include "vlcwdm/serdes.hpp"

using namespace vlcwdm;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int index, const char* name, bool ok, const std::string& detail) {
  std::printf("%s  %d  %-34s %s\n", ok ? "PASS" : "FAIL", index, name, detail.c_str());
  if (!ok) ++g_failures;
}

bool rel_close(double a, double b, double tol) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
  return std::fabs(a - b) <= tol * scale;
}

double wall_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// 1. The exact solver matches exhaustive search on every small instance.

void check_exact_solver_vs_exhaustive() {
  const auto t0 = std::chrono::steady_clock::now();
  const RoomConfig room = RoomConfig::default_room();
  const ReceiverModel receiver;
  int instances = 0;
  int bad = 0;
  for (std::uint64_t seed = 1000; seed < 1028; ++seed) {
    for (int n = 1; n <= 4; ++n) {
      const auto users = generate_users(room, n, seed);
      const AllocationInstance inst = build_instance(room, users, receiver);
      ++instances;
      const AllocationSolution s1 = solve_bnb(inst, ObjectiveMode::surrogate);
      const AllocationSolution b1 = brute_force(inst, ObjectiveMode::surrogate);
      if (s1.surrogate_objective != b1.surrogate_objective) ++bad;
      const AllocationSolution s2 = solve_bnb(inst, ObjectiveMode::true_sinr);
      const AllocationSolution b2 = brute_force(inst, ObjectiveMode::true_sinr);
      if (!rel_close(s2.sum_sinr, b2.sum_sinr, 1e-9)) ++bad;
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "(%d instances x 2 objectives, %d mismatches, %.1f s)", instances, bad,
                wall_since(t0));
  report(1, "exact solver vs exhaustive search", bad == 0 && instances >= 100, detail);
}

// ---------------------------------------------------------------------------
// 2. Every link report satisfies sinr*(noise total + interference) = signal
//    and noise total = background + shot + preamp, to 1e-12 relative.

void check_link_report_identities() {
  const RoomConfig room = RoomConfig::default_room();
  const ReceiverModel receiver;
  std::mt19937_64 rng(77);
  int scenarios = 0;
  int bad = 0;
  for (int k = 0; k < 1000; ++k) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const auto users = generate_users(room, n, rng());
    // random injective pair choice, independent of any solver
    std::vector<int> pairs(static_cast<size_t>(room.luminaires.size()) * kNumWavelengths);
    for (size_t i = 0; i < pairs.size(); ++i) pairs[i] = static_cast<int>(i);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    Assignment asg(users.size());
    for (int u = 0; u < n; ++u)
      asg[u] = {pairs[u] / kNumWavelengths, static_cast<Wavelength>(pairs[u] % kNumWavelengths)};
    ++scenarios;
    for (const LinkReport& r : sinr(users, asg, room, receiver)) {
      if (!rel_close(r.sinr * (r.noise.total + r.interference_sq), r.signal_sq, 1e-12)) ++bad;
      if (!rel_close(r.noise.sigma_bn_sq + r.noise.sigma_s_sq + r.noise.sigma_pr_sq,
                     r.noise.total, 1e-12))
        ++bad;
    }
  }
  char detail[120];
  std::snprintf(detail, sizeof detail, "(%d scenarios, %d identity violations)", scenarios, bad);
  report(2, "link report identities", bad == 0 && scenarios >= 1000, detail);
}

// ---------------------------------------------------------------------------
// 3. Channel gain identities: unit Lambertian order at 60 degrees, the
//    inverse-square law, the half-power angle, and center-of-room symmetry.

void check_channel_gain_identities() {
  bool ok = true;
  std::string detail = "(";

  ok &= lambertian_order(60.0) == 1.0;
  detail += lambertian_order(60.0) == 1.0 ? "order(60)=1" : "order(60) WRONG";

  // inverse-square: axial gain falls 4x when the distance doubles
  const double m = lambertian_order(70.0);
  const Vec3 down{0.0, 0.0, -1.0};
  const Vec3 up{0.0, 0.0, 1.0};
  const double g1 = los_gain_at({0, 0, 2}, down, m, {0, 0, 0}, up, 1e-4, 90.0);
  const double g2 = los_gain_at({0, 0, 4}, down, m, {0, 0, 0}, up, 1e-4, 90.0);
  ok &= rel_close(g1, 4.0 * g2, 1e-12);
  detail += rel_close(g1, 4.0 * g2, 1e-12) ? ", inverse-square" : ", inverse-square WRONG";

  // half-power: at the semiangle off axis (receiver aimed back), half the gain
  const double r = 2.0;
  const double axial = los_gain_at({0, 0, 0}, down, 1.0, {0, 0, -r}, up, 1e-4, 90.0);
  const double s60 = r * std::sin(60.0 * std::numbers::pi / 180.0);
  const Vec3 off{s60, 0.0, -r * std::cos(60.0 * std::numbers::pi / 180.0)};
  const double tilted = los_gain_at({0, 0, 0}, down, 1.0, off, normalized(-off), 1e-4, 90.0);
  ok &= rel_close(tilted, 0.5 * axial, 1e-12);
  detail += rel_close(tilted, 0.5 * axial, 1e-12) ? ", half-power" : ", half-power WRONG";

  // center of the default room: the four nearest units match, as do the four far ones
  const RoomConfig room = RoomConfig::default_room();
  const GainMatrix h = gain_matrix(room, {UserPosition{2.0, 4.0, up}}, ReceiverModel{});
  bool symmetric = true;
  for (int a = 1; a < 8; ++a) {
    int b = -1;
    const Vec3 pa = room.luminaires[a].position;
    for (int c = 0; c < 8; ++c) {
      const Vec3 pc = room.luminaires[c].position;
      if (c != a && std::fabs(pa.x - 2.0) == std::fabs(pc.x - 2.0) &&
          std::fabs(pa.y - 4.0) == std::fabs(pc.y - 4.0)) {
        b = c;
        break;
      }
    }
    if (b >= 0) symmetric &= rel_close(h[0][a], h[0][b], 1e-12);
  }
  ok &= symmetric;
  detail += symmetric ? ", symmetry)" : ", symmetry WRONG)";

  report(3, "channel gain identities", ok, detail);
}

// ---------------------------------------------------------------------------
// 4. Dominance: exact >= greedy on every paired instance, greedy beats random
//    on average, and the exact optimum is never beaten by a sampled assignment.

void check_assignment_dominance() {
  const auto t0 = std::chrono::steady_clock::now();
  const RoomConfig room = RoomConfig::default_room();
  const ReceiverModel receiver;
  int greedy_violations = 0;
  int mean_violations = 0;
  for (int n = 1; n <= 10; ++n) {
    double greedy_sum = 0.0;
    double random_sum = 0.0;
    for (int s = 0; s < 50; ++s) {
      const std::uint64_t seed = 2000 + static_cast<std::uint64_t>(s) * 16 + n;
      const auto users = generate_users(room, n, seed);
      const AllocationInstance inst = build_instance(room, users, receiver);
      const double exact = solve_bnb(inst).surrogate_objective;
      const double greedy = baseline_greedy(inst).surrogate_objective;
      const double random = baseline_random(inst, splitmix64(seed)).surrogate_objective;
      if (exact < greedy) ++greedy_violations;
      greedy_sum += greedy;
      random_sum += random;
    }
    if (greedy_sum < random_sum) ++mean_violations;
  }

  int sampled_violations = 0;
  for (int n = 1; n <= 10; ++n) {
    const auto users = generate_users(room, n, 3000 + static_cast<std::uint64_t>(n));
    const AllocationInstance inst = build_instance(room, users, receiver);
    const double exact = solve_bnb(inst).surrogate_objective;
    std::uint64_t seed = 4000 + static_cast<std::uint64_t>(n);
    for (int k = 0; k < 1000; ++k) {
      seed = splitmix64(seed);
      if (baseline_random(inst, seed).surrogate_objective > exact) ++sampled_violations;
    }
  }
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "(exact<greedy: %d, greedy-mean<random-mean: %d, sampled>exact: %d of 10000, "
                "%.1f s)",
                greedy_violations, mean_violations, sampled_violations, wall_since(t0));
  report(4, "assignment dominance",
         greedy_violations == 0 && mean_violations == 0 && sampled_violations == 0, detail);
}

// ---------------------------------------------------------------------------
// 5-8. One shared Monte-Carlo trend at the calibrated operating point.

TrendResult shared_trend(int trials) {
  ScenarioSpec spec;
  spec.room.power_multiplier = 15.0;
  spec.user_counts = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  spec.trials_per_point = trials;
  spec.seed = 1;
  return run_trend(spec);
}

void check_throughput_trend(const TrendResult& trend, double wall_s) {
  const auto& p = trend.points;
  int peak = 0;
  for (int i = 1; i < static_cast<int>(p.size()); ++i)
    if (p[i].mean_throughput_bps > p[peak].mean_throughput_bps) peak = i;
  const int peak_n = p[peak].n_users;
  bool ok = peak_n >= 5 && peak_n <= 8;
  // rising flank up to the peak, with Monte-Carlo slack of half a Gb/s
  for (int i = 0; i < peak; ++i)
    ok &= p[i + 1].mean_throughput_bps >= p[i].mean_throughput_bps - 5e8;
  // falling tail at 9 and 10 users
  ok &= p[8].mean_throughput_bps < p[7].mean_throughput_bps;
  ok &= p[9].mean_throughput_bps < p[8].mean_throughput_bps;
  ok &= p[8].mean_throughput_bps < p[peak].mean_throughput_bps;
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "(peak %.2f Gb/s at n=%d, t9=%.2f, t10=%.2f, %d trials/point, %.0f s)",
                p[peak].mean_throughput_bps / 1e9, peak_n, p[8].mean_throughput_bps / 1e9,
                p[9].mean_throughput_bps / 1e9, static_cast<int>(p[0].trials.size()), wall_s);
  report(5, "throughput rises to a mid-count peak", ok, detail);
}

void check_sinr_trend(const TrendResult& trend) {
  const auto& p = trend.points;
  bool ok = p[9].mean_sinr_db_all < p[0].mean_sinr_db_all;
  double worst_rise = -1e300;
  for (int i = 0; i + 1 < static_cast<int>(p.size()); ++i) {
    worst_rise = std::max(worst_rise, p[i + 1].mean_sinr_db_all - p[i].mean_sinr_db_all);
    ok &= p[i + 1].mean_sinr_db_all <= p[i].mean_sinr_db_all + 0.5;
  }
  char detail[160];
  std::snprintf(detail, sizeof detail, "(%.2f dB at n=1 down to %.2f dB at n=10, worst step %+.3f dB)",
                p[0].mean_sinr_db_all, p[9].mean_sinr_db_all, worst_rise);
  report(6, "per-user SINR decreases with load", ok, detail);
}

void check_wavelength_usage_pattern(const TrendResult& trend) {
  const TrendPoint* seven = nullptr;
  for (const TrendPoint& p : trend.points)
    if (p.n_users == 7) seven = &p;
  std::map<std::array<int, kNumWavelengths>, int> histogram;
  for (const TrialRecord& t : seven->trials) {
    std::array<int, kNumWavelengths> usage = t.wavelength_usage;
    std::sort(usage.begin(), usage.end(), std::greater<>());
    ++histogram[usage];
  }
  std::array<int, kNumWavelengths> modal{};
  int modal_count = 0;
  for (const auto& [usage, count] : histogram)
    if (count > modal_count) {
      modal = usage;
      modal_count = count;
    }
  const std::array<int, kNumWavelengths> expected{2, 2, 2, 1};
  char detail[160];
  std::snprintf(detail, sizeof detail, "(modal split %d|%d|%d|%d in %d of %zu trials at n=7)",
                modal[0], modal[1], modal[2], modal[3], modal_count, seven->trials.size());
  report(7, "seven users split 2|2|2|1 across colors", modal == expected, detail);
}

void check_two_user_isolation(const TrendResult& trend) {
  const TrendPoint* two = nullptr;
  for (const TrendPoint& p : trend.points)
    if (p.n_users == 2) two = &p;
  int violations = 0;
  for (const TrialRecord& t : two->trials)
    for (const LinkReport& r : t.reports)
      if (r.interference_sq != 0.0) ++violations;
  char detail[120];
  std::snprintf(detail, sizeof detail, "(%d interfered links across %zu two-user trials)",
                violations, two->trials.size());
  report(8, "two users never share a wavelength", violations == 0, detail);
}

// ---------------------------------------------------------------------------
// 9. Byte-identical outputs when any CLI invocation is repeated.

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

bool run_cli(const std::string& cli, const std::string& args, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  const std::string cmd =
      quoted(cli) + " " + args + " --out " + quoted(out_dir.string()) + " > /dev/null 2>&1";
  return std::system(cmd.c_str()) == 0;
}

bool dirs_identical(const fs::path& a, const fs::path& b, std::string& why) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(a)) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  if (names.empty()) {
    why = "no output files";
    return false;
  }
  for (const std::string& name : names) {
    if (!fs::exists(b / name)) {
      why = name + " missing on rerun";
      return false;
    }
    if (read_file((a / name).string()) != read_file((b / name).string())) {
      why = name + " differs between runs";
      return false;
    }
  }
  why = std::to_string(names.size()) + " files";
  return true;
}

void check_deterministic_cli(const std::string& cli) {
  if (cli.empty()) {
    report(9, "CLI reruns are byte-identical", false, "(--cli not given)");
    return;
  }
  const fs::path root = fs::temp_directory_path() / "vlcwdm_acceptance";
  fs::remove_all(root);
  const fs::path users_file = root / "users.json";
  fs::create_directories(root);
  write_file(users_file.string(), "[[0.7, 1.2], [3.1, 6.4], [2.0, 4.0]]\n");

  const std::vector<std::pair<std::string, std::string>> invocations = {
      {"simulate", "simulate --counts 1..4 --trials 2 --seed 7 --format both --power-mult 15"},
      {"channel", "channel --user 2.5 3.5 --format both"},
      {"allocate", "allocate --users " + quoted(users_file.string()) +
                       " --mode optimal_true_sinr --format both"},
  };
  bool ok = true;
  std::string detail = "(";
  for (const auto& [label, args] : invocations) {
    const fs::path d1 = root / (label + "_1");
    const fs::path d2 = root / (label + "_2");
    std::string why;
    const bool ran = run_cli(cli, args, d1) && run_cli(cli, args, d2);
    const bool same = ran && dirs_identical(d1, d2, why);
    ok &= same;
    detail += label + ": " + (!ran ? "run failed" : why) + (label != "allocate" ? ", " : ")");
  }
  report(9, "CLI reruns are byte-identical", ok, detail);
}

} // namespace

int main(int argc, char** argv) {
  std::string cli;
  int trials = 250;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) cli = argv[++i];
    else if (arg == "--trials" && i + 1 < argc) trials = std::atoi(argv[++i]);
    else {
      std::fprintf(stderr, "usage: acceptance --cli /path/to/vlcwdm [--trials N]\n");
      return 2;
    }
  }

  check_exact_solver_vs_exhaustive();
  check_link_report_identities();
  check_channel_gain_identities();
  check_assignment_dominance();

  const auto t0 = std::chrono::steady_clock::now();
  const TrendResult trend = shared_trend(trials);
  const double trend_wall = wall_since(t0);
  check_throughput_trend(trend, trend_wall);
  check_sinr_trend(trend);
  check_wavelength_usage_pattern(trend);
  check_two_user_isolation(trend);

  check_deterministic_cli(cli);

  if (g_failures > 0) std::printf("%d of 9 checks failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
