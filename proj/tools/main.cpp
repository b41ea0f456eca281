#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vlcwdm/errors.hpp"
#include "vlcwdm/linkbudget.hpp"
#include "vlcwdm/scenario.hpp"
#include "vlcwdm/serdes.hpp"

namespace {

using namespace vlcwdm;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::string format = "both";
  bool verbose = false;
};

ScenarioSpec resolve_spec(const CommonOpts& common) {
  return common.config_path.empty() ? ScenarioSpec{} : load_config_file(common.config_path);
}

std::string out_path(const CommonOpts& common, const char* filename) {
  std::error_code ec;
  std::filesystem::create_directories(common.out_dir, ec);
  if (ec) throw io_error("cannot create output directory \"" + common.out_dir + "\"");
  return (std::filesystem::path(common.out_dir) / filename).string();
}

void note_written(const CommonOpts& common, const std::string& path) {
  if (common.verbose) std::fprintf(stderr, "wrote %s\n", path.c_str());
}

UserPosition checked_user(const ScenarioSpec& spec, double x, double y) {
  if (x < 0.0 || x > spec.room.width)
    throw std::invalid_argument("user x = " + format_g17(x) + " outside [0, " +
                                format_g17(spec.room.width) + "]");
  if (y < 0.0 || y > spec.room.length)
    throw std::invalid_argument("user y = " + format_g17(y) + " outside [0, " +
                                format_g17(spec.room.length) + "]");
  UserPosition u;
  u.x = x;
  u.y = y;
  return u;
}

int cmd_channel(const CommonOpts& common, const std::vector<double>& user_xy) {
  ScenarioSpec spec = resolve_spec(common);
  const UserPosition user = checked_user(spec, user_xy[0], user_xy[1]);

  // one standalone link per (luminaire, wavelength): sole served user, so the
  // only light besides the carrier is illumination from the other luminaires
  std::vector<ChannelProbe> rows;
  const std::vector<UserPosition> users = {user};
  for (int a = 0; a < static_cast<int>(spec.room.luminaires.size()); ++a)
    for (Wavelength w : all_wavelengths()) {
      ChannelProbe probe;
      probe.luminaire = a;
      probe.wavelength = w;
      probe.link = sinr(users, {{a, w}}, spec.room, spec.receiver).front();
      rows.push_back(probe);
    }

  if (common.format != "json") {
    const std::string path = out_path(common, "channel_report.csv");
    write_file(path, channel_table_csv(rows));
    note_written(common, path);
  }
  if (common.format != "csv") {
    const std::string path = out_path(common, "channel_report.json");
    write_file(path, channel_table_json(user, rows));
    note_written(common, path);
  }
  return 0;
}

int cmd_allocate(const CommonOpts& common, const std::string& users_path,
                 const std::vector<double>& user_xy, const std::string& instance_path,
                 const std::string& mode_name, std::uint64_t seed) {
  ScenarioSpec spec = resolve_spec(common);
  const auto mode = allocator_mode_from_string(mode_name);
  if (!mode) throw std::invalid_argument("unknown allocator mode \"" + mode_name + "\"");

  AllocationInstance inst;
  std::vector<UserPosition> users;
  const bool have_geometry = instance_path.empty();
  if (!instance_path.empty()) {
    inst = instance_from_json(read_file(instance_path));
  } else {
    if (!users_path.empty()) {
      users = users_from_json(read_file(users_path));
      for (const UserPosition& u : users) checked_user(spec, u.x, u.y);
    } else {
      for (size_t i = 0; i + 1 < user_xy.size(); i += 2)
        users.push_back(checked_user(spec, user_xy[i], user_xy[i + 1]));
    }
    inst = build_instance(spec.room, users, spec.receiver, spec.weights);
  }

  AllocationSolution sol;
  switch (*mode) {
    case AllocatorMode::optimal_surrogate: sol = solve_bnb(inst, ObjectiveMode::surrogate); break;
    case AllocatorMode::optimal_true_sinr: sol = solve_bnb(inst, ObjectiveMode::true_sinr); break;
    case AllocatorMode::greedy: sol = baseline_greedy(inst); break;
    case AllocatorMode::random: sol = baseline_random(inst, seed); break;
  }
  if (common.verbose)
    std::fprintf(stderr, "solver: %llu nodes, %llu pruned, %.3f ms\n",
                 static_cast<unsigned long long>(sol.stats.nodes_explored),
                 static_cast<unsigned long long>(sol.stats.nodes_pruned),
                 sol.stats.wall_time_s * 1e3);

  {
    const std::string path = out_path(common, "allocation.json");
    write_file(path, solution_to_json(sol));
    note_written(common, path);
  }
  if (have_geometry) {
    const std::vector<LinkReport> reports = sinr(users, sol.assignment, spec.room, spec.receiver);
    const std::string path = out_path(common, "allocation_links.csv");
    write_file(path, link_reports_csv(users, sol.assignment, reports));
    note_written(common, path);
  }
  return 0;
}

int cmd_simulate(const CommonOpts& common, const ScenarioSpec& spec) {
  const TrendResult trend = run_trend(spec);

  if (common.format != "json") {
    const std::string path = out_path(common, "trend.csv");
    write_file(path, trend_to_csv(trend));
    note_written(common, path);
  }
  if (common.format != "csv") {
    const std::string path = out_path(common, "trend.json");
    write_file(path, trend_to_json(trend));
    note_written(common, path);
  }
  const std::pair<const char*, std::string (*)(const TrendResult&)> curves[] = {
      {"trend_throughput.dat", gnuplot_throughput},
      {"trend_sinr_db.dat", gnuplot_sinr_db},
      {"trend_sinr_db_served.dat", gnuplot_sinr_db_served},
  };
  for (const auto& [filename, render] : curves) {
    const std::string path = out_path(common, filename);
    write_file(path, render(trend));
    note_written(common, path);
  }

  std::printf("%4s %18s %14s %17s\n", "n", "throughput_gbps", "sinr_db_all", "sinr_db_served");
  for (const TrendPoint& point : trend.points)
    std::printf("%4d %18.4f %14.3f %17.3f\n", point.n_users, point.mean_throughput_bps / 1e9,
                point.mean_sinr_db_all, point.mean_sinr_db_served);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"downlink multi-user WDM visible-light system: per-link channel reports, exact "
               "(luminaire, wavelength) allocation, and Monte-Carlo capacity trends"};
  app.require_subcommand(1);

  const char* env_out = std::getenv("VLCWDM_OUT_DIR");
  CommonOpts common;
  common.out_dir = env_out ? env_out : ".";

  std::uint64_t seed = 0;
  bool seed_given = false;
  auto add_common = [&](CLI::App* sub, bool with_format = true) {
    sub->add_option("--config", common.config_path, "JSON config file (defaults when omitted)");
    sub->add_option("--out", common.out_dir, "output directory")->capture_default_str();
    if (with_format)
      sub->add_option("--format", common.format, "output format")
          ->check(CLI::IsMember({"csv", "json", "both"}))
          ->capture_default_str();
    sub->add_flag("-v,--verbose", common.verbose, "progress and timing on stderr");
    sub->add_option("--seed", seed, "override the config seed")
        ->each([&](const std::string&) { seed_given = true; });
  };

  CLI::App* channel = app.add_subcommand(
      "channel", "per-(luminaire, wavelength) link table for one receiver position");
  std::vector<double> channel_xy;
  channel->add_option("--user", channel_xy, "receiver position X Y")
      ->type_size(2)
      ->required();
  add_common(channel);

  CLI::App* allocate =
      app.add_subcommand("allocate", "optimal assignment for explicit user positions");
  std::string users_path, instance_path;
  std::vector<double> allocate_xy;
  std::string allocate_mode = "optimal_surrogate";
  CLI::Option* opt_users =
      allocate->add_option("--users", users_path, "JSON file of [x, y] positions");
  CLI::Option* opt_user =
      allocate->add_option("--user", allocate_xy, "one user position X Y (repeatable)")
          ->type_size(2);
  CLI::Option* opt_instance = allocate->add_option(
      "--instance", instance_path, "precomputed instance JSON (skips room geometry)");
  opt_users->excludes(opt_user)->excludes(opt_instance);
  opt_user->excludes(opt_instance);
  allocate->add_option("--mode", allocate_mode, "allocator")
      ->check(CLI::IsMember(
          {"optimal_surrogate", "optimal_true_sinr", "greedy", "random"}))
      ->capture_default_str();
  add_common(allocate);

  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte-Carlo throughput and SINR trends vs user count");
  std::string counts_text, simulate_mode;
  int trials = 0, threads = -1;
  double power_mult = 0.0;
  simulate->add_option("--counts", counts_text, "user counts, e.g. \"1..10\" or \"2,4,6\"");
  simulate->add_option("--trials", trials, "trials per user count");
  simulate->add_option("--mode", simulate_mode, "allocator")
      ->check(CLI::IsMember(
          {"optimal_surrogate", "optimal_true_sinr", "greedy", "random"}));
  simulate->add_option("--power-mult", power_mult, "override room power multiplier");
  simulate->add_option("--threads", threads, "worker threads (0 = all cores)");
  add_common(simulate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (channel->parsed()) return cmd_channel(common, channel_xy);

    if (allocate->parsed()) {
      if (users_path.empty() && allocate_xy.empty() && instance_path.empty())
        throw std::invalid_argument("allocate needs --users, --user, or --instance");
      return cmd_allocate(common, users_path, allocate_xy, instance_path, allocate_mode,
                          seed_given ? seed : 1);
    }

    if (simulate->parsed()) {
      ScenarioSpec spec = resolve_spec(common);
      if (seed_given) spec.seed = seed;
      if (!counts_text.empty()) spec.user_counts = parse_counts(counts_text);
      if (trials > 0) spec.trials_per_point = trials;
      if (!simulate_mode.empty()) spec.allocator_mode = *allocator_mode_from_string(simulate_mode);
      if (power_mult > 0.0) spec.room.power_multiplier = power_mult;
      if (threads >= 0) spec.threads = threads;
      spec.validate();
      return cmd_simulate(common, spec);
    }
    return 2;
  } catch (const infeasible_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const io_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 1;
  }
}
