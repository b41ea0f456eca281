#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>

#include <doctest.h>

#include "vlcwdm/errors.hpp"
#include "vlcwdm/serdes.hpp"

using namespace vlcwdm;

namespace {

double reparse(double v) { return std::strtod(format_g17(v).c_str(), nullptr); }

bool throws_mentioning(const std::function<void()>& fn, const std::string& needle) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

} // namespace

TEST_SUITE("serdes") {

TEST_CASE("g17 text round-trips exactly") {
  for (double v : {0.0, -0.0, 0.1, 1.0 / 3.0, 6.5494597480192e-6, -2.5e300, 1e-308,
                   3.141592653589793, 1e10, 35.973688989275416})
    CHECK(reparse(v) == v);
}

TEST_CASE("count lists parse") {
  CHECK(parse_counts("5") == std::vector<int>{5});
  CHECK(parse_counts("1..4") == std::vector<int>{1, 2, 3, 4});
  CHECK(parse_counts("2,4,6") == std::vector<int>{2, 4, 6});
  CHECK(parse_counts(" 2, 4 ") == std::vector<int>{2, 4});
  CHECK(parse_counts("7..7") == std::vector<int>{7});
  CHECK_THROWS_AS(parse_counts(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_counts("0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_counts("5..1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_counts("three"), std::invalid_argument);
  CHECK_THROWS_AS(parse_counts("1..") , std::invalid_argument);
  CHECK_THROWS_AS(parse_counts("1,,3"), std::invalid_argument);
}

TEST_CASE("empty config resolves to the defaults") {
  const ScenarioSpec defaults;
  CHECK(config_to_json(load_config("{}")) == config_to_json(defaults));
}

TEST_CASE("configs round-trip through their JSON form") {
  ScenarioSpec spec;
  spec.room.power_multiplier = 15.0;
  spec.seed = 424242;
  spec.trials_per_point = 3;
  spec.user_counts = {2, 4, 6};
  spec.allocator_mode = AllocatorMode::greedy;
  spec.weights.alpha_i = 5e3;
  const std::string text = config_to_json(spec);
  CHECK(config_to_json(load_config(text)) == text);
}

TEST_CASE("partial configs keep unmentioned defaults") {
  const ScenarioSpec spec = load_config(R"({"room": {"power_multiplier": 15.0}})");
  CHECK(spec.room.power_multiplier == 15.0);
  CHECK(spec.room.width == 4.0);
  CHECK(spec.room.luminaires.size() == 8);
  CHECK(spec.trials_per_point == 5);
}

TEST_CASE("unknown or malformed config keys are named") {
  CHECK(throws_mentioning([] { load_config(R"({"rooom": {}})"); }, "rooom"));
  CHECK(throws_mentioning([] { load_config(R"({"room": {"witdh": 1}})"); }, "witdh"));
  CHECK(throws_mentioning([] { load_config(R"({"scenario": {"weights": {"alpha_x": 1}}})"); },
                          "alpha_x"));
  CHECK_THROWS_AS(load_config("not json"), std::invalid_argument);
  CHECK_THROWS_AS(load_config("[1,2]"), std::invalid_argument);
  CHECK_THROWS_AS(load_config(R"({"room": {"width": "wide"}})"), std::invalid_argument);
  // schema-valid but physically invalid values are rejected too
  CHECK_THROWS_AS(load_config(R"({"receiver": {"fov_deg": 180}})"), std::invalid_argument);
  CHECK_THROWS_AS(load_config(R"({"room": {"luminaires": []}})"), std::invalid_argument);
}

TEST_CASE("trend CSV round-trips bit-exactly") {
  ScenarioSpec spec;
  spec.user_counts = {1, 2};
  spec.trials_per_point = 2;
  spec.seed = 5;
  const TrendResult trend = run_trend(spec);
  const std::string csv = trend_to_csv(trend);
  const std::vector<TrendCsvRow> rows = parse_trend_csv(csv);
  REQUIRE(rows.size() == 4);
  CHECK(trend_rows_to_csv(rows) == csv);
  CHECK(rows[0].n_users == 1);
  CHECK(rows[3].n_users == 2);
  CHECK(rows[3].trial == 1);
  CHECK(rows[3].seed == trial_seed(5, 2, 1));

  CHECK_THROWS_AS(parse_trend_csv("nope\n1,2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_trend_csv(csv.substr(0, csv.find('\n') + 1) + "1,2,3\n"),
                  std::invalid_argument);
}

TEST_CASE("instance files round-trip") {
  ScenarioSpec spec;
  const auto users = generate_users(spec.room, 2, 9);
  const AllocationInstance inst = build_instance(spec.room, users, spec.receiver, spec.weights);
  const AllocationInstance back = instance_from_json(instance_to_json(inst));
  CHECK(back.n_users == inst.n_users);
  CHECK(back.n_luminaires == inst.n_luminaires);
  CHECK(back.weights.alpha_i == inst.weights.alpha_i);
  REQUIRE(back.signal_sq.size() == inst.signal_sq.size());
  for (size_t i = 0; i < inst.signal_sq.size(); ++i) {
    CHECK(back.signal_sq[i] == inst.signal_sq[i]);
    CHECK(back.noise_var[i] == inst.noise_var[i]);
  }
  const Assignment asg = {{0, Wavelength::Red}, {1, Wavelength::Red}};
  CHECK(surrogate_objective(back, asg) == surrogate_objective(inst, asg));

  CHECK_THROWS_AS(instance_from_json("{}"), std::invalid_argument);
  CHECK_THROWS_AS(instance_from_json(R"({"n_users": 1, "n_luminaires": 0,
    "signal_sq": [], "noise_var": []})"), std::invalid_argument);
}

TEST_CASE("positions files accept both shapes") {
  const auto bare = users_from_json("[[1.0, 2.0], [3.0, 4.5]]");
  REQUIRE(bare.size() == 2);
  CHECK(bare[1].y == 4.5);
  const auto wrapped = users_from_json(R"({"users": [[0.5, 0.25]]})");
  REQUIRE(wrapped.size() == 1);
  CHECK(wrapped[0].x == 0.5);
  CHECK_THROWS_AS(users_from_json("[]"), std::invalid_argument);
  CHECK_THROWS_AS(users_from_json("[[1, 2, 3]]"), std::invalid_argument);
  CHECK_THROWS_AS(users_from_json(R"({"points": []})"), std::invalid_argument);
  CHECK_THROWS_AS(users_from_json("{}"), std::invalid_argument);
  CHECK_THROWS_AS(users_from_json(R"([["a", "b"]])"), std::invalid_argument);
}

TEST_CASE("link report tables") {
  ScenarioSpec spec;
  const auto users = generate_users(spec.room, 3, 2);
  const Assignment asg = {{0, Wavelength::Red}, {3, Wavelength::Yellow}, {6, Wavelength::Red}};
  const auto reports = sinr(users, asg, spec.room, spec.receiver);
  const std::string csv = link_reports_csv(users, asg, reports);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4); // header + 3 users
  CHECK(csv.find("user,x,y,luminaire,wavelength,") == 0);
  CHECK(csv.find("yellow") != std::string::npos);
  CHECK_THROWS_AS(link_reports_csv(users, asg, {}), std::invalid_argument);
  const std::string json = link_reports_json(users, asg, reports);
  CHECK(json.find("\"achievable_rate_bps\"") != std::string::npos);
}

TEST_CASE("solution files stay byte-stable") {
  ScenarioSpec spec;
  const auto users = generate_users(spec.room, 3, 14);
  const AllocationInstance inst = build_instance(spec.room, users, spec.receiver);
  const AllocationSolution sol = solve_bnb(inst);
  const std::string text = solution_to_json(sol);
  // wall time varies run to run and must never leak into the file
  CHECK(text.find("wall") == std::string::npos);
  CHECK(text.find("\"nodes_explored\"") != std::string::npos);
  CHECK(solution_to_json(solve_bnb(inst)) == text);
}

TEST_CASE("gnuplot curves carry one line per point") {
  ScenarioSpec spec;
  spec.user_counts = {1, 2, 3};
  spec.trials_per_point = 1;
  const TrendResult trend = run_trend(spec);
  const std::string plot = gnuplot_throughput(trend);
  CHECK(plot.rfind("# n mean_throughput_gbps\n", 0) == 0);
  CHECK(std::count(plot.begin(), plot.end(), '\n') == 4);
  const size_t line2 = plot.find('\n') + 1;
  const size_t gap = plot.find(' ', line2);
  REQUIRE(gap != std::string::npos);
  CHECK(std::strtod(plot.c_str() + gap + 1, nullptr) ==
        doctest::Approx(trend.points[0].mean_throughput_bps / 1e9).epsilon(1e-15));
  CHECK(gnuplot_sinr_db(trend).rfind("# n mean_sinr_db_all\n", 0) == 0);
  CHECK(gnuplot_sinr_db_served(trend).rfind("# n mean_sinr_db_served\n", 0) == 0);
}

TEST_CASE("file IO errors carry the path") {
  const std::string dir = std::filesystem::temp_directory_path() / "vlcwdm_serdes_test";
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/roundtrip.txt";
  write_file(path, "payload\n");
  CHECK(read_file(path) == "payload\n");
  CHECK_THROWS_AS(read_file(dir + "/missing.txt"), io_error);
  CHECK_THROWS_AS(write_file(dir + "/no/such/dir/f.txt", "x"), io_error);
  std::filesystem::remove_all(dir);
}

} // TEST_SUITE
