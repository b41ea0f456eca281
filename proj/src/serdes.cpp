#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "vlcwdm/errors.hpp"
#include "vlcwdm/linkbudget.hpp"
#include "vlcwdm/serdes.hpp"

namespace vlcwdm {

using ordered_json = nlohmann::ordered_json;

namespace {

void check_keys(const ordered_json& obj, const char* where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) {
        known = true;
        break;
      }
    if (!known)
      throw std::invalid_argument(std::string("unknown key \"") + item.key() + "\" in " + where);
  }
}

int parse_int_strict(std::string_view text, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw std::invalid_argument(std::string("cannot parse ") + what + " from \"" +
                                std::string(text) + "\"");
  return value;
}

std::string_view trimmed(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

Vec3 vec3_from_json(const ordered_json& j, const char* what) {
  if (!j.is_array() || j.size() != 3)
    throw std::invalid_argument(std::string(what) + " must be an array of 3 numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

ordered_json vec3_to_json(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

ordered_json luminaire_to_json(const Luminaire& lum) {
  ordered_json j;
  j["position"] = vec3_to_json(lum.position);
  ordered_json power;
  for (Wavelength w : all_wavelengths())
    power[to_string(w)] = lum.tx_power[static_cast<size_t>(w)];
  j["tx_power"] = std::move(power);
  j["orientation"] = vec3_to_json(lum.orientation);
  j["half_power_semiangle_deg"] = lum.half_power_semiangle_deg;
  return j;
}

Luminaire luminaire_from_json(const ordered_json& j) {
  check_keys(j, "room.luminaires[]",
             {"position", "tx_power", "orientation", "half_power_semiangle_deg"});
  Luminaire lum;
  if (!j.contains("position"))
    throw std::invalid_argument("luminaire entry is missing \"position\"");
  lum.position = vec3_from_json(j.at("position"), "luminaire position");
  if (j.contains("tx_power")) {
    const ordered_json& power = j.at("tx_power");
    check_keys(power, "room.luminaires[].tx_power", {"red", "yellow", "green", "blue"});
    for (Wavelength w : all_wavelengths())
      if (power.contains(to_string(w)))
        lum.tx_power[static_cast<size_t>(w)] = power.at(to_string(w)).get<double>();
  }
  if (j.contains("orientation"))
    lum.orientation = vec3_from_json(j.at("orientation"), "luminaire orientation");
  if (j.contains("half_power_semiangle_deg"))
    lum.half_power_semiangle_deg = j.at("half_power_semiangle_deg").get<double>();
  return lum;
}

ordered_json link_to_json(const LinkReport& link) {
  ordered_json j;
  j["signal_sq_a2"] = link.signal_sq;
  j["interference_sq_a2"] = link.interference_sq;
  j["noise"] = {{"sigma_bn_sq", link.noise.sigma_bn_sq},
                {"sigma_s_sq", link.noise.sigma_s_sq},
                {"sigma_pr_sq", link.noise.sigma_pr_sq},
                {"total", link.noise.total}};
  j["sinr"] = link.sinr;
  j["sinr_db"] = link.sinr_db;
  j["achievable_rate_bps"] = link.achievable_rate;
  return j;
}

const char* kLinkCsvColumns =
    "signal_sq_a2,interference_sq_a2,sigma_bn_sq,sigma_s_sq,sigma_pr_sq,"
    "noise_total,sinr,sinr_db,achievable_rate_bps";

void append_link_csv(std::string& out, const LinkReport& link) {
  out += format_g17(link.signal_sq);
  out += ',';
  out += format_g17(link.interference_sq);
  out += ',';
  out += format_g17(link.noise.sigma_bn_sq);
  out += ',';
  out += format_g17(link.noise.sigma_s_sq);
  out += ',';
  out += format_g17(link.noise.sigma_pr_sq);
  out += ',';
  out += format_g17(link.noise.total);
  out += ',';
  out += format_g17(link.sinr);
  out += ',';
  out += format_g17(link.sinr_db);
  out += ',';
  out += format_g17(link.achievable_rate);
}

} // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<int> parse_counts(const std::string& text) {
  const std::string_view body = trimmed(text);
  if (body.empty()) throw std::invalid_argument("empty user-count list");

  std::vector<int> counts;
  if (const size_t dots = body.find(".."); dots != std::string_view::npos) {
    const int lo = parse_int_strict(trimmed(body.substr(0, dots)), "range start");
    const int hi = parse_int_strict(trimmed(body.substr(dots + 2)), "range end");
    if (lo > hi) throw std::invalid_argument("user-count range is reversed");
    for (int n = lo; n <= hi; ++n) counts.push_back(n);
  } else {
    size_t start = 0;
    while (start <= body.size()) {
      const size_t comma = body.find(',', start);
      const size_t end = comma == std::string_view::npos ? body.size() : comma;
      counts.push_back(parse_int_strict(trimmed(body.substr(start, end - start)), "user count"));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  for (int n : counts)
    if (n < 1) throw std::invalid_argument("user counts must be at least 1");
  return counts;
}

ScenarioSpec load_config(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const ordered_json::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");

  ScenarioSpec spec;
  try {
    check_keys(doc, "config", {"room", "receiver", "scenario"});
    if (doc.contains("room")) {
      const ordered_json& room = doc.at("room");
      check_keys(room, "room",
                 {"width", "length", "height", "floor_height", "power_multiplier", "luminaires"});
      if (room.contains("width")) spec.room.width = room.at("width").get<double>();
      if (room.contains("length")) spec.room.length = room.at("length").get<double>();
      if (room.contains("height")) spec.room.height = room.at("height").get<double>();
      if (room.contains("floor_height"))
        spec.room.floor_height = room.at("floor_height").get<double>();
      if (room.contains("power_multiplier"))
        spec.room.power_multiplier = room.at("power_multiplier").get<double>();
      if (room.contains("luminaires")) {
        if (!room.at("luminaires").is_array())
          throw std::invalid_argument("room.luminaires must be an array");
        spec.room.luminaires.clear();
        for (const ordered_json& entry : room.at("luminaires"))
          spec.room.luminaires.push_back(luminaire_from_json(entry));
      }
    }
    if (doc.contains("receiver")) {
      const ordered_json& rx = doc.at("receiver");
      check_keys(rx, "receiver",
                 {"responsivity", "detector_area_m2", "fov_deg", "noise_current_density",
                  "bandwidth_hz", "rate_cap_bps", "ambient_current_a"});
      if (rx.contains("responsivity")) spec.receiver.responsivity = rx.at("responsivity").get<double>();
      if (rx.contains("detector_area_m2"))
        spec.receiver.detector_area = rx.at("detector_area_m2").get<double>();
      if (rx.contains("fov_deg")) spec.receiver.fov_deg = rx.at("fov_deg").get<double>();
      if (rx.contains("noise_current_density"))
        spec.receiver.noise_current_density = rx.at("noise_current_density").get<double>();
      if (rx.contains("bandwidth_hz")) spec.receiver.bandwidth = rx.at("bandwidth_hz").get<double>();
      if (rx.contains("rate_cap_bps")) spec.receiver.rate_cap = rx.at("rate_cap_bps").get<double>();
      if (rx.contains("ambient_current_a"))
        spec.receiver.ambient_current = rx.at("ambient_current_a").get<double>();
    }
    if (doc.contains("scenario")) {
      const ordered_json& sc = doc.at("scenario");
      check_keys(sc, "scenario",
                 {"user_counts", "trials_per_point", "seed", "allocator_mode", "weights",
                  "threads"});
      if (sc.contains("user_counts")) {
        if (sc.at("user_counts").is_string())
          spec.user_counts = parse_counts(sc.at("user_counts").get<std::string>());
        else
          spec.user_counts = sc.at("user_counts").get<std::vector<int>>();
      }
      if (sc.contains("trials_per_point"))
        spec.trials_per_point = sc.at("trials_per_point").get<int>();
      if (sc.contains("seed")) spec.seed = sc.at("seed").get<std::uint64_t>();
      if (sc.contains("allocator_mode")) {
        const auto name = sc.at("allocator_mode").get<std::string>();
        const auto mode = allocator_mode_from_string(name);
        if (!mode) throw std::invalid_argument("unknown allocator_mode \"" + name + "\"");
        spec.allocator_mode = *mode;
      }
      if (sc.contains("weights")) {
        const ordered_json& w = sc.at("weights");
        check_keys(w, "scenario.weights", {"alpha_s", "alpha_n", "alpha_i"});
        if (w.contains("alpha_s")) spec.weights.alpha_s = w.at("alpha_s").get<double>();
        if (w.contains("alpha_n")) spec.weights.alpha_n = w.at("alpha_n").get<double>();
        if (w.contains("alpha_i")) spec.weights.alpha_i = w.at("alpha_i").get<double>();
      }
      if (sc.contains("threads")) spec.threads = sc.at("threads").get<int>();
    }
  } catch (const ordered_json::exception& e) {
    throw std::invalid_argument(std::string("malformed config value: ") + e.what());
  }
  spec.validate();
  return spec;
}

ScenarioSpec load_config_file(const std::string& path) { return load_config(read_file(path)); }

std::string config_to_json(const ScenarioSpec& spec) {
  ordered_json doc;
  ordered_json room;
  room["width"] = spec.room.width;
  room["length"] = spec.room.length;
  room["height"] = spec.room.height;
  room["floor_height"] = spec.room.floor_height;
  room["power_multiplier"] = spec.room.power_multiplier;
  ordered_json lums = ordered_json::array();
  for (const Luminaire& lum : spec.room.luminaires) lums.push_back(luminaire_to_json(lum));
  room["luminaires"] = std::move(lums);
  doc["room"] = std::move(room);

  ordered_json rx;
  rx["responsivity"] = spec.receiver.responsivity;
  rx["detector_area_m2"] = spec.receiver.detector_area;
  rx["fov_deg"] = spec.receiver.fov_deg;
  rx["noise_current_density"] = spec.receiver.noise_current_density;
  rx["bandwidth_hz"] = spec.receiver.bandwidth;
  rx["rate_cap_bps"] = spec.receiver.rate_cap;
  rx["ambient_current_a"] = spec.receiver.ambient_current;
  doc["receiver"] = std::move(rx);

  ordered_json sc;
  sc["user_counts"] = spec.user_counts;
  sc["trials_per_point"] = spec.trials_per_point;
  sc["seed"] = spec.seed;
  sc["allocator_mode"] = to_string(spec.allocator_mode);
  sc["weights"] = {{"alpha_s", spec.weights.alpha_s},
                   {"alpha_n", spec.weights.alpha_n},
                   {"alpha_i", spec.weights.alpha_i}};
  sc["threads"] = spec.threads;
  doc["scenario"] = std::move(sc);
  return doc.dump(2) + "\n";
}

std::string link_reports_csv(const std::vector<UserPosition>& users,
                             const Assignment& assignment,
                             const std::vector<LinkReport>& reports) {
  if (users.size() != assignment.size() || users.size() != reports.size())
    throw std::invalid_argument("users, assignment, and reports must have equal length");
  std::string out = std::string("user,x,y,luminaire,wavelength,") + kLinkCsvColumns + "\n";
  for (size_t u = 0; u < users.size(); ++u) {
    out += std::to_string(u);
    out += ',';
    out += format_g17(users[u].x);
    out += ',';
    out += format_g17(users[u].y);
    out += ',';
    out += std::to_string(assignment[u].luminaire);
    out += ',';
    out += to_string(assignment[u].wavelength);
    out += ',';
    append_link_csv(out, reports[u]);
    out += '\n';
  }
  return out;
}

std::string link_reports_json(const std::vector<UserPosition>& users,
                              const Assignment& assignment,
                              const std::vector<LinkReport>& reports) {
  if (users.size() != assignment.size() || users.size() != reports.size())
    throw std::invalid_argument("users, assignment, and reports must have equal length");
  ordered_json arr = ordered_json::array();
  for (size_t u = 0; u < users.size(); ++u) {
    ordered_json j;
    j["user"] = u;
    j["x"] = users[u].x;
    j["y"] = users[u].y;
    j["luminaire"] = assignment[u].luminaire;
    j["wavelength"] = to_string(assignment[u].wavelength);
    j["link"] = link_to_json(reports[u]);
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string channel_table_csv(const std::vector<ChannelProbe>& rows) {
  std::string out = std::string("luminaire,wavelength,") + kLinkCsvColumns + "\n";
  for (const ChannelProbe& row : rows) {
    out += std::to_string(row.luminaire);
    out += ',';
    out += to_string(row.wavelength);
    out += ',';
    append_link_csv(out, row.link);
    out += '\n';
  }
  return out;
}

std::string channel_table_json(const UserPosition& user, const std::vector<ChannelProbe>& rows) {
  ordered_json doc;
  doc["user"] = {{"x", user.x}, {"y", user.y}};
  ordered_json arr = ordered_json::array();
  for (const ChannelProbe& row : rows) {
    ordered_json j;
    j["luminaire"] = row.luminaire;
    j["wavelength"] = to_string(row.wavelength);
    j["link"] = link_to_json(row.link);
    arr.push_back(std::move(j));
  }
  doc["links"] = std::move(arr);
  return doc.dump(2) + "\n";
}

std::string solution_to_json(const AllocationSolution& solution) {
  ordered_json doc;
  ordered_json asg = ordered_json::array();
  for (size_t u = 0; u < solution.assignment.size(); ++u)
    asg.push_back({{"user", u},
                   {"luminaire", solution.assignment[u].luminaire},
                   {"wavelength", to_string(solution.assignment[u].wavelength)}});
  doc["assignment"] = std::move(asg);
  doc["surrogate_objective"] = solution.surrogate_objective;
  doc["sum_sinr"] = solution.sum_sinr;
  doc["stats"] = {{"nodes_explored", solution.stats.nodes_explored},
                  {"nodes_pruned", solution.stats.nodes_pruned}};
  return doc.dump(2) + "\n";
}

std::string instance_to_json(const AllocationInstance& inst) {
  ordered_json doc;
  doc["n_users"] = inst.n_users;
  doc["n_luminaires"] = inst.n_luminaires;
  doc["weights"] = {{"alpha_s", inst.weights.alpha_s},
                    {"alpha_n", inst.weights.alpha_n},
                    {"alpha_i", inst.weights.alpha_i}};
  auto cube_to_json = [&](const std::vector<double>& cube) {
    ordered_json users = ordered_json::array();
    for (int u = 0; u < inst.n_users; ++u) {
      ordered_json per_ap = ordered_json::array();
      for (int a = 0; a < inst.n_luminaires; ++a) {
        ordered_json per_w = ordered_json::array();
        for (int w = 0; w < kNumWavelengths; ++w)
          per_w.push_back(cube[static_cast<size_t>(inst.idx(u, a, w))]);
        per_ap.push_back(std::move(per_w));
      }
      users.push_back(std::move(per_ap));
    }
    return users;
  };
  doc["signal_sq"] = cube_to_json(inst.signal_sq);
  doc["noise_var"] = cube_to_json(inst.noise_var);
  doc["interference_rule"] = "interference(u,a,u2,a2,w) = signal_sq[u][a2][w] if a2 != a else 0";
  return doc.dump(2) + "\n";
}

AllocationInstance instance_from_json(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const ordered_json::exception& e) {
    throw std::invalid_argument(std::string("instance file is not valid JSON: ") + e.what());
  }
  AllocationInstance inst;
  try {
    check_keys(doc, "instance",
               {"n_users", "n_luminaires", "weights", "signal_sq", "noise_var",
                "interference_rule"});
    inst.n_users = doc.at("n_users").get<int>();
    inst.n_luminaires = doc.at("n_luminaires").get<int>();
    if (doc.contains("weights")) {
      const ordered_json& w = doc.at("weights");
      check_keys(w, "instance.weights", {"alpha_s", "alpha_n", "alpha_i"});
      if (w.contains("alpha_s")) inst.weights.alpha_s = w.at("alpha_s").get<double>();
      if (w.contains("alpha_n")) inst.weights.alpha_n = w.at("alpha_n").get<double>();
      if (w.contains("alpha_i")) inst.weights.alpha_i = w.at("alpha_i").get<double>();
    }
    if (inst.n_users < 1 || inst.n_luminaires < 1)
      throw std::invalid_argument("instance dimensions must be positive");
    if (inst.n_users > inst.pair_count())
      throw std::invalid_argument("instance has more users than (luminaire, wavelength) pairs");
    auto cube_from_json = [&](const ordered_json& users, const char* what) {
      std::vector<double> cube(static_cast<size_t>(inst.n_users) * inst.pair_count());
      if (!users.is_array() || static_cast<int>(users.size()) != inst.n_users)
        throw std::invalid_argument(std::string(what) + " must have one row per user");
      for (int u = 0; u < inst.n_users; ++u) {
        const ordered_json& per_ap = users[static_cast<size_t>(u)];
        if (!per_ap.is_array() || static_cast<int>(per_ap.size()) != inst.n_luminaires)
          throw std::invalid_argument(std::string(what) + " row has wrong luminaire count");
        for (int a = 0; a < inst.n_luminaires; ++a) {
          const ordered_json& per_w = per_ap[static_cast<size_t>(a)];
          if (!per_w.is_array() || static_cast<int>(per_w.size()) != kNumWavelengths)
            throw std::invalid_argument(std::string(what) + " entry has wrong wavelength count");
          for (int w = 0; w < kNumWavelengths; ++w)
            cube[static_cast<size_t>(inst.idx(u, a, w))] = per_w[static_cast<size_t>(w)].get<double>();
        }
      }
      return cube;
    };
    inst.signal_sq = cube_from_json(doc.at("signal_sq"), "signal_sq");
    inst.noise_var = cube_from_json(doc.at("noise_var"), "noise_var");
  } catch (const ordered_json::exception& e) {
    throw std::invalid_argument(std::string("malformed instance file: ") + e.what());
  }
  for (double v : inst.noise_var)
    if (!(v > 0.0)) throw std::invalid_argument("noise_var entries must be positive");
  return inst;
}

static const char* kTrendCsvHeader =
    "n,trial,seed,throughput_bps,mean_sinr_db_all,mean_sinr_db_served,"
    "users_red,users_yellow,users_green,users_blue";

std::string trend_to_csv(const TrendResult& trend) {
  std::string out = std::string(kTrendCsvHeader) + "\n";
  for (const TrendPoint& point : trend.points)
    for (const TrialRecord& rec : point.trials) {
      out += std::to_string(rec.n_users);
      out += ',';
      out += std::to_string(rec.trial_index);
      out += ',';
      out += std::to_string(rec.seed);
      out += ',';
      out += format_g17(rec.throughput_bps);
      out += ',';
      out += format_g17(rec.mean_sinr_db_all);
      out += ',';
      out += format_g17(rec.mean_sinr_db_served);
      for (int w = 0; w < kNumWavelengths; ++w) {
        out += ',';
        out += std::to_string(rec.wavelength_usage[static_cast<size_t>(w)]);
      }
      out += '\n';
    }
  return out;
}

std::string trend_to_json(const TrendResult& trend) {
  ordered_json doc;
  doc["seed"] = trend.seed;
  doc["allocator_mode"] = to_string(trend.allocator_mode);
  ordered_json points = ordered_json::array();
  for (const TrendPoint& point : trend.points) {
    ordered_json jp;
    jp["n_users"] = point.n_users;
    jp["mean_throughput_bps"] = point.mean_throughput_bps;
    jp["mean_sinr_db_all"] = point.mean_sinr_db_all;
    jp["mean_sinr_db_served"] = point.mean_sinr_db_served;
    ordered_json trials = ordered_json::array();
    for (const TrialRecord& rec : point.trials) {
      ordered_json jt;
      jt["trial"] = rec.trial_index;
      jt["seed"] = rec.seed;
      jt["throughput_bps"] = rec.throughput_bps;
      jt["mean_sinr_db_all"] = rec.mean_sinr_db_all;
      jt["mean_sinr_db_served"] = rec.mean_sinr_db_served;
      ordered_json usage;
      for (Wavelength w : all_wavelengths())
        usage[to_string(w)] = rec.wavelength_usage[static_cast<size_t>(w)];
      jt["wavelength_usage"] = std::move(usage);
      ordered_json users = ordered_json::array();
      for (const UserPosition& u : rec.users) users.push_back({u.x, u.y});
      jt["users"] = std::move(users);
      ordered_json asg = ordered_json::array();
      for (const PairChoice& choice : rec.assignment)
        asg.push_back({{"luminaire", choice.luminaire},
                       {"wavelength", to_string(choice.wavelength)}});
      jt["assignment"] = std::move(asg);
      ordered_json rates = ordered_json::array();
      ordered_json sinr_db = ordered_json::array();
      for (const LinkReport& link : rec.reports) {
        rates.push_back(link.achievable_rate);
        sinr_db.push_back(link.sinr_db);
      }
      jt["rates_bps"] = std::move(rates);
      jt["sinr_db"] = std::move(sinr_db);
      trials.push_back(std::move(jt));
    }
    jp["trials"] = std::move(trials);
    points.push_back(std::move(jp));
  }
  doc["points"] = std::move(points);
  return doc.dump(2) + "\n";
}

std::vector<TrendCsvRow> parse_trend_csv(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line) || std::string(trimmed(line)) != kTrendCsvHeader)
    throw std::invalid_argument("trend CSV header does not match the expected columns");

  std::vector<TrendCsvRow> rows;
  while (std::getline(in, line)) {
    const std::string_view body = trimmed(line);
    if (body.empty()) continue;
    std::vector<std::string_view> fields;
    size_t start = 0;
    while (start <= body.size()) {
      const size_t comma = body.find(',', start);
      const size_t end = comma == std::string_view::npos ? body.size() : comma;
      fields.push_back(trimmed(body.substr(start, end - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 10)
      throw std::invalid_argument("trend CSV row has " + std::to_string(fields.size()) +
                                  " fields, expected 10");
    TrendCsvRow row;
    row.n_users = parse_int_strict(fields[0], "user count");
    row.trial = parse_int_strict(fields[1], "trial index");
    {
      const auto [ptr, ec] =
          std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), row.seed);
      if (ec != std::errc{} || ptr != fields[2].data() + fields[2].size())
        throw std::invalid_argument("cannot parse seed from \"" + std::string(fields[2]) + "\"");
    }
    auto parse_double = [](std::string_view text, const char* what) {
      const std::string owned(text);
      char* end = nullptr;
      const double v = std::strtod(owned.c_str(), &end);
      if (end != owned.c_str() + owned.size() || owned.empty())
        throw std::invalid_argument(std::string("cannot parse ") + what + " from \"" + owned + "\"");
      return v;
    };
    row.throughput_bps = parse_double(fields[3], "throughput");
    row.mean_sinr_db_all = parse_double(fields[4], "mean SINR (all)");
    row.mean_sinr_db_served = parse_double(fields[5], "mean SINR (served)");
    for (int w = 0; w < kNumWavelengths; ++w)
      row.usage[static_cast<size_t>(w)] = parse_int_strict(fields[6 + w], "wavelength usage");
    rows.push_back(row);
  }
  return rows;
}

std::string trend_rows_to_csv(const std::vector<TrendCsvRow>& rows) {
  std::string out = std::string(kTrendCsvHeader) + "\n";
  for (const TrendCsvRow& row : rows) {
    out += std::to_string(row.n_users);
    out += ',';
    out += std::to_string(row.trial);
    out += ',';
    out += std::to_string(row.seed);
    out += ',';
    out += format_g17(row.throughput_bps);
    out += ',';
    out += format_g17(row.mean_sinr_db_all);
    out += ',';
    out += format_g17(row.mean_sinr_db_served);
    for (int w = 0; w < kNumWavelengths; ++w) {
      out += ',';
      out += std::to_string(row.usage[static_cast<size_t>(w)]);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::string gnuplot_curve(const TrendResult& trend, const char* column,
                          double (*pick)(const TrendPoint&)) {
  std::string out = std::string("# n ") + column + "\n";
  for (const TrendPoint& point : trend.points) {
    out += std::to_string(point.n_users);
    out += ' ';
    out += format_g17(pick(point));
    out += '\n';
  }
  return out;
}

} // namespace

std::string gnuplot_throughput(const TrendResult& trend) {
  return gnuplot_curve(trend, "mean_throughput_gbps",
                       [](const TrendPoint& p) { return p.mean_throughput_bps / 1e9; });
}

std::string gnuplot_sinr_db(const TrendResult& trend) {
  return gnuplot_curve(trend, "mean_sinr_db_all",
                       [](const TrendPoint& p) { return p.mean_sinr_db_all; });
}

std::string gnuplot_sinr_db_served(const TrendResult& trend) {
  return gnuplot_curve(trend, "mean_sinr_db_served",
                       [](const TrendPoint& p) { return p.mean_sinr_db_served; });
}

std::vector<UserPosition> users_from_json(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const ordered_json::exception& e) {
    throw std::invalid_argument(std::string("positions file is not valid JSON: ") + e.what());
  }
  const ordered_json* arr = &doc;
  if (doc.is_object()) {
    check_keys(doc, "positions file", {"users"});
    if (!doc.contains("users"))
      throw std::invalid_argument("positions object needs a \"users\" array");
    arr = &doc.at("users");
  }
  if (!arr->is_array()) throw std::invalid_argument("positions must be an array of [x, y] pairs");
  std::vector<UserPosition> users;
  for (const ordered_json& entry : *arr) {
    if (!entry.is_array() || entry.size() != 2)
      throw std::invalid_argument("each position must be an [x, y] pair");
    UserPosition u;
    try {
      u.x = entry[0].get<double>();
      u.y = entry[1].get<double>();
    } catch (const ordered_json::exception& e) {
      throw std::invalid_argument(std::string("malformed position entry: ") + e.what());
    }
    users.push_back(u);
  }
  if (users.empty()) throw std::invalid_argument("positions file lists no users");
  return users;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open \"" + path + "\" for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw io_error("failed while writing \"" + path + "\"");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open \"" + path + "\" for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw io_error("failed while reading \"" + path + "\"");
  return buf.str();
}

} // namespace vlcwdm
