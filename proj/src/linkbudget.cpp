#include "vlcwdm/linkbudget.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vlcwdm {

void validate_assignment(const Assignment& assignment, int n_luminaires) {
  std::vector<bool> taken(static_cast<size_t>(n_luminaires) * kNumWavelengths, false);
  for (size_t u = 0; u < assignment.size(); ++u) {
    const PairChoice& pc = assignment[u];
    if (pc.luminaire < 0 || pc.luminaire >= n_luminaires)
      throw std::invalid_argument("user " + std::to_string(u) + ": luminaire index out of range");
    const int w = static_cast<int>(pc.wavelength);
    if (w < 0 || w >= kNumWavelengths)
      throw std::invalid_argument("user " + std::to_string(u) + ": bad wavelength");
    const size_t slot = static_cast<size_t>(pc.luminaire) * kNumWavelengths + w;
    if (taken[slot])
      throw std::invalid_argument("user " + std::to_string(u) +
                                  ": (luminaire, wavelength) pair already in use");
    taken[slot] = true;
  }
}

double signal_photocurrent(const ReceiverModel& receiver, double tx_power_w, double gain) {
  return receiver.responsivity * tx_power_w * gain;
}

NoiseBreakdown noise_variance(const ReceiverModel& receiver, double signal_current,
                              double background_current, double bandwidth_hz) {
  NoiseBreakdown nb;
  nb.sigma_pr_sq = receiver.noise_current_density * receiver.noise_current_density * bandwidth_hz;
  nb.sigma_s_sq = 2.0 * kElectronCharge * signal_current * bandwidth_hz;
  nb.sigma_bn_sq = 2.0 * kElectronCharge * background_current * bandwidth_hz;
  nb.total = nb.sigma_bn_sq + nb.sigma_s_sq + nb.sigma_pr_sq;
  return nb;
}

double background_current(const RoomConfig& room, const ReceiverModel& receiver,
                          const std::vector<double>& user_gains, Wavelength w,
                          const std::vector<bool>& carriers) {
  double current = receiver.ambient_current;
  for (size_t a = 0; a < room.luminaires.size(); ++a) {
    if (carriers[a]) continue; // communication channel, counted as signal or interference
    const double p = room.luminaires[a].tx_power[static_cast<int>(w)] * room.power_multiplier;
    current += receiver.responsivity * p * user_gains[a];
  }
  return current;
}

double interference_sq(const std::vector<UserPosition>& users, const Assignment& assignment,
                       const GainMatrix& gains, const RoomConfig& room,
                       const ReceiverModel& receiver, int user) {
  if (assignment.size() != users.size())
    throw std::invalid_argument("assignment and user list sizes differ");
  validate_assignment(assignment, static_cast<int>(room.luminaires.size()));
  const PairChoice& own = assignment[user];
  double sum = 0.0;
  for (size_t u2 = 0; u2 < users.size(); ++u2) {
    if (static_cast<int>(u2) == user) continue;
    const PairChoice& other = assignment[u2];
    if (other.wavelength != own.wavelength) continue;
    const double p =
        room.luminaires[other.luminaire].tx_power[static_cast<int>(own.wavelength)] *
        room.power_multiplier;
    const double i = signal_photocurrent(receiver, p, gains[user][other.luminaire]);
    sum += i * i;
  }
  return sum;
}

std::vector<LinkReport> sinr(const std::vector<UserPosition>& users,
                             const Assignment& assignment, const RoomConfig& room,
                             const ReceiverModel& receiver) {
  if (assignment.size() != users.size())
    throw std::invalid_argument("assignment and user list sizes differ");
  const int n_lum = static_cast<int>(room.luminaires.size());
  validate_assignment(assignment, n_lum);
  const GainMatrix H = gain_matrix(room, users, receiver);

  // luminaires carrying a channel per wavelength; the rest light the room
  std::array<std::vector<bool>, kNumWavelengths> carriers;
  for (auto& c : carriers) c.assign(n_lum, false);
  for (const PairChoice& pc : assignment)
    carriers[static_cast<int>(pc.wavelength)][pc.luminaire] = true;

  std::vector<LinkReport> reports(users.size());
  for (size_t u = 0; u < users.size(); ++u) {
    const PairChoice& pc = assignment[u];
    const int w = static_cast<int>(pc.wavelength);
    const double p = room.luminaires[pc.luminaire].tx_power[w] * room.power_multiplier;
    const double i_sig = signal_photocurrent(receiver, p, H[u][pc.luminaire]);
    const double i_bg = background_current(room, receiver, H[u], pc.wavelength, carriers[w]);

    LinkReport& r = reports[u];
    r.signal_sq = i_sig * i_sig;
    r.interference_sq =
        interference_sq(users, assignment, H, room, receiver, static_cast<int>(u));
    r.noise = noise_variance(receiver, i_sig, i_bg, receiver.bandwidth);
    r.sinr = r.signal_sq / (r.noise.total + r.interference_sq);
    r.sinr_db = r.sinr > 0.0 ? 10.0 * std::log10(r.sinr) : kZeroSinrDbFloor;
    r.achievable_rate = achievable_rate(r, receiver);
  }
  return reports;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double q_function_inverse(double p) {
  if (!(p > 0.0) || p > 0.5) throw std::domain_error("q_function_inverse needs p in (0, 0.5]");
  double lo = 0.0, hi = 45.0; // Q(45) underflows double, safely brackets any p > 0
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (q_function(mid) > p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double ook_ber(double sinr_value) {
  if (sinr_value < 0.0) throw std::domain_error("ook_ber needs a nonnegative SINR");
  return q_function(std::sqrt(sinr_value));
}

double ber_target_sinr(double target_ber) {
  static const double cached = [] {
    const double q = q_function_inverse(1e-9);
    return q * q;
  }();
  if (target_ber == 1e-9) return cached;
  const double q = q_function_inverse(target_ber);
  return q * q;
}

double achievable_rate(const LinkReport& link, const ReceiverModel& receiver,
                       double target_ber) {
  const double gamma = ber_target_sinr(target_ber);
  const double margin = link.signal_sq / gamma - link.interference_sq;
  if (margin <= 0.0) return 0.0; // interference-limited: no bandwidth reaches the target
  const double density = link.noise.total / receiver.bandwidth; // A^2 per Hz
  const double bandwidth = margin / density;
  return std::min(bandwidth / 0.7, receiver.rate_cap);
}

} // namespace vlcwdm
