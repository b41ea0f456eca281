#pragma once

#include <vector>

#include "vlcwdm/optics.hpp"

namespace vlcwdm {

inline constexpr double kElectronCharge = 1.602176634e-19; // C

// sinr_db reported for a zero-SINR link (log floor keeping records finite)
inline constexpr double kZeroSinrDbFloor = -400.0;

struct PairChoice {
  int luminaire = 0;
  Wavelength wavelength = Wavelength::Red;

  bool operator==(const PairChoice&) const = default;
};

// per-user serving (access point, wavelength) choice
using Assignment = std::vector<PairChoice>;

// throws std::invalid_argument on out-of-range indices or a repeated pair
void validate_assignment(const Assignment& assignment, int n_luminaires);

struct NoiseBreakdown {
  double sigma_bn_sq = 0.0; // background-light shot noise, A^2
  double sigma_s_sq = 0.0;  // signal shot noise, A^2
  double sigma_pr_sq = 0.0; // preamplifier noise, A^2
  double total = 0.0;       // sigma_t^2
};

struct LinkReport {
  double signal_sq = 0.0;       // (R * P_t * h)^2, A^2
  double interference_sq = 0.0; // co-channel sum, A^2
  NoiseBreakdown noise;         // at the receiver's full bandwidth
  double sinr = 0.0;
  double sinr_db = kZeroSinrDbFloor;
  double achievable_rate = 0.0; // bit/s at the target BER
};

double signal_photocurrent(const ReceiverModel& receiver, double tx_power_w, double gain);

// sigma_pr^2 = i_n^2 B, sigma_s^2 = 2 q I_sig B, sigma_bn^2 = 2 q I_bg B
NoiseBreakdown noise_variance(const ReceiverModel& receiver, double signal_current,
                              double background_current, double bandwidth_hz);

// Background photocurrent at the tuned wavelength: ambient plus the emission of
// every luminaire that is lighting (not carrying a channel) on that wavelength.
// carriers = luminaires serving some user on the wavelength (incl. the user's own).
double background_current(const RoomConfig& room, const ReceiverModel& receiver,
                          const std::vector<double>& user_gains, Wavelength w,
                          const std::vector<bool>& carriers);

// Co-channel interference power received by user u: sum over other users on the
// same wavelength of the squared photocurrent from their serving luminaires.
double interference_sq(const std::vector<UserPosition>& users, const Assignment& assignment,
                       const GainMatrix& gains, const RoomConfig& room,
                       const ReceiverModel& receiver, int user);

// Full per-user link evaluation at the receiver bandwidth:
// sinr = signal_sq / (sigma_t^2 + interference_sq), plus the achievable rate.
std::vector<LinkReport> sinr(const std::vector<UserPosition>& users,
                             const Assignment& assignment, const RoomConfig& room,
                             const ReceiverModel& receiver);

double q_function(double x);
// inverse of the Gaussian tail on (0, 0.5]; throws std::domain_error outside
double q_function_inverse(double p);

// OOK: BER = Q(sqrt(sinr)); throws std::domain_error for negative sinr
double ook_ber(double sinr_value);

// (Q^-1(target_ber))^2 — the SINR needed to hit the target BER
double ber_target_sinr(double target_ber = 1e-9);

// Largest OOK bit rate <= rate_cap whose required bandwidth B' = 0.7 R_b keeps
// SINR at the target; noise rescales linearly with B'. 0 when interference
// alone exceeds signal_sq / gamma (no bandwidth reaches the target).
double achievable_rate(const LinkReport& link, const ReceiverModel& receiver,
                       double target_ber = 1e-9);

} // namespace vlcwdm
