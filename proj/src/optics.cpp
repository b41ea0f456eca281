#include "vlcwdm/optics.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace vlcwdm {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kGainClamp = 1e-30; // below this the squared terms denormalize
} // namespace

Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  if (n == 0.0) throw std::domain_error("cannot normalize a zero vector");
  return {a.x / n, a.y / n, a.z / n};
}

const char* to_string(Wavelength w) {
  switch (w) {
    case Wavelength::Red: return "red";
    case Wavelength::Yellow: return "yellow";
    case Wavelength::Green: return "green";
    case Wavelength::Blue: return "blue";
  }
  return "red";
}

std::optional<Wavelength> wavelength_from_string(std::string_view name) {
  for (Wavelength w : all_wavelengths())
    if (name == to_string(w)) return w;
  return std::nullopt;
}

RoomConfig RoomConfig::default_room() {
  RoomConfig room;
  room.luminaires.reserve(8);
  for (double x : {1.0, 3.0})
    for (double y : {1.0, 3.0, 5.0, 7.0})
      room.luminaires.push_back(Luminaire{.position = {x, y, 3.0}});
  return room;
}

void RoomConfig::validate() const {
  if (!(width > 0.0) || !(length > 0.0) || !(height > 0.0))
    throw std::invalid_argument("room dimensions must be positive");
  if (!(floor_height >= 0.0) || !(floor_height < height))
    throw std::invalid_argument("floor_height must lie in [0, height)");
  if (!(power_multiplier > 0.0))
    throw std::invalid_argument("power_multiplier must be positive");
  if (luminaires.empty())
    throw std::invalid_argument("room needs at least one luminaire");
  if (luminaires.size() > 64u)
    throw std::invalid_argument("at most 64 luminaires supported");
  for (size_t i = 0; i < luminaires.size(); ++i) {
    const Luminaire& lum = luminaires[i];
    const Vec3& p = lum.position;
    if (p.x < 0.0 || p.x > width || p.y < 0.0 || p.y > length || p.z < 0.0 || p.z > height)
      throw std::invalid_argument("luminaire " + std::to_string(i) + " lies outside the room");
    if (!(lum.half_power_semiangle_deg > 0.0) || !(lum.half_power_semiangle_deg < 90.0))
      throw std::invalid_argument("luminaire " + std::to_string(i) +
                                  ": half-power semi-angle must be in (0, 90) degrees");
    if (norm(lum.orientation) == 0.0)
      throw std::invalid_argument("luminaire " + std::to_string(i) + ": zero orientation");
    for (double p_w : lum.tx_power)
      if (!(p_w >= 0.0))
        throw std::invalid_argument("luminaire " + std::to_string(i) + ": negative tx power");
  }
}

void ReceiverModel::validate() const {
  if (!(responsivity > 0.0)) throw std::invalid_argument("responsivity must be positive");
  if (!(detector_area > 0.0)) throw std::invalid_argument("detector_area must be positive");
  if (!(fov_deg > 0.0) || fov_deg > 90.0)
    throw std::invalid_argument("fov_deg must be in (0, 90]");
  if (!(noise_current_density > 0.0))
    throw std::invalid_argument("noise_current_density must be positive");
  if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be positive");
  if (!(rate_cap > 0.0)) throw std::invalid_argument("rate_cap must be positive");
  if (!(ambient_current >= 0.0)) throw std::invalid_argument("ambient_current must be >= 0");
}

double lambertian_order(double half_power_semiangle_deg) {
  if (!(half_power_semiangle_deg > 0.0) || !(half_power_semiangle_deg < 90.0))
    throw std::domain_error("half-power semi-angle must be in (0, 90) degrees");
  // long double keeps the halving angles (60 -> 1, 45 -> 2) exact after narrowing
  const long double rad =
      static_cast<long double>(half_power_semiangle_deg) * std::numbers::pi_v<long double> / 180.0L;
  const long double m = -std::numbers::ln2_v<long double> / std::log(std::cos(rad));
  return static_cast<double>(m);
}

double los_gain_at(const Vec3& tx_pos, const Vec3& tx_axis, double m,
                   const Vec3& rx_pos, const Vec3& rx_normal,
                   double detector_area, double fov_deg) {
  if (!(detector_area > 0.0)) throw std::domain_error("detector_area must be positive");
  const Vec3 delta = rx_pos - tx_pos;
  const double d_sq = dot(delta, delta);
  if (d_sq == 0.0) throw std::domain_error("emitter and detector coincide");
  const double d = std::sqrt(d_sq);

  const double cos_phi = dot(tx_axis, delta) / d; // emission angle
  if (cos_phi <= 0.0) return 0.0;
  const double cos_psi = dot(rx_normal, -delta) / d; // incidence angle
  const double psi = std::acos(std::clamp(cos_psi, -1.0, 1.0));
  if (psi > fov_deg * kPi / 180.0) return 0.0;

  const double h =
      (m + 1.0) * detector_area * std::pow(cos_phi, m) * cos_psi / (2.0 * kPi * d_sq);
  return h < kGainClamp ? 0.0 : h;
}

double los_gain(const Luminaire& tx, const UserPosition& rx, double floor_height,
                double detector_area, double fov_deg) {
  const double m = lambertian_order(tx.half_power_semiangle_deg);
  return los_gain_at(tx.position, normalized(tx.orientation), m,
                     Vec3{rx.x, rx.y, floor_height}, normalized(rx.normal),
                     detector_area, fov_deg);
}

GainMatrix gain_matrix(const RoomConfig& room, const std::vector<UserPosition>& users,
                       const ReceiverModel& receiver) {
  if (users.empty()) throw std::invalid_argument("gain_matrix needs at least one user");
  GainMatrix H(users.size(), std::vector<double>(room.luminaires.size(), 0.0));
  for (size_t u = 0; u < users.size(); ++u)
    for (size_t a = 0; a < room.luminaires.size(); ++a)
      H[u][a] = los_gain(room.luminaires[a], users[u], room.floor_height,
                         receiver.detector_area, receiver.fov_deg);
  return H;
}

} // namespace vlcwdm
