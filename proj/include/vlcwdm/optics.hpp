#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vlcwdm {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 normalized(const Vec3& a); // throws std::domain_error on zero vector

enum class Wavelength : int { Red = 0, Yellow = 1, Green = 2, Blue = 3 };

inline constexpr int kNumWavelengths = 4;

inline constexpr std::array<Wavelength, kNumWavelengths> all_wavelengths() {
  return {Wavelength::Red, Wavelength::Yellow, Wavelength::Green, Wavelength::Blue};
}

const char* to_string(Wavelength w);
std::optional<Wavelength> wavelength_from_string(std::string_view name);

struct Luminaire {
  Vec3 position;
  // optical watts per wavelength, indexed by Wavelength
  std::array<double, kNumWavelengths> tx_power{0.8, 0.5, 0.3, 0.3};
  Vec3 orientation{0.0, 0.0, -1.0}; // straight down
  double half_power_semiangle_deg = 70.0;
};

struct RoomConfig {
  double width = 4.0;        // x extent, m
  double length = 8.0;       // y extent, m
  double height = 3.0;       // z extent, m
  double floor_height = 1.0; // communication plane above ground, m
  // scales every luminaire's tx_power; calibration knob for the rate study
  double power_multiplier = 1.0;
  std::vector<Luminaire> luminaires;

  // 4 m x 8 m x 3 m room, plane at 1 m, eight ceiling units on a 2 x 4 grid
  static RoomConfig default_room();

  void validate() const; // throws std::invalid_argument
};

struct UserPosition {
  double x = 0.0, y = 0.0;      // on the communication floor
  Vec3 normal{0.0, 0.0, 1.0};   // straight up
};

struct ReceiverModel {
  double responsivity = 0.4;            // A/W
  double detector_area = 1e-4;          // m^2
  double fov_deg = 90.0;                // hemispherical acceptance
  double noise_current_density = 1e-11; // A/sqrt(Hz)
  double bandwidth = 7e9;               // Hz
  double rate_cap = 1e10;               // bit/s
  double ambient_current = 0.0;         // extra background photocurrent, A

  void validate() const; // throws std::invalid_argument
};

// m = -ln 2 / ln cos(semiangle); throws std::domain_error outside (0, 90)
double lambertian_order(double half_power_semiangle_deg);

// Generalized-Lambertian LOS gain between an emitter at tx_pos radiating along
// tx_axis (unit) with order m, and a detector at rx_pos with unit normal
// rx_normal. Returns 0 outside the emission hemisphere or receiver FOV.
// Throws std::domain_error when the two points coincide.
double los_gain_at(const Vec3& tx_pos, const Vec3& tx_axis, double m,
                   const Vec3& rx_pos, const Vec3& rx_normal,
                   double detector_area, double fov_deg);

double los_gain(const Luminaire& tx, const UserPosition& rx, double floor_height,
                double detector_area, double fov_deg);

// H[user][luminaire]; wavelength-independent (flat responsivity)
using GainMatrix = std::vector<std::vector<double>>;

GainMatrix gain_matrix(const RoomConfig& room, const std::vector<UserPosition>& users,
                       const ReceiverModel& receiver);

} // namespace vlcwdm
