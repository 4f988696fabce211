#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "seccell/effective_rate.hpp"
#include "seccell/geometry.hpp"

namespace seccell {

/// Optical front-end and noise constants. SI units; angles in radians.
struct PhysParams {
  double bandwidth_hz = 20e6;
  int leds_per_ap = 400;
  double dc_current = 0.7;            // A
  double modulation_index = 0.2;      // gamma
  double conversion_efficiency = 0.44;  // W/A
  double responsivity = 0.54;         // A/W
  double tia_gain = 1.0;              // V/A
  double pd_area = 1e-4;              // m^2
  double refractive_index = 1.5;
  double semi_angle = deg_to_rad(70.0);  // LED half-power semi-angle
  double fov_half = deg_to_rad(100.0);   // receiver FoV half-angle
  double reflectance = 0.8;
  double noise_psd = 1e-22;  // A^2/Hz

  /// Peak signal amplitude A = gamma * I_DC.
  [[nodiscard]] double peak_amplitude() const { return modulation_index * dc_current; }
  /// sigma^2 = N0 * B.
  [[nodiscard]] double noise_variance() const { return noise_psd * bandwidth_hz; }

  void validate() const;
};

/// Size of one reflecting wall element used to discretize first-bounce paths.
struct WallGrid {
  double patch_width = 0.1;   // along the wall, metres
  double patch_height = 0.05; // vertical, metres
};

struct Scenario {
  Room room;
  std::vector<Vec3> ap_positions;
  std::vector<Vec3> user_positions;
  PhysParams phys;
  std::vector<QoSProfile> qos;  // one per user
  WallGrid wall_grid;
  double unblocked_probability = 0.7;  // beta: P(LoS present) per user per slot

  [[nodiscard]] std::size_t num_aps() const { return ap_positions.size(); }
  [[nodiscard]] std::size_t num_users() const { return user_positions.size(); }

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
};

/// Square ceiling grid of `per_side` x `per_side` APs centred in their cells.
std::vector<Vec3> grid_ap_positions(const Room& room, std::size_t per_side);

/// Uniform random receiver positions at height `receiver_height`.
std::vector<Vec3> random_user_positions(const Room& room, std::size_t count,
                                        double receiver_height, std::uint64_t seed);

/// QoS profiles whose exponent grows log-uniformly and whose effective bandwidth
/// grows linearly with user index (first user gets the lower bound).
std::vector<QoSProfile> graded_qos(std::size_t count, double theta_lo_per_bit,
                                   double theta_hi_per_bit, double be_lo_bps, double be_hi_bps,
                                   double bandwidth_hz);

/// Layout recipe for generated scenarios.
struct LayoutSpec {
  Room room;
  std::size_t ap_grid_per_side = 8;
  std::size_t num_users = 10;
  double receiver_height = 0.5;
  std::uint64_t layout_seed = 1;
  double theta_lo_per_bit = 1e-10;
  double theta_hi_per_bit = 1e-7;
  double be_lo_bps = 1e5;
  double be_hi_bps = 1e6;
};

Scenario make_grid_scenario(const LayoutSpec& layout, const PhysParams& phys,
                            double unblocked_probability, const WallGrid& wall_grid = {});

/// Reference setup: 16 x 16 x 2.5 m room, 8 x 8 APs, 10 users, beta = 0.7.
Scenario reference_scenario(std::uint64_t layout_seed = 1);

}  // namespace seccell
