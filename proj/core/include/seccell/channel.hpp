#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "seccell/geometry.hpp"
#include "seccell/random.hpp"
#include "seccell/scenario.hpp"

namespace seccell {

/// Lambertian emission order -ln 2 / ln(cos semi_angle).
/// Throws std::domain_error when cos(semi_angle) <= 0 or == 1.
double lambertian_order(double semi_angle);

/// Optical concentrator gain: a^2 / sin^2(fov_half) inside the field of view, else 0.
double concentrator_gain(double incidence, double refractive_index, double fov_half);

/// Direct-path DC gain (V/A) from a downward LED to an upward detector.
/// Zero when the detector is not below the LED or the incidence exceeds the FoV.
double los_gain(const Vec3& ap, const Vec3& user, const PhysParams& phys);

/// First-reflection DC gain (V/A), summed over the wall patches of `room`.
double nlos_gain(const Vec3& ap, const Vec3& user, const PhysParams& phys, const Room& room,
                 const WallGrid& wall_grid);

/// One reflecting element on a side wall.
struct WallPatch {
  Vec3 center;
  Vec3 normal;  // unit, pointing into the room
  double area = 0.0;
};

/// Tiles the four side walls into patches of roughly `grid` size.
std::vector<WallPatch> tile_walls(const Room& room, const WallGrid& grid);

/// First-bounce field for a fixed set of APs.
///
/// The first-reflection integrand factors into an AP-to-patch part and a
/// patch-to-receiver part. The AP-to-patch factors are cached once, so the
/// gain from every AP to a new receiver position costs one pass over the
/// patches per AP, and the all-AP sum costs one pass in total.
class ReflectionField {
 public:
  ReflectionField(const Room& room, const WallGrid& grid, const std::vector<Vec3>& aps,
                  const PhysParams& phys);

  /// NLoS gain from every AP to `receiver`.
  [[nodiscard]] std::vector<double> gains_to(const Vec3& receiver) const;
  /// Sum of NLoS gains over all APs at `receiver`.
  [[nodiscard]] double total_to(const Vec3& receiver) const;

  [[nodiscard]] std::size_t num_patches() const { return patches_.size(); }

 private:
  void receiver_factors(const Vec3& receiver, std::vector<double>& out) const;

  std::vector<WallPatch> patches_;
  std::size_t num_aps_ = 0;
  std::vector<double> first_hop_;     // [ap * patches + p]
  std::vector<double> first_hop_sum_; // [p], summed over APs
  PhysParams phys_;
  double scale_ = 0.0;
  double cos_fov_ = 0.0;
  double conc_gain_ = 0.0;
};

/// Deterministic per-link gains, K_a x K_u, row-major by AP.
class GainTable {
 public:
  GainTable() = default;
  GainTable(std::size_t num_aps, std::size_t num_users);

  [[nodiscard]] std::size_t num_aps() const { return num_aps_; }
  [[nodiscard]] std::size_t num_users() const { return num_users_; }

  [[nodiscard]] double los(std::size_t ap, std::size_t user) const { return los_[ap * num_users_ + user]; }
  [[nodiscard]] double nlos(std::size_t ap, std::size_t user) const { return nlos_[ap * num_users_ + user]; }
  [[nodiscard]] double total(std::size_t ap, std::size_t user) const { return los(ap, user) + nlos(ap, user); }

  void set(std::size_t ap, std::size_t user, double los_gain, double nlos_gain);

 private:
  std::size_t num_aps_ = 0;
  std::size_t num_users_ = 0;
  std::vector<double> los_;
  std::vector<double> nlos_;
};

/// LoS and first-reflection gains for every (AP, user) pair of a scenario.
GainTable compute_gains(const Scenario& scenario);

using ApSet = std::vector<std::size_t>;

/// APs whose unblocked LoS + NLoS gain to `user` exceeds `epsilon`, ascending.
ApSet capable_ap_set(const GainTable& gains, std::size_t user, double epsilon);

std::vector<ApSet> capable_ap_sets(const GainTable& gains, double epsilon);

/// Realized channel of one slot.
struct ChannelState {
  std::size_t slot = 0;
  std::vector<std::uint8_t> unblocked;  // xi_j
  /// h[j][n]: gain from the n-th AP of Omega_j to user j.
  std::vector<std::vector<double>> h;
  /// h_e[j][k][n]: gain from the n-th AP of Omega_j to user k; empty when k == j.
  std::vector<std::vector<std::vector<double>>> h_e;
};

/// Draws one blockage indicator per user (LoS present with probability
/// `unblocked_probability`) and assembles the legitimate and wiretap vectors.
ChannelState sample_slot_channel(const GainTable& gains, const std::vector<ApSet>& capable,
                                 double unblocked_probability, std::size_t slot, Rng& rng);

/// Builds the channel for a given blockage pattern (no randomness).
ChannelState assemble_channel(const GainTable& gains, const std::vector<ApSet>& capable,
                              std::vector<std::uint8_t> unblocked, std::size_t slot);

}  // namespace seccell
