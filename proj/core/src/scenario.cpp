#include "seccell/scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "seccell/random.hpp"

namespace seccell {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

void PhysParams::validate() const {
  require(positive_finite(bandwidth_hz), "phys.bandwidth_hz must be positive");
  require(leds_per_ap > 0, "phys.leds_per_ap must be positive");
  require(positive_finite(dc_current), "phys.dc_current_a must be positive");
  require(modulation_index > 0.0 && modulation_index <= 1.0,
          "phys.modulation_index must be in (0, 1]");
  require(positive_finite(conversion_efficiency), "phys.conversion_efficiency must be positive");
  require(positive_finite(responsivity), "phys.responsivity must be positive");
  require(positive_finite(tia_gain), "phys.tia_gain must be positive");
  require(positive_finite(pd_area), "phys.pd_area_m2 must be positive");
  require(positive_finite(refractive_index), "phys.refractive_index must be positive");
  require(semi_angle > 0.0 && semi_angle < std::numbers::pi / 2,
          "phys.semi_angle_deg must be in (0, 90)");
  require(fov_half > 0.0 && fov_half < std::numbers::pi, "phys.fov_half_deg must be in (0, 180)");
  require(reflectance >= 0.0 && reflectance <= 1.0, "phys.reflectance must be in [0, 1]");
  require(positive_finite(noise_psd), "phys.noise_psd must be positive");
}

void Scenario::validate() const {
  require(positive_finite(room.length) && positive_finite(room.width) &&
              positive_finite(room.height),
          "room: dimensions must be positive");
  require(!ap_positions.empty(), "aps: scenario needs at least one AP");
  require(!user_positions.empty(), "users: scenario needs at least one user");
  for (std::size_t i = 0; i < ap_positions.size(); ++i) {
    require(room.contains(ap_positions[i]), "aps.positions[" + std::to_string(i) + "] lies outside the room");
  }
  for (std::size_t j = 0; j < user_positions.size(); ++j) {
    require(room.contains(user_positions[j]),
            "users.positions[" + std::to_string(j) + "] lies outside the room");
  }
  require(qos.size() == user_positions.size(), "qos.profiles: need exactly one QoS profile per user");
  for (const auto& q : qos) q.validate();
  require(positive_finite(wall_grid.patch_width) && positive_finite(wall_grid.patch_height),
          "wall_patch: dimensions must be positive");
  require(unblocked_probability >= 0.0 && unblocked_probability <= 1.0,
          "blockage.unblocked_probability must be in [0, 1]");
  phys.validate();
}

std::vector<Vec3> grid_ap_positions(const Room& room, std::size_t per_side) {
  if (per_side == 0) throw std::invalid_argument("AP grid needs at least one AP per side");
  std::vector<Vec3> aps;
  aps.reserve(per_side * per_side);
  const double dx = room.length / static_cast<double>(per_side);
  const double dy = room.width / static_cast<double>(per_side);
  for (std::size_t ix = 0; ix < per_side; ++ix) {
    for (std::size_t iy = 0; iy < per_side; ++iy) {
      aps.push_back({(static_cast<double>(ix) + 0.5) * dx, (static_cast<double>(iy) + 0.5) * dy,
                     room.height});
    }
  }
  return aps;
}

std::vector<Vec3> random_user_positions(const Room& room, std::size_t count,
                                        double receiver_height, std::uint64_t seed) {
  if (receiver_height < 0.0 || receiver_height >= room.height) {
    throw std::invalid_argument("receiver height must lie below the ceiling");
  }
  Rng rng(derive_seed(seed, {kStreamLayout}));
  std::uniform_real_distribution<double> ux(0.0, room.length);
  std::uniform_real_distribution<double> uy(0.0, room.width);
  std::vector<Vec3> users;
  users.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double x = ux(rng);
    const double y = uy(rng);
    users.push_back({x, y, receiver_height});
  }
  return users;
}

std::vector<QoSProfile> graded_qos(std::size_t count, double theta_lo_per_bit,
                                   double theta_hi_per_bit, double be_lo_bps, double be_hi_bps,
                                   double bandwidth_hz) {
  std::vector<QoSProfile> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double f = count > 1 ? static_cast<double>(j) / static_cast<double>(count - 1) : 0.0;
    const double theta =
        std::exp(std::log(theta_lo_per_bit) + f * (std::log(theta_hi_per_bit) - std::log(theta_lo_per_bit)));
    const double be = be_lo_bps + f * (be_hi_bps - be_lo_bps);
    out.push_back(QoSProfile::from_bits(theta, be, bandwidth_hz));
  }
  return out;
}

Scenario make_grid_scenario(const LayoutSpec& layout, const PhysParams& phys,
                            double unblocked_probability, const WallGrid& wall_grid) {
  Scenario s;
  s.room = layout.room;
  s.ap_positions = grid_ap_positions(layout.room, layout.ap_grid_per_side);
  s.user_positions = random_user_positions(layout.room, layout.num_users, layout.receiver_height,
                                           layout.layout_seed);
  s.phys = phys;
  s.qos = graded_qos(layout.num_users, layout.theta_lo_per_bit, layout.theta_hi_per_bit,
                     layout.be_lo_bps, layout.be_hi_bps, phys.bandwidth_hz);
  s.wall_grid = wall_grid;
  s.unblocked_probability = unblocked_probability;
  return s;
}

Scenario reference_scenario(std::uint64_t layout_seed) {
  LayoutSpec layout;
  layout.layout_seed = layout_seed;
  return make_grid_scenario(layout, PhysParams{}, 0.7);
}

}  // namespace seccell
