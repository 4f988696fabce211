#include "seccell/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace seccell {
namespace {

constexpr Vec3 kUp{0.0, 0.0, 1.0};

// Common prefactor eta (L + 1) delta varpi T / (2 pi) of both gain formulas.
double optical_prefactor(const PhysParams& phys, double order) {
  return phys.conversion_efficiency * (order + 1.0) * phys.pd_area * phys.responsivity *
         phys.tia_gain / (2.0 * std::numbers::pi);
}

std::size_t cell_count(double extent, double cell) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(extent / cell)));
}

}  // namespace

double lambertian_order(double semi_angle) {
  const double c = std::cos(semi_angle);
  if (!(c > 0.0) || c >= 1.0) {
    throw std::domain_error("lambertian_order: semi-angle must lie in (0, pi/2)");
  }
  return -std::numbers::ln2 / std::log(c);
}

double concentrator_gain(double incidence, double refractive_index, double fov_half) {
  if (incidence > fov_half) return 0.0;
  const double s = std::sin(fov_half);
  return refractive_index * refractive_index / (s * s);
}

double los_gain(const Vec3& ap, const Vec3& user, const PhysParams& phys) {
  const Vec3 v = ap - user;
  const double d = v.norm();
  if (d == 0.0) throw std::invalid_argument("los_gain: AP and user coincide");
  const double cos_angle = v.z / d;  // irradiance == incidence for vertical optics
  if (cos_angle <= 0.0) return 0.0;
  const double incidence = std::acos(std::min(1.0, cos_angle));
  const double g = concentrator_gain(incidence, phys.refractive_index, phys.fov_half);
  if (g == 0.0) return 0.0;
  const double order = lambertian_order(phys.semi_angle);
  return optical_prefactor(phys, order) / (d * d) * g * std::pow(cos_angle, order) * cos_angle;
}

std::vector<WallPatch> tile_walls(const Room& room, const WallGrid& grid) {
  if (!(grid.patch_width > 0.0) || !(grid.patch_height > 0.0)) {
    throw std::invalid_argument("wall_patch: dimensions must be positive");
  }
  const std::size_t n_up = cell_count(room.height, grid.patch_height);
  const double dz = room.height / static_cast<double>(n_up);
  std::vector<WallPatch> patches;

  auto tile = [&](double along_len, auto make_center, Vec3 normal) {
    const std::size_t n_along = cell_count(along_len, grid.patch_width);
    const double ds = along_len / static_cast<double>(n_along);
    for (std::size_t a = 0; a < n_along; ++a) {
      for (std::size_t u = 0; u < n_up; ++u) {
        const double s = (static_cast<double>(a) + 0.5) * ds;
        const double z = (static_cast<double>(u) + 0.5) * dz;
        patches.push_back({make_center(s, z), normal, ds * dz});
      }
    }
  };
  tile(room.width, [](double s, double z) { return Vec3{0.0, s, z}; }, Vec3{1.0, 0.0, 0.0});
  tile(room.width, [&](double s, double z) { return Vec3{room.length, s, z}; }, Vec3{-1.0, 0.0, 0.0});
  tile(room.length, [](double s, double z) { return Vec3{s, 0.0, z}; }, Vec3{0.0, 1.0, 0.0});
  tile(room.length, [&](double s, double z) { return Vec3{s, room.width, z}; }, Vec3{0.0, -1.0, 0.0});
  return patches;
}

double nlos_gain(const Vec3& ap, const Vec3& user, const PhysParams& phys, const Room& room,
                 const WallGrid& wall_grid) {
  const double order = lambertian_order(phys.semi_angle);
  const double cos_fov = std::cos(phys.fov_half);
  double sum = 0.0;
  for (const WallPatch& p : tile_walls(room, wall_grid)) {
    const Vec3 to_ap = ap - p.center;
    const double d_ap = to_ap.norm();
    const double cos_led = to_ap.z / d_ap;             // LED faces down
    const double cos_wall_in = p.normal.dot(to_ap) / d_ap;
    const Vec3 to_user = user - p.center;
    const double d_user = to_user.norm();
    const double cos_wall_out = p.normal.dot(to_user) / d_user;
    const double cos_rx = -to_user.z / d_user;         // detector faces up
    if (cos_led <= 0.0 || cos_wall_in <= 0.0 || cos_wall_out <= 0.0 || cos_rx <= 0.0) continue;
    if (cos_rx < cos_fov) continue;
    const double g = concentrator_gain(std::acos(std::min(1.0, cos_rx)), phys.refractive_index,
                                       phys.fov_half);
    sum += std::pow(cos_led, order) * cos_wall_in * cos_wall_out * g * cos_rx * p.area /
           (d_ap * d_ap * d_user * d_user);
  }
  return optical_prefactor(phys, order) * phys.reflectance * sum;
}

ReflectionField::ReflectionField(const Room& room, const WallGrid& grid,
                                 const std::vector<Vec3>& aps, const PhysParams& phys)
    : patches_(tile_walls(room, grid)), num_aps_(aps.size()), phys_(phys) {
  const double order = lambertian_order(phys.semi_angle);
  scale_ = optical_prefactor(phys, order) * phys.reflectance;
  cos_fov_ = std::cos(phys.fov_half);
  conc_gain_ = concentrator_gain(0.0, phys.refractive_index, phys.fov_half);

  const std::size_t np = patches_.size();
  first_hop_.assign(num_aps_ * np, 0.0);
  first_hop_sum_.assign(np, 0.0);
  for (std::size_t i = 0; i < num_aps_; ++i) {
    for (std::size_t p = 0; p < np; ++p) {
      const WallPatch& w = patches_[p];
      const Vec3 to_ap = aps[i] - w.center;
      const double d = to_ap.norm();
      const double cos_led = to_ap.z / d;
      const double cos_in = w.normal.dot(to_ap) / d;
      if (cos_led <= 0.0 || cos_in <= 0.0) continue;
      const double f = std::pow(cos_led, order) * cos_in * w.area / (d * d);
      first_hop_[i * np + p] = f;
      first_hop_sum_[p] += f;
    }
  }
}

void ReflectionField::receiver_factors(const Vec3& receiver, std::vector<double>& out) const {
  out.assign(patches_.size(), 0.0);
  for (std::size_t p = 0; p < patches_.size(); ++p) {
    const WallPatch& w = patches_[p];
    const Vec3 to_rx = receiver - w.center;
    const double d = to_rx.norm();
    const double cos_out = w.normal.dot(to_rx) / d;
    const double cos_rx = -to_rx.z / d;
    if (cos_out <= 0.0 || cos_rx <= 0.0 || cos_rx < cos_fov_) continue;
    out[p] = cos_out * conc_gain_ * cos_rx / (d * d);
  }
}

std::vector<double> ReflectionField::gains_to(const Vec3& receiver) const {
  std::vector<double> r;
  receiver_factors(receiver, r);
  const std::size_t np = patches_.size();
  std::vector<double> out(num_aps_, 0.0);
  for (std::size_t i = 0; i < num_aps_; ++i) {
    const double* f = first_hop_.data() + i * np;
    double s = 0.0;
    for (std::size_t p = 0; p < np; ++p) s += f[p] * r[p];
    out[i] = scale_ * s;
  }
  return out;
}

double ReflectionField::total_to(const Vec3& receiver) const {
  std::vector<double> r;
  receiver_factors(receiver, r);
  double s = 0.0;
  for (std::size_t p = 0; p < patches_.size(); ++p) s += first_hop_sum_[p] * r[p];
  return scale_ * s;
}

GainTable::GainTable(std::size_t num_aps, std::size_t num_users)
    : num_aps_(num_aps),
      num_users_(num_users),
      los_(num_aps * num_users, 0.0),
      nlos_(num_aps * num_users, 0.0) {}

void GainTable::set(std::size_t ap, std::size_t user, double los_gain, double nlos_gain) {
  los_[ap * num_users_ + user] = los_gain;
  nlos_[ap * num_users_ + user] = nlos_gain;
}

GainTable compute_gains(const Scenario& scenario) {
  GainTable table(scenario.num_aps(), scenario.num_users());
  const ReflectionField field(scenario.room, scenario.wall_grid, scenario.ap_positions,
                              scenario.phys);
  for (std::size_t j = 0; j < scenario.num_users(); ++j) {
    const std::vector<double> nlos = field.gains_to(scenario.user_positions[j]);
    for (std::size_t i = 0; i < scenario.num_aps(); ++i) {
      table.set(i, j, los_gain(scenario.ap_positions[i], scenario.user_positions[j], scenario.phys),
                nlos[i]);
    }
  }
  return table;
}

ApSet capable_ap_set(const GainTable& gains, std::size_t user, double epsilon) {
  if (epsilon < 0.0) throw std::invalid_argument("capable_ap_set: epsilon must be >= 0");
  ApSet out;
  for (std::size_t i = 0; i < gains.num_aps(); ++i) {
    if (gains.total(i, user) > epsilon) out.push_back(i);
  }
  return out;
}

std::vector<ApSet> capable_ap_sets(const GainTable& gains, double epsilon) {
  std::vector<ApSet> out;
  out.reserve(gains.num_users());
  for (std::size_t j = 0; j < gains.num_users(); ++j) out.push_back(capable_ap_set(gains, j, epsilon));
  return out;
}

ChannelState assemble_channel(const GainTable& gains, const std::vector<ApSet>& capable,
                              std::vector<std::uint8_t> unblocked, std::size_t slot) {
  const std::size_t ku = gains.num_users();
  if (capable.size() != ku || unblocked.size() != ku) {
    throw std::invalid_argument("assemble_channel: per-user inputs have the wrong size");
  }
  ChannelState state;
  state.slot = slot;
  state.unblocked = std::move(unblocked);
  state.h.resize(ku);
  state.h_e.assign(ku, std::vector<std::vector<double>>(ku));
  for (std::size_t j = 0; j < ku; ++j) {
    const ApSet& omega = capable[j];
    auto& hj = state.h[j];
    hj.reserve(omega.size());
    for (std::size_t i : omega) {
      hj.push_back((state.unblocked[j] ? gains.los(i, j) : 0.0) + gains.nlos(i, j));
    }
    for (std::size_t k = 0; k < ku; ++k) {
      if (k == j) continue;
      auto& he = state.h_e[j][k];
      he.reserve(omega.size());
      for (std::size_t i : omega) {
        he.push_back((state.unblocked[k] ? gains.los(i, k) : 0.0) + gains.nlos(i, k));
      }
    }
  }
  return state;
}

ChannelState sample_slot_channel(const GainTable& gains, const std::vector<ApSet>& capable,
                                 double unblocked_probability, std::size_t slot, Rng& rng) {
  std::bernoulli_distribution draw(unblocked_probability);
  std::vector<std::uint8_t> xi(gains.num_users());
  for (auto& x : xi) x = draw(rng) ? 1 : 0;
  return assemble_channel(gains, capable, std::move(xi), slot);
}

}  // namespace seccell
