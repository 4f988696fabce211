#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "seccell/channel.hpp"
#include "seccell/random.hpp"
#include "seccell/scenario.hpp"

namespace {

using namespace seccell;
constexpr double kPi = std::numbers::pi;

// First-bounce sum written out from scratch: walk each wall with its own
// parametrisation and evaluate every factor of the reflection formula.
double nlos_reference(const Vec3& ap, const Vec3& rx, const PhysParams& p, const Room& room,
                      double cw, double ch) {
  const double L = -std::log(2.0) / std::log(std::cos(p.semi_angle));
  const double pre = p.conversion_efficiency * (L + 1.0) * p.pd_area * p.responsivity * p.tia_gain *
                     p.reflectance / (2.0 * kPi);
  const double g = p.refractive_index * p.refractive_index / std::pow(std::sin(p.fov_half), 2);
  struct Wall { Vec3 origin, along, normal; double len; };
  const Wall walls[4] = {
      {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, room.width},
      {{room.length, 0, 0}, {0, 1, 0}, {-1, 0, 0}, room.width},
      {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, room.length},
      {{0, room.width, 0}, {1, 0, 0}, {0, -1, 0}, room.length},
  };
  const int nz = static_cast<int>(std::lround(room.height / ch));
  double sum = 0.0;
  for (const Wall& w : walls) {
    const int ns = static_cast<int>(std::lround(w.len / cw));
    const double ds = w.len / ns, dz = room.height / nz;
    for (int a = 0; a < ns; ++a) {
      for (int b = 0; b < nz; ++b) {
        const Vec3 c = w.origin + w.along * ((a + 0.5) * ds) + Vec3{0, 0, (b + 0.5) * dz};
        const Vec3 u = ap - c, v = rx - c;
        const double d1 = u.norm(), d2 = v.norm();
        const double cos_irr = u.z / d1;
        const double cos_w1 = w.normal.dot(u) / d1;
        const double cos_w2 = w.normal.dot(v) / d2;
        const double cos_in = -v.z / d2;
        if (cos_irr <= 0 || cos_w1 <= 0 || cos_w2 <= 0 || cos_in <= 0) continue;
        if (std::acos(std::min(1.0, cos_in)) > p.fov_half) continue;
        sum += std::pow(cos_irr, L) * cos_w1 * cos_w2 * g * cos_in * ds * dz / (d1 * d1 * d2 * d2);
      }
    }
  }
  return pre * sum;
}

TEST(LambertianOrder, SixtyDegreesGivesOne) {
  EXPECT_NEAR(lambertian_order(deg_to_rad(60.0)), 1.0, 1e-12);
}

TEST(LambertianOrder, SeventyDegrees) {
  EXPECT_NEAR(lambertian_order(deg_to_rad(70.0)), 0.6460, 1e-4);
}

TEST(LambertianOrder, TendsToZeroAsSemiAngleOpens) {
  double prev = lambertian_order(deg_to_rad(80.0));
  for (double deg : {85.0, 89.0, 89.9, 89.99}) {
    const double cur = lambertian_order(deg_to_rad(deg));
    EXPECT_GT(cur, 0.0);
    EXPECT_LT(cur, prev);
    prev = cur;
  }
  // decay is only logarithmic: L ~ ln2 / -ln(pi/2 - phi)
  EXPECT_LT(prev, 0.1);
  EXPECT_LT(lambertian_order(std::numbers::pi / 2 - 1e-12), 0.03);
  EXPECT_GT(lambertian_order(1e-2), lambertian_order(1e-1));
}

TEST(LambertianOrder, RejectsDegenerateAngles) {
  EXPECT_THROW(lambertian_order(0.0), std::domain_error);
  EXPECT_THROW(lambertian_order(1.6), std::domain_error);
}

TEST(ConcentratorGain, OutsideFieldOfViewIsZero) {
  EXPECT_EQ(concentrator_gain(deg_to_rad(51.0), 1.5, deg_to_rad(50.0)), 0.0);
}

TEST(ConcentratorGain, NinetyDegreeHalfAngle) {
  EXPECT_DOUBLE_EQ(concentrator_gain(0.0, 1.5, kPi / 2), 2.25);
}

TEST(ConcentratorGain, FiftyDegreeHalfAngle) {
  const double s = std::sin(deg_to_rad(50.0));
  EXPECT_NEAR(concentrator_gain(deg_to_rad(30.0), 1.5, deg_to_rad(50.0)), 2.25 / (s * s), 1e-12);
}

TEST(LosGain, OverheadApMatchesHandEvaluation) {
  const PhysParams p;
  const double d = 2.0;
  const double L = -std::log(2.0) / std::log(std::cos(deg_to_rad(70.0)));
  const double g = 2.25 / std::pow(std::sin(deg_to_rad(100.0)), 2);
  const double expected = 0.44 * (L + 1.0) * 1e-4 * 0.54 * 1.0 * g / (2.0 * kPi * d * d);
  EXPECT_NEAR(los_gain({4, 4, 2.5}, {4, 4, 0.5}, p) / expected, 1.0, 1e-12);
}

TEST(LosGain, OutsideConeIsZero) {
  PhysParams p;
  p.fov_half = deg_to_rad(30.0);
  // 45 degree incidence
  EXPECT_EQ(los_gain({4, 4, 2.5}, {6, 4, 0.5}, p), 0.0);
  EXPECT_GT(los_gain({4, 4, 2.5}, {4.5, 4, 0.5}, p), 0.0);
}

TEST(LosGain, DecreasesWithHorizontalOffset) {
  const PhysParams p;
  double prev = los_gain({8, 8, 2.5}, {8, 8, 0.5}, p);
  for (double off = 0.25; off < 6.0; off += 0.25) {
    const double g = los_gain({8, 8, 2.5}, {8 + off, 8, 0.5}, p);
    EXPECT_LT(g, prev) << "offset " << off;
    prev = g;
  }
}

TEST(NlosGain, ZeroReflectanceKillsEveryPath) {
  PhysParams p;
  p.reflectance = 0.0;
  EXPECT_EQ(nlos_gain({3, 3, 2.5}, {5, 6, 0.5}, p, Room{}, WallGrid{}), 0.0);
}

TEST(NlosGain, MatchesIndependentPatchSum) {
  const PhysParams p;
  const Room room;
  const Vec3 ap{3, 13, 2.5}, rx{1.2, 9.7, 0.5};
  const double ours = nlos_gain(ap, rx, p, room, WallGrid{0.2, 0.1});
  const double ref = nlos_reference(ap, rx, p, room, 0.2, 0.1);
  ASSERT_GT(ref, 0.0);
  EXPECT_NEAR(ours / ref, 1.0, 1e-10);
}

TEST(NlosGain, MatchesIndependentPatchSumWithNarrowFov) {
  PhysParams p;
  p.fov_half = deg_to_rad(60.0);
  const Room room;
  const Vec3 ap{2, 2, 2.5}, rx{1.0, 3.0, 0.5};
  const double ref = nlos_reference(ap, rx, p, room, 0.2, 0.1);
  ASSERT_GT(ref, 0.0);
  EXPECT_NEAR(nlos_gain(ap, rx, p, room, WallGrid{0.2, 0.1}) / ref, 1.0, 1e-10);
}

TEST(NlosGain, GridRefinementChangesLessThanTwoPercent) {
  const PhysParams p;
  const Vec3 ap{2, 6, 2.5}, rx{1.5, 8, 0.5};
  const double coarse = nlos_gain(ap, rx, p, Room{}, WallGrid{0.1, 0.05});
  const double fine = nlos_gain(ap, rx, p, Room{}, WallGrid{0.05, 0.025});
  EXPECT_LT(std::abs(coarse - fine) / fine, 0.02);
}

TEST(NlosGain, MuchSmallerThanLosForCentredUser) {
  const PhysParams p;
  const Vec3 ap{8, 8, 2.5}, rx{8, 8, 0.5};
  EXPECT_LT(nlos_gain(ap, rx, p, Room{}, WallGrid{}) / los_gain(ap, rx, p), 0.1);
}

TEST(ReflectionField, AgreesWithDirectSum) {
  const PhysParams p;
  const Room room;
  const std::vector<Vec3> aps = grid_ap_positions(room, 3);
  const ReflectionField field(room, WallGrid{}, aps, p);
  const Vec3 rx{3.3, 12.1, 0.5};
  const auto g = field.gains_to(rx);
  double total = 0.0;
  for (std::size_t i = 0; i < aps.size(); ++i) {
    const double direct = nlos_gain(aps[i], rx, p, room, WallGrid{});
    EXPECT_NEAR(g[i], direct, 1e-12 * direct + 1e-30);
    total += direct;
  }
  EXPECT_NEAR(field.total_to(rx), total, 1e-12 * total);
}

TEST(TileWalls, CoversEveryWallExactly) {
  const Room room;
  const auto patches = tile_walls(room, WallGrid{});
  double area = 0.0;
  for (const auto& p : patches) area += p.area;
  EXPECT_NEAR(area, 2.0 * (room.length + room.width) * room.height, 1e-9);
}

GainTable small_table() {
  Scenario s = reference_scenario(3);
  s.ap_positions = grid_ap_positions(s.room, 4);
  return compute_gains(s);
}

TEST(CapableApSet, ZeroThresholdKeepsEveryNonzeroPath) {
  const GainTable t = small_table();
  for (std::size_t j = 0; j < t.num_users(); ++j) {
    const ApSet omega = capable_ap_set(t, j, 0.0);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < t.num_aps(); ++i) nonzero += t.total(i, j) > 0.0;
    EXPECT_EQ(omega.size(), nonzero);
  }
}

TEST(CapableApSet, ThresholdAboveEveryGainIsEmpty) {
  const GainTable t = small_table();
  double peak = 0.0;
  for (std::size_t i = 0; i < t.num_aps(); ++i)
    for (std::size_t j = 0; j < t.num_users(); ++j) peak = std::max(peak, t.total(i, j));
  for (std::size_t j = 0; j < t.num_users(); ++j) EXPECT_TRUE(capable_ap_set(t, j, peak).empty());
}

TEST(CapableApSet, ShrinksAsThresholdGrows) {
  const GainTable t = small_table();
  for (std::size_t j = 0; j < t.num_users(); ++j) {
    ApSet prev = capable_ap_set(t, j, 0.0);
    for (double eps = 1e-8; eps < 1e-4; eps *= 3.0) {
      const ApSet cur = capable_ap_set(t, j, eps);
      EXPECT_TRUE(std::includes(prev.begin(), prev.end(), cur.begin(), cur.end()));
      prev = cur;
    }
  }
  EXPECT_THROW(capable_ap_set(t, 0, -1.0), std::invalid_argument);
}

TEST(GainTable, RecomputationIsBitIdentical) {
  const Scenario s = reference_scenario(5);
  const GainTable a = compute_gains(s), b = compute_gains(s);
  for (std::size_t i = 0; i < a.num_aps(); ++i)
    for (std::size_t j = 0; j < a.num_users(); ++j) {
      EXPECT_EQ(a.los(i, j), b.los(i, j));
      EXPECT_EQ(a.nlos(i, j), b.nlos(i, j));
    }
}

struct Fixture {
  GainTable gains;
  std::vector<ApSet> capable;
};

Fixture fixture() {
  Scenario s = reference_scenario(2);
  Fixture f{compute_gains(s), {}};
  f.capable = capable_ap_sets(f.gains, 1e-6);
  return f;
}

TEST(SampleSlotChannel, AlwaysUnblockedIncludesLos) {
  const Fixture f = fixture();
  Rng rng(7);
  const ChannelState ch = sample_slot_channel(f.gains, f.capable, 1.0, 0, rng);
  for (std::size_t j = 0; j < ch.h.size(); ++j) {
    EXPECT_EQ(ch.unblocked[j], 1);
    for (std::size_t n = 0; n < f.capable[j].size(); ++n) {
      const std::size_t i = f.capable[j][n];
      EXPECT_DOUBLE_EQ(ch.h[j][n], f.gains.los(i, j) + f.gains.nlos(i, j));
    }
  }
}

TEST(SampleSlotChannel, AlwaysBlockedLeavesNlosOnly) {
  const Fixture f = fixture();
  Rng rng(7);
  const ChannelState ch = sample_slot_channel(f.gains, f.capable, 0.0, 0, rng);
  for (std::size_t j = 0; j < ch.h.size(); ++j) {
    for (std::size_t n = 0; n < f.capable[j].size(); ++n) {
      EXPECT_DOUBLE_EQ(ch.h[j][n], f.gains.nlos(f.capable[j][n], j));
    }
  }
}

TEST(SampleSlotChannel, WiretapVectorsFollowEavesdropperBlockage) {
  const Fixture f = fixture();
  Rng rng(11);
  const ChannelState ch = sample_slot_channel(f.gains, f.capable, 0.5, 3, rng);
  for (std::size_t j = 0; j < ch.h.size(); ++j) {
    for (std::size_t k = 0; k < ch.h.size(); ++k) {
      if (k == j) continue;
      ASSERT_EQ(ch.h_e[j][k].size(), f.capable[j].size());
      for (std::size_t n = 0; n < f.capable[j].size(); ++n) {
        const std::size_t i = f.capable[j][n];
        const double want = (ch.unblocked[k] ? f.gains.los(i, k) : 0.0) + f.gains.nlos(i, k);
        EXPECT_DOUBLE_EQ(ch.h_e[j][k][n], want);
      }
    }
  }
}

TEST(SampleSlotChannel, BlockageFrequencyWithinThreeSigma) {
  const Fixture f = fixture();
  Rng rng(2024);
  const double beta = 0.7;
  const std::size_t slots = 10000;
  std::size_t hits = 0;
  for (std::size_t t = 0; t < slots; ++t) {
    hits += sample_slot_channel(f.gains, f.capable, beta, t, rng).unblocked[0];
  }
  const double sigma = std::sqrt(beta * (1 - beta) / slots);
  EXPECT_LT(std::abs(static_cast<double>(hits) / slots - beta), 3.0 * sigma);
}

TEST(SampleSlotChannel, FixedSeedIsReproducible) {
  const Fixture f = fixture();
  Rng a(99), b(99);
  for (std::size_t t = 0; t < 20; ++t) {
    const ChannelState x = sample_slot_channel(f.gains, f.capable, 0.7, t, a);
    const ChannelState y = sample_slot_channel(f.gains, f.capable, 0.7, t, b);
    EXPECT_EQ(x.unblocked, y.unblocked);
    EXPECT_EQ(x.h, y.h);
    EXPECT_EQ(x.h_e, y.h_e);
  }
}

TEST(SampleSlotChannel, AllGainsNonnegative) {
  const Fixture f = fixture();
  Rng rng(5);
  const ChannelState ch = sample_slot_channel(f.gains, f.capable, 0.7, 0, rng);
  for (const auto& v : ch.h)
    for (double x : v) EXPECT_GE(x, 0.0);
}

}  // namespace
