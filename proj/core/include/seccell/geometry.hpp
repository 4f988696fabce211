#pragma once

#include <cmath>
#include <numbers>

namespace seccell {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr bool operator==(const Vec3&) const = default;

  [[nodiscard]] constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  [[nodiscard]] double norm() const { return std::sqrt(dot(*this)); }
};

/// Axis-aligned room with one corner at the origin; z grows toward the ceiling.
struct Room {
  double length = 16.0;  // x extent
  double width = 16.0;   // y extent
  double height = 2.5;   // z extent

  [[nodiscard]] bool contains(const Vec3& p) const;
  [[nodiscard]] double floor_area() const { return length * width; }
};

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace seccell
