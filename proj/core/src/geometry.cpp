#include "seccell/geometry.hpp"

namespace seccell {

bool Room::contains(const Vec3& p) const {
  return p.x >= 0.0 && p.x <= length && p.y >= 0.0 && p.y <= width && p.z >= 0.0 &&
         p.z <= height;
}

}  // namespace seccell
