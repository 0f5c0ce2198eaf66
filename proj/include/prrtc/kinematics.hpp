#pragma once

#include <span>
#include <vector>

#include "prrtc/robot.hpp"
#include "prrtc/transform.hpp"
#include "prrtc/types.hpp"

namespace prrtc {

enum class SphereLevel { Coarse, Fine };

struct PosedSphere {
    Vec3 center;
    double radius = 0.0;
};

// World pose of every link frame. Pure and thread-safe. `out` must have
// link_count() entries. Throws std::invalid_argument on dimension mismatch.
void forward_kinematics(const RobotModel& model, ConfigView q, std::span<Transform> out);

std::vector<Transform> forward_kinematics(const RobotModel& model, ConfigView q);

// Link collision spheres in the world frame, ordered by link then sphere
// index.
std::vector<PosedSphere> sphere_positions(const RobotModel& model, ConfigView q,
                                          SphereLevel level);

}  // namespace prrtc
