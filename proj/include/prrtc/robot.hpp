#pragma once

#include <string>
#include <utility>
#include <vector>

#include "prrtc/transform.hpp"
#include "prrtc/types.hpp"

namespace prrtc {

enum class JointKind { Revolute, Prismatic, Fixed };

// One joint per link; joint i defines the frame of link i. parent == -1
// roots a chain at the world frame, so a model may hold several chains
// (e.g. a dual-arm setup as one model).
struct Joint {
    JointKind kind = JointKind::Revolute;
    int parent = -1;
    PoseSpec origin;       // fixed offset from the parent link frame
    Vec3 axis{0, 0, 1};    // unit, in the link frame; ignored for fixed joints
    double lo = 0.0;       // limits; unused for fixed joints
    double hi = 0.0;

    bool operator==(const Joint&) const = default;
};

struct Sphere {
    Vec3 center;
    double radius = 0.0;

    bool operator==(const Sphere&) const = default;
};

// Collision geometry of one link: a single coarse bounding sphere and the
// fine spheres it must contain.
struct LinkSpheres {
    Sphere coarse;
    std::vector<Sphere> fine;

    bool operator==(const LinkSpheres&) const = default;
};

struct RobotModel {
    std::string name;
    std::vector<Joint> joints;
    std::vector<LinkSpheres> spheres;               // one entry per link
    std::vector<std::pair<int, int>> self_pairs;    // link index pairs to test

    // Derived at load/validation time.
    int dof = 0;
    std::vector<int> q_index;                       // joint -> config slot, -1 for fixed
    std::vector<Transform> origin_tf;               // joints[i].origin.to_transform()

    std::size_t link_count() const { return joints.size(); }

    std::vector<std::array<double, 2>> limits() const {
        std::vector<std::array<double, 2>> out;
        out.reserve(dof);
        for (const auto& j : joints) {
            if (j.kind != JointKind::Fixed) out.push_back({j.lo, j.hi});
        }
        return out;
    }

    // Recomputes derived fields and checks every structural invariant:
    // topological ordering, unit axes, ordered limits, positive radii,
    // coarse-bounds-fine containment, and self-pair sanity. Throws
    // std::invalid_argument naming the offending field.
    void finalize();
};

}  // namespace prrtc
