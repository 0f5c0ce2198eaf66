#include "prrtc/kinematics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace prrtc {

namespace {

void fail(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

void RobotModel::finalize() {
    const int n = static_cast<int>(joints.size());
    if (n == 0) fail("robot '" + name + "': joints must be non-empty");
    if (spheres.size() != joints.size()) {
        fail("robot '" + name + "': spheres must have one entry per joint (" +
             std::to_string(spheres.size()) + " vs " + std::to_string(joints.size()) + ")");
    }

    dof = 0;
    q_index.assign(joints.size(), -1);
    origin_tf.resize(joints.size());
    for (int i = 0; i < n; ++i) {
        const Joint& j = joints[i];
        const std::string where = "robot '" + name + "' joints[" + std::to_string(i) + "]";
        if (j.parent >= i) fail(where + ".parent: must be smaller than the joint index");
        if (j.parent < -1) fail(where + ".parent: out of range");
        const double qn = j.origin.rotation.norm();
        if (std::abs(qn - 1.0) > 1e-6) {
            fail(where + ".origin.quaternion: norm deviates from 1 by more than 1e-6 (" +
                 std::to_string(qn) + ")");
        }
        origin_tf[i] = j.origin.to_transform();
        if (j.kind != JointKind::Fixed) {
            if (std::abs(j.axis.norm() - 1.0) > 1e-9) {
                fail(where + ".axis: must be unit length, |axis| = " +
                     std::to_string(j.axis.norm()));
            }
            if (!(j.lo <= j.hi)) fail(where + ".limits: lo must be <= hi");
            q_index[i] = dof++;
        }
    }

    for (std::size_t l = 0; l < spheres.size(); ++l) {
        const std::string where = "robot '" + name + "' spheres[" + std::to_string(l) + "]";
        const LinkSpheres& ls = spheres[l];
        if (!(ls.coarse.radius > 0.0)) fail(where + ".coarse.radius: must be positive");
        for (std::size_t k = 0; k < ls.fine.size(); ++k) {
            const Sphere& f = ls.fine[k];
            if (!(f.radius > 0.0)) {
                fail(where + ".fine[" + std::to_string(k) + "].radius: must be positive");
            }
            const double reach = (f.center - ls.coarse.center).norm() + f.radius;
            if (reach > ls.coarse.radius + 1e-9) {
                fail(where + ".fine[" + std::to_string(k) +
                     "]: escapes the coarse bounding sphere by " +
                     std::to_string(reach - ls.coarse.radius));
            }
        }
    }

    for (std::size_t p = 0; p < self_pairs.size(); ++p) {
        const auto [a, b] = self_pairs[p];
        const std::string where = "robot '" + name + "' self_pairs[" + std::to_string(p) + "]";
        if (a < 0 || b < 0 || a >= n || b >= n) fail(where + ": link index out of range");
        if (a == b) fail(where + ": a link cannot pair with itself");
        if (joints[a].parent == b || joints[b].parent == a) {
            fail(where + ": adjacent parent-child links must not be tested");
        }
    }
}

namespace {

inline Transform joint_motion(const Joint& j, double q) {
    switch (j.kind) {
        case JointKind::Revolute:
            return {Mat3::axis_angle(j.axis, q), {}};
        case JointKind::Prismatic:
            return {Mat3::identity(), j.axis * q};
        case JointKind::Fixed:
        default:
            return Transform::identity();
    }
}

}  // namespace

void forward_kinematics(const RobotModel& model, ConfigView q, std::span<Transform> out) {
    require_dim(q, static_cast<std::size_t>(model.dof), "forward_kinematics");
    if (out.size() != model.joints.size()) {
        throw std::invalid_argument("forward_kinematics: output span has wrong length");
    }
    for (std::size_t i = 0; i < model.joints.size(); ++i) {
        const Joint& j = model.joints[i];
        const double qi = model.q_index[i] >= 0 ? q[model.q_index[i]] : 0.0;
        const Transform local = model.origin_tf[i] * joint_motion(j, qi);
        out[i] = j.parent < 0 ? local : out[j.parent] * local;
    }
}

std::vector<Transform> forward_kinematics(const RobotModel& model, ConfigView q) {
    std::vector<Transform> out(model.joints.size());
    forward_kinematics(model, q, out);
    return out;
}

std::vector<PosedSphere> sphere_positions(const RobotModel& model, ConfigView q,
                                          SphereLevel level) {
    const auto poses = forward_kinematics(model, q);
    std::vector<PosedSphere> out;
    for (std::size_t l = 0; l < model.spheres.size(); ++l) {
        const LinkSpheres& ls = model.spheres[l];
        if (level == SphereLevel::Coarse) {
            out.push_back({poses[l].apply(ls.coarse.center), ls.coarse.radius});
        } else {
            for (const Sphere& f : ls.fine) {
                out.push_back({poses[l].apply(f.center), f.radius});
            }
        }
    }
    return out;
}

}  // namespace prrtc
