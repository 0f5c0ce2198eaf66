#pragma once

#include <string>
#include <variant>
#include <vector>

#include "prrtc/kernels.hpp"
#include "prrtc/kinematics.hpp"
#include "prrtc/transform.hpp"

namespace prrtc {

struct SpherePrim {
    Vec3 center;
    double radius = 0.0;

    bool operator==(const SpherePrim&) const = default;
};

struct BoxPrim {
    PoseSpec pose;
    Vec3 half_extents;

    bool operator==(const BoxPrim&) const = default;
};

struct CapsulePrim {
    Vec3 a;
    Vec3 b;
    double radius = 0.0;

    bool operator==(const CapsulePrim&) const = default;
};

using Primitive = std::variant<SpherePrim, BoxPrim, CapsulePrim>;

struct Scene {
    std::string name;
    std::vector<Primitive> primitives;

    bool operator==(const Scene&) const = default;

    // Checks geometric invariants (positive radii and extents, quaternion
    // norms). Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// Collision iff the sphere penetrates the primitive; touching is free.
bool sphere_vs_primitive(const PosedSphere& s, const Primitive& p);

// Immutable SoA layout of a scene, grouped by primitive kind so one robot
// sphere can be tested against a whole kind in a single kernel call. Built
// once per (scene) and shared read-only across workers.
class SceneIndex {
public:
    SceneIndex() = default;
    explicit SceneIndex(const Scene& scene);

    kernels::SphereSoA spheres() const;
    kernels::CapsuleSoA capsules() const;
    kernels::BoxSoA boxes() const;

    kernels::CapsuleParams capsule_params(std::size_t i) const;
    kernels::BoxParams box_params(std::size_t i) const;

    std::size_t sphere_count() const { return sx_.size(); }
    std::size_t capsule_count() const { return cax_.size(); }
    std::size_t box_count() const { return btx_.size(); }
    std::size_t primitive_count() const {
        return sphere_count() + capsule_count() + box_count();
    }

private:
    std::vector<double> sx_, sy_, sz_, sr_;
    std::vector<double> cax_, cay_, caz_, cabx_, caby_, cabz_, cinv_, cr_;
    std::vector<double> bm_[9];
    std::vector<double> btx_, bty_, btz_, bhx_, bhy_, bhz_;
};

}  // namespace prrtc
