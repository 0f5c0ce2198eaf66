#include "prrtc/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "kernels_detail.hpp"

namespace prrtc {

void Scene::validate() const {
    for (std::size_t i = 0; i < primitives.size(); ++i) {
        const std::string where = "scene '" + name + "' primitives[" + std::to_string(i) + "]";
        std::visit(
            [&](const auto& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, SpherePrim>) {
                    if (!(p.radius > 0.0)) {
                        throw std::invalid_argument(where + ".radius: must be positive");
                    }
                } else if constexpr (std::is_same_v<T, BoxPrim>) {
                    if (!(p.half_extents.x > 0.0 && p.half_extents.y > 0.0 &&
                          p.half_extents.z > 0.0)) {
                        throw std::invalid_argument(where +
                                                    ".half_extents: must be componentwise positive");
                    }
                    const double qn = p.pose.rotation.norm();
                    if (std::abs(qn - 1.0) > 1e-6) {
                        throw std::invalid_argument(
                            where + ".pose.quaternion: norm deviates from 1 by more than 1e-6");
                    }
                } else {
                    if (!(p.radius > 0.0)) {
                        throw std::invalid_argument(where + ".radius: must be positive");
                    }
                }
            },
            primitives[i]);
    }
}

bool sphere_vs_primitive(const PosedSphere& s, const Primitive& p) {
    using namespace kernels::detail;
    return std::visit(
        [&](const auto& prim) {
            using T = std::decay_t<decltype(prim)>;
            if constexpr (std::is_same_v<T, SpherePrim>) {
                return sphere_sphere_hit(s.center.x, s.center.y, s.center.z, s.radius,
                                         prim.center.x, prim.center.y, prim.center.z,
                                         prim.radius);
            } else if constexpr (std::is_same_v<T, BoxPrim>) {
                const Transform tf = prim.pose.to_transform();
                const Mat3 rt = tf.rotation.transposed();
                return sphere_box_hit(s.center.x, s.center.y, s.center.z, s.radius, rt.m.data(),
                                      tf.translation.x, tf.translation.y, tf.translation.z,
                                      prim.half_extents.x, prim.half_extents.y,
                                      prim.half_extents.z);
            } else {
                const Vec3 ab = prim.b - prim.a;
                const double ab2 = ab.norm2();
                const double inv = ab2 > 0.0 ? 1.0 / ab2 : 0.0;
                return sphere_capsule_hit(s.center.x, s.center.y, s.center.z, s.radius, prim.a.x,
                                          prim.a.y, prim.a.z, ab.x, ab.y, ab.z, inv, prim.radius);
            }
        },
        p);
}

SceneIndex::SceneIndex(const Scene& scene) {
    for (const Primitive& p : scene.primitives) {
        if (const auto* s = std::get_if<SpherePrim>(&p)) {
            sx_.push_back(s->center.x);
            sy_.push_back(s->center.y);
            sz_.push_back(s->center.z);
            sr_.push_back(s->radius);
        } else if (const auto* c = std::get_if<CapsulePrim>(&p)) {
            const Vec3 ab = c->b - c->a;
            const double ab2 = ab.norm2();
            cax_.push_back(c->a.x);
            cay_.push_back(c->a.y);
            caz_.push_back(c->a.z);
            cabx_.push_back(ab.x);
            caby_.push_back(ab.y);
            cabz_.push_back(ab.z);
            cinv_.push_back(ab2 > 0.0 ? 1.0 / ab2 : 0.0);
            cr_.push_back(c->radius);
        } else {
            const auto& b = std::get<BoxPrim>(p);
            const Transform tf = b.pose.to_transform();
            const Mat3 rt = tf.rotation.transposed();
            for (int k = 0; k < 9; ++k) bm_[k].push_back(rt.m[k]);
            btx_.push_back(tf.translation.x);
            bty_.push_back(tf.translation.y);
            btz_.push_back(tf.translation.z);
            bhx_.push_back(b.half_extents.x);
            bhy_.push_back(b.half_extents.y);
            bhz_.push_back(b.half_extents.z);
        }
    }
}

kernels::SphereSoA SceneIndex::spheres() const {
    return {sx_.data(), sy_.data(), sz_.data(), sr_.data(), sx_.size()};
}

kernels::CapsuleSoA SceneIndex::capsules() const {
    return {cax_.data(), cay_.data(),  caz_.data(), cabx_.data(), caby_.data(),
            cabz_.data(), cinv_.data(), cr_.data(),  cax_.size()};
}

kernels::BoxSoA SceneIndex::boxes() const {
    return {bm_[0].data(), bm_[1].data(), bm_[2].data(), bm_[3].data(), bm_[4].data(),
            bm_[5].data(), bm_[6].data(), bm_[7].data(), bm_[8].data(), btx_.data(),
            bty_.data(),   btz_.data(),   bhx_.data(),   bhy_.data(),   bhz_.data(),
            btx_.size()};
}

kernels::CapsuleParams SceneIndex::capsule_params(std::size_t i) const {
    return {cax_[i], cay_[i], caz_[i], cabx_[i], caby_[i], cabz_[i], cinv_[i], cr_[i]};
}

kernels::BoxParams SceneIndex::box_params(std::size_t i) const {
    return {{bm_[0][i], bm_[1][i], bm_[2][i], bm_[3][i], bm_[4][i], bm_[5][i], bm_[6][i],
             bm_[7][i], bm_[8][i]},
            btx_[i],
            bty_[i],
            btz_[i],
            bhx_[i],
            bhy_[i],
            bhz_[i]};
}

}  // namespace prrtc
