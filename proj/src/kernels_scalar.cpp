#include "kernels_detail.hpp"
#include "prrtc/kernels.hpp"

namespace prrtc::kernels {
namespace {

using namespace detail;

double sq_distance_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void lerp_scalar(const double* a, const double* b, double t, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = a[i] + t * (b[i] - a[i]);
    }
}

std::size_t argmin_sq_scalar(const double* configs, std::size_t count, std::size_t dof,
                             const double* q, double* best_d2) {
    std::size_t best = 0;
    double bd2 = sq_distance_scalar(configs, q, dof);
    for (std::size_t i = 1; i < count; ++i) {
        const double d2 = sq_distance_scalar(configs + i * dof, q, dof);
        if (d2 < bd2) {
            bd2 = d2;
            best = i;
        }
    }
    *best_d2 = bd2;
    return best;
}

bool sphere_vs_spheres_scalar(const SphereSoA& s, double px, double py, double pz, double pr,
                              std::uint8_t* hits) {
    bool any = false;
    for (std::size_t i = 0; i < s.n; ++i) {
        const bool hit = sphere_sphere_hit(px, py, pz, pr, s.x[i], s.y[i], s.z[i], s.r[i]);
        if (hits) {
            hits[i] = hit ? 1 : 0;
            any |= hit;
        } else if (hit) {
            return true;
        }
    }
    return any;
}

bool sphere_vs_capsules_scalar(const CapsuleSoA& c, double px, double py, double pz, double pr,
                               std::uint8_t* hits) {
    bool any = false;
    for (std::size_t i = 0; i < c.n; ++i) {
        const bool hit = sphere_capsule_hit(px, py, pz, pr, c.ax[i], c.ay[i], c.az[i],
                                            c.abx[i], c.aby[i], c.abz[i], c.inv_ab2[i], c.r[i]);
        if (hits) {
            hits[i] = hit ? 1 : 0;
            any |= hit;
        } else if (hit) {
            return true;
        }
    }
    return any;
}

bool sphere_vs_boxes_scalar(const BoxSoA& b, double px, double py, double pz, double pr,
                            std::uint8_t* hits) {
    bool any = false;
    for (std::size_t i = 0; i < b.n; ++i) {
        const bool hit = sphere_box_hit(px, py, pz, pr, b, i);
        if (hits) {
            hits[i] = hit ? 1 : 0;
            any |= hit;
        } else if (hit) {
            return true;
        }
    }
    return any;
}

bool any_sphere_vs_capsule_scalar(const SphereSoA& s, const CapsuleParams& c) {
    for (std::size_t i = 0; i < s.n; ++i) {
        if (sphere_capsule_hit(s.x[i], s.y[i], s.z[i], s.r[i], c.ax, c.ay, c.az, c.abx, c.aby,
                               c.abz, c.inv_ab2, c.r)) {
            return true;
        }
    }
    return false;
}

bool any_sphere_vs_box_scalar(const SphereSoA& s, const BoxParams& b) {
    for (std::size_t i = 0; i < s.n; ++i) {
        if (sphere_box_hit(s.x[i], s.y[i], s.z[i], s.r[i], b.m, b.tx, b.ty, b.tz, b.hx, b.hy,
                           b.hz)) {
            return true;
        }
    }
    return false;
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{
        "scalar",
        sq_distance_scalar,
        lerp_scalar,
        argmin_sq_scalar,
        sphere_vs_spheres_scalar,
        sphere_vs_capsules_scalar,
        sphere_vs_boxes_scalar,
        any_sphere_vs_capsule_scalar,
        any_sphere_vs_box_scalar,
    };
    return ops;
}

}  // namespace prrtc::kernels
