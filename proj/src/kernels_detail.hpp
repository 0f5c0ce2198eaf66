#pragma once

#include "prrtc/kernels.hpp"

// Per-element math shared by the scalar kernels and the vector kernels' tail
// handling. Expressions here must match the vector lanes operation-for-
// operation so both backends produce identical hit masks.

namespace prrtc::kernels::detail {

inline double clamp01(double t) {
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    return t;
}

inline bool sphere_sphere_hit(double px, double py, double pz, double pr,
                              double sx, double sy, double sz, double sr) {
    const double dx = px - sx, dy = py - sy, dz = pz - sz;
    const double d2 = dx * dx + dy * dy + dz * dz;
    const double rr = pr + sr;
    return d2 < rr * rr;
}

inline bool sphere_capsule_hit(double px, double py, double pz, double pr,
                               double ax, double ay, double az,
                               double abx, double aby, double abz,
                               double inv_ab2, double cr) {
    const double pax = px - ax, pay = py - ay, paz = pz - az;
    const double t = clamp01((pax * abx + pay * aby + paz * abz) * inv_ab2);
    const double dx = pax - t * abx, dy = pay - t * aby, dz = paz - t * abz;
    const double d2 = dx * dx + dy * dy + dz * dz;
    const double rr = pr + cr;
    return d2 < rr * rr;
}

inline bool sphere_box_hit(double px, double py, double pz, double pr,
                           const double* m, double tx, double ty, double tz,
                           double hx, double hy, double hz) {
    const double wx = px - tx, wy = py - ty, wz = pz - tz;
    const double lx = m[0] * wx + m[1] * wy + m[2] * wz;
    const double ly = m[3] * wx + m[4] * wy + m[5] * wz;
    const double lz = m[6] * wx + m[7] * wy + m[8] * wz;
    const double cx = lx < -hx ? -hx : (lx > hx ? hx : lx);
    const double cy = ly < -hy ? -hy : (ly > hy ? hy : ly);
    const double cz = lz < -hz ? -hz : (lz > hz ? hz : lz);
    const double dx = lx - cx, dy = ly - cy, dz = lz - cz;
    const double d2 = dx * dx + dy * dy + dz * dz;
    return d2 < pr * pr;
}

inline bool sphere_box_hit(double px, double py, double pz, double pr, const BoxSoA& b,
                           std::size_t i) {
    const double m[9] = {b.m00[i], b.m01[i], b.m02[i], b.m10[i], b.m11[i],
                         b.m12[i], b.m20[i], b.m21[i], b.m22[i]};
    return sphere_box_hit(px, py, pz, pr, m, b.tx[i], b.ty[i], b.tz[i], b.hx[i], b.hy[i],
                          b.hz[i]);
}

}  // namespace prrtc::kernels::detail
