// AVX2 variants of the collision and distance kernels, four doubles per
// lane. Multiplies and adds are kept separate (no FMA) so per-element
// results match the scalar reference bitwise; only sq_distance accumulates
// in a different order, which the callers tolerate.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "kernels_detail.hpp"
#include "prrtc/kernels.hpp"

namespace prrtc::kernels {
namespace {

using namespace detail;

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(s, s);
    return _mm_cvtsd_f64(_mm_add_sd(s, swapped));
}

double sq_distance_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    double tail = 0.0;
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        tail += d * d;
    }
    return hsum(acc) + tail;
}

void lerp_avx2(const double* a, const double* b, double t, double* out, std::size_t n) {
    const __m256d vt = _mm256_set1_pd(t);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        __m256d vb = _mm256_loadu_pd(b + i);
        _mm256_storeu_pd(out + i, _mm256_add_pd(va, _mm256_mul_pd(vt, _mm256_sub_pd(vb, va))));
    }
    for (; i < n; ++i) {
        out[i] = a[i] + t * (b[i] - a[i]);
    }
}

std::size_t argmin_sq_avx2(const double* configs, std::size_t count, std::size_t dof,
                           const double* q, double* best_d2) {
    std::size_t best = 0;
    double bd2 = sq_distance_avx2(configs, q, dof);
    for (std::size_t i = 1; i < count; ++i) {
        const double d2 = sq_distance_avx2(configs + i * dof, q, dof);
        if (d2 < bd2) {
            bd2 = d2;
            best = i;
        }
    }
    *best_d2 = bd2;
    return best;
}

inline void write_hits(std::uint8_t* hits, std::size_t i, int mask) {
    hits[i + 0] = static_cast<std::uint8_t>(mask & 1);
    hits[i + 1] = static_cast<std::uint8_t>((mask >> 1) & 1);
    hits[i + 2] = static_cast<std::uint8_t>((mask >> 2) & 1);
    hits[i + 3] = static_cast<std::uint8_t>((mask >> 3) & 1);
}

bool sphere_vs_spheres_avx2(const SphereSoA& s, double px, double py, double pz, double pr,
                            std::uint8_t* hits) {
    const __m256d vpx = _mm256_set1_pd(px), vpy = _mm256_set1_pd(py), vpz = _mm256_set1_pd(pz);
    const __m256d vpr = _mm256_set1_pd(pr);
    bool any = false;
    std::size_t i = 0;
    for (; i + 4 <= s.n; i += 4) {
        __m256d dx = _mm256_sub_pd(vpx, _mm256_loadu_pd(s.x + i));
        __m256d dy = _mm256_sub_pd(vpy, _mm256_loadu_pd(s.y + i));
        __m256d dz = _mm256_sub_pd(vpz, _mm256_loadu_pd(s.z + i));
        __m256d d2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                                   _mm256_mul_pd(dz, dz));
        __m256d rr = _mm256_add_pd(vpr, _mm256_loadu_pd(s.r + i));
        const int mask = _mm256_movemask_pd(_mm256_cmp_pd(d2, _mm256_mul_pd(rr, rr), _CMP_LT_OQ));
        if (hits) {
            write_hits(hits, i, mask);
            any |= mask != 0;
        } else if (mask != 0) {
            return true;
        }
    }
    for (; i < s.n; ++i) {
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

inline __m256d capsule_d2(const CapsuleSoA& c, std::size_t i, __m256d vpx, __m256d vpy,
                          __m256d vpz) {
    __m256d pax = _mm256_sub_pd(vpx, _mm256_loadu_pd(c.ax + i));
    __m256d pay = _mm256_sub_pd(vpy, _mm256_loadu_pd(c.ay + i));
    __m256d paz = _mm256_sub_pd(vpz, _mm256_loadu_pd(c.az + i));
    __m256d abx = _mm256_loadu_pd(c.abx + i);
    __m256d aby = _mm256_loadu_pd(c.aby + i);
    __m256d abz = _mm256_loadu_pd(c.abz + i);
    __m256d dot = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(pax, abx), _mm256_mul_pd(pay, aby)), _mm256_mul_pd(paz, abz));
    __m256d t = _mm256_mul_pd(dot, _mm256_loadu_pd(c.inv_ab2 + i));
    t = _mm256_min_pd(_mm256_max_pd(t, _mm256_setzero_pd()), _mm256_set1_pd(1.0));
    __m256d dx = _mm256_sub_pd(pax, _mm256_mul_pd(t, abx));
    __m256d dy = _mm256_sub_pd(pay, _mm256_mul_pd(t, aby));
    __m256d dz = _mm256_sub_pd(paz, _mm256_mul_pd(t, abz));
    return _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                         _mm256_mul_pd(dz, dz));
}

bool sphere_vs_capsules_avx2(const CapsuleSoA& c, double px, double py, double pz, double pr,
                             std::uint8_t* hits) {
    const __m256d vpx = _mm256_set1_pd(px), vpy = _mm256_set1_pd(py), vpz = _mm256_set1_pd(pz);
    const __m256d vpr = _mm256_set1_pd(pr);
    bool any = false;
    std::size_t i = 0;
    for (; i + 4 <= c.n; i += 4) {
        __m256d d2 = capsule_d2(c, i, vpx, vpy, vpz);
        __m256d rr = _mm256_add_pd(vpr, _mm256_loadu_pd(c.r + i));
        const int mask = _mm256_movemask_pd(_mm256_cmp_pd(d2, _mm256_mul_pd(rr, rr), _CMP_LT_OQ));
        if (hits) {
            write_hits(hits, i, mask);
            any |= mask != 0;
        } else if (mask != 0) {
            return true;
        }
    }
    for (; i < c.n; ++i) {
        const bool hit = sphere_capsule_hit(px, py, pz, pr, c.ax[i], c.ay[i], c.az[i], c.abx[i],
                                            c.aby[i], c.abz[i], c.inv_ab2[i], c.r[i]);
        if (hits) {
            hits[i] = hit ? 1 : 0;
            any |= hit;
        } else if (hit) {
            return true;
        }
    }
    return any;
}

inline __m256d clamp_sym(__m256d v, __m256d h) {
    return _mm256_min_pd(_mm256_max_pd(v, _mm256_sub_pd(_mm256_setzero_pd(), h)), h);
}

bool sphere_vs_boxes_avx2(const BoxSoA& b, double px, double py, double pz, double pr,
                          std::uint8_t* hits) {
    const __m256d vpx = _mm256_set1_pd(px), vpy = _mm256_set1_pd(py), vpz = _mm256_set1_pd(pz);
    const __m256d vr2 = _mm256_mul_pd(_mm256_set1_pd(pr), _mm256_set1_pd(pr));
    bool any = false;
    std::size_t i = 0;
    for (; i + 4 <= b.n; i += 4) {
        __m256d wx = _mm256_sub_pd(vpx, _mm256_loadu_pd(b.tx + i));
        __m256d wy = _mm256_sub_pd(vpy, _mm256_loadu_pd(b.ty + i));
        __m256d wz = _mm256_sub_pd(vpz, _mm256_loadu_pd(b.tz + i));
        __m256d lx = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(b.m00 + i), wx),
                          _mm256_mul_pd(_mm256_loadu_pd(b.m01 + i), wy)),
            _mm256_mul_pd(_mm256_loadu_pd(b.m02 + i), wz));
        __m256d ly = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(b.m10 + i), wx),
                          _mm256_mul_pd(_mm256_loadu_pd(b.m11 + i), wy)),
            _mm256_mul_pd(_mm256_loadu_pd(b.m12 + i), wz));
        __m256d lz = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(b.m20 + i), wx),
                          _mm256_mul_pd(_mm256_loadu_pd(b.m21 + i), wy)),
            _mm256_mul_pd(_mm256_loadu_pd(b.m22 + i), wz));
        __m256d hx = _mm256_loadu_pd(b.hx + i);
        __m256d hy = _mm256_loadu_pd(b.hy + i);
        __m256d hz = _mm256_loadu_pd(b.hz + i);
        __m256d dx = _mm256_sub_pd(lx, clamp_sym(lx, hx));
        __m256d dy = _mm256_sub_pd(ly, clamp_sym(ly, hy));
        __m256d dz = _mm256_sub_pd(lz, clamp_sym(lz, hz));
        __m256d d2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                                   _mm256_mul_pd(dz, dz));
        const int mask = _mm256_movemask_pd(_mm256_cmp_pd(d2, vr2, _CMP_LT_OQ));
        if (hits) {
            write_hits(hits, i, mask);
            any |= mask != 0;
        } else if (mask != 0) {
            return true;
        }
    }
    for (; i < b.n; ++i) {
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

bool any_sphere_vs_capsule_avx2(const SphereSoA& s, const CapsuleParams& c) {
    const __m256d vax = _mm256_set1_pd(c.ax), vay = _mm256_set1_pd(c.ay),
                  vaz = _mm256_set1_pd(c.az);
    const __m256d vabx = _mm256_set1_pd(c.abx), vaby = _mm256_set1_pd(c.aby),
                  vabz = _mm256_set1_pd(c.abz);
    const __m256d vinv = _mm256_set1_pd(c.inv_ab2), vcr = _mm256_set1_pd(c.r);
    std::size_t i = 0;
    for (; i + 4 <= s.n; i += 4) {
        __m256d pax = _mm256_sub_pd(_mm256_loadu_pd(s.x + i), vax);
        __m256d pay = _mm256_sub_pd(_mm256_loadu_pd(s.y + i), vay);
        __m256d paz = _mm256_sub_pd(_mm256_loadu_pd(s.z + i), vaz);
        __m256d dot = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(pax, vabx),
                                                  _mm256_mul_pd(pay, vaby)),
                                    _mm256_mul_pd(paz, vabz));
        __m256d t = _mm256_mul_pd(dot, vinv);
        t = _mm256_min_pd(_mm256_max_pd(t, _mm256_setzero_pd()), _mm256_set1_pd(1.0));
        __m256d dx = _mm256_sub_pd(pax, _mm256_mul_pd(t, vabx));
        __m256d dy = _mm256_sub_pd(pay, _mm256_mul_pd(t, vaby));
        __m256d dz = _mm256_sub_pd(paz, _mm256_mul_pd(t, vabz));
        __m256d d2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                                   _mm256_mul_pd(dz, dz));
        __m256d rr = _mm256_add_pd(_mm256_loadu_pd(s.r + i), vcr);
        if (_mm256_movemask_pd(_mm256_cmp_pd(d2, _mm256_mul_pd(rr, rr), _CMP_LT_OQ)) != 0) {
            return true;
        }
    }
    for (; i < s.n; ++i) {
        if (sphere_capsule_hit(s.x[i], s.y[i], s.z[i], s.r[i], c.ax, c.ay, c.az, c.abx, c.aby,
                               c.abz, c.inv_ab2, c.r)) {
            return true;
        }
    }
    return false;
}

bool any_sphere_vs_box_avx2(const SphereSoA& s, const BoxParams& b) {
    const __m256d vtx = _mm256_set1_pd(b.tx), vty = _mm256_set1_pd(b.ty),
                  vtz = _mm256_set1_pd(b.tz);
    const __m256d vhx = _mm256_set1_pd(b.hx), vhy = _mm256_set1_pd(b.hy),
                  vhz = _mm256_set1_pd(b.hz);
    __m256d m[9];
    for (int k = 0; k < 9; ++k) m[k] = _mm256_set1_pd(b.m[k]);
    std::size_t i = 0;
    for (; i + 4 <= s.n; i += 4) {
        __m256d wx = _mm256_sub_pd(_mm256_loadu_pd(s.x + i), vtx);
        __m256d wy = _mm256_sub_pd(_mm256_loadu_pd(s.y + i), vty);
        __m256d wz = _mm256_sub_pd(_mm256_loadu_pd(s.z + i), vtz);
        __m256d lx = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(m[0], wx), _mm256_mul_pd(m[1], wy)),
                                   _mm256_mul_pd(m[2], wz));
        __m256d ly = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(m[3], wx), _mm256_mul_pd(m[4], wy)),
                                   _mm256_mul_pd(m[5], wz));
        __m256d lz = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(m[6], wx), _mm256_mul_pd(m[7], wy)),
                                   _mm256_mul_pd(m[8], wz));
        __m256d dx = _mm256_sub_pd(lx, clamp_sym(lx, vhx));
        __m256d dy = _mm256_sub_pd(ly, clamp_sym(ly, vhy));
        __m256d dz = _mm256_sub_pd(lz, clamp_sym(lz, vhz));
        __m256d d2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                                   _mm256_mul_pd(dz, dz));
        __m256d r = _mm256_loadu_pd(s.r + i);
        if (_mm256_movemask_pd(_mm256_cmp_pd(d2, _mm256_mul_pd(r, r), _CMP_LT_OQ)) != 0) {
            return true;
        }
    }
    for (; i < s.n; ++i) {
        if (sphere_box_hit(s.x[i], s.y[i], s.z[i], s.r[i], b.m, b.tx, b.ty, b.tz, b.hx, b.hy,
                           b.hz)) {
            return true;
        }
    }
    return false;
}

}  // namespace

const Ops* avx2_ops() {
    static const Ops ops{
        "avx2",
        sq_distance_avx2,
        lerp_avx2,
        argmin_sq_avx2,
        sphere_vs_spheres_avx2,
        sphere_vs_capsules_avx2,
        sphere_vs_boxes_avx2,
        any_sphere_vs_capsule_avx2,
        any_sphere_vs_box_avx2,
    };
    return &ops;
}

}  // namespace prrtc::kernels

#else

#include "prrtc/kernels.hpp"

namespace prrtc::kernels {
const Ops* avx2_ops() { return nullptr; }
}  // namespace prrtc::kernels

#endif
