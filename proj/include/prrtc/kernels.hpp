#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops used by collision checking and nearest-neighbor
// search. Every kernel exists as a scalar reference implementation and, on
// x86-64, an AVX2 variant; the active backend is picked once at runtime and
// can be forced (tests, CLI --simd). Collision semantics are strict
// inequality: distance == radius sum counts as free.
//
// The mask-filling kernels compare one query sphere against an SoA batch of
// primitives and record per-primitive hits. When `hits` is null the kernel
// may stop at the first hit. The any_* kernels test a batch of spheres
// against a single primitive and may always stop early.

namespace prrtc::kernels {

struct SphereSoA {
    const double* x;
    const double* y;
    const double* z;
    const double* r;
    std::size_t n;
};

// Capsules store endpoint a, the segment vector ab = b - a, and the
// precomputed 1/|ab|^2 (zero for degenerate segments).
struct CapsuleSoA {
    const double* ax;
    const double* ay;
    const double* az;
    const double* abx;
    const double* aby;
    const double* abz;
    const double* inv_ab2;
    const double* r;
    std::size_t n;
};

// Boxes store the world-to-box rotation (row major), box origin, and half
// extents.
struct BoxSoA {
    const double* m00;
    const double* m01;
    const double* m02;
    const double* m10;
    const double* m11;
    const double* m12;
    const double* m20;
    const double* m21;
    const double* m22;
    const double* tx;
    const double* ty;
    const double* tz;
    const double* hx;
    const double* hy;
    const double* hz;
    std::size_t n;
};

struct CapsuleParams {
    double ax, ay, az;
    double abx, aby, abz;
    double inv_ab2;
    double r;
};

struct BoxParams {
    double m[9];  // world-to-box rotation, row major
    double tx, ty, tz;
    double hx, hy, hz;
};

struct Ops {
    const char* name;

    double (*sq_distance)(const double* a, const double* b, std::size_t n);
    void (*lerp)(const double* a, const double* b, double t, double* out, std::size_t n);

    // Argmin of squared distance to q over `count` contiguous configs of
    // width `dof`. Ties resolve to the lowest index. count must be >= 1.
    std::size_t (*argmin_sq)(const double* configs, std::size_t count, std::size_t dof,
                             const double* q, double* best_d2);

    bool (*sphere_vs_spheres)(const SphereSoA& s, double px, double py, double pz, double pr,
                              std::uint8_t* hits);
    bool (*sphere_vs_capsules)(const CapsuleSoA& c, double px, double py, double pz, double pr,
                               std::uint8_t* hits);
    bool (*sphere_vs_boxes)(const BoxSoA& b, double px, double py, double pz, double pr,
                            std::uint8_t* hits);

    bool (*any_sphere_vs_capsule)(const SphereSoA& s, const CapsuleParams& c);
    bool (*any_sphere_vs_box)(const SphereSoA& s, const BoxParams& b);
};

enum class Backend { Scalar, Avx2 };

const Ops& scalar_ops();

// Null when the binary was built without AVX2 support.
const Ops* avx2_ops();

bool avx2_supported();

// Active ops: AVX2 when supported, scalar otherwise, unless forced.
const Ops& ops();
Backend active_backend();
void force_backend(Backend b);  // throws std::invalid_argument if unavailable
void reset_backend();           // back to auto-detection

}  // namespace prrtc::kernels
