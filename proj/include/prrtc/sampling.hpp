#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "prrtc/types.hpp"

namespace prrtc {

using JointLimits = std::vector<std::array<double, 2>>;

// Radical inverse of `index` in base `base`. Deterministic and stateless.
double halton_value(unsigned base, std::uint64_t index);

// The first n primes, used as per-dimension Halton bases.
std::vector<unsigned> halton_bases(std::size_t n);

// Strided multi-dimensional Halton stream: draws use sequence indices
// offset, offset + stride, ... so workers with distinct offsets and a
// common stride never share an index.
struct HaltonState {
    std::vector<unsigned> bases;
    std::uint64_t index = 1;
    std::uint64_t stride = 1;

    static HaltonState make(std::size_t dof, std::uint64_t offset, std::uint64_t stride) {
        return {halton_bases(dof), offset, stride};
    }
};

// Draws the next configuration, scaled per joint to [lo, hi). Advances the
// state by its stride.
void sample_config(HaltonState& state, const JointLimits& limits, std::span<double> out);

// Seeded uniform sampler kept behind a flag for property tests; the planner
// evaluation path is Halton only.
class UniformSampler {
public:
    UniformSampler(std::uint64_t seed) : rng_(seed) {}

    void draw(const JointLimits& limits, std::span<double> out) {
        for (std::size_t d = 0; d < limits.size(); ++d) {
            out[d] = std::uniform_real_distribution<double>(limits[d][0], limits[d][1])(rng_);
        }
    }

private:
    std::mt19937_64 rng_;
};

// Per-node sampling domains (Yershova-style dynamic domain, fixed-radius
// variant): a node gets radius R on its first failed extension and keeps it.
// Samples whose nearest neighbor carries a radius are rejected when they
// fall outside it. Radii are set-once atomics; stale reads only affect
// sample acceptance.
class DynamicDomain {
public:
    DynamicDomain(std::size_t capacity, double radius);

    bool accept(std::size_t nn_index, double nn_distance) const {
        const double r = radii_[nn_index].load(std::memory_order_relaxed);
        return nn_distance <= r;  // unset radii are +inf, so always accept
    }

    void record_failure(std::size_t nn_index) {
        double expected = kUnset;
        radii_[nn_index].compare_exchange_strong(expected, radius_, std::memory_order_relaxed);
    }

    bool has_radius(std::size_t i) const {
        return radii_[i].load(std::memory_order_relaxed) != kUnset;
    }

    double radius_parameter() const { return radius_; }

private:
    static constexpr double kUnset = std::numeric_limits<double>::infinity();

    double radius_;
    std::unique_ptr<std::atomic<double>[]> radii_;
};

}  // namespace prrtc
