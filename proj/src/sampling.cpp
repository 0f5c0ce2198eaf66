#include "prrtc/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace prrtc {

double halton_value(unsigned base, std::uint64_t index) {
    if (base < 2) throw std::invalid_argument("halton_value: base must be >= 2");
    double f = 1.0;
    double r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

std::vector<unsigned> halton_bases(std::size_t n) {
    std::vector<unsigned> primes;
    primes.reserve(n);
    unsigned candidate = 2;
    while (primes.size() < n) {
        bool is_prime = true;
        for (unsigned p : primes) {
            if (p * p > candidate) break;
            if (candidate % p == 0) {
                is_prime = false;
                break;
            }
        }
        if (is_prime) primes.push_back(candidate);
        ++candidate;
    }
    return primes;
}

void sample_config(HaltonState& state, const JointLimits& limits, std::span<double> out) {
    if (limits.size() != state.bases.size() || out.size() != limits.size()) {
        throw std::invalid_argument("sample_config: dimension mismatch");
    }
    for (std::size_t d = 0; d < limits.size(); ++d) {
        const double h = halton_value(state.bases[d], state.index);
        const auto [lo, hi] = limits[d];
        double v = lo + h * (hi - lo);
        if (v >= hi) v = std::nextafter(hi, lo);  // keep hi exclusive under rounding
        out[d] = v;
    }
    state.index += state.stride;
}

DynamicDomain::DynamicDomain(std::size_t capacity, double radius)
    : radius_(radius), radii_(new std::atomic<double>[capacity]) {
    if (!(radius > 0.0)) throw std::invalid_argument("DynamicDomain: radius must be positive");
    for (std::size_t i = 0; i < capacity; ++i) {
        radii_[i].store(kUnset, std::memory_order_relaxed);
    }
}

}  // namespace prrtc
