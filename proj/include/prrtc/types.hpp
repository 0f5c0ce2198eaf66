#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace prrtc {

// A point in joint space, one scalar per actuated joint.
// Radians for revolute joints, meters for prismatic ones.
using Config = std::vector<double>;
using ConfigView = std::span<const double>;

inline void require_dim(ConfigView q, std::size_t dof, const char* what) {
    if (q.size() != dof) {
        throw std::invalid_argument(std::string(what) + ": expected dimension " +
                                    std::to_string(dof) + ", got " + std::to_string(q.size()));
    }
}

inline bool bitwise_equal(ConfigView a, ConfigView b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return false;
    }
    return true;
}

}  // namespace prrtc
