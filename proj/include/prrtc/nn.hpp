#pragma once

#include <cstdint>
#include <vector>

#include "prrtc/types.hpp"

namespace prrtc {

// Unweighted Euclidean distance in joint space; the same metric is used for
// nearest-neighbor queries, extension steps, and path cost.
double distance(ConfigView a, ConfigView b);
double sq_distance(ConfigView a, ConfigView b);

struct NnResult {
    std::size_t index = 0;
    double distance = 0.0;
};

// Read-only snapshot of the first `count` configs of a tree.
struct TreeView {
    const double* configs = nullptr;
    std::size_t dof = 0;
    std::size_t count = 0;
};

// Exact nearest neighbor by linear scan; ties break to the lowest index.
// Throws std::invalid_argument on an empty view.
NnResult nearest_serial(const TreeView& tree, ConfigView q);

// Partitioned scan over `partitions` contiguous chunks followed by a
// pairwise tree reduction. Result is identical to nearest_serial, including
// tie-breaks. When `lane_comparisons` is given it is resized to the lane
// count and receives the number of best-candidate comparisons each lane
// performed (scan plus reduction).
NnResult nearest_parallel(const TreeView& tree, ConfigView q, std::size_t partitions,
                          std::vector<std::uint64_t>* lane_comparisons = nullptr);

}  // namespace prrtc
