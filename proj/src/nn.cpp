#include "prrtc/nn.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "prrtc/kernels.hpp"

namespace prrtc {

double sq_distance(ConfigView a, ConfigView b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("distance: dimension mismatch (" + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()) + ")");
    }
    return kernels::ops().sq_distance(a.data(), b.data(), a.size());
}

double distance(ConfigView a, ConfigView b) { return std::sqrt(sq_distance(a, b)); }

NnResult nearest_serial(const TreeView& tree, ConfigView q) {
    if (tree.count == 0) throw std::invalid_argument("nearest_serial: empty tree snapshot");
    require_dim(q, tree.dof, "nearest_serial");
    double best_d2 = 0.0;
    const std::size_t idx =
        kernels::ops().argmin_sq(tree.configs, tree.count, tree.dof, q.data(), &best_d2);
    return {idx, std::sqrt(best_d2)};
}

NnResult nearest_parallel(const TreeView& tree, ConfigView q, std::size_t partitions,
                          std::vector<std::uint64_t>* lane_comparisons) {
    if (tree.count == 0) throw std::invalid_argument("nearest_parallel: empty tree snapshot");
    if (partitions == 0) throw std::invalid_argument("nearest_parallel: partitions must be >= 1");
    require_dim(q, tree.dof, "nearest_parallel");

    struct Lane {
        double d2 = std::numeric_limits<double>::infinity();
        std::size_t index = SIZE_MAX;
    };

    const std::size_t lane_count = std::bit_ceil(partitions);
    std::vector<Lane> lanes(lane_count);
    if (lane_comparisons) lane_comparisons->assign(lane_count, 0);

    const std::size_t chunk = (tree.count + partitions - 1) / partitions;
    for (std::size_t l = 0; l < partitions; ++l) {
        const std::size_t begin = l * chunk;
        if (begin >= tree.count) break;
        const std::size_t len = std::min(chunk, tree.count - begin);
        double d2 = 0.0;
        const std::size_t local = kernels::ops().argmin_sq(tree.configs + begin * tree.dof, len,
                                                           tree.dof, q.data(), &d2);
        lanes[l] = {d2, begin + local};
        if (lane_comparisons) (*lane_comparisons)[l] += len;
    }

    // Pairwise tree reduction; the winner on equal distance is the lower
    // index, matching the serial scan.
    for (std::size_t s = lane_count / 2; s >= 1; s /= 2) {
        for (std::size_t l = 0; l < s; ++l) {
            const Lane& r = lanes[l + s];
            Lane& keep = lanes[l];
            if (r.d2 < keep.d2 || (r.d2 == keep.d2 && r.index < keep.index)) keep = r;
            if (lane_comparisons) (*lane_comparisons)[l] += 1;
        }
    }
    return {lanes[0].index, std::sqrt(lanes[0].d2)};
}

}  // namespace prrtc
