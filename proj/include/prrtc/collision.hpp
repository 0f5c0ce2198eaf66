#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "prrtc/geometry.hpp"
#include "prrtc/kinematics.hpp"
#include "prrtc/robot.hpp"
#include "prrtc/types.hpp"

namespace prrtc {

// Diagnostic counters. Relaxed atomics: they never steer control flow.
// sphere_tests counts requested sphere-primitive and sphere-sphere pairs,
// independent of how far a kernel got before exiting early.
struct CheckStats {
    std::atomic<std::uint64_t> sphere_tests{0};
    std::atomic<std::uint64_t> fk_calls{0};
    std::atomic<std::uint64_t> fine_stage_entries{0};

    void add_sphere_tests(std::uint64_t n) {
        sphere_tests.fetch_add(n, std::memory_order_relaxed);
    }
};

struct CheckStatsSnapshot {
    std::uint64_t sphere_tests = 0;
    std::uint64_t fk_calls = 0;
    std::uint64_t fine_stage_entries = 0;
};

inline CheckStatsSnapshot snapshot(const CheckStats& s) {
    return {s.sphere_tests.load(std::memory_order_relaxed),
            s.fk_calls.load(std::memory_order_relaxed),
            s.fine_stage_entries.load(std::memory_order_relaxed)};
}

struct CheckOptions {
    bool two_stage = true;
    bool early_exit = true;
};

struct EdgeCheckRequest {
    Config from;
    Config to;
    int resolution_count = 32;
};

// Configuration and edge validity checks for one (robot, scene) pair.
// Holds per-instance scratch, so a checker must not be shared between
// threads; the underlying model/scene/index are immutable and shareable.
class CollisionChecker {
public:
    CollisionChecker(const RobotModel& model, const Scene& scene);

    // True iff the configuration is collision-free. Two-stage mode tests
    // coarse bounding spheres first and re-checks flagged links with their
    // fine spheres against exactly the primitives and pairs that flagged
    // them; the result always equals the fine-only brute force.
    bool check_config(ConfigView q, CheckStats& stats, const CheckOptions& opt = {});

    // Discretizes from -> to at samples i/n for i = 1..n (the far endpoint
    // is sample n, taken exactly; the near endpoint is assumed already
    // valid). True iff every sample is free. Early exit may stop at the
    // first collision without changing the result. A zero-length edge
    // collapses to a single check of `to`.
    bool validate_edge(ConfigView from, ConfigView to, int resolution_count, CheckStats& stats,
                       const CheckOptions& opt = {});

    // Elementwise equal to validate_edge over the batch. Interior samples
    // are visited in lockstep across edges rather than edge-by-edge.
    std::vector<std::uint8_t> validate_edge_batched(std::span<const EdgeCheckRequest> requests,
                                                    CheckStats& stats,
                                                    const CheckOptions& opt = {});

    const RobotModel& model() const { return model_; }
    const SceneIndex& scene_index() const { return index_; }

private:
    struct LinkFlags {
        std::vector<std::size_t> spheres;
        std::vector<std::size_t> capsules;
        std::vector<std::size_t> boxes;
        bool any() const { return !spheres.empty() || !capsules.empty() || !boxes.empty(); }
        void clear() {
            spheres.clear();
            capsules.clear();
            boxes.clear();
        }
    };

    kernels::SphereSoA posed_fine(std::size_t link);
    bool fine_link_vs_flagged(std::size_t link, const LinkFlags& flags, CheckStats& stats);
    bool fine_pair_collides(std::size_t li, std::size_t lj, CheckStats& stats);
    bool check_config_brute(CheckStats& stats, const CheckOptions& opt);

    const RobotModel& model_;
    SceneIndex index_;

    // scratch, reused across calls
    std::vector<Transform> poses_;
    std::vector<double> ccx_, ccy_, ccz_, ccr_;                 // posed coarse spheres
    std::vector<double> fx_, fy_, fz_, fr_;                      // posed fine spheres, flat
    std::vector<std::size_t> fine_offset_;                       // link -> first fine slot
    std::vector<char> fine_posed_;
    std::vector<std::uint8_t> hit_s_, hit_c_, hit_b_;
    std::vector<LinkFlags> flags_;
    std::vector<std::size_t> flagged_links_;
    std::vector<std::pair<int, int>> flagged_pairs_;
    Config sample_;
};

// One-shot conveniences; tests and tools use these, the planner keeps a
// checker per worker.
bool check_config(const RobotModel& model, const Scene& scene, ConfigView q, CheckStats& stats,
                  const CheckOptions& opt = {});
bool validate_edge(const RobotModel& model, const Scene& scene, const EdgeCheckRequest& req,
                   CheckStats& stats, const CheckOptions& opt = {});

}  // namespace prrtc
