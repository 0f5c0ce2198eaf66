#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prrtc/collision.hpp"
#include "prrtc/nn.hpp"
#include "prrtc/sampling.hpp"
#include "prrtc/tree.hpp"
#include "prrtc/types.hpp"

namespace prrtc {

enum class PlanStatus { Solved, Failed, InfeasibleEndpoint };

const char* to_string(PlanStatus s);

enum class SamplerKind { Halton, Uniform };

struct PlannerParams {
    double delta = 0.5;                     // extension range, config-space units
    int n_cc = 32;                          // samples per validated edge
    unsigned workers = 0;                   // 0 = hardware concurrency
    std::uint64_t max_iters_per_worker = 2000;
    std::size_t tree_capacity = 200000;     // total across both trees
    double dd_radius = 0.0;                 // <= 0 selects 4 * delta
    bool dynamic_domain = true;
    bool balance = true;                    // extend the smaller tree
    bool early_exit = true;
    bool two_stage = true;
    bool batched_cc = false;                // greedy connect validates sub-edges as a batch
    unsigned nn_partitions = 1;
    SamplerKind sampler = SamplerKind::Halton;
    std::uint64_t seed = 0;                 // shifts Halton offsets / seeds the uniform sampler

    double resolved_dd_radius() const { return dd_radius > 0.0 ? dd_radius : 4.0 * delta; }

    bool operator==(const PlannerParams&) const = default;
};

struct PlanResult {
    PlanStatus status = PlanStatus::Failed;
    std::vector<Config> path;               // Solved only; starts at start, ends at goal
    double cost = 0.0;                      // arclength of path
    double wall_time_ms = 0.0;
    std::uint64_t iterations_total = 0;
    CheckStatsSnapshot check_stats;
    int solving_worker = -1;
    std::string message;
};

// Bidirectional RRT-Connect with `workers` concurrent iterations against two
// shared append-only trees; first worker to connect the trees wins.
PlanResult plan(const RobotModel& model, const Scene& scene, ConfigView start, ConfigView goal,
                const PlannerParams& params);

// --- building blocks, exposed for tests ---

// Which tree to extend this iteration. Balanced mode picks the smaller
// (ties extend the start tree); otherwise selection alternates.
inline bool extend_start_tree(std::size_t len_a, std::size_t len_b, bool balance,
                              std::uint64_t iter) {
    return balance ? len_a <= len_b : (iter % 2 == 0);
}

struct ExtendOutcome {
    Config c_new;
    bool valid = false;
};

// One extension step: move from the nearest node toward c_rand by at most
// delta and validate the resulting edge. A failed extension shrinks the
// nearest node's sampling domain.
ExtendOutcome extend_step(CollisionChecker& checker, const Tree& tree, ConfigView c_rand,
                          const NnResult& nn, const PlannerParams& params, DynamicDomain& domain,
                          CheckStats& stats);

struct ConnectOutcome {
    bool reached = false;
    std::size_t last_added = Tree::kFull;   // last node appended to the extending tree
    std::size_t opposite_nn = Tree::kFull;  // the targeted node in the opposite tree
};

// Greedy connect: steps from the newly added node toward its nearest
// neighbor in the opposite tree in increments of at most delta, appending
// every validated intermediate. The final step lands exactly on the target
// configuration, so a successful connect produces a bitwise meeting pair.
ConnectOutcome greedy_connect(CollisionChecker& checker, Tree& tree, std::size_t new_index,
                              const Tree& opposite, std::size_t opposite_snapshot,
                              const PlannerParams& params, CheckStats& stats,
                              const std::atomic<bool>* stop = nullptr);

// Joins the two half-paths at a meeting pair with identical configurations.
// The result starts at the start-tree root and ends at the goal-tree root.
// Throws std::logic_error if the meeting configurations disagree.
std::vector<Config> assemble_path(const Tree& start_tree, const Tree& goal_tree,
                                  std::size_t meet_start, std::size_t meet_goal);

double path_cost(std::span<const Config> path);

}  // namespace prrtc
