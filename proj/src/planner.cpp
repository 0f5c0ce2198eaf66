#include "prrtc/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "prrtc/kernels.hpp"
#include "prrtc/kinematics.hpp"

namespace prrtc {

const char* to_string(PlanStatus s) {
    switch (s) {
        case PlanStatus::Solved: return "Solved";
        case PlanStatus::Failed: return "Failed";
        case PlanStatus::InfeasibleEndpoint: return "Infeasible-endpoint";
    }
    return "?";
}

namespace {

bool within_limits(const RobotModel& model, ConfigView q) {
    const auto lims = model.limits();
    for (std::size_t d = 0; d < lims.size(); ++d) {
        if (q[d] < lims[d][0] || q[d] > lims[d][1]) return false;
    }
    return true;
}

// Point k/n of the way from `from` to `to`; the last step is an exact copy
// so chained nodes meet the opposite tree bitwise.
void step_target(ConfigView from, ConfigView to, std::uint64_t k, std::uint64_t n, Config& out) {
    out.resize(from.size());
    if (k >= n) {
        std::copy(to.begin(), to.end(), out.begin());
    } else {
        kernels::ops().lerp(from.data(), to.data(),
                            static_cast<double>(k) / static_cast<double>(n), out.data(),
                            from.size());
    }
}

}  // namespace

ExtendOutcome extend_step(CollisionChecker& checker, const Tree& tree, ConfigView c_rand,
                          const NnResult& nn, const PlannerParams& params, DynamicDomain& domain,
                          CheckStats& stats) {
    ExtendOutcome out;
    const ConfigView nn_cfg = tree.config(nn.index);
    out.c_new.resize(nn_cfg.size());
    if (nn.distance <= params.delta) {
        std::copy(c_rand.begin(), c_rand.end(), out.c_new.begin());
    } else {
        kernels::ops().lerp(nn_cfg.data(), c_rand.data(), params.delta / nn.distance,
                            out.c_new.data(), nn_cfg.size());
    }
    const CheckOptions opt{params.two_stage, params.early_exit};
    out.valid = checker.validate_edge(nn_cfg, out.c_new, params.n_cc, stats, opt);
    if (!out.valid && params.dynamic_domain) domain.record_failure(nn.index);
    return out;
}

ConnectOutcome greedy_connect(CollisionChecker& checker, Tree& tree, std::size_t new_index,
                              const Tree& opposite, std::size_t opposite_snapshot,
                              const PlannerParams& params, CheckStats& stats,
                              const std::atomic<bool>* stop) {
    ConnectOutcome out;
    out.last_added = new_index;
    const Config c_new(tree.config(new_index).begin(), tree.config(new_index).end());
    const NnResult nno = nearest_parallel(opposite.view(opposite_snapshot), c_new,
                                          params.nn_partitions);
    out.opposite_nn = nno.index;
    const ConfigView target_cfg = opposite.config(nno.index);
    if (nno.distance == 0.0) {
        out.reached = true;
        return out;
    }

    const auto n_ext = static_cast<std::uint64_t>(std::ceil(nno.distance / params.delta));
    const CheckOptions opt{params.two_stage, params.early_exit};
    const Config target(target_cfg.begin(), target_cfg.end());

    if (params.batched_cc) {
        std::vector<EdgeCheckRequest> requests(n_ext);
        Config prev = c_new;
        for (std::uint64_t k = 1; k <= n_ext; ++k) {
            requests[k - 1].from = prev;
            step_target(c_new, target, k, n_ext, requests[k - 1].to);
            requests[k - 1].resolution_count = params.n_cc;
            prev = requests[k - 1].to;
        }
        const auto valid = checker.validate_edge_batched(requests, stats, opt);
        std::size_t prev_idx = new_index;
        for (std::uint64_t k = 0; k < n_ext; ++k) {
            if (!valid[k]) return out;
            const std::size_t idx = tree.append(requests[k].to, prev_idx);
            if (idx == Tree::kFull) return out;
            prev_idx = idx;
            out.last_added = idx;
        }
        out.reached = true;
        return out;
    }

    Config prev = c_new;
    Config next;
    std::size_t prev_idx = new_index;
    for (std::uint64_t k = 1; k <= n_ext; ++k) {
        if (stop != nullptr && stop->load(std::memory_order_relaxed)) return out;
        step_target(c_new, target, k, n_ext, next);
        if (!checker.validate_edge(prev, next, params.n_cc, stats, opt)) return out;
        const std::size_t idx = tree.append(next, prev_idx);
        if (idx == Tree::kFull) return out;
        prev_idx = idx;
        out.last_added = idx;
        prev.swap(next);
    }
    out.reached = true;
    return out;
}

std::vector<Config> assemble_path(const Tree& start_tree, const Tree& goal_tree,
                                  std::size_t meet_start, std::size_t meet_goal) {
    if (distance(start_tree.config(meet_start), goal_tree.config(meet_goal)) > 1e-12) {
        throw std::logic_error("assemble_path: meeting configurations disagree");
    }
    std::vector<Config> path;
    for (std::size_t i = meet_start;; i = start_tree.parent(i)) {
        path.emplace_back(start_tree.config(i).begin(), start_tree.config(i).end());
        if (start_tree.parent(i) == Tree::kRootParent) break;
    }
    std::reverse(path.begin(), path.end());
    bool first = true;
    for (std::size_t i = meet_goal;; i = goal_tree.parent(i)) {
        if (!first) {
            path.emplace_back(goal_tree.config(i).begin(), goal_tree.config(i).end());
        }
        first = false;  // the meeting config is already present from the start side
        if (goal_tree.parent(i) == Tree::kRootParent) break;
    }
    for (std::size_t i = 1; i < path.size(); ++i) {
        if (bitwise_equal(path[i - 1], path[i])) {
            throw std::logic_error("assemble_path: zero-length segment in assembled path");
        }
    }
    return path;
}

double path_cost(std::span<const Config> path) {
    double cost = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        cost += distance(path[i - 1], path[i]);
    }
    return cost;
}

namespace {

struct SharedState {
    const RobotModel& model;
    const Scene& scene;
    const PlannerParams& params;
    Tree tree_a;  // rooted at start
    Tree tree_b;  // rooted at goal
    DynamicDomain dd_a;
    DynamicDomain dd_b;
    std::atomic<bool> stop{false};
    std::atomic<int> winner{-1};
    std::atomic<std::uint64_t> iterations{0};
    CheckStats stats;
    std::vector<Config> path;  // written by the winning worker only

    SharedState(const RobotModel& m, const Scene& s, const PlannerParams& p, std::size_t cap)
        : model(m),
          scene(s),
          params(p),
          tree_a(cap, m.dof),
          tree_b(cap, m.dof),
          dd_a(cap, p.resolved_dd_radius()),
          dd_b(cap, p.resolved_dd_radius()) {}
};

void worker_main(SharedState& shared, unsigned worker_id, unsigned worker_count) {
    const PlannerParams& params = shared.params;
    const std::size_t dof = static_cast<std::size_t>(shared.model.dof);
    const JointLimits limits = shared.model.limits();

    CollisionChecker checker(shared.model, shared.scene);
    HaltonState halton =
        HaltonState::make(dof, 1 + params.seed + worker_id, worker_count);
    UniformSampler uniform(params.seed * 0x9e3779b97f4a7c15ull + worker_id);

    Config sample(dof);
    std::uint64_t local_iters = 0;

    for (std::uint64_t iter = 0; iter < params.max_iters_per_worker; ++iter) {
        if (shared.stop.load(std::memory_order_acquire)) break;
        ++local_iters;

        const std::size_t len_a = shared.tree_a.published();
        const std::size_t len_b = shared.tree_b.published();
        const bool from_start = extend_start_tree(len_a, len_b, params.balance, iter);
        Tree& ts = from_start ? shared.tree_a : shared.tree_b;
        const Tree& to = from_start ? shared.tree_b : shared.tree_a;
        DynamicDomain& domain = from_start ? shared.dd_a : shared.dd_b;

        if (params.sampler == SamplerKind::Halton) {
            sample_config(halton, limits, sample);
        } else {
            uniform.draw(limits, sample);
        }

        const std::size_t snapshot = ts.published();
        const NnResult nn = nearest_parallel(ts.view(snapshot), sample, params.nn_partitions);
        if (nn.distance == 0.0) continue;  // duplicate of an existing node
        if (params.dynamic_domain && !domain.accept(nn.index, nn.distance)) continue;

        ExtendOutcome ext =
            extend_step(checker, ts, sample, nn, params, domain, shared.stats);
        if (!ext.valid) continue;
        const std::size_t new_index = ts.append(ext.c_new, nn.index);
        if (new_index == Tree::kFull) break;  // capacity exhausted: budget is spent

        const ConnectOutcome connect =
            greedy_connect(checker, ts, new_index, to, to.published(), params, shared.stats,
                           &shared.stop);
        if (!connect.reached) continue;

        int expected = -1;
        if (shared.winner.compare_exchange_strong(expected, static_cast<int>(worker_id))) {
            const std::size_t meet_a = from_start ? connect.last_added : connect.opposite_nn;
            const std::size_t meet_b = from_start ? connect.opposite_nn : connect.last_added;
            shared.path = assemble_path(shared.tree_a, shared.tree_b, meet_a, meet_b);
            shared.stop.store(true, std::memory_order_release);
        }
        break;
    }
    shared.iterations.fetch_add(local_iters, std::memory_order_relaxed);
}

}  // namespace

PlanResult plan(const RobotModel& model, const Scene& scene, ConfigView start, ConfigView goal,
                const PlannerParams& params) {
    require_dim(start, static_cast<std::size_t>(model.dof), "plan.start");
    require_dim(goal, static_cast<std::size_t>(model.dof), "plan.goal");
    if (!(params.delta > 0.0)) throw std::invalid_argument("plan: delta must be positive");
    if (params.n_cc < 1) throw std::invalid_argument("plan: n_cc must be >= 1");
    if (params.tree_capacity < 2) throw std::invalid_argument("plan: tree_capacity too small");

    const auto t0 = std::chrono::steady_clock::now();
    PlanResult result;
    const auto finish = [&](PlanResult&& r) {
        r.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        return std::move(r);
    };

    const CheckOptions opt{params.two_stage, params.early_exit};
    CheckStats endpoint_stats;
    {
        CollisionChecker checker(model, scene);
        if (!within_limits(model, start) || !checker.check_config(start, endpoint_stats, opt)) {
            result.status = PlanStatus::InfeasibleEndpoint;
            result.message = "start configuration is out of limits or in collision";
            return finish(std::move(result));
        }
        if (!within_limits(model, goal) || !checker.check_config(goal, endpoint_stats, opt)) {
            result.status = PlanStatus::InfeasibleEndpoint;
            result.message = "goal configuration is out of limits or in collision";
            return finish(std::move(result));
        }
    }

    if (bitwise_equal(start, goal)) {
        result.status = PlanStatus::Solved;
        result.path = {Config(start.begin(), start.end())};
        result.cost = 0.0;
        result.check_stats = snapshot(endpoint_stats);
        return finish(std::move(result));
    }

    unsigned workers = params.workers;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());

    const std::size_t per_tree_capacity = std::max<std::size_t>(2, params.tree_capacity / 2);
    SharedState shared(model, scene, params, per_tree_capacity);
    shared.tree_a.append(start, Tree::kRootParent);
    shared.tree_b.append(goal, Tree::kRootParent);

    if (workers == 1) {
        worker_main(shared, 0, 1);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back([&shared, w, workers] { worker_main(shared, w, workers); });
        }
        for (auto& t : threads) t.join();
    }

    result.iterations_total = shared.iterations.load(std::memory_order_relaxed);
    result.check_stats = snapshot(shared.stats);
    result.check_stats.sphere_tests += endpoint_stats.sphere_tests.load();
    result.check_stats.fk_calls += endpoint_stats.fk_calls.load();
    result.check_stats.fine_stage_entries += endpoint_stats.fine_stage_entries.load();
    result.solving_worker = shared.winner.load();

    if (result.solving_worker >= 0) {
        result.status = PlanStatus::Solved;
        result.path = std::move(shared.path);
        result.cost = path_cost(result.path);
    } else {
        result.status = PlanStatus::Failed;
        result.message = "all workers exhausted their iteration budgets";
    }
    return finish(std::move(result));
}

}  // namespace prrtc
