#include "prrtc/collision.hpp"

#include <algorithm>
#include <stdexcept>

namespace prrtc {

namespace {

// Sample i of n along from -> to. The far endpoint is copied, not
// interpolated, so the configuration that lands in a tree is exactly the
// one that was checked.
void edge_sample(ConfigView from, ConfigView to, int i, int n, Config& out) {
    out.resize(from.size());
    if (i == n) {
        std::copy(to.begin(), to.end(), out.begin());
    } else {
        kernels::ops().lerp(from.data(), to.data(), static_cast<double>(i) / n, out.data(),
                            from.size());
    }
}

}  // namespace

CollisionChecker::CollisionChecker(const RobotModel& model, const Scene& scene)
    : model_(model), index_(scene) {
    const std::size_t links = model.link_count();
    poses_.resize(links);
    ccx_.resize(links);
    ccy_.resize(links);
    ccz_.resize(links);
    ccr_.resize(links);
    fine_offset_.resize(links + 1, 0);
    for (std::size_t l = 0; l < links; ++l) {
        fine_offset_[l + 1] = fine_offset_[l] + model.spheres[l].fine.size();
    }
    const std::size_t total_fine = fine_offset_[links];
    fx_.resize(total_fine);
    fy_.resize(total_fine);
    fz_.resize(total_fine);
    fr_.resize(total_fine);
    fine_posed_.resize(links);
    hit_s_.resize(index_.sphere_count());
    hit_c_.resize(index_.capsule_count());
    hit_b_.resize(index_.box_count());
    flags_.resize(links);
}

kernels::SphereSoA CollisionChecker::posed_fine(std::size_t link) {
    const std::size_t off = fine_offset_[link];
    const std::size_t n = fine_offset_[link + 1] - off;
    if (!fine_posed_[link]) {
        const auto& fine = model_.spheres[link].fine;
        const Transform& tf = poses_[link];
        for (std::size_t k = 0; k < n; ++k) {
            const Vec3 c = tf.apply(fine[k].center);
            fx_[off + k] = c.x;
            fy_[off + k] = c.y;
            fz_[off + k] = c.z;
            fr_[off + k] = fine[k].radius;
        }
        fine_posed_[link] = 1;
    }
    return {fx_.data() + off, fy_.data() + off, fz_.data() + off, fr_.data() + off, n};
}

bool CollisionChecker::fine_link_vs_flagged(std::size_t link, const LinkFlags& flags,
                                            CheckStats& stats) {
    const auto& k = kernels::ops();
    const kernels::SphereSoA fine = posed_fine(link);
    for (std::size_t idx : flags.spheres) {
        const auto sc = index_.spheres();
        stats.add_sphere_tests(fine.n);
        if (k.sphere_vs_spheres(fine, sc.x[idx], sc.y[idx], sc.z[idx], sc.r[idx], nullptr)) {
            return true;
        }
    }
    for (std::size_t idx : flags.capsules) {
        stats.add_sphere_tests(fine.n);
        if (k.any_sphere_vs_capsule(fine, index_.capsule_params(idx))) return true;
    }
    for (std::size_t idx : flags.boxes) {
        stats.add_sphere_tests(fine.n);
        if (k.any_sphere_vs_box(fine, index_.box_params(idx))) return true;
    }
    return false;
}

bool CollisionChecker::fine_pair_collides(std::size_t li, std::size_t lj, CheckStats& stats) {
    const auto& k = kernels::ops();
    const kernels::SphereSoA fi = posed_fine(li);
    const kernels::SphereSoA fj = posed_fine(lj);
    stats.add_sphere_tests(fi.n * fj.n);
    for (std::size_t s = 0; s < fi.n; ++s) {
        if (k.sphere_vs_spheres(fj, fi.x[s], fi.y[s], fi.z[s], fi.r[s], nullptr)) return true;
    }
    return false;
}

bool CollisionChecker::check_config_brute(CheckStats& stats, const CheckOptions& opt) {
    const auto& k = kernels::ops();
    const auto scene_spheres = index_.spheres();
    const auto scene_capsules = index_.capsules();
    const auto scene_boxes = index_.boxes();
    bool colliding = false;
    for (std::size_t l = 0; l < model_.link_count() && !(colliding && opt.early_exit); ++l) {
        const kernels::SphereSoA fine = posed_fine(l);
        for (std::size_t s = 0; s < fine.n; ++s) {
            stats.add_sphere_tests(index_.primitive_count());
            bool hit = k.sphere_vs_spheres(scene_spheres, fine.x[s], fine.y[s], fine.z[s],
                                           fine.r[s], nullptr);
            hit = hit || k.sphere_vs_capsules(scene_capsules, fine.x[s], fine.y[s], fine.z[s],
                                              fine.r[s], nullptr);
            hit = hit || k.sphere_vs_boxes(scene_boxes, fine.x[s], fine.y[s], fine.z[s],
                                           fine.r[s], nullptr);
            if (hit) {
                colliding = true;
                if (opt.early_exit) break;
            }
        }
    }
    for (std::size_t p = 0; p < model_.self_pairs.size() && !(colliding && opt.early_exit);
         ++p) {
        const auto [a, b] = model_.self_pairs[p];
        if (fine_pair_collides(a, b, stats)) colliding = true;
    }
    return !colliding;
}

bool CollisionChecker::check_config(ConfigView q, CheckStats& stats, const CheckOptions& opt) {
    require_dim(q, static_cast<std::size_t>(model_.dof), "check_config");
    forward_kinematics(model_, q, poses_);
    stats.fk_calls.fetch_add(1, std::memory_order_relaxed);
    std::fill(fine_posed_.begin(), fine_posed_.end(), 0);

    if (!opt.two_stage) return check_config_brute(stats, opt);

    const auto& k = kernels::ops();
    const std::size_t links = model_.link_count();
    for (std::size_t l = 0; l < links; ++l) {
        const Vec3 c = poses_[l].apply(model_.spheres[l].coarse.center);
        ccx_[l] = c.x;
        ccy_[l] = c.y;
        ccz_[l] = c.z;
        ccr_[l] = model_.spheres[l].coarse.radius;
    }

    // Stage 1: coarse spheres against the scene, recording which primitives
    // flagged each link.
    flagged_links_.clear();
    flagged_pairs_.clear();
    const auto scene_spheres = index_.spheres();
    const auto scene_capsules = index_.capsules();
    const auto scene_boxes = index_.boxes();
    for (std::size_t l = 0; l < links; ++l) {
        LinkFlags& f = flags_[l];
        f.clear();
        stats.add_sphere_tests(index_.primitive_count());
        if (k.sphere_vs_spheres(scene_spheres, ccx_[l], ccy_[l], ccz_[l], ccr_[l],
                                hit_s_.data())) {
            for (std::size_t i = 0; i < hit_s_.size(); ++i) {
                if (hit_s_[i]) f.spheres.push_back(i);
            }
        }
        if (k.sphere_vs_capsules(scene_capsules, ccx_[l], ccy_[l], ccz_[l], ccr_[l],
                                 hit_c_.data())) {
            for (std::size_t i = 0; i < hit_c_.size(); ++i) {
                if (hit_c_[i]) f.capsules.push_back(i);
            }
        }
        if (k.sphere_vs_boxes(scene_boxes, ccx_[l], ccy_[l], ccz_[l], ccr_[l], hit_b_.data())) {
            for (std::size_t i = 0; i < hit_b_.size(); ++i) {
                if (hit_b_[i]) f.boxes.push_back(i);
            }
        }
        if (f.any()) flagged_links_.push_back(l);
    }
    for (const auto& [a, b] : model_.self_pairs) {
        stats.add_sphere_tests(1);
        const double dx = ccx_[a] - ccx_[b], dy = ccy_[a] - ccy_[b], dz = ccz_[a] - ccz_[b];
        const double rr = ccr_[a] + ccr_[b];
        if (dx * dx + dy * dy + dz * dz < rr * rr) flagged_pairs_.emplace_back(a, b);
    }

    if (flagged_links_.empty() && flagged_pairs_.empty()) return true;

    // Stage 2: re-check flagged links with fine spheres, only against what
    // flagged them.
    stats.fine_stage_entries.fetch_add(1, std::memory_order_relaxed);
    bool colliding = false;
    for (std::size_t l : flagged_links_) {
        if (fine_link_vs_flagged(l, flags_[l], stats)) {
            colliding = true;
            if (opt.early_exit) return false;
        }
    }
    for (const auto& [a, b] : flagged_pairs_) {
        if (fine_pair_collides(a, b, stats)) {
            colliding = true;
            if (opt.early_exit) return false;
        }
    }
    return !colliding;
}

bool CollisionChecker::validate_edge(ConfigView from, ConfigView to, int resolution_count,
                                     CheckStats& stats, const CheckOptions& opt) {
    require_dim(from, static_cast<std::size_t>(model_.dof), "validate_edge.from");
    require_dim(to, static_cast<std::size_t>(model_.dof), "validate_edge.to");
    if (resolution_count < 1) {
        throw std::invalid_argument("validate_edge: resolution_count must be >= 1");
    }
    if (bitwise_equal(from, to)) return check_config(to, stats, opt);

    bool ok = true;
    for (int i = 1; i <= resolution_count; ++i) {
        edge_sample(from, to, i, resolution_count, sample_);
        if (!check_config(sample_, stats, opt)) {
            ok = false;
            if (opt.early_exit) break;
        }
    }
    return ok;
}

std::vector<std::uint8_t> CollisionChecker::validate_edge_batched(
    std::span<const EdgeCheckRequest> requests, CheckStats& stats, const CheckOptions& opt) {
    std::vector<std::uint8_t> result(requests.size(), 1);
    std::vector<std::uint8_t> done(requests.size(), 0);
    std::vector<int> counts(requests.size());
    int max_n = 0;
    for (std::size_t e = 0; e < requests.size(); ++e) {
        const auto& r = requests[e];
        require_dim(r.from, static_cast<std::size_t>(model_.dof), "validate_edge_batched.from");
        require_dim(r.to, static_cast<std::size_t>(model_.dof), "validate_edge_batched.to");
        if (r.resolution_count < 1) {
            throw std::invalid_argument("validate_edge_batched: resolution_count must be >= 1");
        }
        counts[e] = bitwise_equal(r.from, r.to) ? 1 : r.resolution_count;
        max_n = std::max(max_n, counts[e]);
    }

    // Lockstep across edges: sample i of every still-open edge before
    // sample i+1 of any.
    for (int i = 1; i <= max_n; ++i) {
        bool open = false;
        for (std::size_t e = 0; e < requests.size(); ++e) {
            if (done[e] || i > counts[e]) continue;
            edge_sample(requests[e].from, requests[e].to, i, counts[e], sample_);
            if (!check_config(sample_, stats, opt)) {
                result[e] = 0;
                if (opt.early_exit) {
                    done[e] = 1;
                    continue;
                }
            }
            if (i < counts[e]) open = true;
        }
        if (!open) break;
    }
    return result;
}

bool check_config(const RobotModel& model, const Scene& scene, ConfigView q, CheckStats& stats,
                  const CheckOptions& opt) {
    CollisionChecker checker(model, scene);
    return checker.check_config(q, stats, opt);
}

bool validate_edge(const RobotModel& model, const Scene& scene, const EdgeCheckRequest& req,
                   CheckStats& stats, const CheckOptions& opt) {
    CollisionChecker checker(model, scene);
    return checker.validate_edge(req.from, req.to, req.resolution_count, stats, opt);
}

}  // namespace prrtc
