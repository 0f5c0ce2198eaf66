#include "prrtc/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace prrtc {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t params_hash(const PlannerParams& p) {
    std::ostringstream s;
    s << p.delta << '|' << p.n_cc << '|' << p.workers << '|' << p.max_iters_per_worker << '|'
      << p.tree_capacity << '|' << p.dd_radius << '|' << p.dynamic_domain << '|' << p.balance
      << '|' << p.early_exit << '|' << p.two_stage << '|' << p.batched_cc << '|'
      << p.nn_partitions << '|' << static_cast<int>(p.sampler);
    return fnv1a(s.str());
}

}  // namespace

LoadedProblem load_problem_bundle(const std::filesystem::path& path, const PlannerParams& base) {
    LoadedProblem out;
    out.spec = load_problem(path);
    const auto dir = path.parent_path();
    out.robot = load_robot(dir / out.spec.robot);
    out.scene = load_scene(dir / out.spec.scene);
    out.params = base;
    out.spec.params.apply(out.params);
    return out;
}

std::vector<LoadedProblem> load_problem_dir(const std::filesystem::path& dir,
                                            const PlannerParams& base) {
    std::vector<std::filesystem::path> files;
    if (!std::filesystem::is_directory(dir)) {
        throw IoError(dir.string() + ": not a directory");
    }
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<LoadedProblem> problems;
    problems.reserve(files.size());
    for (const auto& f : files) problems.push_back(load_problem_bundle(f, base));
    return problems;
}

std::vector<BenchRecord> run_suite(std::span<const LoadedProblem> problems, int trials) {
    std::vector<BenchRecord> records;
    records.reserve(problems.size() * static_cast<std::size_t>(trials));
    for (const LoadedProblem& problem : problems) {
        for (int trial = 0; trial < trials; ++trial) {
            PlannerParams params = problem.params;
            params.seed = problem.params.seed + static_cast<std::uint64_t>(trial);
            const PlanResult run =
                plan(problem.robot, problem.scene, problem.spec.start, problem.spec.goal, params);
            BenchRecord r;
            r.problem = problem.spec.name;
            r.trial = trial;
            r.status = run.status;
            r.time_ms = run.wall_time_ms;
            r.cost = run.cost;
            r.iterations = run.iterations_total;
            r.sphere_tests = run.check_stats.sphere_tests;
            r.workers = params.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                            : params.workers;
            r.seed = params.seed;
            r.config_hash = params_hash(params);
            records.push_back(std::move(r));
        }
    }
    return records;
}

Quantiles summarize_values(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("summarize_values: empty input");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto quantile = [&](double p) {
        const double h = p * static_cast<double>(sorted.size() - 1);
        const auto lo = static_cast<std::size_t>(h);
        if (lo + 1 >= sorted.size()) return sorted.back();
        return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
    };
    Quantiles q;
    q.n = sorted.size();
    q.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(q.n);
    q.q1 = quantile(0.25);
    q.median = quantile(0.5);
    q.q3 = quantile(0.75);
    q.p95 = quantile(0.95);
    q.max = sorted.back();
    return q;
}

namespace {

ProblemSummary summarize_group(const std::string& name,
                               std::span<const BenchRecord* const> records) {
    ProblemSummary s;
    s.problem = name;
    s.runs = records.size();
    std::vector<double> times, costs;
    for (const BenchRecord* r : records) {
        if (r->status == PlanStatus::Solved) {
            times.push_back(r->time_ms);
            costs.push_back(r->cost);
        }
    }
    s.solved = times.size();
    s.success_rate = s.runs == 0 ? 0.0 : static_cast<double>(s.solved) / s.runs;
    if (!times.empty()) {
        s.time_ms = summarize_values(times);
        s.cost = summarize_values(costs);
    }
    return s;
}

}  // namespace

std::vector<ProblemSummary> summarize(std::span<const BenchRecord> records) {
    if (records.empty()) throw std::invalid_argument("summarize: empty input");
    std::vector<std::string> order;
    for (const auto& r : records) {
        if (std::find(order.begin(), order.end(), r.problem) == order.end()) {
            order.push_back(r.problem);
        }
    }
    std::vector<ProblemSummary> out;
    std::vector<const BenchRecord*> pooled;
    for (const auto& name : order) {
        std::vector<const BenchRecord*> group;
        for (const auto& r : records) {
            if (r.problem == name) group.push_back(&r);
        }
        out.push_back(summarize_group(name, group));
    }
    for (const auto& r : records) pooled.push_back(&r);
    out.push_back(summarize_group("", pooled));
    return out;
}

std::string summary_table(std::span<const ProblemSummary> rows) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-28s %5s %7s | %9s %9s %9s | %9s %9s\n", "problem",
                  "runs", "succ", "t_mean", "t_med", "t_max", "c_mean", "c_med");
    out << line;
    for (const ProblemSummary& s : rows) {
        std::snprintf(line, sizeof(line),
                      "%-28s %5zu %6.1f%% | %9.3f %9.3f %9.3f | %9.3f %9.3f\n",
                      s.problem.empty() ? "(pooled)" : s.problem.c_str(), s.runs,
                      100.0 * s.success_rate, s.time_ms.mean, s.time_ms.median, s.time_ms.max,
                      s.cost.mean, s.cost.median);
        out << line;
    }
    return out.str();
}

AblationAxis ablation_axis_from(const std::string& name) {
    if (name == "workers") return AblationAxis::Workers;
    if (name == "early_exit") return AblationAxis::EarlyExit;
    if (name == "two_stage") return AblationAxis::TwoStage;
    if (name == "dynamic_domain") return AblationAxis::DynamicDomain;
    if (name == "batched_cc") return AblationAxis::BatchedCc;
    throw std::invalid_argument("unknown ablation axis '" + name + "'");
}

const char* to_string(AblationAxis axis) {
    switch (axis) {
        case AblationAxis::Workers: return "workers";
        case AblationAxis::EarlyExit: return "early_exit";
        case AblationAxis::TwoStage: return "two_stage";
        case AblationAxis::DynamicDomain: return "dynamic_domain";
        case AblationAxis::BatchedCc: return "batched_cc";
    }
    return "?";
}

namespace {

bool parse_on_off(const std::string& v) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw std::invalid_argument("expected on/off, got '" + v + "'");
}

}  // namespace

void apply_ablation_value(PlannerParams& params, AblationAxis axis, const std::string& value) {
    switch (axis) {
        case AblationAxis::Workers:
            params.workers = static_cast<unsigned>(std::stoul(value));
            break;
        case AblationAxis::EarlyExit:
            params.early_exit = parse_on_off(value);
            break;
        case AblationAxis::TwoStage:
            params.two_stage = parse_on_off(value);
            break;
        case AblationAxis::DynamicDomain:
            params.dynamic_domain = parse_on_off(value);
            break;
        case AblationAxis::BatchedCc:
            params.batched_cc = parse_on_off(value);
            break;
    }
}

std::vector<AblationGroup> run_ablation(const AblationSpec& spec,
                                        std::span<const LoadedProblem> problems, int trials) {
    if (spec.values.empty()) {
        throw std::invalid_argument("run_ablation: values must be non-empty");
    }
    std::vector<AblationGroup> groups;
    for (const std::string& value : spec.values) {
        std::vector<LoadedProblem> adjusted(problems.begin(), problems.end());
        for (LoadedProblem& p : adjusted) {
            apply_ablation_value(p.params, spec.axis, value);
        }
        groups.push_back({value, run_suite(adjusted, trials)});
    }
    return groups;
}

std::vector<std::pair<double, double>> ecdf_points(std::span<const BenchRecord> records,
                                                   bool use_cost) {
    std::vector<double> values;
    for (const auto& r : records) {
        if (r.status == PlanStatus::Solved) values.push_back(use_cost ? r.cost : r.time_ms);
    }
    std::sort(values.begin(), values.end());
    std::vector<std::pair<double, double>> points;
    points.reserve(values.size());
    const double total = static_cast<double>(records.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        points.emplace_back(values[i], static_cast<double>(i + 1) / total);
    }
    return points;
}

}  // namespace prrtc
