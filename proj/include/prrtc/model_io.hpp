#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prrtc/geometry.hpp"
#include "prrtc/planner.hpp"
#include "prrtc/robot.hpp"
#include "prrtc/types.hpp"

namespace prrtc {

// Raised for unreadable files, malformed JSON, schema violations, and
// invariant violations; the message names the file and offending field.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Optional planner parameter overrides, as stored in problem files.
struct ParamsPatch {
    std::optional<double> delta;
    std::optional<int> n_cc;
    std::optional<unsigned> workers;
    std::optional<std::uint64_t> max_iters_per_worker;
    std::optional<std::size_t> tree_capacity;
    std::optional<double> dd_radius;
    std::optional<bool> dynamic_domain;
    std::optional<bool> balance;
    std::optional<bool> early_exit;
    std::optional<bool> two_stage;
    std::optional<bool> batched_cc;
    std::optional<unsigned> nn_partitions;
    std::optional<SamplerKind> sampler;
    std::optional<std::uint64_t> seed;

    void apply(PlannerParams& p) const;

    bool operator==(const ParamsPatch&) const = default;
};

struct ProblemSpec {
    std::string name;
    std::string robot;  // path as written in the file, relative to the file's directory
    std::string scene;
    Config start;
    Config goal;
    ParamsPatch params;

    bool operator==(const ProblemSpec&) const = default;
};

struct PathFile {
    std::string robot;
    std::string scene;
    std::vector<Config> configs;
    double cost = 0.0;
    PlannerParams params;
    std::string timestamp;

    bool operator==(const PathFile&) const = default;
};

struct BenchRecord {
    std::string problem;
    int trial = 0;
    PlanStatus status = PlanStatus::Failed;
    double time_ms = 0.0;
    double cost = 0.0;  // meaningful only when Solved
    std::uint64_t iterations = 0;
    std::uint64_t sphere_tests = 0;
    unsigned workers = 1;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
};

RobotModel load_robot(const std::filesystem::path& path);
Scene load_scene(const std::filesystem::path& path);

// Loads a problem and checks that start/goal dimensions match the robot's
// dof (the robot reference is resolved relative to the problem file).
ProblemSpec load_problem(const std::filesystem::path& path);

PathFile load_path_file(const std::filesystem::path& path);

void write_robot(const std::filesystem::path& path, const RobotModel& model);
void write_scene(const std::filesystem::path& path, const Scene& scene);
void write_problem(const std::filesystem::path& path, const ProblemSpec& problem);
void write_path(const std::filesystem::path& path, const PathFile& file);

// CSV rows under the fixed header
// problem,status,time_ms,cost,iterations,sphere_tests,workers,seed
void write_results_csv(const std::filesystem::path& path, std::span<const BenchRecord> rows);
std::string results_csv_string(std::span<const BenchRecord> rows);

// value,fraction_solved pairs
void write_ecdf_csv(const std::filesystem::path& path,
                    std::span<const std::pair<double, double>> points);

const char* to_string(SamplerKind k);

}  // namespace prrtc
