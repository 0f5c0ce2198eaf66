#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "prrtc/model_io.hpp"
#include "prrtc/planner.hpp"

namespace prrtc {

// A problem with its referenced robot and scene resolved and loaded, and the
// effective planner parameters (base overridden by the problem's patch).
struct LoadedProblem {
    ProblemSpec spec;
    RobotModel robot;
    Scene scene;
    PlannerParams params;
};

// Loads a single problem file, resolving robot/scene references.
LoadedProblem load_problem_bundle(const std::filesystem::path& path,
                                  const PlannerParams& base);

// All *.json problems in a directory, sorted by filename.
std::vector<LoadedProblem> load_problem_dir(const std::filesystem::path& dir,
                                            const PlannerParams& base);

// Runs every problem `trials` times. Trial t uses seed base.seed + t; the
// recorded time covers only the plan() call, never setup. Records are
// ordered by (problem, trial).
std::vector<BenchRecord> run_suite(std::span<const LoadedProblem> problems, int trials);

struct Quantiles {
    std::size_t n = 0;
    double mean = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double p95 = 0.0;
    double max = 0.0;
};

// Linear-interpolation quantiles over the sorted values. Throws
// std::invalid_argument on empty input.
Quantiles summarize_values(std::span<const double> values);

struct ProblemSummary {
    std::string problem;       // empty for the pooled row
    std::size_t runs = 0;
    std::size_t solved = 0;
    double success_rate = 0.0;
    Quantiles time_ms;         // over solved runs only
    Quantiles cost;            // over solved runs only
};

// Per-problem summaries plus a pooled row (problem == ""). Failed runs are
// excluded from the time/cost quantiles and reported via success_rate.
std::vector<ProblemSummary> summarize(std::span<const BenchRecord> records);

std::string summary_table(std::span<const ProblemSummary> rows);

enum class AblationAxis { Workers, EarlyExit, TwoStage, DynamicDomain, BatchedCc };

AblationAxis ablation_axis_from(const std::string& name);
const char* to_string(AblationAxis axis);

struct AblationSpec {
    AblationAxis axis = AblationAxis::Workers;
    std::vector<std::string> values;  // parsed per axis: integers or on/off
};

// Applies one swept value to a parameter set; all other fields are
// untouched.
void apply_ablation_value(PlannerParams& params, AblationAxis axis, const std::string& value);

struct AblationGroup {
    std::string value;
    std::vector<BenchRecord> records;
};

// Sweeps the axis holding everything else fixed.
std::vector<AblationGroup> run_ablation(const AblationSpec& spec,
                                        std::span<const LoadedProblem> problems, int trials);

// Sorted (value, fraction-of-all-runs-solved-within-value) pairs over the
// solved records.
std::vector<std::pair<double, double>> ecdf_points(std::span<const BenchRecord> records,
                                                   bool use_cost);

}  // namespace prrtc
