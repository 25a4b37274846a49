#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cmlearn/compliance.hpp"
#include "cmlearn/direction.hpp"
#include "cmlearn/io.hpp"
#include "cmlearn/sim.hpp"

namespace cml {

// Exit-code contract shared by the CLI commands.
inline constexpr int k_exit_ok = 0;
inline constexpr int k_exit_infeasible = 2;  // empty feasible set / degenerate learning
inline constexpr int k_exit_reproduce_failed = 3;
inline constexpr int k_exit_config = 4;      // config or IO problems

// ---- synthetic demonstration planning ------------------------------------

struct DemoPlan {
    Vec3 start;
    Vec3 approach;           // unit push direction
    int direction_class = 0; // which approach family the demo belongs to
};

// Demo layouts per environment: "perpendicular" cycles four azimuths into
// the funnel, "down" alternates the valley walls while heading downhill,
// "side" rides one valley wall, "free" pushes straight at the target.
// "auto" picks the environment's natural pattern.
std::vector<DemoPlan> plan_demos(const Environment& env, std::string_view pattern, int count);
std::string default_pattern(const Environment& env);

// Ground-truth desired direction of a pattern, where one exists.
Vec3 pattern_truth(const Environment& env, std::string_view pattern);

struct SyntheticDemo {
    Trajectory trajectory;
    DemoPlan plan;
    bool contacted = false;
};

std::vector<SyntheticDemo> generate_demo_batch(const Environment& env, std::string_view pattern,
                                               int count, double noise_deg, double force_mag,
                                               std::uint64_t seed, double duration_s = 8.0);

// How classification subsets may pair demos, mirroring the demonstration
// protocol (funnel pairs are perpendicular, valley pairs use both walls).
enum class PairRule { any, distinct_class, perpendicular_class };
PairRule pattern_pair_rule(std::string_view pattern);

// ---- CLI command cores ----------------------------------------------------

struct GenDemoConfig {
    std::filesystem::path env_file;
    std::filesystem::path out_dir = ".";
    std::string pattern = "auto";
    int count = 2;
    std::uint64_t seed = 7;
    double noise_deg = 10.0;
    double force_mag = 10.0;
    double duration_s = 8.0;
    int window = 20;
    double mu_override = -1.0;  // >= 0 replaces the environment's friction
};

struct LearnConfig {
    std::vector<std::filesystem::path> demo_files;
    std::filesystem::path out_dir = ".";
    ConstraintSpec constraint;
    ComplianceSpec compliance;
    double speed = 0.05;
    double stiffness_stiff = 500.0;
    double stiffness_compliant = 0.0;
    double damping = 0.7;
    bool debug_dumps = true;  // theta.csv and grid.csv alongside the model
};

struct LearnOutput {
    MotionModel model;
    DirectionResult direction;
    ComplianceResult compliance;
};

// Learn a model from trajectory files; throws on infeasible input.
LearnOutput learn_from_files(const LearnConfig& cfg);

struct ReproduceCmdConfig {
    std::filesystem::path model_file;
    std::filesystem::path env_file;
    std::filesystem::path out_dir = ".";
    std::vector<Vec3> starts;  // empty -> a default ring of starts
    double max_time_s = 20.0;
};

struct EvalConfig {
    std::filesystem::path out_dir = ".";
    std::uint64_t seed = 7;
    double alpha_deg = 20.0;
    double sigma = 0.03;
    double noise_deg = 10.0;
    double mu = 0.3;
    double grid_resolution_deg = 1.0;
    int window = 20;
    double force_threshold = 2.0;
    int demo_count = 32;   // direction study pool
    int bic_demos = 30;    // per environment
    int subsets = 100;     // resampled classification pairs
};

int cmd_gen_demo(const GenDemoConfig& cfg);
int cmd_learn(const LearnConfig& cfg);
int cmd_reproduce(const ReproduceCmdConfig& cfg);
int cmd_eval(const EvalConfig& cfg);

}  // namespace cml
