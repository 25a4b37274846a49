#pragma once

#include <cstdint>
#include <vector>

#include "cmlearn/environment.hpp"
#include "cmlearn/types.hpp"

namespace cml {

struct ControllerState {
    Vec3 setpoint;
    Vec3 position;
    Vec3 velocity;
    Mat3 stiffness;       // K, symmetric PSD
    double damping = 0.7; // N*s/m
    double speed = 0.05;  // m/s setpoint feed
    double dt = 0.01;     // s
};

// K = R V R^T with the compliant axes first in R and the stiff values on
// the remaining diagonal of V. Throws when the model axes are not an
// orthonormal set against the desired direction.
Mat3 build_stiffness(const MotionModel& model);

// Impedance law: restoring spring toward the setpoint plus linear damping
// opposing the velocity.
Vec3 controller_force(const ControllerState& state);

// Feed-forward setpoint update x* += dir * speed * dt; no position feedback.
void advance_setpoint(ControllerState& state, const Vec3& desired_direction);

struct StepResult {
    Vec3 contact_force;   // what a wrist F/T sensor would read
    int surface = -1;     // index into env.surfaces, -1 when free
    bool slipping = false;
    bool sticking = false;
};

// One quasi-static step under the controller force: implicit free motion,
// projection onto penetrated surfaces, Coulomb stick/slip on the active
// set. Position and velocity are updated in place.
StepResult step(ControllerState& state, const Environment& env);

// Same contact resolution driven by a constant external force instead of
// the impedance spring (the simulated demonstrator's hand).
StepResult forced_step(Vec3& position, Vec3& velocity, const Vec3& applied_force,
                       double damping, double dt, const Environment& env);

struct DemoConfig {
    Vec3 start;
    Vec3 approach;               // unit force direction the demonstrator holds
    double force_mag = 10.0;     // N
    double noise_deg = 10.0;     // per-window angular wobble of the push
    double duration_s = 6.0;
    double sample_rate_hz = 100.0;
    int noise_window = 20;       // samples per constant-noise block
    double hand_damping = 200.0; // N*s/m, sets the demonstration speed
    double sensor_noise_n = 0.05;
    std::uint64_t seed = 1;
    bool stop_at_target = true;
};

struct DemoResult {
    Trajectory trajectory;
    bool contacted = false;       // touched any surface at some point
    bool reached_target = false;
};

// Synthetic kinesthetic demonstration: the hand pushes with a constant
// force magnitude along a per-window perturbed direction; the recorded
// force is the contact reaction only (normal + friction) plus sensor noise.
DemoResult generate_demonstration(const Environment& env, const DemoConfig& cfg);

struct SimTraceRow {
    double t = 0.0;
    Vec3 position;
    Vec3 setpoint;
    Vec3 contact_force;
    int surface = -1;
};

struct SimTrace {
    std::vector<SimTraceRow> rows;
};

enum class ReproduceStatus { success, stuck, timeout };

struct ReproduceResult {
    SimTrace trace;
    ReproduceStatus status = ReproduceStatus::timeout;
    bool success() const { return status == ReproduceStatus::success; }
};

struct ReproduceConfig {
    Vec3 start;
    double max_time_s = 20.0;
    double dt = 0.01;
    int stall_limit = 100;      // consecutive no-motion steps before "stuck"
    double force_limit_n = 30.0;  // commanded-force safety stop, 0 disables
};

// Runs the learned model against an environment until the target region,
// a stall or the time limit.
ReproduceResult reproduce(const MotionModel& model, const Environment& env,
                          const ReproduceConfig& cfg);

}  // namespace cml
