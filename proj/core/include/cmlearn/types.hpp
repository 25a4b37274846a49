#pragma once

#include <vector>

#include "cmlearn/vec3.hpp"

namespace cml {

// One force/position record of a demonstration, world frame, SI units.
// measured_force is the gravity-compensated F/T reading: surface normal
// force plus Coulomb friction; the demonstrator's own push is not visible
// to the sensor.
struct Sample {
    double t = 0.0;        // seconds
    Vec3 position;         // meters
    Vec3 measured_force;   // newtons
};

struct Trajectory {
    std::vector<Sample> samples;
    double sample_rate_hz = 100.0;

    // Throws Error{invalid_input} naming the offending sample when the
    // trajectory breaks its invariants (>= 2 samples, strictly increasing
    // t, finite components, nominal spacing within 10% jitter).
    void validate() const;
};

// Windowed, direction-only view of a trajectory slice.
struct MotionSample {
    Vec3 v_a_hat;            // unit actual motion direction
    Vec3 f_hat;              // unit -F_m direction, valid iff in_contact
    bool in_contact = false;
    Vec3 position;           // window mean position, meters
};

// Complete reproduction recipe: where to push, where to yield.
struct MotionModel {
    Vec3 desired_direction;             // unit
    int n_compliant = 0;                // 0, 1 or 2
    std::vector<Vec3> compliant_axes;   // unit, orthogonal to desired_direction
    double stiffness_stiff = 500.0;     // N/m
    double stiffness_compliant = 0.0;   // N/m
    double damping = 0.7;               // N*s/m
    double speed = 0.05;                // m/s reproduction velocity

    void validate() const;  // axis count/orthogonality checks, throws on failure
};

}  // namespace cml
