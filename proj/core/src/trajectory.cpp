#include "cmlearn/trajectory.hpp"

#include <cmath>
#include <string>

#include "cmlearn/error.hpp"

namespace cml {

void Trajectory::validate() const {
    if (samples.size() < 2)
        throw Error(ErrorCode::invalid_input, "trajectory needs at least 2 samples");
    if (!(sample_rate_hz > 0.0))
        throw Error(ErrorCode::invalid_input, "trajectory sample rate must be positive");

    const double nominal = 1.0 / sample_rate_hz;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const Sample& s = samples[i];
        if (!std::isfinite(s.t) || !s.position.finite() || !s.measured_force.finite())
            throw Error(ErrorCode::invalid_input,
                        "non-finite value at sample " + std::to_string(i));
        if (i > 0) {
            const double dt = s.t - samples[i - 1].t;
            if (dt <= 0.0)
                throw Error(ErrorCode::invalid_input,
                            "time not strictly increasing at sample " + std::to_string(i));
            if (std::fabs(dt - nominal) > 0.1 * nominal)
                throw Error(ErrorCode::invalid_input,
                            "sample spacing off nominal by more than 10% at sample " +
                                std::to_string(i));
        }
    }
}

std::vector<MotionSample> preprocess(const Trajectory& traj, int window, double force_threshold) {
    if (window < 1) throw Error(ErrorCode::invalid_input, "preprocess: window must be >= 1");
    if (!(force_threshold > 0.0))
        throw Error(ErrorCode::invalid_input, "preprocess: force threshold must be positive");
    traj.validate();

    const std::size_t w = static_cast<std::size_t>(window);
    const std::size_t blocks = traj.samples.size() / w;
    std::vector<MotionSample> out;
    out.reserve(blocks);

    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t lo = b * w;
        const std::size_t hi = lo + w - 1;

        const Vec3 displacement = traj.samples[hi].position - traj.samples[lo].position;
        if (displacement.norm() < 1e-6) continue;  // stationary block

        Vec3 mean_force{};
        Vec3 mean_position{};
        double mean_force_norm = 0.0;
        for (std::size_t i = lo; i <= hi; ++i) {
            mean_force += traj.samples[i].measured_force;
            mean_position += traj.samples[i].position;
            mean_force_norm += traj.samples[i].measured_force.norm();
        }
        mean_force = mean_force / static_cast<double>(w);
        mean_position = mean_position / static_cast<double>(w);
        mean_force_norm /= static_cast<double>(w);

        MotionSample ms;
        ms.v_a_hat = displacement.normalized();
        ms.position = mean_position;
        ms.in_contact = mean_force_norm >= force_threshold;
        if (ms.in_contact) ms.f_hat = (-mean_force).normalized();
        out.push_back(ms);
    }

    if (out.empty())
        throw Error(ErrorCode::no_motion,
                    "no motion: every window of the trajectory is stationary");
    return out;
}

Vec3 mean_actual_direction(const Trajectory& traj) {
    traj.validate();
    const Vec3 net = traj.samples.back().position - traj.samples.front().position;
    if (net.norm() < 1e-4)
        throw Error(ErrorCode::degenerate_geometry,
                    "trajectory has no net displacement (" + std::to_string(net.norm()) + " m)");
    return net.normalized();
}

Vec3 mean_motion_direction(std::span<const MotionSample> samples) {
    if (samples.empty())
        throw Error(ErrorCode::invalid_input, "mean_motion_direction: no samples");
    if (samples.size() >= 2) {
        const Vec3 net = samples.back().position - samples.front().position;
        if (net.norm() >= 1e-9) return net.normalized();
    }
    Vec3 sum{};
    for (const MotionSample& ms : samples) sum += ms.v_a_hat;
    if (sum.norm() < 1e-9)
        throw Error(ErrorCode::degenerate_geometry,
                    "mean_motion_direction: directions cancel out");
    return sum.normalized();
}

}  // namespace cml
