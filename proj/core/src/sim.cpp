#include "cmlearn/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cmlearn/error.hpp"
#include "cmlearn/rng.hpp"

namespace cml {

namespace {

constexpr double k_active_tol = 1e-7;   // distance at which a surface counts as touching
constexpr double k_project_tol = 1e-9;  // residual penetration after projection
constexpr double k_deg = std::numbers::pi / 180.0;

// Push x back onto the free side of every violated surface. A few rounds
// handle the curved funnel, whose normal turns as the point moves.
void project_out(Vec3& x, const Environment& env) {
    for (int iter = 0; iter < 6; ++iter) {
        double worst = 0.0;
        int worst_idx = -1;
        Vec3 worst_n;
        for (std::size_t s = 0; s < env.surfaces.size(); ++s) {
            const SurfaceQuery q = query_surface(env.surfaces[s], x);
            if (q.signed_distance < worst) {
                worst = q.signed_distance;
                worst_idx = static_cast<int>(s);
                worst_n = q.normal;
            }
        }
        if (worst_idx < 0 || worst >= -k_project_tol) break;
        x -= worst_n * worst;
    }
}

struct ActiveContact {
    int surface;
    Vec3 normal;
    double reaction = 0.0;
};

// Normal reactions balancing the drive force on the touching surfaces:
// solve (n_i . n_j) N = -(f . n_i), dropping surfaces that would need to
// pull. Returns only the pressing contacts.
std::vector<ActiveContact> solve_reactions(std::vector<ActiveContact> contacts, const Vec3& f) {
    while (!contacts.empty()) {
        const std::size_t m = contacts.size();
        bool ok = true;
        if (m == 1) {
            contacts[0].reaction = -f.dot(contacts[0].normal);
        } else if (m == 2) {
            const double g01 = contacts[0].normal.dot(contacts[1].normal);
            const double det = 1.0 - g01 * g01;
            const double b0 = -f.dot(contacts[0].normal);
            const double b1 = -f.dot(contacts[1].normal);
            if (std::fabs(det) < 1e-12) {
                // parallel normals, treat as one contact
                contacts.pop_back();
                continue;
            }
            contacts[0].reaction = (b0 - g01 * b1) / det;
            contacts[1].reaction = (b1 - g01 * b0) / det;
        } else {
            // more than two walls: keep the two most opposed to the drive
            std::sort(contacts.begin(), contacts.end(),
                      [&](const ActiveContact& a, const ActiveContact& b) {
                          return f.dot(a.normal) < f.dot(b.normal);
                      });
            contacts.resize(2);
            continue;
        }
        for (std::size_t i = 0; i < contacts.size(); ++i) {
            if (contacts[i].reaction < 0.0) {
                contacts.erase(contacts.begin() + static_cast<std::ptrdiff_t>(i));
                ok = false;
                break;
            }
        }
        if (ok) break;
    }
    return contacts;
}

// One quasi-static step: implicit in the spring term (stable at the stock
// gains), Coulomb stick/slip on the active surfaces, projection to keep
// the point on the free side.
StepResult resolve_step(Vec3& x, Vec3& v, const Vec3& f0, const Mat3* stiffness, double damping,
                        double dt, const Environment& env) {
    StepResult result;
    const double d_over_dt = damping / dt;

    // surfaces currently touching
    std::vector<ActiveContact> touching;
    for (std::size_t s = 0; s < env.surfaces.size(); ++s) {
        const SurfaceQuery q = query_surface(env.surfaces[s], x);
        if (q.signed_distance <= k_active_tol)
            touching.push_back({static_cast<int>(s), q.normal});
    }

    std::vector<ActiveContact> pressing = solve_reactions(touching, f0);

    if (!pressing.empty()) {
        Vec3 normal_force{};
        double n_total = 0.0;
        for (const ActiveContact& c : pressing) {
            normal_force += c.normal * c.reaction;
            n_total += c.reaction;
        }
        const Vec3 tangential = f0 + normal_force;
        const double drive = tangential.norm();

        result.surface = pressing[0].surface;
        for (const ActiveContact& c : pressing)
            if (c.reaction > pressing[0].reaction) result.surface = c.surface;

        if (drive <= env.mu * n_total + 1e-12) {
            // static friction holds
            v = {};
            result.sticking = true;
            result.contact_force = normal_force - tangential;
            project_out(x, env);
            return result;
        }

        // slip: implicit solve restricted to the tangent subspace
        Mat3 projector = Mat3::identity();
        if (pressing.size() == 1) {
            projector = Mat3::identity() + Mat3::outer(pressing[0].normal, pressing[0].normal) * -1.0;
        } else {
            const Vec3 c = pressing[0].normal.cross(pressing[1].normal).normalized();
            projector = Mat3::outer(c, c);
        }
        const Vec3 t_hat = tangential / drive;

        Mat3 system = Mat3::diagonal(d_over_dt, d_over_dt, d_over_dt);
        if (stiffness) system = system + projector * (*stiffness) * projector;
        const Vec3 rhs = projector * f0 - t_hat * (env.mu * n_total);

        Vec3 delta{};
        if (!solve3(system, rhs, delta)) delta = {};
        delta = projector * delta;

        if (delta.dot(t_hat) <= 0.0 || delta.norm() < 1e-15) {
            // friction would reverse the motion within the step: stick
            v = {};
            result.sticking = true;
            result.contact_force = normal_force - tangential;
            project_out(x, env);
            return result;
        }

        x += delta;
        project_out(x, env);
        v = delta / dt;
        result.slipping = true;
        result.contact_force = normal_force + (delta.normalized() * -1.0) * (env.mu * n_total);
        return result;
    }

    // free motion (possibly separating from a surface)
    Mat3 system = Mat3::diagonal(d_over_dt, d_over_dt, d_over_dt);
    if (stiffness) system = system + *stiffness;
    Vec3 delta{};
    if (!solve3(system, f0, delta)) delta = {};

    Vec3 x_try = x + delta;
    double min_sd = 0.0;
    for (const Surface& s : env.surfaces)
        min_sd = std::min(min_sd, query_surface(s, x_try).signed_distance);

    if (min_sd >= -k_project_tol) {
        x = x_try;
        v = delta / dt;
        return result;
    }

    // bisect the travel to the first touch; forces start next step
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const Vec3 xm = x + delta * mid;
        double sd = 0.0;
        int idx = -1;
        for (std::size_t s = 0; s < env.surfaces.size(); ++s) {
            const double d = query_surface(env.surfaces[s], xm).signed_distance;
            if (d < sd) {
                sd = d;
                idx = static_cast<int>(s);
            }
        }
        if (sd < -k_project_tol)
            hi = mid;
        else {
            lo = mid;
            if (idx >= 0) result.surface = idx;
        }
    }
    x += delta * lo;
    project_out(x, env);
    v = delta * (lo / dt);
    // find the surface actually reached
    for (std::size_t s = 0; s < env.surfaces.size(); ++s)
        if (query_surface(env.surfaces[s], x).signed_distance <= k_active_tol)
            result.surface = static_cast<int>(s);
    return result;
}

}  // namespace

Mat3 build_stiffness(const MotionModel& model) {
    model.validate();
    const Vec3 v = model.desired_direction.normalized();

    Vec3 c0, c1, c2;
    double k0, k1, k2;
    if (model.n_compliant == 0) {
        return Mat3::diagonal(model.stiffness_stiff, model.stiffness_stiff,
                              model.stiffness_stiff);
    } else if (model.n_compliant == 1) {
        c0 = model.compliant_axes[0].normalized();
        c1 = v;
        c2 = c0.cross(v);
        k0 = model.stiffness_compliant;
        k1 = k2 = model.stiffness_stiff;
    } else {
        c0 = model.compliant_axes[0].normalized();
        c1 = model.compliant_axes[1].normalized();
        c2 = v;
        k0 = k1 = model.stiffness_compliant;
        k2 = model.stiffness_stiff;
    }
    const Mat3 r = Mat3::from_columns(c0, c1, c2);
    return r * Mat3::diagonal(k0, k1, k2) * r.transposed();
}

Vec3 controller_force(const ControllerState& state) {
    return state.stiffness * (state.setpoint - state.position) - state.velocity * state.damping;
}

void advance_setpoint(ControllerState& state, const Vec3& desired_direction) {
    state.setpoint += desired_direction * (state.speed * state.dt);
}

StepResult step(ControllerState& state, const Environment& env) {
    const Vec3 spring = state.stiffness * (state.setpoint - state.position);
    return resolve_step(state.position, state.velocity, spring, &state.stiffness, state.damping,
                        state.dt, env);
}

StepResult forced_step(Vec3& position, Vec3& velocity, const Vec3& applied_force, double damping,
                       double dt, const Environment& env) {
    return resolve_step(position, velocity, applied_force, nullptr, damping, dt, env);
}

DemoResult generate_demonstration(const Environment& env, const DemoConfig& cfg) {
    if (cfg.noise_deg < 0.0)
        throw Error(ErrorCode::invalid_input, "demo noise_deg must be non-negative");
    if (!(cfg.force_mag > 0.0) || !(cfg.sample_rate_hz > 0.0) || cfg.noise_window < 1)
        throw Error(ErrorCode::invalid_input, "demo config out of range");

    Rng rng(cfg.seed);
    const Vec3 approach = cfg.approach.normalized();
    const double dt = 1.0 / cfg.sample_rate_hz;
    const int steps = std::max(2, static_cast<int>(cfg.duration_s * cfg.sample_rate_hz));

    // orthonormal frame for the wobble
    Vec3 ref{1.0, 0.0, 0.0};
    if (std::fabs(approach.dot(ref)) > 0.9) ref = {0.0, 1.0, 0.0};
    const Vec3 e1 = (ref - approach * ref.dot(approach)).normalized();
    const Vec3 e2 = approach.cross(e1);

    DemoResult out;
    out.trajectory.sample_rate_hz = cfg.sample_rate_hz;
    out.trajectory.samples.reserve(static_cast<std::size_t>(steps));

    Vec3 x = cfg.start;
    Vec3 v{};
    Vec3 push = approach * cfg.force_mag;

    for (int k = 0; k < steps; ++k) {
        if (k % cfg.noise_window == 0) {
            // piecewise-constant wobble: humans drift slowly, not per-sample
            const double tilt = rng.uniform(0.0, cfg.noise_deg * k_deg);
            const double az = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const Vec3 dir =
                approach * std::cos(tilt) +
                (e1 * std::cos(az) + e2 * std::sin(az)) * std::sin(tilt);
            push = dir * cfg.force_mag;
        }

        const Vec3 x_before = x;
        const StepResult sr = resolve_step(x, v, push, nullptr, cfg.hand_damping, dt, env);
        if (sr.surface >= 0) out.contacted = true;

        Sample sample;
        sample.t = k * dt;
        sample.position = x_before;
        sample.measured_force = sr.contact_force +
                                Vec3{rng.gaussian(), rng.gaussian(), rng.gaussian()} *
                                    cfg.sensor_noise_n;
        out.trajectory.samples.push_back(sample);

        if ((x - env.target.point).norm() <= env.target.radius) {
            out.reached_target = true;
            if (cfg.stop_at_target && static_cast<int>(out.trajectory.samples.size()) >= 2) break;
        }
    }
    return out;
}

ReproduceResult reproduce(const MotionModel& model, const Environment& env,
                          const ReproduceConfig& cfg) {
    model.validate();

    ControllerState state;
    state.position = cfg.start;
    state.setpoint = cfg.start;
    state.stiffness = build_stiffness(model);
    state.damping = model.damping;
    state.speed = model.speed;
    state.dt = cfg.dt;

    ReproduceResult result;
    result.trace.rows.push_back({0.0, state.position, state.setpoint, {}, -1});

    const int max_steps = static_cast<int>(cfg.max_time_s / cfg.dt);
    int stall = 0;
    double prev_gap = 0.0;

    for (int k = 0; k < max_steps; ++k) {
        if ((state.position - env.target.point).norm() <= env.target.radius) {
            result.status = ReproduceStatus::success;
            return result;
        }

        advance_setpoint(state, model.desired_direction);

        // commanded-force safety stop, as on the physical arm: a wedged tool
        // winds the feed-forward setpoint away until the spring force trips
        const Vec3 commanded = state.stiffness * (state.setpoint - state.position);
        if (cfg.force_limit_n > 0.0 && commanded.norm() > cfg.force_limit_n) {
            result.status = ReproduceStatus::stuck;
            return result;
        }

        const Vec3 before = state.position;
        const StepResult sr = step(state, env);

        result.trace.rows.push_back(
            {(k + 1) * cfg.dt, state.position, state.setpoint, sr.contact_force, sr.surface});

        const double gap = (state.setpoint - state.position).norm();
        if ((state.position - before).norm() < 1e-7 && gap > prev_gap) {
            if (++stall >= cfg.stall_limit) {
                result.status = ReproduceStatus::stuck;
                return result;
            }
        } else {
            stall = 0;
        }
        prev_gap = gap;
    }
    if ((state.position - env.target.point).norm() <= env.target.radius)
        result.status = ReproduceStatus::success;
    else
        result.status = ReproduceStatus::timeout;
    return result;
}

}  // namespace cml
