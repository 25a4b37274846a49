#include "cmlearn/environment.hpp"

#include <cmath>
#include <numbers>

namespace cml {

namespace {
constexpr double k_deg = std::numbers::pi / 180.0;
}

double FunnelSurface::wall_radius(double h) const {
    if (h <= 0.0) return 0.0;
    const double hc = std::min(h, height);
    double r;
    if (std::fabs(half_angle_mouth_rad - half_angle_apex_rad) < 1e-12) {
        r = hc * std::tan(half_angle_apex_rad);
    } else {
        // integral of tan(beta(u)) for the linearly varying half-angle
        const double k = (half_angle_mouth_rad - half_angle_apex_rad) / height;
        const double beta_h = half_angle_apex_rad + k * hc;
        r = (std::log(std::cos(half_angle_apex_rad)) - std::log(std::cos(beta_h))) / k;
    }
    if (h > height) r += (h - height) * std::tan(half_angle_mouth_rad);
    return r;
}

namespace {

SurfaceQuery query_plane(const PlaneSurface& plane, const Vec3& x) {
    const Vec3 n = plane.normal.normalized();
    return {n.dot(x - plane.point), n};
}

SurfaceQuery query_funnel(const FunnelSurface& funnel, const Vec3& x) {
    const Vec3 d = x - funnel.apex;
    const double h = d.dot(funnel.axis);
    const Vec3 radial = d - funnel.axis * h;
    const double rho = radial.norm();

    // beyond the mouth radius the rim plane ("table" the funnel sits in)
    // takes over; inside, the bowl wall does
    const double mouth_r = funnel.wall_radius(funnel.height);
    if (rho >= mouth_r) {
        return {h - funnel.height, funnel.axis};
    }

    if (h <= 0.0) {
        // at or below the apex: block downward motion
        return {h, funnel.axis};
    }

    const double hc = std::min(h, funnel.height);
    double beta = funnel.half_angle_apex_rad;
    if (funnel.height > 0.0)
        beta += (funnel.half_angle_mouth_rad - funnel.half_angle_apex_rad) *
                std::min(hc / funnel.height, 1.0);

    const Vec3 rho_hat = rho > 1e-12 ? radial / rho : Vec3{};
    const double sd = (funnel.wall_radius(h) - rho) * std::cos(beta);
    if (rho <= 1e-12) {
        // on the axis: nearest wall is all around; report the apex footing
        return {h * std::sin(beta), funnel.axis};
    }
    const Vec3 normal = (funnel.axis * std::sin(beta) - rho_hat * std::cos(beta)).normalized();
    return {sd, normal};
}

}  // namespace

SurfaceQuery query_surface(const Surface& surface, const Vec3& x) {
    if (const auto* plane = std::get_if<PlaneSurface>(&surface)) return query_plane(*plane, x);
    return query_funnel(std::get<FunnelSurface>(surface), x);
}

Environment make_free_environment() {
    Environment env;
    env.name = "free";
    env.target = {{0.0, 0.0, -0.1}, 0.005};
    return env;
}

Environment make_plane_environment(double mu) {
    Environment env;
    env.name = "plane";
    env.mu = mu;
    env.surfaces.push_back(PlaneSurface{{0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}});
    env.target = {{0.1, 0.0, 0.0}, 0.005};
    return env;
}

Vec3 valley_axis(double axis_tilt_deg) {
    const double t = axis_tilt_deg * k_deg;
    return {0.0, std::cos(t), -std::sin(t)};
}

Vec3 valley_wall_normal(double axis_tilt_deg, bool left) {
    const double t = axis_tilt_deg * k_deg;
    const Vec3 up{0.0, std::sin(t), std::cos(t)};  // perpendicular to the axis, in the y-z plane
    const Vec3 across{left ? 1.0 : -1.0, 0.0, 0.0};
    return ((up + across) * (1.0 / std::sqrt(2.0))).normalized();
}

Environment make_valley_environment(double axis_tilt_deg, double mu) {
    Environment env;
    env.name = "valley";
    env.mu = mu;
    env.surfaces.push_back(PlaneSurface{{0.0, 0.0, 0.0}, valley_wall_normal(axis_tilt_deg, true)});
    env.surfaces.push_back(PlaneSurface{{0.0, 0.0, 0.0}, valley_wall_normal(axis_tilt_deg, false)});
    env.target = {valley_axis(axis_tilt_deg) * 0.15, 0.005};
    return env;
}

Environment make_funnel_environment(bool curved, double tilt_deg, double mu) {
    Environment env;
    env.name = "funnel";
    env.mu = mu;

    FunnelSurface funnel;
    funnel.apex = {0.0, 0.0, 0.0};
    const double t = tilt_deg * k_deg;
    funnel.axis = {std::sin(t), 0.0, std::cos(t)};
    funnel.height = 0.10;
    if (curved) {
        funnel.half_angle_apex_rad = 35.0 * k_deg;
        funnel.half_angle_mouth_rad = 60.0 * k_deg;
    } else {
        funnel.half_angle_apex_rad = 45.0 * k_deg;
        funnel.half_angle_mouth_rad = 45.0 * k_deg;
    }
    env.surfaces.push_back(funnel);
    env.target = {funnel.apex, 0.005};
    return env;
}

}  // namespace cml
