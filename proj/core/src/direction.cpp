#include "cmlearn/direction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cmlearn/error.hpp"
#include "cmlearn/trajectory.hpp"

namespace cml {

void ConstraintSpec::validate() const {
    if (!(alpha_deg > 0.0 && alpha_deg < 90.0))
        throw Error(ErrorCode::invalid_input, "alpha_deg must be in (0, 90)");
    if (window < 1) throw Error(ErrorCode::invalid_input, "window must be >= 1");
    if (free_space_circle_points < 3)
        throw Error(ErrorCode::invalid_input, "free_space_circle_points must be >= 3");
    if (!(force_threshold > 0.0))
        throw Error(ErrorCode::invalid_input, "force_threshold must be positive");
    if (!(grid_resolution_deg > 0.0))
        throw Error(ErrorCode::invalid_input, "grid_resolution_deg must be positive");
}

namespace {

// Cone of half-angle alpha around v: rays v + tan(alpha) * circle.
std::vector<Vec3> circle_rays(const Vec3& v, double tan_alpha, int points) {
    // complete v to an orthonormal triad
    Vec3 ref{1.0, 0.0, 0.0};
    if (std::fabs(v.dot(ref)) > 0.9) ref = {0.0, 1.0, 0.0};
    const Vec3 e1 = (ref - v * ref.dot(v)).normalized();
    const Vec3 e2 = v.cross(e1);

    std::vector<Vec3> rays;
    rays.reserve(points);
    for (int k = 0; k < points; ++k) {
        const double psi = 2.0 * std::numbers::pi * k / points;
        rays.push_back(v + (e1 * std::cos(psi) + e2 * std::sin(psi)) * tan_alpha);
    }
    return rays;
}

}  // namespace

std::vector<Vec3> build_constraint(const MotionSample& ms, const ConstraintSpec& spec) {
    spec.validate();
    const double tan_alpha = std::tan(spec.alpha_deg * std::numbers::pi / 180.0);

    if (ms.in_contact) {
        const Vec3 cross = ms.f_hat.cross(ms.v_a_hat);
        const double cross_norm = cross.norm();
        if (cross_norm >= 1e-6) {
            const Vec3 eps = cross * (tan_alpha / cross_norm);
            return {ms.v_a_hat + eps, ms.v_a_hat - eps, ms.f_hat - eps, ms.f_hat + eps};
        }
        // force anti-parallel to motion: the error direction is undefined,
        // keep the sample as a pure motion-cone constraint
    }
    return circle_rays(ms.v_a_hat, tan_alpha, spec.free_space_circle_points);
}

std::vector<AngularPolygon> constraint_polygons(
    std::span<const std::vector<MotionSample>> demos, const ConstraintSpec& spec,
    const Mat3& rotation, int* degenerate_samples) {
    std::vector<AngularPolygon> polygons;
    if (degenerate_samples) *degenerate_samples = 0;
    for (std::size_t d = 0; d < demos.size(); ++d) {
        for (std::size_t s = 0; s < demos[d].size(); ++s) {
            const MotionSample& ms = demos[d][s];
            if (degenerate_samples && ms.in_contact &&
                ms.f_hat.cross(ms.v_a_hat).norm() < 1e-6)
                ++*degenerate_samples;
            std::vector<Vec3> rays = build_constraint(ms, spec);

            std::vector<AngularPoint> projected;
            projected.reserve(rays.size());
            try {
                for (const Vec3& ray : rays)
                    projected.push_back(vec_to_angular((rotation * ray).normalized()));
                polygons.push_back(convex_hull(std::move(projected)));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::degenerate_geometry) throw;
                throw Error(ErrorCode::degenerate_geometry,
                            "unusable constraint at demonstration " + std::to_string(d) +
                                ", sample " + std::to_string(s) + ": " + e.what());
            }
        }
    }
    return polygons;
}

DirectionResult learn_direction(std::span<const std::vector<MotionSample>> demos,
                                const ConstraintSpec& spec) {
    spec.validate();
    if (demos.empty()) throw Error(ErrorCode::invalid_input, "learn_direction: no demonstrations");
    for (std::size_t d = 0; d < demos.size(); ++d)
        if (demos[d].empty())
            throw Error(ErrorCode::invalid_input,
                        "learn_direction: demonstration " + std::to_string(d) + " is empty");

    // voting frame: rotate the pooled mean motion direction onto +z.
    // The per-demo directions are summed in canonical order so the result
    // does not depend on how the demonstrations are listed.
    std::vector<Vec3> demo_dirs;
    demo_dirs.reserve(demos.size());
    for (const auto& demo : demos) demo_dirs.push_back(mean_motion_direction(demo));
    std::vector<Vec3> sorted_dirs = demo_dirs;
    std::sort(sorted_dirs.begin(), sorted_dirs.end(), [](const Vec3& a, const Vec3& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.z < b.z;
    });
    Vec3 pooled{};
    for (const Vec3& v : sorted_dirs) pooled += v;
    if (pooled.norm() < 1e-9)
        throw Error(ErrorCode::degenerate_geometry,
                    "learn_direction: demonstration directions cancel out");
    const Mat3 rotation = rotation_to_z(pooled.normalized());

    int degenerate = 0;
    std::vector<AngularPolygon> polygons = constraint_polygons(demos, spec, rotation, &degenerate);
    if (polygons.empty())
        throw Error(ErrorCode::degenerate_geometry, "no usable constraints in any demonstration");

    VotingGrid grid = vote(polygons, spec.grid_resolution_deg);
    const GridCell median = vector_median_cell(grid);
    const AngularPoint median_pt = grid.cell_center(median.i, median.j);

    std::vector<AngularPolygon> inliers;
    for (const AngularPolygon& poly : polygons)
        if (point_in_polygon(median_pt, poly)) inliers.push_back(poly);
    if (inliers.empty())
        throw Error(ErrorCode::degenerate_geometry, "no polygon contains the median voting cell");

    AngularPolygon phi = intersect_convex(inliers);
    const ChebyshevResult center = chebyshev_center(phi);

    DirectionResult result;
    result.desired_direction = rotation.transposed() * angular_to_vec(center.center);
    result.feasible_polygon = std::move(phi);
    result.inlier_count = static_cast<int>(inliers.size());
    result.rotation = rotation;
    result.median_cell = median;
    result.degenerate_samples = degenerate;
    return result;
}

}  // namespace cml
