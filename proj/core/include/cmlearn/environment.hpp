#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cmlearn/vec3.hpp"

namespace cml {

// Rigid half-space; `normal` points into free space.
struct PlaneSurface {
    Vec3 point;
    Vec3 normal;
};

// Funnel bowl: free space inside the cone between apex and mouth, rim plane
// ("table") outside the mouth radius. The curved profile interpolates the
// half-angle from apex to mouth; a straight funnel uses one angle for both.
struct FunnelSurface {
    Vec3 apex;
    Vec3 axis;                    // unit, apex -> mouth
    double half_angle_apex_rad;   // wall angle from the axis at the apex
    double half_angle_mouth_rad;  // and at the mouth
    double height;                // apex to mouth along the axis

    double wall_radius(double h) const;  // bowl radius at height h
};

using Surface = std::variant<PlaneSurface, FunnelSurface>;

struct SurfaceQuery {
    double signed_distance = 0.0;  // >= 0 in free space
    Vec3 normal;                   // unit, points into free space
};

SurfaceQuery query_surface(const Surface& surface, const Vec3& x);

struct TargetRegion {
    Vec3 point;
    double radius = 0.005;  // meters
};

struct Environment {
    std::vector<Surface> surfaces;
    double mu = 0.3;
    TargetRegion target;
    std::string name;  // plane / valley / funnel / free, for reports
};

// Canned test worlds. The valley is two plates meeting at 90 degrees along
// a downhill axis (+y tilted down by axis_tilt); the funnel opens upward
// with its apex at the origin, optionally tilted about +y.
Environment make_free_environment();
Environment make_plane_environment(double mu = 0.3);
Environment make_valley_environment(double axis_tilt_deg = 20.0, double mu = 0.3);
Environment make_funnel_environment(bool curved = true, double tilt_deg = 0.0, double mu = 0.3);

// Valley helpers used by demo generation and tests.
Vec3 valley_axis(double axis_tilt_deg);           // downhill crease direction
Vec3 valley_wall_normal(double axis_tilt_deg, bool left);

}  // namespace cml
