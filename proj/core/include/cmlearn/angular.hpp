#pragma once

#include <numbers>

#include "cmlearn/vec3.hpp"

namespace cml {

// Azimuthal-equidistant image of a unit direction about +z.
// Radius sqrt(theta_x^2 + theta_y^2) equals the polar angle in radians.
struct AngularPoint {
    double theta_x = 0.0;
    double theta_y = 0.0;

    double radius() const { return std::sqrt(theta_x * theta_x + theta_y * theta_y); }
};

// Projection domain cutoff: beyond this polar angle the planar image
// distorts without bound as the direction approaches -z.
inline constexpr double k_max_polar_angle = 150.0 * std::numbers::pi / 180.0;

// Forward projection. Throws Error{degenerate_geometry} for directions
// more than 150 degrees from +z.
AngularPoint vec_to_angular(const Vec3& p);

// Exact inverse of vec_to_angular on the admissible disc (radius <= pi).
Vec3 angular_to_vec(const AngularPoint& a);

// Proper rotation taking v to +z (Rodrigues). v = -z is handled by a fixed
// 180-degree rotation about x.
Mat3 rotation_to_z(const Vec3& v);

}  // namespace cml
