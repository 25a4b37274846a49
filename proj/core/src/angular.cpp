#include "cmlearn/angular.hpp"

#include <cmath>
#include <string>

#include "cmlearn/error.hpp"

namespace cml {

AngularPoint vec_to_angular(const Vec3& p) {
    const Vec3 u = p.normalized();
    double pz = u.z;
    if (pz > 1.0) pz = 1.0;
    if (pz < -1.0) pz = -1.0;
    const double r = std::acos(pz);
    if (r > k_max_polar_angle) {
        throw Error(ErrorCode::degenerate_geometry,
                    "near-antipodal sample: polar angle " + std::to_string(r * 180.0 / std::numbers::pi) +
                        " deg exceeds the 150 deg projection domain");
    }
    const double gamma = std::atan2(u.y, u.x);
    return {r * std::cos(gamma), r * std::sin(gamma)};
}

Vec3 angular_to_vec(const AngularPoint& a) {
    const double rho = a.radius();
    if (rho > std::numbers::pi + 1e-12) {
        throw Error(ErrorCode::invalid_input,
                    "angular point radius " + std::to_string(rho) + " outside the projection disc");
    }
    if (rho < 1e-300) return {0.0, 0.0, 1.0};
    const double scale = std::sin(rho) / rho;
    return {scale * a.theta_x, scale * a.theta_y, std::cos(rho)};
}

Mat3 rotation_to_z(const Vec3& v) {
    const Vec3 u = v.normalized();
    const Vec3 z{0.0, 0.0, 1.0};
    const Vec3 axis_raw = u.cross(z);
    const double s = axis_raw.norm();
    const double c = u.z;

    if (s < 1e-12) {
        if (c > 0.0) return Mat3::identity();
        // v = -z: 180 degrees about x by convention
        return Mat3::diagonal(1.0, -1.0, -1.0);
    }

    // Rodrigues: R = I + sin(t) [k]x + (1 - cos(t)) [k]x^2
    const Vec3 k = axis_raw / s;
    Mat3 kx;
    kx.m[0][1] = -k.z;
    kx.m[0][2] = k.y;
    kx.m[1][0] = k.z;
    kx.m[1][2] = -k.x;
    kx.m[2][0] = -k.y;
    kx.m[2][1] = k.x;
    return Mat3::identity() + kx * s + (kx * kx) * (1.0 - c);
}

}  // namespace cml
