#include "cmlearn/compliance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cmlearn/error.hpp"
#include "cmlearn/trajectory.hpp"

namespace cml {

void ComplianceSpec::validate() const {
    if (!(sigma > 0.0)) throw Error(ErrorCode::invalid_input, "sigma must be positive");
}

std::vector<AngularPoint> demo_angular_residuals(
    std::span<const std::vector<MotionSample>> demos, const Vec3& desired_direction) {
    if (demos.empty())
        throw Error(ErrorCode::invalid_input, "demo_angular_residuals: no demonstrations");
    const Mat3 rotation = rotation_to_z(desired_direction);

    std::vector<AngularPoint> phis;
    phis.reserve(demos.size());
    for (const auto& demo : demos)
        phis.push_back(vec_to_angular(rotation * mean_motion_direction(demo)));
    return phis;
}

Vec2 fit_line_u(std::span<const AngularPoint> phis) {
    if (phis.empty()) throw Error(ErrorCode::invalid_input, "fit_line_u: no points");

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    double max_r = 0.0;
    for (const AngularPoint& p : phis) {
        sxx += p.theta_x * p.theta_x;
        sxy += p.theta_x * p.theta_y;
        syy += p.theta_y * p.theta_y;
        max_r = std::max(max_r, p.radius());
    }
    if (max_r < 1e-12)
        throw Error(ErrorCode::degenerate_geometry, "fit_line_u: all residuals at the origin");

    // principal eigenvector of [[sxx sxy][sxy syy]]
    Vec2 u;
    const double diff = sxx - syy;
    const double disc = std::sqrt(diff * diff + 4.0 * sxy * sxy);
    if (disc < 1e-15) {
        u = {1.0, 0.0};  // isotropic scatter, documented tie-break
    } else {
        const double lambda = 0.5 * (sxx + syy + disc);
        // pick the better conditioned of the two eigenvector expressions
        const Vec2 v1{lambda - syy, sxy};
        const Vec2 v2{sxy, lambda - sxx};
        u = (v1.norm() >= v2.norm() ? v1 : v2).normalized();
    }

    // sign convention: x component non-negative, y non-negative when x is 0
    if (u.x < 0.0 || (std::fabs(u.x) < 1e-15 && u.y < 0.0)) u = {-u.x, -u.y};
    return u;
}

ComplianceResult select_model(std::span<const AngularPoint> phis, const ComplianceSpec& spec) {
    spec.validate();
    const std::size_t n = phis.size();
    if (n == 0) throw Error(ErrorCode::invalid_input, "select_model: no residuals");

    // isotropic 2-D normal, covariance sigma * I
    const double log_peak = -std::log(2.0 * std::numbers::pi * spec.sigma);

    double ss0 = 0.0;
    double max_r = 0.0;
    for (const AngularPoint& p : phis) {
        ss0 += p.theta_x * p.theta_x + p.theta_y * p.theta_y;
        max_r = std::max(max_r, p.radius());
    }

    std::optional<double> u_angle;
    double ss1 = 0.0;
    if (max_r >= 1e-12) {
        const Vec2 u = fit_line_u(phis);
        u_angle = std::atan2(u.y, u.x);
        for (const AngularPoint& p : phis) {
            const double ortho = u.cross({p.theta_x, p.theta_y});
            ss1 += ortho * ortho;
        }
    }
    // all residuals at the origin: any line fits perfectly, ss1 stays 0

    ComplianceResult result;
    const double log_n = std::log(static_cast<double>(n));
    const double squared_sums[3] = {ss0, ss1, 0.0};
    for (int model = 0; model < 3; ++model) {
        // product of per-demo densities; residuals enter through the sum
        const double log_l =
            static_cast<double>(n) * log_peak - squared_sums[model] / (2.0 * spec.sigma);
        result.log_likelihood[model] = log_l;
        result.bic[model] = log_n * model - 2.0 * log_l;
    }

    int best = 0;
    for (int model = 1; model < 3; ++model)
        if (result.bic[model] < result.bic[best]) best = model;
    result.n_compliant = best;
    if (best == 1) result.u_angle = u_angle.value_or(0.0);
    return result;
}

std::vector<Vec3> compliant_axes_world(const ComplianceResult& result,
                                       const Vec3& desired_direction, const Mat3& rotation) {
    if (result.n_compliant == 0) return {};

    if (result.n_compliant == 1) {
        const double angle = result.u_angle.value_or(0.0);
        const Vec3 axis =
            rotation.transposed() * Vec3{std::cos(angle), std::sin(angle), 0.0};
        return {axis.normalized()};
    }

    // two axes: deterministic orthonormal completion of the desired direction
    const Vec3 v = desired_direction.normalized();
    Vec3 ref{1.0, 0.0, 0.0};
    if (std::fabs(v.dot(ref)) > 0.9) ref = {0.0, 1.0, 0.0};
    const Vec3 a1 = (ref - v * ref.dot(v)).normalized();
    const Vec3 a2 = v.cross(a1);
    return {a1, a2};
}

ComplianceResult learn_compliance(std::span<const std::vector<MotionSample>> demos,
                                  const Vec3& desired_direction, const ComplianceSpec& spec) {
    const std::vector<AngularPoint> phis = demo_angular_residuals(demos, desired_direction);
    ComplianceResult result = select_model(phis, spec);
    result.compliant_axes =
        compliant_axes_world(result, desired_direction, rotation_to_z(desired_direction));
    return result;
}

}  // namespace cml
