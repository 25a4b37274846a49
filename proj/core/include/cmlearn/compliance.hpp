#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "cmlearn/angular.hpp"
#include "cmlearn/types.hpp"

namespace cml {

struct ComplianceSpec {
    // Per-axis variance of the demonstrator error in angular coordinates.
    // 0.03 corresponds to a standard deviation of roughly 10 degrees.
    double sigma = 0.03;

    void validate() const;
};

struct ComplianceResult {
    int n_compliant = 0;                     // argmin of bic
    std::array<double, 3> bic{};             // models 0, 1, 2
    std::array<double, 3> log_likelihood{};
    std::optional<double> u_angle;           // direction of line u, model 1 only
    std::vector<Vec3> compliant_axes;        // world frame, unit
};

// One angular residual per demonstration: the mean actual motion direction
// rotated so the desired direction sits at the origin of the angular plane.
std::vector<AngularPoint> demo_angular_residuals(
    std::span<const std::vector<MotionSample>> demos, const Vec3& desired_direction);

// Direction of the line through the origin minimizing summed squared
// orthogonal distances (principal eigenvector of the 2x2 scatter).
// Sign: non-negative x component, non-negative y on the x = 0 boundary;
// an isotropic scatter resolves to (1, 0).
Vec2 fit_line_u(std::span<const AngularPoint> phis);

// BIC over the three compliance hypotheses. Model 0 scores the residuals
// as-is, model 1 their orthogonal distance to the fitted line u, model 2
// fits anything exactly. Likelihoods are isotropic 2-D normals with
// per-axis variance spec.sigma; ties pick the smaller model.
// compliant_axes is left empty (see compliant_axes_world).
ComplianceResult select_model(std::span<const AngularPoint> phis, const ComplianceSpec& spec);

// World-frame compliant axes for the selected model: none, the line u
// mapped through the inverse rotation (exactly orthogonal to the desired
// direction by construction), or a deterministic orthonormal completion.
std::vector<Vec3> compliant_axes_world(const ComplianceResult& result,
                                       const Vec3& desired_direction,
                                       const Mat3& rotation);

// demo_angular_residuals + select_model + compliant_axes_world in one call,
// with the rotation derived from desired_direction.
ComplianceResult learn_compliance(std::span<const std::vector<MotionSample>> demos,
                                  const Vec3& desired_direction, const ComplianceSpec& spec);

}  // namespace cml
