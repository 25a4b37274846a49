#pragma once

#include <span>
#include <vector>

#include "cmlearn/polygon.hpp"
#include "cmlearn/types.hpp"
#include "cmlearn/voting.hpp"

namespace cml {

struct ConstraintSpec {
    double alpha_deg = 20.0;          // demonstrator error half-angle
    int window = 20;                  // raw samples per motion sample
    double force_threshold = 2.0;     // newtons, contact/free split
    int free_space_circle_points = 8; // rays approximating the free-space cone
    double grid_resolution_deg = 1.0;

    void validate() const;
};

struct DirectionResult {
    Vec3 desired_direction;           // world frame, unit
    AngularPolygon feasible_polygon;  // Phi, in the rotated frame
    int inlier_count = 0;             // polygons containing the median cell
    Mat3 rotation;                    // maps the pooled motion mean to +z
    GridCell median_cell;             // winning voting cell
    int degenerate_samples = 0;       // contact samples that fell back to the circle
};

// Feasible-direction rays for one motion sample.
// In contact: the four rays v_a +- eps, f_hat -+ eps with
// eps = tan(alpha) * (f_hat x v_a)/|f_hat x v_a|.
// Free space (or force anti-parallel to motion, which degenerates the
// cross product): rays on a cone of half-angle alpha around v_a.
std::vector<Vec3> build_constraint(const MotionSample& ms, const ConstraintSpec& spec);

// Angular constraint polygons of every motion sample, rotated into the
// given voting frame and concatenated across demonstrations.
// degenerate_samples, when given, receives the count of contact samples
// that fell back to the free-space cone.
std::vector<AngularPolygon> constraint_polygons(
    std::span<const std::vector<MotionSample>> demos, const ConstraintSpec& spec,
    const Mat3& rotation, int* degenerate_samples = nullptr);

// Full desired-direction pipeline over one or more preprocessed
// demonstrations: rotate constraints into the voting frame, project them to
// angular polygons, vote out outliers through the vector-median max cell,
// intersect the inliers and take the Chebyshev center back to 3-D.
// Throws ConflictError when the inlier intersection is empty and
// Error{degenerate_geometry} when no usable constraint exists.
DirectionResult learn_direction(std::span<const std::vector<MotionSample>> demos,
                                const ConstraintSpec& spec);

}  // namespace cml
