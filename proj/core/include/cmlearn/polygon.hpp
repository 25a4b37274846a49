#pragma once

#include <array>
#include <span>
#include <vector>

#include "cmlearn/angular.hpp"
#include "cmlearn/error.hpp"

namespace cml {

// Convex polygon in the angular plane, counter-clockwise vertex order.
struct AngularPolygon {
    std::vector<AngularPoint> vertices;

    std::size_t size() const { return vertices.size(); }
};

// Shared boundary tolerance for point/edge classification.
inline constexpr double k_boundary_tol = 1e-12;

double polygon_area(const AngularPolygon& poly);

// Convex hull (monotone chain), CCW. Throws Error{degenerate_geometry}
// when the points are collinear within 1e-12 area.
AngularPolygon convex_hull(std::vector<AngularPoint> points);

// Hull of the four projected constraint rays; a triangle when one point
// lies inside the other three.
AngularPolygon convex_hull_quad(const std::array<AngularPoint, 4>& points);

// Boundary-inclusive half-plane test (distance tolerance k_boundary_tol).
bool point_in_polygon(const AngularPoint& pt, const AngularPolygon& poly);

// Sequential Sutherland-Hodgman clipping of polys[0] against the rest.
// Throws ConflictError carrying a mutually disjoint input pair when the
// intersection comes up empty.
AngularPolygon intersect_convex(std::span<const AngularPolygon> polys);

struct ChebyshevResult {
    AngularPoint center;
    double radius = 0.0;  // radians
};

// Largest inscribed circle: solves max r s.t. n_i . x + r <= b_i over the
// edge half-planes (3-variable LP by exhaustive vertex enumeration).
// Non-unique optima resolve to the lexicographically smallest center.
ChebyshevResult chebyshev_center(const AngularPolygon& poly);

}  // namespace cml
