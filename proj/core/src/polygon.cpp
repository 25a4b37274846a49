#include "cmlearn/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cml {

namespace {

Vec2 as_vec(const AngularPoint& p) { return {p.theta_x, p.theta_y}; }

double shoelace(const std::vector<AngularPoint>& v) {
    double twice = 0.0;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const AngularPoint& a = v[i];
        const AngularPoint& b = v[(i + 1) % n];
        twice += a.theta_x * b.theta_y - b.theta_x * a.theta_y;
    }
    return 0.5 * twice;
}

// Clip `subject` against one CCW clip polygon; empty result -> empty vector.
std::vector<AngularPoint> clip_against(const std::vector<AngularPoint>& subject,
                                       const AngularPolygon& clip) {
    std::vector<AngularPoint> poly = subject;
    const std::size_t m = clip.vertices.size();
    for (std::size_t e = 0; e < m && !poly.empty(); ++e) {
        const Vec2 a = as_vec(clip.vertices[e]);
        const Vec2 b = as_vec(clip.vertices[(e + 1) % m]);
        const Vec2 edge = b - a;
        const double len = edge.norm();

        std::vector<AngularPoint> out;
        out.reserve(poly.size() + 2);
        const std::size_t n = poly.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 cur = as_vec(poly[i]);
            const Vec2 nxt = as_vec(poly[(i + 1) % n]);
            const double d_cur = edge.cross(cur - a) / len;  // signed distance, inside >= 0
            const double d_nxt = edge.cross(nxt - a) / len;
            const bool in_cur = d_cur >= -k_boundary_tol;
            const bool in_nxt = d_nxt >= -k_boundary_tol;

            if (in_cur) out.push_back({cur.x, cur.y});
            if (in_cur != in_nxt) {
                const double t = d_cur / (d_cur - d_nxt);
                out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
            }
        }
        poly = std::move(out);
    }

    // drop duplicate vertices introduced by near-tangent clips
    std::vector<AngularPoint> dedup;
    dedup.reserve(poly.size());
    for (const AngularPoint& p : poly) {
        if (dedup.empty() || std::fabs(dedup.back().theta_x - p.theta_x) > 1e-12 ||
            std::fabs(dedup.back().theta_y - p.theta_y) > 1e-12)
            dedup.push_back(p);
    }
    while (dedup.size() > 1 && std::fabs(dedup.front().theta_x - dedup.back().theta_x) <= 1e-12 &&
           std::fabs(dedup.front().theta_y - dedup.back().theta_y) <= 1e-12)
        dedup.pop_back();

    if (dedup.size() < 3) return {};
    std::vector<AngularPoint> as_poly(dedup.begin(), dedup.end());
    if (std::fabs(shoelace(as_poly)) < 1e-14) return {};
    return as_poly;
}

}  // namespace

double polygon_area(const AngularPolygon& poly) { return std::fabs(shoelace(poly.vertices)); }

AngularPolygon convex_hull(std::vector<AngularPoint> points) {
    std::sort(points.begin(), points.end(), [](const AngularPoint& a, const AngularPoint& b) {
        return a.theta_x < b.theta_x || (a.theta_x == b.theta_x && a.theta_y < b.theta_y);
    });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const AngularPoint& a, const AngularPoint& b) {
                                 return std::fabs(a.theta_x - b.theta_x) <= 1e-12 &&
                                        std::fabs(a.theta_y - b.theta_y) <= 1e-12;
                             }),
                 points.end());

    const std::size_t n = points.size();
    if (n >= 3) {
        // monotone chain, strict turns so collinear midpoints drop out
        std::vector<AngularPoint> hull(2 * n);
        std::size_t k = 0;
        auto turn = [](const AngularPoint& o, const AngularPoint& a, const AngularPoint& b) {
            return (as_vec(a) - as_vec(o)).cross(as_vec(b) - as_vec(o));
        };
        for (std::size_t i = 0; i < n; ++i) {
            while (k >= 2 && turn(hull[k - 2], hull[k - 1], points[i]) <= 1e-15) --k;
            hull[k++] = points[i];
        }
        const std::size_t lower = k + 1;
        for (std::size_t i = n - 1; i-- > 0;) {
            while (k >= lower && turn(hull[k - 2], hull[k - 1], points[i]) <= 1e-15) --k;
            hull[k++] = points[i];
        }
        hull.resize(k - 1);
        AngularPolygon result{std::move(hull)};
        if (result.vertices.size() >= 3 && polygon_area(result) > 1e-12) return result;
    }
    throw Error(ErrorCode::degenerate_geometry,
                "degenerate constraint: hull input collinear or collapsed");
}

AngularPolygon convex_hull_quad(const std::array<AngularPoint, 4>& points) {
    return convex_hull(std::vector<AngularPoint>(points.begin(), points.end()));
}

bool point_in_polygon(const AngularPoint& pt, const AngularPolygon& poly) {
    const std::size_t n = poly.vertices.size();
    const Vec2 p = as_vec(pt);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = as_vec(poly.vertices[i]);
        const Vec2 b = as_vec(poly.vertices[(i + 1) % n]);
        const Vec2 edge = b - a;
        if (edge.cross(p - a) < -k_boundary_tol * edge.norm()) return false;
    }
    return true;
}

AngularPolygon intersect_convex(std::span<const AngularPolygon> polys) {
    if (polys.empty())
        throw Error(ErrorCode::invalid_input, "intersect_convex: no polygons");

    std::vector<AngularPoint> subject = polys[0].vertices;
    for (std::size_t k = 1; k < polys.size(); ++k) {
        subject = clip_against(subject, polys[k]);
        if (subject.empty()) {
            // locate a mutually disjoint pair for the error report
            for (std::size_t j = 0; j < k; ++j) {
                if (clip_against(polys[j].vertices, polys[k]).empty()) {
                    throw ConflictError(j, k,
                                        "conflicting demonstrations: constraint polygons " +
                                            std::to_string(j) + " and " + std::to_string(k) +
                                            " do not overlap");
                }
            }
            throw ConflictError(k - 1, k,
                                "conflicting demonstrations: intersection emptied at polygon " +
                                    std::to_string(k));
        }
    }
    return AngularPolygon{std::move(subject)};
}

ChebyshevResult chebyshev_center(const AngularPolygon& poly) {
    const std::size_t n = poly.vertices.size();
    if (n < 3 || polygon_area(poly) <= 1e-12)
        throw Error(ErrorCode::degenerate_geometry, "chebyshev_center: degenerate polygon");

    // half-planes n_i . x + r <= b_i with unit outward normals
    struct HalfPlane {
        double nx, ny, b;
    };
    std::vector<HalfPlane> hp;
    hp.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = as_vec(poly.vertices[i]);
        const Vec2 b = as_vec(poly.vertices[(i + 1) % n]);
        const Vec2 e = (b - a);
        const double len = e.norm();
        const Vec2 out{e.y / len, -e.x / len};
        hp.push_back({out.x, out.y, out.dot(a)});
    }

    const double feas_tol = 1e-9;
    bool found = false;
    double best_r = -std::numeric_limits<double>::infinity();
    Vec2 best_c{0, 0};

    // 3-variable LP: every optimal basic solution sits on 3 active
    // constraints, so scanning the triples is exhaustive.
    const std::size_t m = hp.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            for (std::size_t k = j + 1; k < m; ++k) {
                Mat3 A;
                A.m[0][0] = hp[i].nx;
                A.m[0][1] = hp[i].ny;
                A.m[0][2] = 1.0;
                A.m[1][0] = hp[j].nx;
                A.m[1][1] = hp[j].ny;
                A.m[1][2] = 1.0;
                A.m[2][0] = hp[k].nx;
                A.m[2][1] = hp[k].ny;
                A.m[2][2] = 1.0;
                Vec3 sol;
                if (!solve3(A, {hp[i].b, hp[j].b, hp[k].b}, sol)) continue;
                if (sol.z < -feas_tol) continue;

                bool feasible = true;
                for (const HalfPlane& h : hp) {
                    if (h.nx * sol.x + h.ny * sol.y + sol.z > h.b + feas_tol) {
                        feasible = false;
                        break;
                    }
                }
                if (!feasible) continue;

                const bool better =
                    sol.z > best_r + feas_tol ||
                    (sol.z > best_r - feas_tol &&
                     (sol.x < best_c.x - 1e-12 ||
                      (std::fabs(sol.x - best_c.x) <= 1e-12 && sol.y < best_c.y - 1e-12)));
                if (!found || better) {
                    found = true;
                    if (sol.z > best_r) best_r = sol.z;
                    best_c = {sol.x, sol.y};
                }
            }
        }
    }
    if (!found)
        throw Error(ErrorCode::degenerate_geometry, "chebyshev_center: no feasible LP vertex");
    return {{best_c.x, best_c.y}, std::max(best_r, 0.0)};
}

}  // namespace cml
