#include <doctest.h>

#include <algorithm>
#include <random>

#include "cmlearn/direction.hpp"
#include "cmlearn/error.hpp"
#include "test_support.hpp"

using namespace cml;

namespace {

// free-space demo straight along `dir`, n motion samples
std::vector<MotionSample> free_demo(const Vec3& dir, int n, double step = 0.01) {
    std::vector<MotionSample> demo;
    for (int k = 0; k < n; ++k)
        demo.push_back(test::motion_sample(dir, dir.normalized() * (k * step)));
    return demo;
}

}  // namespace

TEST_CASE("in-contact constraint matches the hand-evaluated rays") {
    ConstraintSpec spec;  // alpha 20
    const Vec3 f_hat{0, 0, 1};
    const MotionSample ms = test::motion_sample({1, 0, 0}, {}, &f_hat);
    const std::vector<Vec3> rays = build_constraint(ms, spec);
    REQUIRE(rays.size() == 4);

    const double t = std::tan(20.0 * test::k_pi / 180.0);  // 0.36397
    CHECK(t == doctest::Approx(0.36397).epsilon(1e-4));
    CHECK(test::vec_close(rays[0], {1, t, 0}, 1e-12));   // v_a + eps
    CHECK(test::vec_close(rays[1], {1, -t, 0}, 1e-12));  // v_a - eps
    CHECK(test::vec_close(rays[2], {0, -t, 1}, 1e-12));  // f_hat - eps
    CHECK(test::vec_close(rays[3], {0, t, 1}, 1e-12));   // f_hat + eps
}

TEST_CASE("free-space constraint is a cone of rays around the motion") {
    ConstraintSpec spec;
    spec.free_space_circle_points = 4;
    const MotionSample ms = test::motion_sample({0, 0, 1}, {});
    const std::vector<Vec3> rays = build_constraint(ms, spec);
    REQUIRE(rays.size() == 4);

    const double t = std::tan(20.0 * test::k_pi / 180.0);
    CHECK(test::vec_close(rays[0], {t, 0, 1}, 1e-12));
    CHECK(test::vec_close(rays[1], {0, t, 1}, 1e-12));
    CHECK(test::vec_close(rays[2], {-t, 0, 1}, 1e-12));
    CHECK(test::vec_close(rays[3], {0, -t, 1}, 1e-12));
}

TEST_CASE("constraint collapses to the two defining rays as alpha -> 0") {
    ConstraintSpec spec;
    spec.alpha_deg = 1e-6;
    const Vec3 f_hat{0, 0, 1};
    const MotionSample ms = test::motion_sample({1, 0, 0}, {}, &f_hat);
    const std::vector<Vec3> rays = build_constraint(ms, spec);
    CHECK(test::vec_close(rays[0], {1, 0, 0}, 1e-7));
    CHECK(test::vec_close(rays[1], {1, 0, 0}, 1e-7));
    CHECK(test::vec_close(rays[2], {0, 0, 1}, 1e-7));
    CHECK(test::vec_close(rays[3], {0, 0, 1}, 1e-7));
}

TEST_CASE("anti-parallel contact falls back to the free-space cone") {
    ConstraintSpec spec;
    const Vec3 f_hat{0, 0, -1};
    const MotionSample ms = test::motion_sample({0, 0, 1}, {}, &f_hat);
    const std::vector<Vec3> rays = build_constraint(ms, spec);
    CHECK(rays.size() == static_cast<std::size_t>(spec.free_space_circle_points));
}

TEST_CASE("single free-space demo straight down recovers the motion direction") {
    const std::vector<std::vector<MotionSample>> demos{free_demo({0, 0, -1}, 8)};
    const DirectionResult res = learn_direction(demos, ConstraintSpec{});
    CHECK(test::vec_close(res.desired_direction, {0, 0, -1}, 1e-6));
    CHECK(res.inlier_count == 8);
    CHECK(res.degenerate_samples == 0);
}

TEST_CASE("learned direction lies inside the feasible polygon and all inlier cones") {
    Rng rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        // two demos: one free, one in contact, directions 40 degrees apart
        const Vec3 d1 = test::random_unit(rng);
        Vec3 ref = test::random_unit(rng);
        while (std::fabs(ref.dot(d1)) > 0.7) ref = test::random_unit(rng);
        const Vec3 ortho = (ref - d1 * ref.dot(d1)).normalized();
        const Vec3 d2 = (d1 * std::cos(0.7) + ortho * std::sin(0.7)).normalized();
        const Vec3 f2 = (d1 * -0.4 + ortho * 0.9).normalized();

        std::vector<std::vector<MotionSample>> demos{free_demo(d1, 5), {}};
        for (int k = 0; k < 5; ++k)
            demos[1].push_back(test::motion_sample(d2, d2 * (k * 0.01), &f2));

        DirectionResult res;
        try {
            res = learn_direction(demos, ConstraintSpec{});
        } catch (const Error&) {
            continue;  // some random pairs genuinely conflict
        }
        const AngularPoint img = vec_to_angular(res.rotation * res.desired_direction);
        CHECK(point_in_polygon(img, res.feasible_polygon));

        // Phi is the inlier intersection, so the image must sit in at least
        // inlier_count of the constraint polygons
        int containing = 0;
        for (const auto& demo : demos)
            for (const MotionSample& ms : demo) {
                std::vector<AngularPoint> pts;
                for (const Vec3& ray : build_constraint(ms, ConstraintSpec{}))
                    pts.push_back(vec_to_angular((res.rotation * ray).normalized()));
                if (point_in_polygon(img, convex_hull(pts))) ++containing;
            }
        CHECK(containing >= res.inlier_count);
    }
}

TEST_CASE("an outlier polygon that misses the consensus leaves the result unchanged") {
    // three straight-down demos; the outlier shares their mean direction so
    // the voting frame stays fixed, but its only motion sample points +x
    std::vector<std::vector<MotionSample>> demos{free_demo({0, 0, -1}, 6),
                                                 free_demo({0, 0, -1}, 6)};
    const DirectionResult base = learn_direction(demos, ConstraintSpec{});

    std::vector<MotionSample> outlier;
    outlier.push_back(test::motion_sample({1, 0, 0}, {0, 0, 0}));
    outlier.push_back(test::motion_sample({1, 0, 0}, {0, 0, -0.05}));  // net motion still down
    demos.push_back(outlier);
    const DirectionResult with_outlier = learn_direction(demos, ConstraintSpec{});

    CHECK(with_outlier.desired_direction.x == base.desired_direction.x);
    CHECK(with_outlier.desired_direction.y == base.desired_direction.y);
    CHECK(with_outlier.desired_direction.z == base.desired_direction.z);
    CHECK(with_outlier.inlier_count == base.inlier_count);
}

TEST_CASE("demonstration order does not change the learned direction") {
    Rng rng(67);
    std::vector<std::vector<MotionSample>> demos;
    for (int d = 0; d < 4; ++d) {
        const Vec3 tilt{0.3 * rng.gaussian(), 0.3 * rng.gaussian(), -1.0};
        demos.push_back(free_demo(tilt.normalized(), 5));
    }
    const DirectionResult base = learn_direction(demos, ConstraintSpec{});

    std::mt19937 shuffle_rng(99);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<std::vector<MotionSample>> shuffled = demos;
        std::shuffle(shuffled.begin(), shuffled.end(), shuffle_rng);
        const DirectionResult res = learn_direction(shuffled, ConstraintSpec{});
        CHECK((res.desired_direction - base.desired_direction).norm() < 1e-9);
    }
}

TEST_CASE("adding an inlier demonstration never enlarges the feasible set") {
    Rng rng(71);
    std::vector<std::vector<MotionSample>> demos{free_demo({0, 0, -1}, 5)};
    double prev_area = polygon_area(learn_direction(demos, ConstraintSpec{}).feasible_polygon);
    for (int d = 0; d < 4; ++d) {
        const Vec3 tilt{0.15 * rng.gaussian(), 0.15 * rng.gaussian(), -1.0};
        demos.push_back(free_demo(tilt.normalized(), 5));
        const double area =
            polygon_area(learn_direction(demos, ConstraintSpec{}).feasible_polygon);
        CHECK(area <= prev_area + 1e-9);
        prev_area = area;
    }
}

TEST_CASE("empty and invalid demonstration lists are rejected") {
    std::vector<std::vector<MotionSample>> none;
    CHECK_THROWS_AS(learn_direction(none, ConstraintSpec{}), Error);
    std::vector<std::vector<MotionSample>> with_empty{free_demo({0, 0, -1}, 4), {}};
    CHECK_THROWS_AS(learn_direction(with_empty, ConstraintSpec{}), Error);
}

TEST_CASE("constraint spec validation") {
    ConstraintSpec bad;
    bad.alpha_deg = 95.0;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = ConstraintSpec{};
    bad.free_space_circle_points = 2;
    CHECK_THROWS_AS(bad.validate(), Error);
}
