#include <doctest.h>

#include "cmlearn/error.hpp"
#include "cmlearn/trajectory.hpp"
#include "test_support.hpp"

using namespace cml;

TEST_CASE("100 samples at 100 Hz with window 20 give 5 motion samples") {
    const Trajectory traj = test::line_trajectory({0, 0, 0}, {0.05, 0, 0}, {0, 0, 0}, 100);
    const std::vector<MotionSample> ms = preprocess(traj, 20, 2.0);
    REQUIRE(ms.size() == 5);
    for (const MotionSample& m : ms) {
        CHECK(test::vec_close(m.v_a_hat, {1, 0, 0}, 1e-12));
        CHECK_FALSE(m.in_contact);
    }
}

TEST_CASE("trailing partial window is dropped") {
    const Trajectory traj = test::line_trajectory({0, 0, 0}, {0.05, 0, 0}, {0, 0, 0}, 103);
    CHECK(preprocess(traj, 20, 2.0).size() == 5);
}

TEST_CASE("sliding-force window yields the hand-computed contact direction") {
    // F_m = (-2.12, 0, 7.07): f_hat = -normalize(F_m) = (0.2872, 0, -0.9579)
    const Trajectory traj =
        test::line_trajectory({0, 0, 0}, {0.05, 0, 0}, {-2.12, 0, 7.07}, 40);
    const std::vector<MotionSample> ms = preprocess(traj, 20, 2.0);
    REQUIRE(ms.size() == 2);
    for (const MotionSample& m : ms) {
        REQUIRE(m.in_contact);
        CHECK(m.f_hat.x == doctest::Approx(0.287).epsilon(1e-3));
        CHECK(m.f_hat.y == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(m.f_hat.z == doctest::Approx(-0.958).epsilon(1e-3));
    }
}

TEST_CASE("contact split uses the mean force norm against the threshold") {
    Trajectory traj = test::line_trajectory({0, 0, 0}, {0.05, 0, 0}, {0, 0, 1.9}, 20);
    CHECK_FALSE(preprocess(traj, 20, 2.0)[0].in_contact);
    traj = test::line_trajectory({0, 0, 0}, {0.05, 0, 0}, {0, 0, 2.1}, 20);
    CHECK(preprocess(traj, 20, 2.0)[0].in_contact);
}

TEST_CASE("stationary trajectory reports no motion") {
    const Trajectory traj = test::line_trajectory({0.1, 0.2, 0.3}, {0, 0, 0}, {0, 0, 5}, 60);
    try {
        preprocess(traj, 20, 2.0);
        FAIL("expected no_motion");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::no_motion);
    }
}

TEST_CASE("stationary windows are dropped, moving ones kept") {
    Trajectory traj = test::line_trajectory({0, 0, 0}, {0.05, 0, 0}, {0, 0, 0}, 40);
    // freeze the second half
    for (int k = 20; k < 40; ++k) traj.samples[k].position = traj.samples[19].position;
    CHECK(preprocess(traj, 20, 2.0).size() == 1);
}

TEST_CASE("non-finite input is rejected with the sample index") {
    Trajectory traj = test::line_trajectory({0, 0, 0}, {0.05, 0, 0}, {0, 0, 0}, 40);
    traj.samples[17].measured_force.y = std::nan("");
    try {
        preprocess(traj, 20, 2.0);
        FAIL("expected invalid_input");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_input);
        CHECK(std::string(e.what()).find("17") != std::string::npos);
    }
}

TEST_CASE("trajectory invariants: ordering and jitter") {
    Trajectory traj = test::line_trajectory({0, 0, 0}, {0.05, 0, 0}, {0, 0, 0}, 10);
    traj.samples[4].t = traj.samples[3].t;  // not strictly increasing
    CHECK_THROWS_AS(traj.validate(), Error);

    traj = test::line_trajectory({0, 0, 0}, {0.05, 0, 0}, {0, 0, 0}, 10);
    traj.samples[5].t += 0.002;  // 20% jitter at 100 Hz
    CHECK_THROWS_AS(traj.validate(), Error);

    Trajectory too_short;
    too_short.samples.push_back({0.0, {}, {}});
    CHECK_THROWS_AS(too_short.validate(), Error);
}

TEST_CASE("power-of-two force scaling leaves motion samples bit-identical") {
    Rng rng(53);
    Trajectory traj = test::line_trajectory({0, 0, 0}, {0.04, 0.01, -0.02}, {0, 0, 0}, 100);
    for (Sample& s : traj.samples)
        s.measured_force = {3.0 + rng.gaussian(), rng.gaussian(), 5.0 + rng.gaussian()};

    const std::vector<MotionSample> base = preprocess(traj, 20, 2.0);
    for (const double c : {2.0, 0.5, 1024.0}) {
        Trajectory scaled = traj;
        for (Sample& s : scaled.samples) s.measured_force = s.measured_force * c;
        const std::vector<MotionSample> out = preprocess(scaled, 20, 2.0 * c);
        REQUIRE(out.size() == base.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            CHECK(out[i].in_contact == base[i].in_contact);
            CHECK(out[i].f_hat.x == base[i].f_hat.x);
            CHECK(out[i].f_hat.y == base[i].f_hat.y);
            CHECK(out[i].f_hat.z == base[i].f_hat.z);
            CHECK(out[i].v_a_hat.x == base[i].v_a_hat.x);
        }
    }
    // arbitrary positive scale: directions equal to rounding
    Trajectory scaled = traj;
    for (Sample& s : scaled.samples) s.measured_force = s.measured_force * 3.7;
    const std::vector<MotionSample> out = preprocess(scaled, 20, 2.0 * 3.7);
    for (std::size_t i = 0; i < out.size(); ++i)
        CHECK(test::vec_close(out[i].f_hat, base[i].f_hat, 1e-12));
}

TEST_CASE("mean actual direction examples") {
    Trajectory traj = test::line_trajectory({0, 0, 0}, {0, 0, -0.05}, {0, 0, 0}, 200);
    CHECK(test::vec_close(mean_actual_direction(traj), {0, 0, -1}, 1e-12));

    traj = test::line_trajectory({0, 0, 0}, {0.05, 0, -0.05}, {0, 0, 0}, 200);
    CHECK(test::vec_close(mean_actual_direction(traj), {0.7071, 0, -0.7071}, 1e-4));
}

TEST_CASE("mean actual direction of a curved path uses the endpoints") {
    // quarter-ellipse from (0.05, 0, 0.1) to (0, 0, 0)
    Trajectory traj;
    const int n = 100;
    for (int k = 0; k < n; ++k) {
        const double s = static_cast<double>(k) / (n - 1);
        const double a = s * test::k_pi / 2;
        traj.samples.push_back(
            {k / 100.0, {0.05 * std::cos(a), 0.0, 0.1 * (1.0 - std::sin(a))}, {}});
    }
    CHECK(test::vec_close(mean_actual_direction(traj), {-0.4472, 0, -0.8944}, 1e-4));
}

TEST_CASE("mean actual direction rejects a degenerate loop") {
    Trajectory traj = test::line_trajectory({0, 0, 0}, {0.05, 0, 0}, {0, 0, 0}, 60);
    for (Sample& s : traj.samples) s.position = {0, 0, 0};
    traj.samples.back().position = {5e-5, 0, 0};
    CHECK_THROWS_AS(mean_actual_direction(traj), Error);
}

TEST_CASE("mean actual direction is invariant to time reparameterization") {
    Trajectory traj = test::line_trajectory({0, 0, 0}, {0.02, -0.01, -0.03}, {0, 0, 0}, 120);
    Trajectory slowed = traj;
    slowed.sample_rate_hz = 50.0;
    for (Sample& s : slowed.samples) s.t *= 2.0;
    const Vec3 a = mean_actual_direction(traj);
    const Vec3 b = mean_actual_direction(slowed);
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
    CHECK(a.z == b.z);
}
