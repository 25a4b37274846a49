#include <doctest.h>

#include <filesystem>
#include <unistd.h>
#include <fstream>

#include "cmlearn/error.hpp"
#include "cmlearn/io.hpp"
#include "test_support.hpp"

using namespace cml;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("cmlearn_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

}  // namespace

TEST_CASE("trajectory CSV round trip is exact") {
    TempDir tmp;
    Rng rng(101);
    Trajectory traj = test::line_trajectory({0, 0, 0}, {0.03, -0.01, 0.02}, {0, 0, 0}, 50);
    for (Sample& s : traj.samples)
        s.measured_force = {rng.gaussian(), rng.gaussian(), 5 + rng.gaussian()};

    const fs::path file = tmp.path / "traj.csv";
    write_trajectory_csv(file, traj);
    const Trajectory back = read_trajectory_csv(file);
    REQUIRE(back.samples.size() == traj.samples.size());
    CHECK(back.sample_rate_hz == doctest::Approx(100.0));
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        CHECK(back.samples[i].t == traj.samples[i].t);
        CHECK(back.samples[i].position.x == traj.samples[i].position.x);
        CHECK(back.samples[i].measured_force.z == traj.samples[i].measured_force.z);
    }
}

TEST_CASE("trace CSV reads back as a trajectory (extra columns ignored)") {
    TempDir tmp;
    SimTrace trace;
    for (int k = 0; k < 30; ++k)
        trace.rows.push_back({k * 0.01,
                              {0.001 * k, 0, 0.05 - 0.001 * k},
                              {0.001 * k, 0, 0.05},
                              {0.1, 0.0, 2.0},
                              0});
    const fs::path file = tmp.path / "trace.csv";
    write_trace_csv(file, trace);

    std::ifstream in(file);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,x,y,z,fx,fy,fz,sx,sy,sz");

    const Trajectory traj = read_trajectory_csv(file);
    REQUIRE(traj.samples.size() == trace.rows.size());
    CHECK(traj.samples[5].position.x == trace.rows[5].position.x);
    CHECK(traj.samples[5].measured_force.z == trace.rows[5].contact_force.z);
}

TEST_CASE("trajectory CSV error paths") {
    TempDir tmp;
    CHECK_THROWS_AS(read_trajectory_csv(tmp.path / "missing.csv"), Error);

    const fs::path bad_header = tmp.path / "bad_header.csv";
    std::ofstream(bad_header) << "time,px,py,pz,fx,fy,fz\n0,0,0,0,0,0,0\n";
    CHECK_THROWS_AS(read_trajectory_csv(bad_header), Error);

    const fs::path short_row = tmp.path / "short_row.csv";
    std::ofstream(short_row) << "t,x,y,z,fx,fy,fz\n0,0,0,0,0,0,0\n0.01,1,2\n";
    try {
        read_trajectory_csv(short_row);
        FAIL("expected io error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }

    const fs::path bad_cell = tmp.path / "bad_cell.csv";
    std::ofstream(bad_cell) << "t,x,y,z,fx,fy,fz\n0,0,zero,0,0,0,0\n";
    CHECK_THROWS_AS(read_trajectory_csv(bad_cell), Error);
}

TEST_CASE("motion model JSON round trip") {
    TempDir tmp;
    MotionModel model;
    model.desired_direction = Vec3{0.1, -0.2, -0.9}.normalized();
    model.n_compliant = 1;
    Vec3 axis = model.desired_direction.cross(Vec3{0, 0, 1}).normalized();
    model.compliant_axes = {axis};
    model.speed = 0.07;
    model.damping = 0.9;

    const fs::path file = tmp.path / "model.json";
    write_motion_model(file, model);
    const MotionModel back = read_motion_model(file);
    CHECK(test::vec_close(back.desired_direction, model.desired_direction, 1e-12));
    CHECK(back.n_compliant == 1);
    REQUIRE(back.compliant_axes.size() == 1);
    CHECK(test::vec_close(back.compliant_axes[0], axis, 1e-12));
    CHECK(back.speed == doctest::Approx(0.07));
    CHECK(back.stiffness_stiff == doctest::Approx(500.0));
}

TEST_CASE("model JSON validation failures surface as errors") {
    TempDir tmp;
    const fs::path file = tmp.path / "bad_model.json";
    std::ofstream(file) << R"({"desired_direction":[0,0,-1],"n_compliant":1,)"
                        << R"("compliant_axes":[[0,0.5,0.9]],"stiffness_stiff":500,)"
                        << R"("stiffness_compliant":0,"damping":0.7,"speed":0.05})";
    CHECK_THROWS_AS(read_motion_model(file), Error);  // axis not orthogonal

    const fs::path missing = tmp.path / "missing_key.json";
    std::ofstream(missing) << R"({"n_compliant":0})";
    CHECK_THROWS_AS(read_motion_model(missing), Error);
}

TEST_CASE("environment JSON for every type") {
    TempDir tmp;
    const fs::path file = tmp.path / "env.json";

    std::ofstream(file) << R"({"type":"funnel","mu":0.25,"profile":"straight",)"
                        << R"("tilt_deg":15,"target":{"point":[0,0,0],"radius":0.004}})";
    const Environment funnel = read_environment(file);
    CHECK(funnel.mu == doctest::Approx(0.25));
    CHECK(funnel.target.radius == doctest::Approx(0.004));
    REQUIRE(funnel.surfaces.size() == 1);
    const auto& cone = std::get<FunnelSurface>(funnel.surfaces[0]);
    CHECK(cone.half_angle_apex_rad == doctest::Approx(cone.half_angle_mouth_rad));
    CHECK(cone.axis.x == doctest::Approx(std::sin(15.0 * test::k_pi / 180.0)));

    std::ofstream(file) << R"({"type":"valley","axis_tilt_deg":20,"mu":0.3})";
    const Environment valley = read_environment(file);
    CHECK(valley.surfaces.size() == 2);

    std::ofstream(file) << R"({"type":"free"})";
    CHECK(read_environment(file).surfaces.empty());

    std::ofstream(file) << R"({"type":"plane","normal":[0,0,1]})";
    CHECK(read_environment(file).surfaces.size() == 1);

    std::ofstream(file) << R"({"type":"hill"})";
    CHECK_THROWS_AS(read_environment(file), Error);
}

TEST_CASE("environment write/read round trip keeps the geometry") {
    TempDir tmp;
    const fs::path file = tmp.path / "env.json";
    const Environment env = make_funnel_environment(true, 15.0, 0.42);
    write_environment(file, env);
    const Environment back = read_environment(file);
    CHECK(back.mu == doctest::Approx(0.42));
    REQUIRE(back.surfaces.size() == 1);
    const auto& a = std::get<FunnelSurface>(env.surfaces[0]);
    const auto& b = std::get<FunnelSurface>(back.surfaces[0]);
    CHECK(test::vec_close(a.axis, b.axis, 1e-12));
    CHECK(b.half_angle_apex_rad == doctest::Approx(a.half_angle_apex_rad));
    CHECK(b.half_angle_mouth_rad == doctest::Approx(a.half_angle_mouth_rad));
    CHECK(b.height == doctest::Approx(a.height));

    const Environment valley = make_valley_environment(20.0, 0.3);
    write_environment(file, valley);
    const Environment vback = read_environment(file);
    REQUIRE(vback.surfaces.size() == 2);
    CHECK(test::vec_close(std::get<PlaneSurface>(vback.surfaces[0]).normal,
                          valley_wall_normal(20.0, true), 1e-12));
}

TEST_CASE("grid and polygon debug dumps have the documented headers") {
    TempDir tmp;
    VotingGrid grid(30.0);  // coarse: 6x6
    grid.count(2, 3) = 4;
    write_grid_csv(tmp.path / "grid.csv", grid);
    std::ifstream gin(tmp.path / "grid.csv");
    std::string line;
    std::getline(gin, line);
    CHECK(line == "i,j,theta_x,theta_y,count");
    int rows = 0;
    while (std::getline(gin, line)) ++rows;
    CHECK(rows == 36);

    const AngularPolygon poly{{{0, 0}, {1, 0}, {0, 1}}};
    write_polygons_csv(tmp.path / "polys.csv", std::span<const AngularPolygon>(&poly, 1));
    std::ifstream pin(tmp.path / "polys.csv");
    std::getline(pin, line);
    CHECK(line == "polygon,vertex,theta_x,theta_y");
}
