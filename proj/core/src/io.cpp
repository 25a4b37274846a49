#include "cmlearn/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cmlearn/error.hpp"

namespace cml {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
    return out;
}

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::io, path.string() + ": " + e.what());
    }
    return j;
}

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from_json(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 3)
        throw Error(ErrorCode::io, what + " must be a 3-element array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::io, path.string() + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("t,x,y,z,fx,fy,fz", 0) != 0)
        throw Error(ErrorCode::io, path.string() + ": expected header t,x,y,z,fx,fy,fz");

    Trajectory traj;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream ss(line);
        double fields[7];
        std::string cell;
        for (int f = 0; f < 7; ++f) {
            if (!std::getline(ss, cell, ','))
                throw Error(ErrorCode::io,
                            path.string() + ": row " + std::to_string(row) + " has too few columns");
            try {
                fields[f] = std::stod(cell);
            } catch (...) {
                throw Error(ErrorCode::io, path.string() + ": row " + std::to_string(row) +
                                               " column " + std::to_string(f + 1) +
                                               " is not a number");
            }
        }
        traj.samples.push_back(
            {fields[0], {fields[1], fields[2], fields[3]}, {fields[4], fields[5], fields[6]}});
    }
    if (traj.samples.size() >= 2) {
        const double dt = traj.samples[1].t - traj.samples[0].t;
        if (dt > 0.0) traj.sample_rate_hz = 1.0 / dt;
    }
    traj.validate();
    return traj;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    std::ofstream out = open_out(path);
    out << "t,x,y,z,fx,fy,fz\n";
    for (const Sample& s : traj.samples) {
        out << fmt(s.t) << ',' << fmt(s.position.x) << ',' << fmt(s.position.y) << ','
            << fmt(s.position.z) << ',' << fmt(s.measured_force.x) << ','
            << fmt(s.measured_force.y) << ',' << fmt(s.measured_force.z) << '\n';
    }
}

void write_trace_csv(const std::filesystem::path& path, const SimTrace& trace) {
    std::ofstream out = open_out(path);
    out << "t,x,y,z,fx,fy,fz,sx,sy,sz\n";
    for (const SimTraceRow& r : trace.rows) {
        out << fmt(r.t) << ',' << fmt(r.position.x) << ',' << fmt(r.position.y) << ','
            << fmt(r.position.z) << ',' << fmt(r.contact_force.x) << ','
            << fmt(r.contact_force.y) << ',' << fmt(r.contact_force.z) << ','
            << fmt(r.setpoint.x) << ',' << fmt(r.setpoint.y) << ',' << fmt(r.setpoint.z) << '\n';
    }
}

MotionModel read_motion_model(const std::filesystem::path& path) {
    const json j = load_json(path);
    MotionModel model;
    try {
        model.desired_direction = vec_from_json(j.at("desired_direction"), "desired_direction");
        model.n_compliant = j.at("n_compliant").get<int>();
        for (const json& axis : j.at("compliant_axes"))
            model.compliant_axes.push_back(vec_from_json(axis, "compliant axis"));
        model.stiffness_stiff = j.at("stiffness_stiff").get<double>();
        model.stiffness_compliant = j.at("stiffness_compliant").get<double>();
        model.damping = j.at("damping").get<double>();
        model.speed = j.at("speed").get<double>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::io, path.string() + ": " + e.what());
    }
    model.validate();
    return model;
}

void write_motion_model(const std::filesystem::path& path, const MotionModel& model) {
    json axes = json::array();
    for (const Vec3& a : model.compliant_axes) axes.push_back(vec_to_json(a));
    const json j{{"desired_direction", vec_to_json(model.desired_direction)},
                 {"n_compliant", model.n_compliant},
                 {"compliant_axes", axes},
                 {"stiffness_stiff", model.stiffness_stiff},
                 {"stiffness_compliant", model.stiffness_compliant},
                 {"damping", model.damping},
                 {"speed", model.speed}};
    open_out(path) << j.dump(2) << '\n';
}

namespace {

Surface surface_from_json(const json& j) {
    if (j.contains("plane")) {
        const json& p = j["plane"];
        return PlaneSurface{vec_from_json(p.at("point"), "plane point"),
                            vec_from_json(p.at("normal"), "plane normal").normalized()};
    }
    if (j.contains("funnel")) {
        const json& f = j["funnel"];
        FunnelSurface cone;
        cone.apex = vec_from_json(f.at("apex"), "funnel apex");
        cone.axis = vec_from_json(f.at("axis"), "funnel axis").normalized();
        cone.height = f.at("height").get<double>();
        constexpr double deg = std::numbers::pi / 180.0;
        cone.half_angle_apex_rad = f.at("half_angle_apex_deg").get<double>() * deg;
        cone.half_angle_mouth_rad = f.at("half_angle_mouth_deg").get<double>() * deg;
        return cone;
    }
    throw Error(ErrorCode::io, "surface entry needs a 'plane' or 'funnel' object");
}

json surface_to_json(const Surface& s) {
    if (const auto* plane = std::get_if<PlaneSurface>(&s))
        return {{"plane", {{"point", vec_to_json(plane->point)},
                           {"normal", vec_to_json(plane->normal)}}}};
    const auto& cone = std::get<FunnelSurface>(s);
    constexpr double deg = std::numbers::pi / 180.0;
    return {{"funnel",
             {{"apex", vec_to_json(cone.apex)},
              {"axis", vec_to_json(cone.axis)},
              {"height", cone.height},
              {"half_angle_apex_deg", cone.half_angle_apex_rad / deg},
              {"half_angle_mouth_deg", cone.half_angle_mouth_rad / deg}}}};
}

}  // namespace

Environment read_environment(const std::filesystem::path& path) {
    const json j = load_json(path);
    try {
        const std::string type = j.at("type").get<std::string>();
        const double mu = j.value("mu", 0.3);

        Environment env;
        if (j.contains("surfaces")) {
            // explicit geometry wins over the type-based construction
            env.name = type;
            for (const json& s : j["surfaces"]) env.surfaces.push_back(surface_from_json(s));
        } else if (type == "free") {
            env = make_free_environment();
        } else if (type == "plane") {
            env = make_plane_environment(mu);
            if (j.contains("point"))
                std::get<PlaneSurface>(env.surfaces[0]).point = vec_from_json(j["point"], "point");
            if (j.contains("normal"))
                std::get<PlaneSurface>(env.surfaces[0]).normal =
                    vec_from_json(j["normal"], "normal").normalized();
        } else if (type == "valley") {
            env = make_valley_environment(j.value("axis_tilt_deg", 20.0), mu);
        } else if (type == "funnel") {
            const std::string profile = j.value("profile", "curved");
            if (profile != "curved" && profile != "straight")
                throw Error(ErrorCode::io, "funnel profile must be 'curved' or 'straight'");
            env = make_funnel_environment(profile == "curved", j.value("tilt_deg", 0.0), mu);
        } else {
            throw Error(ErrorCode::io, path.string() + ": unknown environment type '" + type + "'");
        }
        env.mu = mu;
        if (j.contains("target")) {
            env.target.point = vec_from_json(j["target"].at("point"), "target point");
            env.target.radius = j["target"].value("radius", 0.005);
        }
        return env;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::io, path.string() + ": " + e.what());
    }
}

void write_environment(const std::filesystem::path& path, const Environment& env) {
    json j;
    j["type"] = env.name.empty() ? "custom" : env.name;
    j["mu"] = env.mu;
    j["target"] = {{"point", vec_to_json(env.target.point)}, {"radius", env.target.radius}};
    j["surfaces"] = json::array();
    for (const Surface& s : env.surfaces) j["surfaces"].push_back(surface_to_json(s));
    open_out(path) << j.dump(2) << '\n';
}

void write_grid_csv(const std::filesystem::path& path, const VotingGrid& grid) {
    std::ofstream out = open_out(path);
    out << "i,j,theta_x,theta_y,count\n";
    const int n = grid.cells_per_axis();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const AngularPoint c = grid.cell_center(i, j);
            out << i << ',' << j << ',' << fmt(c.theta_x) << ',' << fmt(c.theta_y) << ','
                << grid.count(i, j) << '\n';
        }
}

void write_polygons_csv(const std::filesystem::path& path,
                        std::span<const AngularPolygon> polys) {
    std::ofstream out = open_out(path);
    out << "polygon,vertex,theta_x,theta_y\n";
    for (std::size_t p = 0; p < polys.size(); ++p)
        for (std::size_t v = 0; v < polys[p].vertices.size(); ++v)
            out << p << ',' << v << ',' << fmt(polys[p].vertices[v].theta_x) << ','
                << fmt(polys[p].vertices[v].theta_y) << '\n';
}

}  // namespace cml
