#include "cmlearn/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>

#include <json.hpp>

#include "cmlearn/error.hpp"
#include "cmlearn/report.hpp"
#include "cmlearn/rng.hpp"
#include "cmlearn/trajectory.hpp"

namespace cml {

namespace {

constexpr double k_deg = std::numbers::pi / 180.0;

const FunnelSurface* find_funnel(const Environment& env) {
    for (const Surface& s : env.surfaces)
        if (const auto* f = std::get_if<FunnelSurface>(&s)) return f;
    return nullptr;
}

struct ValleyFrame {
    Vec3 axis;     // downhill crease direction
    Vec3 n_left;   // wall normals, free side
    Vec3 n_right;
    Vec3 up_left;  // in-wall up-slope directions
    Vec3 up_right;
};

ValleyFrame valley_frame(const Environment& env) {
    const auto* left = std::get_if<PlaneSurface>(&env.surfaces[0]);
    const auto* right = std::get_if<PlaneSurface>(&env.surfaces[1]);
    if (!left || !right)
        throw Error(ErrorCode::invalid_input, "valley environment needs two plane walls");
    ValleyFrame f;
    f.n_left = left->normal.normalized();
    f.n_right = right->normal.normalized();
    f.axis = f.n_right.cross(f.n_left).normalized();
    f.up_left = -(f.axis.cross(f.n_left)).normalized();
    f.up_right = f.axis.cross(f.n_right).normalized();
    return f;
}

void funnel_basis(const FunnelSurface& funnel, Vec3& e1, Vec3& e2) {
    Vec3 ref{1.0, 0.0, 0.0};
    if (std::fabs(funnel.axis.dot(ref)) > 0.9) ref = {0.0, 1.0, 0.0};
    e1 = (ref - funnel.axis * ref.dot(funnel.axis)).normalized();
    e2 = funnel.axis.cross(e1);
}

}  // namespace

std::string default_pattern(const Environment& env) {
    if (find_funnel(env)) return "perpendicular";
    if (env.surfaces.size() == 2) return "down";
    if (env.surfaces.empty()) return "free";
    return "free";
}

std::vector<DemoPlan> plan_demos(const Environment& env, std::string_view pattern, int count) {
    std::string p(pattern);
    if (p == "auto") p = default_pattern(env);
    std::vector<DemoPlan> plans;
    plans.reserve(static_cast<std::size_t>(count));

    if (p == "perpendicular") {
        const FunnelSurface* funnel = find_funnel(env);
        if (!funnel)
            throw Error(ErrorCode::invalid_input, "perpendicular pattern needs a funnel");
        Vec3 e1, e2;
        funnel_basis(*funnel, e1, e2);
        for (int k = 0; k < count; ++k) {
            const double az = (k % 4) * 90.0 * k_deg;
            const Vec3 outward = e1 * std::cos(az) + e2 * std::sin(az);
            DemoPlan plan;
            plan.start = funnel->apex + funnel->axis * 0.08 + outward * 0.05;
            plan.approach = (outward * 0.25 - funnel->axis).normalized();
            plan.direction_class = k % 4;
            plans.push_back(plan);
        }
        return plans;
    }

    if (p == "down" || p == "side") {
        const ValleyFrame f = valley_frame(env);
        for (int k = 0; k < count; ++k) {
            const bool left = (p == "side") ? true : (k % 2 == 0);
            const Vec3 n = left ? f.n_left : f.n_right;
            const Vec3 up = left ? f.up_left : f.up_right;
            DemoPlan plan;
            if (p == "down") {
                plan.start = f.axis * -0.03 + up * 0.035 + n * 0.008;
                plan.approach = (f.axis - n * 0.6).normalized();
                plan.direction_class = left ? 0 : 1;
            } else {
                plan.start = f.axis * -0.02 + up * 0.05 + n * 0.006;
                plan.approach = (f.axis - n * 0.8).normalized();
                plan.direction_class = 0;
            }
            plans.push_back(plan);
        }
        return plans;
    }

    if (p == "free") {
        for (int k = 0; k < count; ++k) {
            DemoPlan plan;
            plan.start = env.target.point + Vec3{0.0, 0.0, 0.12};
            plan.approach = (env.target.point - plan.start).normalized();
            plan.direction_class = 0;
            plans.push_back(plan);
        }
        return plans;
    }

    throw Error(ErrorCode::invalid_input, "unknown demo pattern '" + p + "'");
}

Vec3 pattern_truth(const Environment& env, std::string_view pattern) {
    std::string p(pattern);
    if (p == "auto") p = default_pattern(env);
    if (p == "perpendicular") {
        const FunnelSurface* funnel = find_funnel(env);
        if (!funnel) throw Error(ErrorCode::invalid_input, "no funnel in environment");
        return -funnel->axis;
    }
    if (p == "down") return valley_frame(env).axis;
    if (p == "free") return plan_demos(env, p, 1)[0].approach;
    throw Error(ErrorCode::invalid_input, "pattern '" + p + "' has no single ground truth");
}

PairRule pattern_pair_rule(std::string_view pattern) {
    if (pattern == "perpendicular") return PairRule::perpendicular_class;
    if (pattern == "down") return PairRule::distinct_class;
    return PairRule::any;
}

std::vector<SyntheticDemo> generate_demo_batch(const Environment& env, std::string_view pattern,
                                               int count, double noise_deg, double force_mag,
                                               std::uint64_t seed, double duration_s) {
    const std::vector<DemoPlan> plans = plan_demos(env, pattern, count);
    std::vector<SyntheticDemo> demos;
    demos.reserve(plans.size());
    for (std::size_t k = 0; k < plans.size(); ++k) {
        DemoConfig cfg;
        cfg.start = plans[k].start;
        cfg.approach = plans[k].approach;
        cfg.noise_deg = noise_deg;
        cfg.force_mag = force_mag;
        cfg.duration_s = duration_s;
        cfg.seed = seed * 1000003ull + k;
        const DemoResult demo = generate_demonstration(env, cfg);
        demos.push_back({demo.trajectory, plans[k], demo.contacted});
    }
    return demos;
}

namespace {

nlohmann::json vec_json(const Vec3& v) { return nlohmann::json::array({v.x, v.y, v.z}); }

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::conflicting_demos:
        case ErrorCode::degenerate_geometry:
        case ErrorCode::no_motion:
            return k_exit_infeasible;
        default:
            return k_exit_config;
    }
}

}  // namespace

int cmd_gen_demo(const GenDemoConfig& cfg) {
    try {
        Environment env = read_environment(cfg.env_file);
        if (cfg.mu_override >= 0.0) env.mu = cfg.mu_override;
        std::filesystem::create_directories(cfg.out_dir);

        const std::string pattern =
            cfg.pattern == "auto" ? default_pattern(env) : cfg.pattern;
        const std::vector<SyntheticDemo> demos = generate_demo_batch(
            env, pattern, cfg.count, cfg.noise_deg, cfg.force_mag, cfg.seed, cfg.duration_s);

        nlohmann::json sidecar;
        sidecar["environment"] = cfg.env_file.string();
        sidecar["pattern"] = pattern;
        sidecar["seed"] = cfg.seed;
        sidecar["noise_deg"] = cfg.noise_deg;
        sidecar["force_mag"] = cfg.force_mag;
        try {
            sidecar["ground_truth_direction"] = vec_json(pattern_truth(env, pattern));
        } catch (const Error&) {
            // side pattern has no single truth
        }
        sidecar["demos"] = nlohmann::json::array();

        for (std::size_t k = 0; k < demos.size(); ++k) {
            const std::filesystem::path file =
                cfg.out_dir / ("demo_" + std::to_string(k) + ".csv");
            write_trajectory_csv(file, demos[k].trajectory);
            sidecar["demos"].push_back({{"file", file.filename().string()},
                                        {"approach", vec_json(demos[k].plan.approach)},
                                        {"start", vec_json(demos[k].plan.start)},
                                        {"direction_class", demos[k].plan.direction_class},
                                        {"contacted", demos[k].contacted}});
            if (!env.surfaces.empty() && !demos[k].contacted)
                std::cerr << "warning: demo " << k
                          << " never reached contact; keeping the free-space trace\n";
            std::cout << "wrote " << file.string() << " (" << demos[k].trajectory.samples.size()
                      << " samples)\n";
        }
        std::ofstream side(cfg.out_dir / "demos.json");
        side << sidecar.dump(2) << '\n';
        return k_exit_ok;
    } catch (const Error& e) {
        std::cerr << "gen-demo: " << e.what() << '\n';
        return k_exit_config;
    }
}

LearnOutput learn_from_files(const LearnConfig& cfg) {
    if (cfg.demo_files.empty())
        throw Error(ErrorCode::invalid_input, "learn: no demonstration files");

    std::vector<std::vector<MotionSample>> demos;
    demos.reserve(cfg.demo_files.size());
    for (const std::filesystem::path& file : cfg.demo_files) {
        const Trajectory traj = read_trajectory_csv(file);
        demos.push_back(preprocess(traj, cfg.constraint.window, cfg.constraint.force_threshold));
    }

    LearnOutput out;
    out.direction = learn_direction(demos, cfg.constraint);
    out.compliance = learn_compliance(demos, out.direction.desired_direction, cfg.compliance);

    out.model.desired_direction = out.direction.desired_direction;
    out.model.n_compliant = out.compliance.n_compliant;
    out.model.compliant_axes = out.compliance.compliant_axes;
    out.model.stiffness_stiff = cfg.stiffness_stiff;
    out.model.stiffness_compliant = cfg.stiffness_compliant;
    out.model.damping = cfg.damping;
    out.model.speed = cfg.speed;
    return out;
}

int cmd_learn(const LearnConfig& cfg) {
    try {
        std::filesystem::create_directories(cfg.out_dir);
        const LearnOutput out = learn_from_files(cfg);

        write_motion_model(cfg.out_dir / "model.json", out.model);

        // report: feasible polygon, constraint polygons, voting grid, BIC
        write_polygons_csv(cfg.out_dir / "phi.csv",
                           std::span<const AngularPolygon>(&out.direction.feasible_polygon, 1));
        std::vector<std::vector<MotionSample>> windowed;
        for (const std::filesystem::path& file : cfg.demo_files)
            windowed.push_back(preprocess(read_trajectory_csv(file), cfg.constraint.window,
                                          cfg.constraint.force_threshold));
        const std::vector<AngularPolygon> thetas =
            constraint_polygons(windowed, cfg.constraint, out.direction.rotation);
        const VotingGrid grid = vote(thetas, cfg.constraint.grid_resolution_deg);
        if (cfg.debug_dumps) {
            write_polygons_csv(cfg.out_dir / "theta.csv", thetas);
            write_grid_csv(cfg.out_dir / "grid.csv", grid);
        }
        {
            std::ofstream bic(cfg.out_dir / "bic.csv");
            bic << "model,k,logL,bic\n";
            for (int m = 0; m < 3; ++m)
                bic << m << ',' << m << ',' << out.compliance.log_likelihood[m] << ','
                    << out.compliance.bic[m] << '\n';
        }
        nlohmann::json report;
        report["desired_direction"] = vec_json(out.model.desired_direction);
        report["n_compliant"] = out.model.n_compliant;
        report["inlier_count"] = out.direction.inlier_count;
        report["degenerate_samples"] = out.direction.degenerate_samples;
        report["grid_max"] = grid.max_count();
        report["bic"] = out.compliance.bic;
        if (out.compliance.u_angle) report["u_angle_rad"] = *out.compliance.u_angle;
        std::ofstream rep(cfg.out_dir / "report.json");
        rep << report.dump(2) << '\n';

        if (out.direction.degenerate_samples > 0)
            std::cerr << "warning: " << out.direction.degenerate_samples
                      << " contact samples had force anti-parallel to motion; "
                         "used the free-space cone for them\n";
        std::cout << "model written to " << (cfg.out_dir / "model.json").string() << " ("
                  << out.model.n_compliant << " compliant axes, " << out.direction.inlier_count
                  << " inlier polygons)\n";
        return k_exit_ok;
    } catch (const Error& e) {
        std::cerr << "learn: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

int cmd_reproduce(const ReproduceCmdConfig& cfg) {
    try {
        const MotionModel model = read_motion_model(cfg.model_file);
        const Environment env = read_environment(cfg.env_file);
        std::filesystem::create_directories(cfg.out_dir);

        std::vector<Vec3> starts = cfg.starts;
        if (starts.empty()) {
            // default ring of offsets around the target approach
            if (const FunnelSurface* funnel = find_funnel(env)) {
                Vec3 e1, e2;
                funnel_basis(*funnel, e1, e2);
                for (int k = 0; k < 4; ++k) {
                    const double az = k * 90.0 * k_deg;
                    starts.push_back(funnel->apex + funnel->axis * 0.08 +
                                     (e1 * std::cos(az) + e2 * std::sin(az)) * 0.04);
                }
            } else {
                starts.push_back(env.target.point - model.desired_direction * 0.12);
            }
        }

        std::ofstream summary(cfg.out_dir / "summary.csv");
        summary << "run,start_x,start_y,start_z,status,final_x,final_y,final_z,distance\n";

        bool all_ok = true;
        for (std::size_t k = 0; k < starts.size(); ++k) {
            ReproduceConfig rc;
            rc.start = starts[k];
            rc.max_time_s = cfg.max_time_s;
            const ReproduceResult res = reproduce(model, env, rc);
            write_trace_csv(cfg.out_dir / ("trace_" + std::to_string(k) + ".csv"), res.trace);

            const Vec3 final_pos = res.trace.rows.back().position;
            const double dist = (final_pos - env.target.point).norm();
            const char* status = res.status == ReproduceStatus::success  ? "success"
                                 : res.status == ReproduceStatus::stuck ? "stuck"
                                                                         : "timeout";
            summary << k << ',' << starts[k].x << ',' << starts[k].y << ',' << starts[k].z << ','
                    << status << ',' << final_pos.x << ',' << final_pos.y << ',' << final_pos.z
                    << ',' << dist << '\n';
            std::cout << "run " << k << ": " << status << " (final " << dist * 1000.0
                      << " mm from target)\n";
            all_ok = all_ok && res.success();
        }
        return all_ok ? k_exit_ok : k_exit_reproduce_failed;
    } catch (const Error& e) {
        std::cerr << "reproduce: " << e.what() << '\n';
        return k_exit_config;
    }
}

int cmd_eval(const EvalConfig& cfg) {
    try {
        std::filesystem::create_directories(cfg.out_dir);

        ConstraintSpec cspec;
        cspec.alpha_deg = cfg.alpha_deg;
        cspec.window = cfg.window;
        cspec.force_threshold = cfg.force_threshold;
        cspec.grid_resolution_deg = cfg.grid_resolution_deg;
        ComplianceSpec comp;
        comp.sigma = cfg.sigma;

        auto window_demos = [&](const std::vector<SyntheticDemo>& batch) {
            std::vector<std::vector<MotionSample>> out;
            out.reserve(batch.size());
            for (const SyntheticDemo& d : batch)
                out.push_back(preprocess(d.trajectory, cspec.window, cspec.force_threshold));
            return out;
        };

        // --- demo-count study on the funnel -------------------------------
        const Environment funnel = make_funnel_environment(true, 0.0, cfg.mu);
        const Vec3 truth = pattern_truth(funnel, "perpendicular");
        const std::vector<SyntheticDemo> pool = generate_demo_batch(
            funnel, "perpendicular", cfg.demo_count, cfg.noise_deg, 10.0, cfg.seed);
        const std::vector<std::vector<MotionSample>> windowed = window_demos(pool);

        std::ofstream err_csv(cfg.out_dir / "direction_error.csv");
        err_csv << "group_size,group,error_deg\n";
        std::vector<BoxGroup> boxes;
        for (int group_size : {2, 4, 8, 16}) {
            BoxGroup box;
            box.label = std::to_string(group_size) + " demos";
            for (int g = 0; g + group_size <= cfg.demo_count; g += group_size) {
                const std::span<const std::vector<MotionSample>> group(
                    windowed.data() + g, static_cast<std::size_t>(group_size));
                const DirectionResult res = learn_direction(group, cspec);
                const double err = angle_between(res.desired_direction, truth) / k_deg;
                err_csv << group_size << ',' << g / group_size << ',' << err << '\n';
                box.values.push_back(err);
            }
            boxes.push_back(std::move(box));
        }
        write_boxplot_svg(cfg.out_dir / "direction_error_box.svg", boxes, "error angle (deg)");

        // --- BIC study across the three environments ----------------------
        struct Scenario {
            std::string label;
            Environment env;
            std::string pattern;
            int expected;
        };
        std::vector<Scenario> scenarios;
        scenarios.push_back({"free", make_free_environment(), "free", 0});
        scenarios.push_back({"valley", make_valley_environment(20.0, cfg.mu), "down", 1});
        scenarios.push_back({"funnel", funnel, "perpendicular", 2});

        std::ofstream bic_csv(cfg.out_dir / "bic.csv");
        bic_csv << "environment,model,k,logL,bic\n";
        std::ofstream rate_csv(cfg.out_dir / "classification.csv");
        rate_csv << "environment,expected_model,subsets,correct,rate\n";
        std::vector<BarGroup> bars;

        for (const Scenario& sc : scenarios) {
            const std::vector<SyntheticDemo> batch = generate_demo_batch(
                sc.env, sc.pattern, cfg.bic_demos, cfg.noise_deg, 10.0, cfg.seed + 17);
            const std::vector<std::vector<MotionSample>> wd = window_demos(batch);

            // full-batch BIC table
            const DirectionResult dir = learn_direction(wd, cspec);
            const ComplianceResult full =
                learn_compliance(wd, dir.desired_direction, comp);
            for (int m = 0; m < 3; ++m)
                bic_csv << sc.label << ',' << m << ',' << m << ',' << full.log_likelihood[m]
                        << ',' << full.bic[m] << '\n';
            bars.push_back({sc.label, {full.bic[0], full.bic[1], full.bic[2]}});

            // pairwise classification robustness
            const PairRule rule = pattern_pair_rule(sc.pattern);
            Rng rng(cfg.seed + 23);
            int correct = 0;
            for (int s = 0; s < cfg.subsets; ++s) {
                const std::size_t i = static_cast<std::size_t>(rng.uniform() * wd.size());
                std::size_t j = i;
                for (int guard = 0; guard < 1000 && j == i; ++guard) {
                    const std::size_t cand = static_cast<std::size_t>(rng.uniform() * wd.size());
                    if (cand == i) continue;
                    const int ci = batch[i].plan.direction_class;
                    const int cj = batch[cand].plan.direction_class;
                    if (rule == PairRule::distinct_class && ci == cj) continue;
                    if (rule == PairRule::perpendicular_class && (ci - cj) % 2 == 0) continue;
                    j = cand;
                }
                if (j == i) continue;
                std::vector<std::vector<MotionSample>> pair{wd[i], wd[j]};
                try {
                    const DirectionResult d = learn_direction(pair, cspec);
                    const ComplianceResult c = learn_compliance(pair, d.desired_direction, comp);
                    if (c.n_compliant == sc.expected) ++correct;
                } catch (const Error&) {
                    // conflicting pair counts as a miss
                }
            }
            rate_csv << sc.label << ',' << sc.expected << ',' << cfg.subsets << ',' << correct
                     << ',' << double(correct) / cfg.subsets << '\n';
            std::cout << sc.label << ": expected model " << sc.expected << ", rate "
                      << double(correct) / cfg.subsets << '\n';
        }
        const std::string series[3] = {"model 0", "model 1", "model 2"};
        write_bars_svg(cfg.out_dir / "bic_bars.svg", bars, series, "BIC");

        // --- voting views of a two-demo funnel pair ------------------------
        {
            std::vector<std::vector<MotionSample>> pair{windowed[0], windowed[1]};
            const DirectionResult res = learn_direction(pair, cspec);
            const std::vector<AngularPolygon> thetas =
                constraint_polygons(pair, cspec, res.rotation);
            VotingGrid grid = vote(thetas, cspec.grid_resolution_deg);
            write_grid_csv(cfg.out_dir / "grid.csv", grid);
            write_heatmap_svg(cfg.out_dir / "heatmap.svg", grid);
            write_polygons_svg(cfg.out_dir / "polygons.svg", thetas, &res.feasible_polygon);
        }

        std::cout << "eval artifacts written to " << cfg.out_dir.string() << '\n';
        return k_exit_ok;
    } catch (const Error& e) {
        std::cerr << "eval: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

}  // namespace cml
