#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmlearn/pipeline.hpp"

namespace {

cml::Vec3 parse_vec3(const std::string& s) {
    cml::Vec3 v;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf", &v.x, &v.y, &v.z) != 3)
        throw CLI::ValidationError("expected x,y,z");
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"learn compliant assembly motions from demonstrations and replay them "
                 "against simulated contact environments"};
    app.require_subcommand(1);

    // gen-demo -----------------------------------------------------------
    cml::GenDemoConfig gen;
    CLI::App* gen_cmd = app.add_subcommand("gen-demo", "simulate kinesthetic demonstrations");
    gen_cmd->add_option("--env", gen.env_file, "environment config JSON")->required();
    gen_cmd->add_option("--out", gen.out_dir, "output directory");
    gen_cmd->add_option("--count", gen.count, "number of demonstrations");
    gen_cmd->add_option("--pattern", gen.pattern, "auto|perpendicular|down|side|free");
    gen_cmd->add_option("--seed", gen.seed, "random seed");
    gen_cmd->add_option("--noise-deg", gen.noise_deg, "demonstrator angular noise");
    gen_cmd->add_option("--force-mag", gen.force_mag, "demonstrator push force, N");
    gen_cmd->add_option("--duration", gen.duration_s, "max demo length, s");
    gen_cmd->add_option("--mu", gen.mu_override, "override the environment's friction");

    // learn ----------------------------------------------------------------
    cml::LearnConfig learn;
    std::vector<std::string> demo_files;
    CLI::App* learn_cmd = app.add_subcommand("learn", "learn a motion model from demo CSVs");
    learn_cmd->add_option("demos", demo_files, "trajectory CSV files")->required();
    learn_cmd->add_option("--out", learn.out_dir, "output directory");
    learn_cmd->add_option("--alpha-deg", learn.constraint.alpha_deg, "demonstrator error angle");
    learn_cmd->add_option("--window", learn.constraint.window, "samples per averaging window");
    learn_cmd->add_option("--force-threshold", learn.constraint.force_threshold,
                          "contact force threshold, N");
    learn_cmd->add_option("--grid-res-deg", learn.constraint.grid_resolution_deg,
                          "voting grid resolution");
    learn_cmd->add_option("--sigma", learn.compliance.sigma,
                          "demonstrator error variance, angular units");
    learn_cmd->add_option("--speed", learn.speed, "reproduction speed, m/s");
    learn_cmd->add_option("--stiffness", learn.stiffness_stiff, "stiff axis value, N/m");
    learn_cmd->add_option("--damping", learn.damping, "damping, N*s/m");
    learn_cmd->add_flag("!--no-dumps", learn.debug_dumps,
                        "skip the theta.csv / grid.csv debug dumps");

    // reproduce --------------------------------------------------------------
    cml::ReproduceCmdConfig rep;
    std::vector<std::string> start_args;
    CLI::App* rep_cmd = app.add_subcommand("reproduce", "replay a learned model in simulation");
    rep_cmd->add_option("--model", rep.model_file, "model JSON")->required();
    rep_cmd->add_option("--env", rep.env_file, "environment config JSON")->required();
    rep_cmd->add_option("--out", rep.out_dir, "output directory");
    rep_cmd->add_option("--start", start_args, "start position x,y,z (repeatable)");
    rep_cmd->add_option("--max-time", rep.max_time_s, "simulation time limit, s");

    // eval ---------------------------------------------------------------------
    cml::EvalConfig eval;
    CLI::App* eval_cmd = app.add_subcommand("eval", "run the synthetic evaluation studies");
    eval_cmd->add_option("--out", eval.out_dir, "output directory");
    eval_cmd->add_option("--seed", eval.seed, "random seed");
    eval_cmd->add_option("--alpha-deg", eval.alpha_deg, "demonstrator error angle");
    eval_cmd->add_option("--sigma", eval.sigma, "demonstrator error variance");
    eval_cmd->add_option("--noise-deg", eval.noise_deg, "demonstrator angular noise");
    eval_cmd->add_option("--mu", eval.mu, "friction coefficient");
    eval_cmd->add_option("--window", eval.window, "samples per averaging window");
    eval_cmd->add_option("--force-threshold", eval.force_threshold, "contact threshold, N");
    eval_cmd->add_option("--grid-res-deg", eval.grid_resolution_deg, "voting grid resolution");
    eval_cmd->add_option("--demos", eval.demo_count, "direction study pool size");
    eval_cmd->add_option("--bic-demos", eval.bic_demos, "demos per BIC scenario");
    eval_cmd->add_option("--subsets", eval.subsets, "classification subsets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_cmd->parsed()) return cml::cmd_gen_demo(gen);
        if (learn_cmd->parsed()) {
            learn.demo_files.assign(demo_files.begin(), demo_files.end());
            return cml::cmd_learn(learn);
        }
        if (rep_cmd->parsed()) {
            for (const std::string& s : start_args) rep.starts.push_back(parse_vec3(s));
            return cml::cmd_reproduce(rep);
        }
        if (eval_cmd->parsed()) return cml::cmd_eval(eval);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cml::k_exit_config;
    }
    return cml::k_exit_config;
}
