#include "ayfun/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

int write_or_print(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return ayfun::harness::exit_config_error;
    }
    out << text;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    using namespace ayfun;
    CLI::App app{"Mabuchi / Aubin-Yau energy functionals on discretized complex tori"};
    app.require_subcommand(1);

    std::string config_path, output_path, dump_form_path;
    int seed_override = -1;
    int threads = 0;
    bool i_know = false;
    int coeffs_n = 0, coeffs_max_n = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON job configuration");
        sub->add_option("--output", output_path, "output file (default: stdout)");
        sub->add_option("--seed", seed_override, "override metric seed");
        sub->add_option("--threads", threads, "worker threads (sweep)");
        sub->add_flag("--i-know", i_know, "permit loosening tolerances beyond 10x default");
    };

    CLI::App* coeffs = app.add_subcommand("coeffs", "exact constants and identity report");
    add_common(coeffs);
    coeffs->add_option("--n", coeffs_n, "first complex dimension (default 3)");
    coeffs->add_option("--max-n", coeffs_max_n, "last complex dimension (default 12)");

    CLI::App* eval = app.add_subcommand("eval", "evaluate all functionals on one scenario");
    add_common(eval);
    eval->add_option("--dump-form", dump_form_path, "also dump omega as JSON to this path");

    CLI::App* verify = app.add_subcommand("verify", "run every identity/inequality suite");
    add_common(verify);

    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep, CSV output");
    add_common(sweep);

    CLI11_PARSE(app, argc, argv);

    try {
        harness::JobConfig cfg;
        if (!config_path.empty()) cfg = harness::load_config(config_path, i_know);
        if (coeffs->parsed()) {
            cfg.job = harness::JobKind::coeffs;
            if (config_path.empty()) {
                cfg.n = coeffs_n > 0 ? coeffs_n : 3;
                cfg.max_n = coeffs_max_n > 0 ? coeffs_max_n : (coeffs_n > 0 ? coeffs_n : 12);
            } else {
                if (coeffs_n > 0) cfg.n = coeffs_n;
                if (coeffs_max_n > 0) cfg.max_n = coeffs_max_n;
            }
        } else if (eval->parsed()) {
            cfg.job = harness::JobKind::eval;
        } else if (verify->parsed()) {
            cfg.job = harness::JobKind::verify;
        } else if (sweep->parsed()) {
            cfg.job = harness::JobKind::sweep;
        }
        if (config_path.empty() && !coeffs->parsed())
            throw ConfigError("this subcommand requires --config");
        if (seed_override >= 0) cfg.metric_seed = static_cast<std::uint64_t>(seed_override);
        if (threads > 0) cfg.threads = threads;
        if (i_know) cfg.i_know = true;
        if (!output_path.empty()) cfg.output = output_path;

        if (!dump_form_path.empty() && eval->parsed()) {
            auto scenario = harness::build_metric(cfg, cfg.metric_seed);
            std::ofstream dump(dump_form_path);
            dump << harness::form_to_json(scenario.omega).dump(2) << "\n";
        }

        std::string rendered;
        int code = harness::run_job(cfg, rendered);
        int wcode = write_or_print(rendered, cfg.output);
        return wcode != 0 ? wcode : code;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return harness::exit_config_error;
    } catch (const AliasRisk& e) {
        std::cerr << "alias risk: " << e.what() << "\n";
        return harness::exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return harness::exit_residual_failure;
    }
}
