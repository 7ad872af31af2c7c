#include <iostream>
#include <memory>

#include "json_config.hpp"
#include "wirl/cli/commands.hpp"
#include "wirl/core/error.hpp"

namespace wirl::cli {

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 4;

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"intention learning for multi-objective optimization: recover the weight "
                 "vector of a scalarized objective from observed optimal decisions"};
    app.require_subcommand(1);
    app.set_config("--config", "", "JSON config file; command-line flags override it");
    app.config_formatter(std::make_shared<ConfigJson>());

    GenerateOptions gen;
    auto* generate = app.add_subcommand(
        "generate", "draw a realizable synthetic dataset from a hidden parameter");
    generate->add_option("--family", gen.family, "knapsack | finite | polytope | qp")
        ->capture_default_str();
    generate->add_option("--dim", gen.dim, "parameter dimension d")->capture_default_str();
    generate->add_option("--samples", gen.samples, "number of samples N")->capture_default_str();
    generate->add_option("--seed", gen.seed, "rng seed")
        ->envname("WIRL_SEED")
        ->capture_default_str();
    generate->add_option("--items", gen.items, "elements per sample (flat families)")
        ->capture_default_str();
    generate->add_option("--b0", gen.b0, "box half-width (qp family)")->capture_default_str();
    generate->add_option("--grid", gen.grid_extent, "qp candidate grid extent m, grid {-m..m}^d")
        ->capture_default_str();
    generate->add_option("--qp-subset", gen.qp_subset,
                         "draw this many distinct grid points per sample (0 = full grid)")
        ->capture_default_str();
    generate->add_option("--out", gen.out_path, "output dataset path")->capture_default_str();
    std::string phi0_text;
    auto* phi0_opt = generate->add_option(
        "--phi0", phi0_text, "generating parameter as JSON (array or {\"mat\":..,\"vec\":..})");

    LearnOptions learn;
    auto* learn_cmd =
        app.add_subcommand("learn", "run projected subgradient descent on a dataset");
    learn_cmd->add_option("--data", learn.data_path, "dataset file")->required();
    learn_cmd->add_option("--schedule", learn.schedule, "constant:a | invsqrt:c | harmonic:c")
        ->capture_default_str();
    learn_cmd->add_option("--iters", learn.iters, "iteration budget K")->capture_default_str();
    double eps_value = 0.0;
    auto* eps_opt = learn_cmd->add_option(
        "--eps", eps_value, "early-stop threshold on F(phi_best); use on realizable data");
    std::string init_text;
    auto* init_opt = learn_cmd->add_option("--init", init_text,
                                           "initial point as JSON (default: space center)");
    learn_cmd->add_option("--b0", learn.b0, "box half-width when the dataset lacks one")
        ->capture_default_str();
    learn_cmd->add_option("--seed", learn.seed, "rng seed (reporting only; the loop is "
                                                "deterministic)")
        ->envname("WIRL_SEED")
        ->capture_default_str();
    learn_cmd->add_flag("--serial", learn.serial, "use the serial reference evaluator");
    learn_cmd->add_flag("--no-bound", learn.no_bound, "skip the error-bound diagnostic");
    learn_cmd->add_option("--out", learn.out_prefix,
                          "output prefix; writes <out>.trace.csv and <out>.summary.json")
        ->capture_default_str();

    VerifyOptions verify;
    auto* verify_cmd = app.add_subcommand(
        "verify", "re-check a learning trace against the theory-derived properties");
    verify_cmd->add_option("--data", verify.data_path, "dataset file")->required();
    verify_cmd->add_option("--trace", verify.trace_path, "trace CSV from learn")->required();
    verify_cmd->add_option("--summary", verify.summary_path, "summary JSON from learn")
        ->required();
    verify_cmd->add_option("--spot-checks", verify.spot_checks, "random property trials")
        ->capture_default_str();
    verify_cmd->add_option("--seed", verify.seed, "rng seed for the property sampling")
        ->envname("WIRL_SEED")
        ->capture_default_str();

    ReportOptions report;
    auto* report_cmd =
        app.add_subcommand("report", "merge traces into plot-ready long-format CSV");
    report_cmd->add_option("--traces", report.trace_paths, "trace CSV files")
        ->required()
        ->expected(-1);
    report_cmd->add_option("--out", report.out_path, "output CSV path")->capture_default_str();

    int rc = 0;
    generate->callback([&] {
        if (*phi0_opt) gen.phi0_json = phi0_text;
        rc = cmd_generate(gen);
    });
    learn_cmd->callback([&] {
        if (*eps_opt) learn.eps = eps_value;
        if (*init_opt) learn.init_json = init_text;
        rc = cmd_learn(learn);
    });
    verify_cmd->callback([&] { rc = cmd_verify(verify); });
    report_cmd->callback([&] { rc = cmd_report(report); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const core::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const core::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const core::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const core::ShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return rc;
}

}  // namespace wirl::cli
