#include <iostream>

#include "wirl/cli/commands.hpp"
#include "wirl/cli/io.hpp"
#include "wirl/core/dataset_io.hpp"
#include "wirl/learner/loop.hpp"

namespace wirl::cli {

using core::Dataset;
using core::ParamVector;

namespace {

projections::ParamSpace space_for(const Dataset& dataset, double fallback_b0) {
    if (dataset.variant == core::Variant::Flat) {
        return projections::Simplex{dataset.dim};
    }
    return projections::QuadProduct{dataset.dim, dataset.metadata.b0.value_or(fallback_b0)};
}

}  // namespace

int cmd_learn(const LearnOptions& options) {
    const Dataset dataset = core::validate_dataset(core::parse_dataset(read_file(options.data_path)));
    const auto space = space_for(dataset, options.b0);

    learner::LearnerConfig config;
    config.schedule = learner::parse_schedule(options.schedule);
    config.max_iters = options.iters;
    config.target_eps = options.eps;
    config.space = space;
    config.rng_seed = options.seed;
    config.exec = options.serial ? learner::Exec::Serial : learner::Exec::Parallel;
    if (options.init_json) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(*options.init_json);
        } catch (const nlohmann::json::exception& e) {
            throw core::ConfigError(std::string("bad init JSON: ") + e.what());
        }
        config.init = core::param_from_json(j, dataset.variant, dataset.dim);
    } else {
        config.init = projections::space_center(space);
    }

    learner::LipschitzEstimate lipschitz;
    if (!options.no_bound) {
        lipschitz = learner::lipschitz_constant(dataset);
        config.bound = learner::BoundParams{projections::diameter(space), lipschitz.value};
    }

    const learner::LearningTrace trace = learner::run_intention_learning(dataset, config);
    if (!trace.complete) {
        throw core::NumericalError("learning aborted: " + trace.error);
    }

    nlohmann::ordered_json summary;
    summary["command"] = "learn";
    {
        nlohmann::ordered_json ds;
        ds["path"] = options.data_path;
        ds["hash"] = core::dataset_hash(dataset);
        ds["dim"] = dataset.dim;
        ds["variant"] = core::variant_name(dataset.variant);
        ds["samples"] = dataset.samples.size();
        summary["dataset"] = std::move(ds);
    }
    {
        nlohmann::ordered_json cfg;
        cfg["schedule"] = schedule_to_json(config.schedule);
        cfg["iters"] = config.max_iters;
        if (config.target_eps) cfg["target_eps"] = *config.target_eps;
        cfg["init"] = core::param_to_json(config.init);
        cfg["space"] = space_to_json(config.space);
        cfg["seed"] = config.rng_seed;
        cfg["exec"] = config.exec == learner::Exec::Serial ? "serial" : "parallel";
        summary["config"] = std::move(cfg);
    }
    {
        nlohmann::ordered_json bound;
        bound["enabled"] = config.bound.has_value();
        if (config.bound) {
            bound["diameter"] = config.bound->d1;
            bound["G"] = config.bound->g;
            bound["lipschitz_exact"] = lipschitz.exact;
            // d1 substitutes the space diameter for the unknown distance to
            // the minimizer set, so the per-iteration bound is relaxed.
            bound["relaxed"] = true;
        }
        summary["bound"] = std::move(bound);
    }
    {
        nlohmann::ordered_json result;
        result["iterations"] = trace.rows.size();
        result["k_best"] = trace.best_k;
        result["F_best"] = trace.rows.empty() ? 0.0 : trace.rows.back().best_objective;
        result["phi_best"] = core::param_to_json(trace.best_param);
        result["converged"] = trace.converged;
        result["complete"] = trace.complete;
        result["wall_seconds"] = trace.wall_seconds;
        summary["result"] = std::move(result);
    }

    write_file_atomic(options.trace_path(), format_trace_csv(trace.rows));
    write_file_atomic(options.summary_path(), summary.dump(2) + "\n");

    std::cout << "learned " << options.data_path << ": iterations=" << trace.rows.size()
              << " F_best=" << format_double(trace.rows.back().best_objective)
              << " k_best=" << trace.best_k << " converged=" << (trace.converged ? "true" : "false")
              << "\n"
              << "wrote " << options.trace_path() << " and " << options.summary_path() << "\n";
    return 0;
}

}  // namespace wirl::cli
