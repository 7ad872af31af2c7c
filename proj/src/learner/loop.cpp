#include "wirl/learner/loop.hpp"

#include <chrono>
#include <limits>
#include <stdexcept>

namespace wirl::learner {

using core::ConfigError;
using core::ParamVector;

LearningTrace run_intention_learning(const core::Dataset& data, const LearnerConfig& config) {
    return run_intention_learning(data, config, default_solve_fn());
}

LearningTrace run_intention_learning(const core::Dataset& data, const LearnerConfig& config,
                                     const SolveFn& solve) {
    if (config.max_iters < 1) throw ConfigError("max_iters must be >= 1");
    if (!(schedule_rate(config.schedule, 1) > 0.0)) {
        throw ConfigError("schedule parameter must be > 0");
    }
    if (data.samples.empty()) throw core::ValidationError("dataset must be nonempty");
    if (projections::space_variant(config.space) != data.variant ||
        projections::space_dim(config.space) != data.dim) {
        throw core::ShapeError("parameter space does not match dataset variant/dim");
    }
    if (config.init.variant() != data.variant || config.init.dim() != data.dim) {
        throw core::ShapeError("initial point does not match dataset variant/dim");
    }
    if (core::max_abs_diff(projections::project_param(config.init, config.space), config.init) >
        1e-10) {
        throw ConfigError("initial point not in Φ");
    }

    const auto start = std::chrono::steady_clock::now();
    LearningTrace trace;
    trace.rows.reserve(static_cast<std::size_t>(config.max_iters));
    trace.complete = true;

    ParamVector phi = config.init;
    double best = std::numeric_limits<double>::infinity();
    double alpha_sum = 0.0;
    double alpha_sq_sum = 0.0;

    for (int k = 1; k <= config.max_iters; ++k) {
        const double alpha = schedule_rate(config.schedule, k);

        BatchEval eval;
        try {
            eval = evaluate_batch(phi, data, solve, config.exec);
        } catch (const std::exception& e) {
            trace.complete = false;
            trace.error = e.what();
            break;
        }

        alpha_sum += alpha;
        alpha_sq_sum += alpha * alpha;

        // Strict minimum with first-occurrence tie-break.
        if (eval.objective < best) {
            best = eval.objective;
            trace.best_param = phi;
            trace.best_k = k;
        }

        TraceRow row;
        row.k = k;
        row.alpha = alpha;
        row.objective = eval.objective;
        row.best_objective = best;
        row.subgradient_norm = eval.subgradient_norm;
        if (config.bound) {
            row.bound = (config.bound->d1 * config.bound->d1 +
                         config.bound->g * config.bound->g * alpha_sq_sum) /
                        (2.0 * alpha_sum);
        }
        trace.rows.push_back(row);

        if (config.target_eps && best <= *config.target_eps) {
            trace.converged = true;
            break;
        }
        if (k < config.max_iters) {
            ParamVector step = phi;
            step.add_scaled(eval.subgradient, -alpha);
            phi = projections::project_param(step, config.space);
        }
    }

    trace.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return trace;
}

double theoretical_bound(double d1, double g, const Schedule& schedule, int k) {
    if (k < 1) throw std::domain_error("theoretical_bound: k must be >= 1");
    double alpha_sum = 0.0;
    double alpha_sq_sum = 0.0;
    for (int i = 1; i <= k; ++i) {
        const double alpha = schedule_rate(schedule, i);
        alpha_sum += alpha;
        alpha_sq_sum += alpha * alpha;
    }
    return (d1 * d1 + g * g * alpha_sq_sum) / (2.0 * alpha_sum);
}

}  // namespace wirl::learner
