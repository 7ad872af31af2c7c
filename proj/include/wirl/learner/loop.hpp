#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wirl/learner/objective.hpp"
#include "wirl/learner/schedule.hpp"
#include "wirl/projections/spaces.hpp"

namespace wirl::learner {

/// Inputs to the error-bound diagnostic: d1 over-estimates the distance
/// from the initial point to the minimizer set (the space diameter is a
/// valid choice), G is a Lipschitz constant of the objective.
struct BoundParams {
    double d1 = 0.0;
    double g = 0.0;
};

struct LearnerConfig {
    Schedule schedule;
    int max_iters = 1;
    /// Early stop once the best objective reaches this value. Only
    /// meaningful when the minimum is known (realizable synthetic data has
    /// min F = 0); the convergence guarantee bounds nearness to the
    /// minimum, not the minimum's value.
    std::optional<double> target_eps;
    core::ParamVector init;
    projections::ParamSpace space;
    std::uint64_t rng_seed = 0;
    Exec exec = Exec::Parallel;
    std::optional<BoundParams> bound;
};

struct TraceRow {
    int k = 0;
    double alpha = 0.0;
    double objective = 0.0;       // F(phi_k)
    double best_objective = 0.0;  // min_{i<=k} F(phi_i)
    double subgradient_norm = 0.0;
    std::optional<double> bound;  // present when BoundParams configured
};

struct LearningTrace {
    std::vector<TraceRow> rows;
    core::ParamVector best_param;
    int best_k = 0;
    double wall_seconds = 0.0;
    bool converged = false;  // target_eps reached
    bool complete = false;   // false when the run aborted mid-iteration
    std::string error;       // failure description when !complete
};

/// Projected subgradient descent with best-iterate tracking:
///   phi_{k+1} = Proj(phi_k - alpha_k * g_k),
/// evaluating the objective at every iterate and returning the best one.
/// Runs max_iters evaluations (the final iterate takes no update step) or
/// stops early at target_eps. Deterministic for a fixed config; rng_seed
/// is carried only for reporting.
LearningTrace run_intention_learning(const core::Dataset& data, const LearnerConfig& config,
                                     const SolveFn& solve);

LearningTrace run_intention_learning(const core::Dataset& data, const LearnerConfig& config);

/// Best-iterate error bound after k steps:
///   (d1^2 + G^2 * sum_{i<=k} alpha_i^2) / (2 * sum_{i<=k} alpha_i).
double theoretical_bound(double d1, double g, const Schedule& schedule, int k);

}  // namespace wirl::learner
