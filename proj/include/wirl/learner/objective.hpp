#pragma once

#include <functional>

#include "wirl/core/dataset.hpp"
#include "wirl/solvers/solve.hpp"

namespace wirl::learner {

/// Forward-solver hook; tests may inject an independent solver.
using SolveFn =
    std::function<solvers::SolveResult(const core::ParamVector&, const core::ProblemSpec&)>;

SolveFn default_solve_fn(const solvers::KnapsackOptions& options = {});

/// How the per-sample solves of one evaluation execute. Results are
/// identical either way: per-sample work is pure and the reduction always
/// runs in sample order.
enum class Exec { Serial, Parallel };

struct BatchEval {
    double objective = 0.0;         // F(phi)
    core::ParamVector subgradient;  // averaged feature difference
    double subgradient_norm = 0.0;
};

/// One pass over the dataset at `phi`: solves every sample's forward
/// problem, then reduces in sample order to the objective
///   F(phi) = avg_n <phi, a(phi, s_n)> - avg_n <phi, a_n>
/// and its subgradient avg_n a(phi, s_n) - avg_n a_n.
///
/// Exec::Serial is the reference implementation (one straight loop);
/// Exec::Parallel distributes the solves across OpenMP threads and must
/// produce bit-identical results.
BatchEval evaluate_batch(const core::ParamVector& phi, const core::Dataset& data,
                         const SolveFn& solve, Exec exec = Exec::Parallel);

double objective_value(const core::ParamVector& phi, const core::Dataset& data,
                       const SolveFn& solve, Exec exec = Exec::Parallel);

core::ParamVector subgradient(const core::ParamVector& phi, const core::Dataset& data,
                              const SolveFn& solve, Exec exec = Exec::Parallel);

struct LipschitzEstimate {
    double value = 0.0;  // G >= sup_phi ||subgradient(phi)||
    bool exact = true;   // false when a knapsack fell back to the norm-sum bound
};

/// G = avg_n max over the feasible feature set of ||h(x) - a_n||. Exact by
/// enumeration for list-backed problems and for knapsacks with at most
/// `knapsack_exhaustive_limit` items; larger knapsacks use the safe
/// over-estimate sum_i ||f_i|| + ||a_n||.
LipschitzEstimate lipschitz_constant(const core::Dataset& data,
                                     int knapsack_exhaustive_limit = 16);

}  // namespace wirl::learner
