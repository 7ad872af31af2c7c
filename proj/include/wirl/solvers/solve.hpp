#pragma once

#include <span>
#include <vector>

#include "wirl/core/problem.hpp"
#include "wirl/core/vector.hpp"

namespace wirl::solvers {

/// Outcome of one forward solve: the embedding of the chosen maximizer,
/// its score under the query parameter, and a witness that reproduces the
/// feature exactly. The witness is the element index for list-backed
/// problems and the ascending item selection for knapsacks.
struct SolveResult {
    core::FeatureVector feature;
    double value = 0.0;
    std::vector<int> witness;
};

struct KnapsackOptions {
    /// Weights and capacity are declared at this decimal resolution and
    /// scaled to integers for the DP; weights that do not land on the grid
    /// are a configuration error.
    double weight_resolution = 1e-3;
};

/// Exact argmax of phi^T h(x) over the problem's feasible set. Flat
/// parameters pair with FiniteSet/Knapsack/VertexPolytope, Quad parameters
/// with QpCandidates. Ties break to the lowest witness index (knapsacks
/// prefer selections containing the lowest-indexed items).
SolveResult solve(const core::ParamVector& phi, const core::ProblemSpec& problem,
                  const KnapsackOptions& options = {});

/// Exact 0-1 knapsack via dynamic programming over the integerized weights.
SolveResult solve_knapsack(const core::ParamVector& phi, const core::Knapsack& problem,
                           const KnapsackOptions& options = {});

/// Linear max over an explicit vertex list.
SolveResult solve_vertex_lp(const core::ParamVector& phi, const core::VertexPolytope& problem);

/// Quadratic-case embedding h(x) = (-x x^T, -x), so that pairing with
/// phi = (A, b) reproduces -x^T A x - b^T x.
core::FeatureVector embed_qp(std::span<const double> x);

/// Same, writing into an existing Quad feature of matching dimension.
void embed_qp_into(std::span<const double> x, core::FeatureVector& out);

/// Scores every candidate point via embed_qp and the space inner product.
SolveResult solve_qp_candidates(const core::ParamVector& phi, const core::QpCandidates& problem);

}  // namespace wirl::solvers
