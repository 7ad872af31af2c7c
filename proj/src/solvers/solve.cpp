#include "wirl/solvers/solve.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

namespace wirl::solvers {

using core::ConfigError;
using core::FeatureVector;
using core::ParamVector;
using core::ShapeError;
using core::Variant;

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

void require_flat(const ParamVector& phi, int dim, const char* what) {
    if (!phi.is_flat() || phi.dim() != dim) {
        throw ShapeError(std::string(what) + ": expected flat parameter of dimension " +
                         std::to_string(dim));
    }
}

/// Scan an explicit row list; strict improvement keeps the lowest index.
SolveResult argmax_rows(const ParamVector& phi, const std::vector<std::vector<double>>& rows,
                        const char* what) {
    require_flat(phi, static_cast<int>(rows.front().size()), what);
    const auto& p = phi.values();
    int best = 0;
    double best_value = dot(p, rows[0]);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double value = dot(p, rows[i]);
        if (value > best_value) {
            best_value = value;
            best = static_cast<int>(i);
        }
    }
    SolveResult result;
    result.feature = FeatureVector::flat(rows[best]);
    result.value = best_value;
    result.witness = {best};
    return result;
}

std::int64_t to_resolution_units(double x, double resolution, const char* what) {
    const double q = x / resolution;
    const double r = std::round(q);
    if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q)) || std::abs(r) > 9.0e15) {
        throw ConfigError(std::string(what) + " " + std::to_string(x) +
                          " is not representable at weight resolution " +
                          std::to_string(resolution));
    }
    return static_cast<std::int64_t>(r);
}

}  // namespace

SolveResult solve_knapsack(const ParamVector& phi, const core::Knapsack& problem,
                           const KnapsackOptions& options) {
    core::check_problem(core::ProblemSpec(problem));
    const int n = static_cast<int>(problem.items.size());
    const int d = static_cast<int>(problem.items.front().feature.size());
    require_flat(phi, d, "solve_knapsack");

    const auto& p = phi.values();
    std::vector<double> values(n);
    for (int i = 0; i < n; ++i) values[i] = dot(p, problem.items[i].feature);

    // Integerize weights at the declared resolution; capacity snaps to the
    // grid when within tolerance and floors otherwise (flooring can only
    // shrink the feasible set by points that were never exactly feasible).
    std::vector<std::int64_t> weights(n);
    std::int64_t total_weight = 0;
    for (int i = 0; i < n; ++i) {
        weights[i] = to_resolution_units(problem.items[i].weight, options.weight_resolution,
                                         "knapsack weight");
        total_weight += weights[i];
    }
    std::int64_t capacity;
    {
        const double q = problem.capacity / options.weight_resolution;
        const double r = std::round(q);
        capacity = (std::abs(q - r) <= 1e-9 * std::max(1.0, std::abs(q)))
                       ? static_cast<std::int64_t>(r)
                       : static_cast<std::int64_t>(std::floor(q));
    }
    capacity = std::min(capacity, total_weight);
    if (capacity < 0) capacity = 0;

    std::int64_t gcd = 0;
    for (const auto w : weights) gcd = std::gcd(gcd, w);
    if (gcd > 1) {
        for (auto& w : weights) w /= gcd;
        capacity /= gcd;
    }

    const std::size_t width = static_cast<std::size_t>(capacity) + 1;
    if (static_cast<std::size_t>(n + 1) * width > (1u << 24)) {
        throw ConfigError("knapsack DP table too large at this weight resolution (" +
                          std::to_string((n + 1) * width) + " cells)");
    }

    // best[i][c]: max value over items i.. with remaining capacity c.
    std::vector<double> best(static_cast<std::size_t>(n + 1) * width, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        const double* next = &best[static_cast<std::size_t>(i + 1) * width];
        double* row = &best[static_cast<std::size_t>(i) * width];
        for (std::int64_t c = 0; c <= capacity; ++c) {
            double v = next[c];
            if (weights[i] <= c) {
                const double with = values[i] + next[c - weights[i]];
                if (with > v) v = with;
            }
            row[c] = v;
        }
    }

    // Walk forward including every item that still attains the optimum;
    // on ties this prefers selections containing the lowest indices.
    SolveResult result;
    std::int64_t c = capacity;
    std::vector<double> feature_sum(d, 0.0);
    for (int i = 0; i < n; ++i) {
        const double* next = &best[static_cast<std::size_t>(i + 1) * width];
        if (weights[i] <= c && values[i] + next[c - weights[i]] >= next[c]) {
            result.witness.push_back(i);
            c -= weights[i];
            for (int k = 0; k < d; ++k) feature_sum[k] += problem.items[i].feature[k];
        }
    }
    result.feature = FeatureVector::flat(std::move(feature_sum));
    result.value = core::inner_product(phi, result.feature);
    return result;
}

SolveResult solve_vertex_lp(const ParamVector& phi, const core::VertexPolytope& problem) {
    core::check_problem(core::ProblemSpec(problem));
    return argmax_rows(phi, problem.vertices, "solve_vertex_lp");
}

core::FeatureVector embed_qp(std::span<const double> x) {
    const int d = static_cast<int>(x.size());
    FeatureVector out = FeatureVector::zeros(Variant::Quad, d);
    embed_qp_into(x, out);
    return out;
}

void embed_qp_into(std::span<const double> x, core::FeatureVector& out) {
    const int d = static_cast<int>(x.size());
    if (!out.is_quad() || out.dim() != d) {
        throw ShapeError("embed_qp_into: output must be a quad feature of dimension " +
                         std::to_string(d));
    }
    for (double xi : x) {
        if (!std::isfinite(xi)) throw ShapeError("embed_qp: non-finite point");
    }
    auto data = out.raw_mut();
    std::size_t idx = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j, ++idx) data[idx] = -x[i] * x[j];
    }
    for (int i = 0; i < d; ++i) data[idx + i] = -x[i];
}

SolveResult solve_qp_candidates(const ParamVector& phi, const core::QpCandidates& problem) {
    core::check_problem(core::ProblemSpec(problem));
    const int d = static_cast<int>(problem.points.front().size());
    if (!phi.is_quad() || phi.dim() != d) {
        throw ShapeError("solve_qp_candidates: expected quad parameter of dimension " +
                         std::to_string(d));
    }
    FeatureVector work = FeatureVector::zeros(Variant::Quad, d);
    int best = 0;
    double best_value = 0.0;
    for (std::size_t i = 0; i < problem.points.size(); ++i) {
        embed_qp_into(problem.points[i], work);
        const double value = core::inner_product(phi, work);
        if (i == 0 || value > best_value) {
            best_value = value;
            best = static_cast<int>(i);
        }
    }
    SolveResult result;
    embed_qp_into(problem.points[best], work);
    result.feature = work;
    result.value = best_value;
    result.witness = {best};
    return result;
}

SolveResult solve(const ParamVector& phi, const core::ProblemSpec& problem,
                  const KnapsackOptions& options) {
    if (phi.variant() != core::problem_variant(problem)) {
        throw ShapeError(std::string("solve: ") + core::variant_name(phi.variant()) +
                         " parameter cannot drive a " + core::problem_type_name(problem) +
                         " problem");
    }
    return std::visit(
        [&](const auto& p) -> SolveResult {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, core::FiniteSet>) {
                core::check_problem(problem);
                return argmax_rows(phi, p.features, "solve(finite_set)");
            } else if constexpr (std::is_same_v<T, core::Knapsack>) {
                return solve_knapsack(phi, p, options);
            } else if constexpr (std::is_same_v<T, core::VertexPolytope>) {
                return solve_vertex_lp(phi, p);
            } else {
                return solve_qp_candidates(phi, p);
            }
        },
        problem);
}

}  // namespace wirl::solvers
