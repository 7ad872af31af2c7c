#include "wirl/learner/objective.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace wirl::learner {

using core::Dataset;
using core::FeatureVector;
using core::ParamVector;

SolveFn default_solve_fn(const solvers::KnapsackOptions& options) {
    return [options](const ParamVector& phi, const core::ProblemSpec& problem) {
        return solvers::solve(phi, problem, options);
    };
}

namespace {

struct SampleEval {
    double learner_score = 0.0;  // <phi, a(phi, s_n)>
    double expert_score = 0.0;   // <phi, a_n>
    FeatureVector learner_feature;
    bool failed = false;
    std::string error;
};

void eval_one(const ParamVector& phi, const core::Sample& sample, const SolveFn& solve,
              SampleEval& out) {
    solvers::SolveResult result = solve(phi, sample.problem);
    out.learner_score = core::inner_product(phi, result.feature);
    out.expert_score = core::inner_product(phi, sample.expert_feature);
    out.learner_feature = std::move(result.feature);
}

/// Sample-order reduction shared by both execution modes; the floating
/// point operation sequence is fixed here, so results do not depend on
/// how the per-sample evaluations were scheduled.
BatchEval reduce(const ParamVector& phi, const Dataset& data,
                 const std::vector<SampleEval>& evals) {
    const int n = static_cast<int>(evals.size());
    double learner_sum = 0.0;
    double expert_sum = 0.0;
    ParamVector grad = ParamVector::zeros(phi.variant(), phi.dim());
    for (int i = 0; i < n; ++i) {
        learner_sum += evals[i].learner_score;
        expert_sum += evals[i].expert_score;
        grad.add_scaled(evals[i].learner_feature, 1.0);
        grad.add_scaled(data.samples[i].expert_feature, -1.0);
    }
    grad.scale(1.0 / n);

    BatchEval out;
    out.objective = learner_sum / n - expert_sum / n;
    out.subgradient_norm = grad.norm();
    out.subgradient = std::move(grad);
    return out;
}

}  // namespace

BatchEval evaluate_batch(const ParamVector& phi, const Dataset& data, const SolveFn& solve,
                         Exec exec) {
    if (data.samples.empty()) throw core::ValidationError("dataset must be nonempty");
    const int n = static_cast<int>(data.samples.size());
    std::vector<SampleEval> evals(n);

    if (exec == Exec::Serial) {
        for (int i = 0; i < n; ++i) {
            try {
                eval_one(phi, data.samples[i], solve, evals[i]);
            } catch (const std::exception& e) {
                throw core::NumericalError("solver failed at sample " + std::to_string(i) + ": " +
                                           e.what());
            }
        }
    } else {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) {
            try {
                eval_one(phi, data.samples[i], solve, evals[i]);
            } catch (const std::exception& e) {
                evals[i].failed = true;
                evals[i].error = e.what();
            }
        }
        for (int i = 0; i < n; ++i) {
            if (evals[i].failed) {
                throw core::NumericalError("solver failed at sample " + std::to_string(i) + ": " +
                                           evals[i].error);
            }
        }
    }
    return reduce(phi, data, evals);
}

double objective_value(const ParamVector& phi, const Dataset& data, const SolveFn& solve,
                       Exec exec) {
    return evaluate_batch(phi, data, solve, exec).objective;
}

core::ParamVector subgradient(const ParamVector& phi, const Dataset& data, const SolveFn& solve,
                              Exec exec) {
    return evaluate_batch(phi, data, solve, exec).subgradient;
}

namespace {

double flat_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

double flat_norm(const std::vector<double>& a) {
    double acc = 0.0;
    for (double x : a) acc += x * x;
    return std::sqrt(acc);
}

/// Max of ||feature sum - target|| over feasible selections, by DFS with
/// weight pruning only (the max need not be at full capacity).
double knapsack_max_distance(const core::Knapsack& problem, const std::vector<double>& target) {
    const int n = static_cast<int>(problem.items.size());
    const int d = static_cast<int>(target.size());
    std::vector<double> sum(d, 0.0);
    double weight = 0.0;
    double best = 0.0;

    std::function<void(int)> dfs = [&](int i) {
        if (weight > problem.capacity + 1e-9) return;
        if (i == n) {
            best = std::max(best, flat_distance(sum, target));
            return;
        }
        weight += problem.items[i].weight;
        for (int k = 0; k < d; ++k) sum[k] += problem.items[i].feature[k];
        dfs(i + 1);
        weight -= problem.items[i].weight;
        for (int k = 0; k < d; ++k) sum[k] -= problem.items[i].feature[k];
        dfs(i + 1);
    };
    dfs(0);
    return best;
}

}  // namespace

LipschitzEstimate lipschitz_constant(const Dataset& data, int knapsack_exhaustive_limit) {
    if (data.samples.empty()) throw core::ValidationError("dataset must be nonempty");
    LipschitzEstimate out;
    double total = 0.0;
    for (const auto& sample : data.samples) {
        const double worst = std::visit(
            [&](const auto& p) -> double {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, core::FiniteSet>) {
                    double m = 0.0;
                    for (const auto& f : p.features) {
                        m = std::max(m, flat_distance(f, sample.expert_feature.values()));
                    }
                    return m;
                } else if constexpr (std::is_same_v<T, core::VertexPolytope>) {
                    double m = 0.0;
                    for (const auto& f : p.vertices) {
                        m = std::max(m, flat_distance(f, sample.expert_feature.values()));
                    }
                    return m;
                } else if constexpr (std::is_same_v<T, core::Knapsack>) {
                    if (static_cast<int>(p.items.size()) <= knapsack_exhaustive_limit) {
                        return knapsack_max_distance(p, sample.expert_feature.values());
                    }
                    out.exact = false;
                    double bound = flat_norm(sample.expert_feature.values());
                    for (const auto& item : p.items) bound += flat_norm(item.feature);
                    return bound;
                } else {
                    double m = 0.0;
                    FeatureVector work =
                        FeatureVector::zeros(core::Variant::Quad, sample.expert_feature.dim());
                    for (const auto& point : p.points) {
                        solvers::embed_qp_into(point, work);
                        m = std::max(m, core::distance(work, sample.expert_feature));
                    }
                    return m;
                }
            },
            sample.problem);
        total += worst;
    }
    out.value = total / static_cast<double>(data.samples.size());
    return out;
}

}  // namespace wirl::learner
