#include "wirl/core/problem.hpp"

#include <cmath>

namespace wirl::core {

namespace {

void check_rows(const std::vector<std::vector<double>>& rows, const char* what) {
    if (rows.empty()) throw ShapeError(std::string(what) + ": element list must be nonempty");
    const std::size_t d = rows.front().size();
    if (d == 0) throw ShapeError(std::string(what) + ": dimension must be >= 1");
    for (const auto& row : rows) {
        if (row.size() != d) throw ShapeError(std::string(what) + ": inconsistent dimensions");
        for (double x : row) {
            if (!std::isfinite(x)) throw ShapeError(std::string(what) + ": non-finite entry");
        }
    }
}

}  // namespace

Variant problem_variant(const ProblemSpec& problem) {
    return std::holds_alternative<QpCandidates>(problem) ? Variant::Quad : Variant::Flat;
}

int problem_dim(const ProblemSpec& problem) {
    return std::visit(
        [](const auto& p) -> int {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FiniteSet>) {
                return static_cast<int>(p.features.front().size());
            } else if constexpr (std::is_same_v<T, Knapsack>) {
                return static_cast<int>(p.items.front().feature.size());
            } else if constexpr (std::is_same_v<T, VertexPolytope>) {
                return static_cast<int>(p.vertices.front().size());
            } else {
                return static_cast<int>(p.points.front().size());
            }
        },
        problem);
}

void check_problem(const ProblemSpec& problem) {
    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FiniteSet>) {
                check_rows(p.features, "finite set");
            } else if constexpr (std::is_same_v<T, Knapsack>) {
                if (p.items.empty()) throw ShapeError("knapsack: item list must be nonempty");
                const std::size_t d = p.items.front().feature.size();
                if (d == 0) throw ShapeError("knapsack: dimension must be >= 1");
                for (const auto& item : p.items) {
                    if (item.feature.size() != d) {
                        throw ShapeError("knapsack: inconsistent feature dimensions");
                    }
                    for (double x : item.feature) {
                        if (!std::isfinite(x)) throw ShapeError("knapsack: non-finite feature");
                    }
                    if (!(item.weight >= 0.0) || !std::isfinite(item.weight)) {
                        throw ShapeError("knapsack: weights must be >= 0");
                    }
                }
                if (!(p.capacity >= 0.0) || !std::isfinite(p.capacity)) {
                    throw ShapeError("knapsack: capacity must be >= 0");
                }
            } else if constexpr (std::is_same_v<T, VertexPolytope>) {
                check_rows(p.vertices, "vertex polytope");
            } else {
                check_rows(p.points, "qp candidates");
            }
        },
        problem);
}

const char* problem_type_name(const ProblemSpec& problem) {
    return std::visit(
        [](const auto& p) -> const char* {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FiniteSet>) return "finite_set";
            else if constexpr (std::is_same_v<T, Knapsack>) return "knapsack";
            else if constexpr (std::is_same_v<T, VertexPolytope>) return "vertex_polytope";
            else return "qp_candidates";
        },
        problem);
}

}  // namespace wirl::core
