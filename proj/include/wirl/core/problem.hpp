#pragma once

#include <string>
#include <variant>
#include <vector>

#include "wirl/core/vector.hpp"

namespace wirl::core {

/// Explicit feasible feature set; the embedding h is the identity.
struct FiniteSet {
    std::vector<std::vector<double>> features;

    friend bool operator==(const FiniteSet&, const FiniteSet&) = default;
};

struct KnapsackItem {
    std::vector<double> feature;
    double weight = 0.0;

    friend bool operator==(const KnapsackItem&, const KnapsackItem&) = default;
};

/// 0-1 knapsack instance. The feasible features are the per-item feature
/// sums over selections with total weight <= capacity.
struct Knapsack {
    std::vector<KnapsackItem> items;
    double capacity = 0.0;

    friend bool operator==(const Knapsack&, const Knapsack&) = default;
};

/// A bounded polyhedron given by its vertex list; a linear objective
/// attains its maximum at a vertex, so scanning the list is exact.
struct VertexPolytope {
    std::vector<std::vector<double>> vertices;

    friend bool operator==(const VertexPolytope&, const VertexPolytope&) = default;
};

/// Finite candidate set for the concave-quadratic case; candidates are
/// raw points x, embedded as (-x x^T, -x) when scored.
struct QpCandidates {
    std::vector<std::vector<double>> points;

    friend bool operator==(const QpCandidates&, const QpCandidates&) = default;
};

using ProblemSpec = std::variant<FiniteSet, Knapsack, VertexPolytope, QpCandidates>;

/// Which parameter variant this problem pairs with.
Variant problem_variant(const ProblemSpec& problem);

/// Ambient dimension d of the problem's points/features.
int problem_dim(const ProblemSpec& problem);

/// Structural invariants: nonempty element lists, consistent dimensions,
/// finite entries, nonnegative knapsack weights and capacity.
void check_problem(const ProblemSpec& problem);

const char* problem_type_name(const ProblemSpec& problem);

}  // namespace wirl::core
