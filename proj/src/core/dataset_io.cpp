#include "wirl/core/dataset_io.hpp"

#include <cmath>
#include <functional>
#include <cstdint>
#include <sstream>

#include "wirl/solvers/solve.hpp"

namespace wirl::core {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json problem_to_json(const ProblemSpec& problem) {
    ordered_json j;
    j["type"] = problem_type_name(problem);
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FiniteSet>) {
                j["features"] = p.features;
            } else if constexpr (std::is_same_v<T, Knapsack>) {
                ordered_json items = ordered_json::array();
                for (const auto& item : p.items) {
                    items.push_back({{"feature", item.feature}, {"weight", item.weight}});
                }
                j["items"] = std::move(items);
                j["capacity"] = p.capacity;
            } else if constexpr (std::is_same_v<T, VertexPolytope>) {
                j["vertices"] = p.vertices;
            } else {
                j["points"] = p.points;
            }
        },
        problem);
    return j;
}

ProblemSpec problem_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "finite_set") {
        FiniteSet p;
        p.features = j.at("features").get<std::vector<std::vector<double>>>();
        return p;
    }
    if (type == "knapsack") {
        Knapsack p;
        for (const auto& item : j.at("items")) {
            p.items.push_back({item.at("feature").get<std::vector<double>>(),
                               item.at("weight").get<double>()});
        }
        p.capacity = j.at("capacity").get<double>();
        return p;
    }
    if (type == "vertex_polytope") {
        VertexPolytope p;
        p.vertices = j.at("vertices").get<std::vector<std::vector<double>>>();
        return p;
    }
    if (type == "qp_candidates") {
        QpCandidates p;
        p.points = j.at("points").get<std::vector<std::vector<double>>>();
        return p;
    }
    throw ParseError("unknown problem type \"" + type + "\"");
}

Variant variant_from_string(const std::string& s) {
    if (s == "flat") return Variant::Flat;
    if (s == "quad") return Variant::Quad;
    throw ParseError("unknown variant tag \"" + s + "\" (expected \"flat\" or \"quad\")");
}

}  // namespace

ordered_json param_to_json(const ParamVector& p) {
    if (p.is_flat()) return ordered_json(p.values());
    ordered_json j;
    j["mat"] = std::vector<double>(p.mat_packed().begin(), p.mat_packed().end());
    j["vec"] = std::vector<double>(p.vec_part().begin(), p.vec_part().end());
    return j;
}

ParamVector param_from_json(const json& j, Variant expected, int dim) {
    try {
        if (j.is_array()) {
            if (expected != Variant::Flat) {
                throw ParseError("expected a quad value {mat, vec}, got a flat array");
            }
            auto values = j.get<std::vector<double>>();
            if (static_cast<int>(values.size()) != dim) {
                throw ParseError("expected dimension " + std::to_string(dim) + ", got " +
                                 std::to_string(values.size()));
            }
            return ParamVector::flat(std::move(values));
        }
        if (j.is_object()) {
            if (expected != Variant::Quad) {
                throw ParseError("expected a flat array, got a quad value {mat, vec}");
            }
            return ParamVector::quad(dim, j.at("mat").get<std::vector<double>>(),
                                     j.at("vec").get<std::vector<double>>());
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad vector value: ") + e.what());
    } catch (const ShapeError& e) {
        throw ParseError(std::string("bad vector value: ") + e.what());
    }
    throw ParseError("vector value must be an array or a {mat, vec} object");
}

std::string serialize_dataset(const Dataset& dataset) {
    ordered_json j;
    j["dim"] = dataset.dim;
    j["variant"] = variant_name(dataset.variant);
    ordered_json meta;
    meta["seed"] = dataset.metadata.seed;
    meta["generator"] = dataset.metadata.generator;
    if (dataset.metadata.phi0) meta["phi0"] = param_to_json(*dataset.metadata.phi0);
    if (dataset.metadata.b0) meta["b0"] = *dataset.metadata.b0;
    if (dataset.metadata.feasibility_unverified) meta["feasibility_unverified"] = true;
    j["metadata"] = std::move(meta);
    ordered_json samples = ordered_json::array();
    for (const auto& sample : dataset.samples) {
        ordered_json s;
        s["state_id"] = sample.state_id;
        s["problem"] = problem_to_json(sample.problem);
        s["expert_feature"] = param_to_json(sample.expert_feature);
        samples.push_back(std::move(s));
    }
    j["samples"] = std::move(samples);
    return j.dump(2) + "\n";
}

Dataset parse_dataset(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("dataset is not valid JSON: ") + e.what());
    }

    Dataset dataset;
    try {
        dataset.dim = j.at("dim").get<int>();
        dataset.variant = variant_from_string(j.at("variant").get<std::string>());
        const auto& meta = j.at("metadata");
        dataset.metadata.seed = meta.at("seed").get<std::uint64_t>();
        dataset.metadata.generator = meta.value("generator", std::string());
        if (meta.contains("phi0")) {
            dataset.metadata.phi0 =
                param_from_json(meta.at("phi0"), dataset.variant, dataset.dim);
        }
        if (meta.contains("b0")) dataset.metadata.b0 = meta.at("b0").get<double>();
        dataset.metadata.feasibility_unverified = meta.value("feasibility_unverified", false);

        if (dataset.dim < 1) throw ParseError("dim must be >= 1");
        const auto& samples = j.at("samples");
        if (!samples.is_array() || samples.empty()) {
            throw ParseError("dataset must be nonempty");
        }
        int index = 0;
        for (const auto& s : samples) {
            Sample sample;
            sample.state_id = s.at("state_id").get<std::string>();
            try {
                sample.problem = problem_from_json(s.at("problem"));
                check_problem(sample.problem);
                if (problem_variant(sample.problem) != dataset.variant) {
                    throw ParseError(std::string("problem type ") +
                                     problem_type_name(sample.problem) +
                                     " does not match dataset variant " +
                                     variant_name(dataset.variant));
                }
                if (problem_dim(sample.problem) != dataset.dim) {
                    throw ParseError("problem dimension " +
                                     std::to_string(problem_dim(sample.problem)) +
                                     " does not match dataset dim " + std::to_string(dataset.dim));
                }
                sample.expert_feature =
                    param_from_json(s.at("expert_feature"), dataset.variant, dataset.dim);
            } catch (const ParseError& e) {
                throw ParseError("sample " + std::to_string(index) + ": " + e.what());
            } catch (const ShapeError& e) {
                throw ParseError("sample " + std::to_string(index) + ": " + e.what());
            }
            dataset.samples.push_back(std::move(sample));
            ++index;
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed dataset: ") + e.what());
    }
    return dataset;
}

namespace {

bool rows_contain(const std::vector<std::vector<double>>& rows,
                  const std::vector<double>& target, double tol) {
    for (const auto& row : rows) {
        bool match = true;
        for (std::size_t k = 0; k < row.size() && match; ++k) {
            if (std::abs(row[k] - target[k]) > tol) match = false;
        }
        if (match) return true;
    }
    return false;
}

/// Depth-first search over selections with running weight and feature sum.
bool knapsack_attainable(const Knapsack& problem, const std::vector<double>& target,
                         double tol) {
    const int n = static_cast<int>(problem.items.size());
    const int d = static_cast<int>(target.size());
    std::vector<double> sum(d, 0.0);
    double weight = 0.0;

    auto matches = [&]() {
        for (int k = 0; k < d; ++k) {
            if (std::abs(sum[k] - target[k]) > tol) return false;
        }
        return true;
    };

    std::function<bool(int)> dfs = [&](int i) -> bool {
        if (weight > problem.capacity + 1e-9) return false;
        if (matches()) return true;
        if (i == n) return false;
        // include item i
        weight += problem.items[i].weight;
        for (int k = 0; k < d; ++k) sum[k] += problem.items[i].feature[k];
        if (dfs(i + 1)) return true;
        weight -= problem.items[i].weight;
        for (int k = 0; k < d; ++k) sum[k] -= problem.items[i].feature[k];
        // exclude item i
        return dfs(i + 1);
    };
    return dfs(0);
}

}  // namespace

Dataset validate_dataset(const Dataset& dataset) {
    constexpr double kTol = 1e-9;
    if (dataset.samples.empty()) throw ValidationError("dataset must be nonempty");
    if (dataset.dim < 1) throw ValidationError("dataset dim must be >= 1");

    Dataset out = dataset;
    int index = 0;
    for (const auto& sample : out.samples) {
        check_problem(sample.problem);
        if (problem_variant(sample.problem) != out.variant ||
            problem_dim(sample.problem) != out.dim) {
            throw ValidationError("sample " + std::to_string(index) +
                                      ": problem does not match dataset variant/dim",
                                  index);
        }
        if (sample.expert_feature.variant() != out.variant ||
            sample.expert_feature.dim() != out.dim) {
            throw ValidationError("sample " + std::to_string(index) +
                                      ": expert_feature does not match dataset variant/dim",
                                  index);
        }

        const bool attainable = std::visit(
            [&](const auto& p) -> bool {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, FiniteSet>) {
                    return rows_contain(p.features, sample.expert_feature.values(), kTol);
                } else if constexpr (std::is_same_v<T, VertexPolytope>) {
                    return rows_contain(p.vertices, sample.expert_feature.values(), kTol);
                } else if constexpr (std::is_same_v<T, Knapsack>) {
                    if (p.items.size() > 20) {
                        out.metadata.feasibility_unverified = true;
                        return true;
                    }
                    return knapsack_attainable(p, sample.expert_feature.values(), kTol);
                } else {
                    for (const auto& point : p.points) {
                        if (max_abs_diff(solvers::embed_qp(point), sample.expert_feature) <=
                            kTol) {
                            return true;
                        }
                    }
                    return false;
                }
            },
            sample.problem);
        if (!attainable) {
            throw ValidationError("sample " + std::to_string(index) +
                                      ": expert action is not attainable in its problem",
                                  index);
        }
        ++index;
    }
    return out;
}

std::string dataset_hash(const Dataset& dataset) {
    const std::string bytes = serialize_dataset(dataset);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << "fnv1a:" << std::hex << h;
    return out.str();
}

}  // namespace wirl::core
