#include <iostream>
#include <algorithm>
#include <cstdint>
#include <random>

#include "wirl/cli/commands.hpp"
#include "wirl/cli/io.hpp"
#include "wirl/core/dataset_io.hpp"
#include "wirl/projections/spaces.hpp"
#include "wirl/solvers/solve.hpp"

namespace wirl::cli {

using core::ConfigError;
using core::Dataset;
using core::ParamVector;
using core::Variant;

namespace {

std::vector<double> uniform_row(int dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> row(dim);
    for (double& x : row) x = uni(rng);
    return row;
}

core::Knapsack draw_knapsack(const GenerateOptions& o, std::mt19937_64& rng) {
    // Weights live on a 0.1 grid so the DP integerization is exact and the
    // reduced capacity stays small.
    std::uniform_int_distribution<int> tenths(1, 9);
    core::Knapsack problem;
    std::int64_t total_units = 0;
    for (int i = 0; i < o.items; ++i) {
        const std::int64_t units = 100 * tenths(rng);
        total_units += units;
        problem.items.push_back({uniform_row(o.dim, rng), static_cast<double>(units) * 1e-3});
    }
    problem.capacity = static_cast<double>(total_units / 2) * 1e-3;
    return problem;
}

std::vector<std::vector<double>> full_grid(int dim, int extent) {
    const int side = 2 * extent + 1;
    std::size_t count = 1;
    for (int i = 0; i < dim; ++i) {
        count *= static_cast<std::size_t>(side);
        if (count > (1u << 22)) throw ConfigError("qp candidate grid too large");
    }
    std::vector<std::vector<double>> points;
    points.reserve(count);
    std::vector<int> odo(dim, -extent);
    while (true) {
        std::vector<double> p(dim);
        for (int i = 0; i < dim; ++i) p[i] = odo[i];
        points.push_back(std::move(p));
        int pos = dim - 1;
        while (pos >= 0 && odo[pos] == extent) {
            odo[pos] = -extent;
            --pos;
        }
        if (pos < 0) break;
        ++odo[pos];
    }
    return points;
}

core::QpCandidates draw_qp(const GenerateOptions& o, const std::vector<std::vector<double>>& grid,
                           std::mt19937_64& rng) {
    core::QpCandidates problem;
    if (o.qp_subset <= 0 || o.qp_subset >= static_cast<int>(grid.size())) {
        problem.points = grid;
        return problem;
    }
    // Partial Fisher-Yates for a distinct index sample, then restore grid order.
    std::vector<int> indices(grid.size());
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = static_cast<int>(i);
    for (int i = 0; i < o.qp_subset; ++i) {
        std::uniform_int_distribution<int> pick(i, static_cast<int>(indices.size()) - 1);
        std::swap(indices[i], indices[pick(rng)]);
    }
    indices.resize(o.qp_subset);
    std::sort(indices.begin(), indices.end());
    for (int idx : indices) problem.points.push_back(grid[idx]);
    return problem;
}

}  // namespace

core::Dataset generate_dataset(const GenerateOptions& o) {
    if (o.dim < 1) throw ConfigError("dim must be >= 1");
    if (o.samples < 1) throw ConfigError("samples must be >= 1");
    if (o.items < 1) throw ConfigError("items must be >= 1");
    if (!(o.b0 > 0.0)) throw ConfigError("b0 must be > 0");
    if (o.grid_extent < 0) throw ConfigError("grid extent must be >= 0");

    const bool quad = o.family == "qp";
    if (o.family != "knapsack" && o.family != "finite" && o.family != "polytope" && !quad) {
        throw ConfigError("unknown family \"" + o.family +
                          "\" (expected knapsack, finite, polytope, or qp)");
    }

    projections::ParamSpace space;
    if (quad) {
        space = projections::QuadProduct{o.dim, o.b0};
    } else {
        space = projections::Simplex{o.dim};
    }

    std::mt19937_64 rng(o.seed);
    ParamVector phi0;
    if (o.phi0_json) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(*o.phi0_json);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("bad phi0 JSON: ") + e.what());
        }
        phi0 = core::param_from_json(j, quad ? Variant::Quad : Variant::Flat, o.dim);
        if (core::max_abs_diff(projections::project_param(phi0, space), phi0) > 1e-10) {
            throw ConfigError("supplied phi0 is not in the parameter space");
        }
    } else {
        phi0 = projections::sample_feasible(space, rng);
    }

    std::vector<std::vector<double>> grid;
    if (quad) grid = full_grid(o.dim, o.grid_extent);

    Dataset dataset;
    dataset.dim = o.dim;
    dataset.variant = quad ? Variant::Quad : Variant::Flat;
    dataset.metadata.seed = o.seed;
    dataset.metadata.generator = o.family;
    dataset.metadata.phi0 = phi0;
    if (quad) dataset.metadata.b0 = o.b0;

    for (int n = 0; n < o.samples; ++n) {
        core::Sample sample;
        sample.state_id = "s" + std::to_string(n);
        if (o.family == "knapsack") {
            sample.problem = draw_knapsack(o, rng);
        } else if (o.family == "finite") {
            core::FiniteSet p;
            for (int i = 0; i < o.items; ++i) p.features.push_back(uniform_row(o.dim, rng));
            sample.problem = std::move(p);
        } else if (o.family == "polytope") {
            core::VertexPolytope p;
            for (int i = 0; i < o.items; ++i) p.vertices.push_back(uniform_row(o.dim, rng));
            sample.problem = std::move(p);
        } else {
            sample.problem = draw_qp(o, grid, rng);
        }
        sample.expert_feature = solvers::solve(phi0, sample.problem).feature;
        dataset.samples.push_back(std::move(sample));
    }
    return core::validate_dataset(dataset);
}

int cmd_generate(const GenerateOptions& options) {
    const Dataset dataset = generate_dataset(options);
    write_file_atomic(options.out_path, core::serialize_dataset(dataset));
    std::cout << "wrote " << options.out_path << ": family=" << options.family
              << " dim=" << dataset.dim << " samples=" << dataset.samples.size()
              << " seed=" << options.seed << "\n";
    return 0;
}

}  // namespace wirl::cli
