#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wirl/core/dataset.hpp"

namespace wirl::cli {

struct GenerateOptions {
    std::string family = "knapsack";  // knapsack | finite | polytope | qp
    int dim = 10;
    int samples = 50;
    std::uint64_t seed = 0;
    /// Elements drawn per sample: knapsack items, finite-set features,
    /// polytope vertices. Ignored by the qp family.
    int items = 12;
    double b0 = 1.0;      // qp box half-width
    int grid_extent = 2;  // qp candidate grid {-m..m}^d
    /// 0 keeps the full qp grid per sample; otherwise each sample draws
    /// this many distinct grid points.
    int qp_subset = 0;
    std::string out_path = "dataset.json";
    std::optional<std::string> phi0_json;  // overrides the random draw
};

struct LearnOptions {
    std::string data_path;
    std::string schedule = "invsqrt:1.0";
    int iters = 1000;
    std::optional<double> eps;
    std::optional<std::string> init_json;  // defaults to the space center
    /// Box half-width when the dataset metadata does not carry one.
    double b0 = 1.0;
    std::uint64_t seed = 0;
    bool serial = false;
    bool no_bound = false;
    std::string out_prefix = "run";

    std::string trace_path() const { return out_prefix + ".trace.csv"; }
    std::string summary_path() const { return out_prefix + ".summary.json"; }
};

struct VerifyOptions {
    std::string data_path;
    std::string trace_path;
    std::string summary_path;
    int spot_checks = 200;
    std::uint64_t seed = 0;
};

struct ReportOptions {
    std::vector<std::string> trace_paths;
    std::string out_path = "report.csv";
};

/// Draws a hidden phi0 on the parameter space (unless supplied), draws the
/// per-sample problems, and sets every expert feature to the forward
/// solution under phi0, so the resulting dataset is realizable by
/// construction (min F = 0).
core::Dataset generate_dataset(const GenerateOptions& options);

int cmd_generate(const GenerateOptions& options);
int cmd_learn(const LearnOptions& options);
int cmd_verify(const VerifyOptions& options);
int cmd_report(const ReportOptions& options);

/// Exit codes: 0 success, 1 usage/config, 2 validation/parse,
/// 3 property violation, 4 internal numerical error.
int run_cli(int argc, const char* const* argv);

}  // namespace wirl::cli
