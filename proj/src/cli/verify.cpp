#include <cmath>
#include <iostream>
#include <random>

#include "wirl/cli/commands.hpp"
#include "wirl/cli/io.hpp"
#include "wirl/core/dataset_io.hpp"
#include "wirl/learner/loop.hpp"

namespace wirl::cli {

using core::Dataset;
using core::ParamVector;

namespace {

struct PropertyResult {
    std::string name;
    bool pass = true;
    double max_violation = 0.0;
    std::string witness;
};

void record(std::vector<PropertyResult>& results, PropertyResult result) {
    std::cout << (result.pass ? "[PASS] " : "[FAIL] ") << result.name
              << " (max violation " << format_double(result.max_violation) << ")";
    if (!result.pass && !result.witness.empty()) std::cout << " -- " << result.witness;
    std::cout << "\n";
    results.push_back(std::move(result));
}

PropertyResult check_monotonicity(const std::vector<learner::TraceRow>& rows) {
    PropertyResult result;
    result.name = "best-iterate monotonicity";
    double running = rows.front().objective;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        running = std::min(running, rows[i].objective);
        if (rows[i].best_objective != running ||
            (i > 0 && rows[i].best_objective > rows[i - 1].best_objective)) {
            result.pass = false;
            result.max_violation =
                std::max(result.max_violation, std::abs(rows[i].best_objective - running));
            if (result.witness.empty()) {
                result.witness = "row k=" + std::to_string(rows[i].k) + ": F_best " +
                                 format_double(rows[i].best_objective) +
                                 " != running min " + format_double(running);
            }
        }
    }
    return result;
}

PropertyResult check_bound(const std::vector<learner::TraceRow>& rows) {
    PropertyResult result;
    result.name = "relaxed error bound";
    for (const auto& row : rows) {
        if (!row.bound) continue;
        const double violation = row.best_objective - (*row.bound + 1e-9);
        if (violation > 0.0) {
            result.pass = false;
            if (violation > result.max_violation) {
                result.max_violation = violation;
                result.witness = "row k=" + std::to_string(row.k);
            }
        }
    }
    return result;
}

bool rows_equal(const learner::TraceRow& a, const learner::TraceRow& b) {
    return a.k == b.k && a.alpha == b.alpha && a.objective == b.objective &&
           a.best_objective == b.best_objective && a.subgradient_norm == b.subgradient_norm &&
           a.bound.has_value() == b.bound.has_value() &&
           (!a.bound || *a.bound == *b.bound);
}

PropertyResult check_replay(const std::vector<learner::TraceRow>& rows, const Dataset& dataset,
                            const learner::LearnerConfig& config) {
    PropertyResult result;
    result.name = "trace replay";
    const auto replay = learner::run_intention_learning(dataset, config);
    if (replay.rows.size() != rows.size()) {
        result.pass = false;
        result.witness = "replay produced " + std::to_string(replay.rows.size()) +
                         " rows, trace has " + std::to_string(rows.size());
        result.max_violation = std::abs(static_cast<double>(replay.rows.size()) -
                                        static_cast<double>(rows.size()));
        return result;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows_equal(rows[i], replay.rows[i])) {
            result.pass = false;
            result.max_violation =
                std::max({std::abs(rows[i].objective - replay.rows[i].objective),
                          std::abs(rows[i].best_objective - replay.rows[i].best_objective),
                          std::abs(rows[i].subgradient_norm - replay.rows[i].subgradient_norm)});
            result.witness = "first mismatch at row k=" + std::to_string(rows[i].k);
            return result;
        }
    }
    return result;
}

double objective_at(const ParamVector& phi, const Dataset& dataset) {
    return learner::objective_value(phi, dataset, learner::default_solve_fn());
}

PropertyResult check_convexity(const Dataset& dataset, const projections::ParamSpace& space,
                               int trials, std::mt19937_64& rng) {
    PropertyResult result;
    result.name = "convexity";
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        const auto a = projections::sample_feasible(space, rng);
        const auto b = projections::sample_feasible(space, rng);
        const double w = uni(rng);
        ParamVector mix = ParamVector::zeros(a.variant(), a.dim());
        mix.add_scaled(a, w);
        mix.add_scaled(b, 1.0 - w);
        const double violation =
            objective_at(mix, dataset) - w * objective_at(a, dataset) -
            (1.0 - w) * objective_at(b, dataset);
        if (violation > result.max_violation) {
            result.max_violation = violation;
            result.witness = "trial " + std::to_string(t);
        }
    }
    result.pass = result.max_violation <= 1e-10;
    return result;
}

PropertyResult check_lipschitz(const Dataset& dataset, const projections::ParamSpace& space,
                               double lipschitz_g, int trials, std::mt19937_64& rng) {
    PropertyResult result;
    result.name = "lipschitz continuity";
    for (int t = 0; t < trials; ++t) {
        const auto a = projections::sample_feasible(space, rng);
        const auto b = projections::sample_feasible(space, rng);
        const double violation = std::abs(objective_at(a, dataset) - objective_at(b, dataset)) -
                                 lipschitz_g * core::distance(a, b);
        if (violation > result.max_violation) {
            result.max_violation = violation;
            result.witness = "trial " + std::to_string(t);
        }
    }
    result.pass = result.max_violation <= 1e-10;
    return result;
}

PropertyResult check_subgradient(const Dataset& dataset, const projections::ParamSpace& space,
                                 int trials, std::mt19937_64& rng) {
    PropertyResult result;
    result.name = "subgradient inequality";
    for (int t = 0; t < trials; ++t) {
        const auto phi = projections::sample_feasible(space, rng);
        const auto psi = projections::sample_feasible(space, rng);
        const auto eval = learner::evaluate_batch(phi, dataset, learner::default_solve_fn());
        ParamVector delta = psi;
        delta.add_scaled(phi, -1.0);
        const double violation = eval.objective + core::inner_product(eval.subgradient, delta) -
                                 objective_at(psi, dataset);
        if (violation > result.max_violation) {
            result.max_violation = violation;
            result.witness = "trial " + std::to_string(t);
        }
    }
    result.pass = result.max_violation <= 1e-10;
    return result;
}

PropertyResult check_homogeneity(const Dataset& dataset, const projections::ParamSpace& space,
                                 int trials, std::mt19937_64& rng) {
    PropertyResult result;
    result.name = "positive homogeneity";
    const auto solve = learner::default_solve_fn();
    for (int t = 0; t < trials; ++t) {
        const auto phi = projections::sample_feasible(space, rng);
        const double base = objective_at(phi, dataset);
        for (const double gamma : {0.5, 2.0, 10.0}) {
            ParamVector scaled = phi;
            scaled.scale(gamma);
            const double violation = std::abs(objective_at(scaled, dataset) - gamma * base);
            if (violation > result.max_violation) {
                result.max_violation = violation;
                result.witness = "trial " + std::to_string(t) + ", gamma " + format_double(gamma);
            }
            for (std::size_t s = 0; s < dataset.samples.size(); ++s) {
                if (solve(phi, dataset.samples[s].problem).witness !=
                    solve(scaled, dataset.samples[s].problem).witness) {
                    result.pass = false;
                    result.witness = "argmax witness changed under scaling at sample " +
                                     std::to_string(s);
                }
            }
        }
    }
    if (result.max_violation > 1e-10) result.pass = false;
    return result;
}

}  // namespace

int cmd_verify(const VerifyOptions& options) {
    const Dataset dataset =
        core::validate_dataset(core::parse_dataset(read_file(options.data_path)));
    const auto rows = parse_trace_csv(read_file(options.trace_path));

    nlohmann::json summary;
    try {
        summary = nlohmann::json::parse(read_file(options.summary_path));
    } catch (const nlohmann::json::exception& e) {
        throw core::ParseError(std::string("summary is not valid JSON: ") + e.what());
    }

    learner::LearnerConfig config;
    double lipschitz_g = 0.0;
    try {
        const auto& cfg = summary.at("config");
        config.schedule = schedule_from_json(cfg.at("schedule"));
        config.max_iters = cfg.at("iters").get<int>();
        if (cfg.contains("target_eps")) config.target_eps = cfg.at("target_eps").get<double>();
        config.space = space_from_json(cfg.at("space"));
        config.init = core::param_from_json(cfg.at("init"), dataset.variant, dataset.dim);
        config.rng_seed = cfg.at("seed").get<std::uint64_t>();
        config.exec = cfg.value("exec", std::string("parallel")) == "serial"
                          ? learner::Exec::Serial
                          : learner::Exec::Parallel;
        const auto& bound = summary.at("bound");
        if (bound.at("enabled").get<bool>()) {
            config.bound =
                learner::BoundParams{bound.at("diameter").get<double>(),
                                     bound.at("G").get<double>()};
            lipschitz_g = config.bound->g;
        }
    } catch (const nlohmann::json::exception& e) {
        throw core::ParseError(std::string("malformed summary: ") + e.what());
    }

    const std::string expected_hash = summary.at("dataset").value("hash", std::string());
    if (!expected_hash.empty() && expected_hash != core::dataset_hash(dataset)) {
        throw core::ValidationError("dataset hash does not match the summary (different file?)");
    }
    if (lipschitz_g == 0.0) {
        lipschitz_g = learner::lipschitz_constant(dataset).value;
    }

    std::vector<PropertyResult> results;
    record(results, check_monotonicity(rows));
    record(results, check_bound(rows));
    record(results, check_replay(rows, dataset, config));

    std::mt19937_64 rng(options.seed);
    record(results, check_convexity(dataset, config.space, options.spot_checks, rng));
    record(results, check_lipschitz(dataset, config.space, lipschitz_g, options.spot_checks, rng));
    record(results, check_subgradient(dataset, config.space,
                                      std::max(1, options.spot_checks / 4), rng));
    if (dataset.variant == core::Variant::Flat) {
        record(results,
               check_homogeneity(dataset, config.space, std::max(1, options.spot_checks / 8), rng));
    }

    int failures = 0;
    for (const auto& r : results) {
        if (!r.pass) ++failures;
    }
    if (failures > 0) {
        std::cout << "verify: " << failures << " of " << results.size()
                  << " properties violated\n";
        return 3;
    }
    std::cout << "verify: all " << results.size() << " properties hold\n";
    return 0;
}

}  // namespace wirl::cli
