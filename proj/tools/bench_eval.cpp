// Benchmark: serial reference evaluator vs the OpenMP batch evaluator on
// synthetic datasets, checking that both produce bit-identical results.

#include <chrono>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "wirl/cli/commands.hpp"
#include "wirl/learner/objective.hpp"
#include "wirl/projections/spaces.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using wirl::core::Dataset;
using wirl::core::ParamVector;

double time_eval(const ParamVector& phi, const Dataset& data, wirl::learner::Exec exec,
                 int repeats, wirl::learner::BatchEval& out) {
    const auto solve = wirl::learner::default_solve_fn();
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto start = std::chrono::steady_clock::now();
        out = wirl::learner::evaluate_batch(phi, data, solve, exec);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        best = std::min(best, ms);
    }
    return best;
}

bool identical(const wirl::learner::BatchEval& a, const wirl::learner::BatchEval& b) {
    return a.objective == b.objective && a.subgradient_norm == b.subgradient_norm &&
           a.subgradient == b.subgradient;
}

struct Case {
    std::string family;
    int dim;
    int samples;
    int items;
};

}  // namespace

int main(int argc, char** argv) {
    bool quick = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) quick = true;
    }

#ifdef _OPENMP
    std::cout << "openmp threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "built without openmp; parallel mode falls back to the serial loop\n";
#endif

    std::vector<Case> cases;
    if (quick) {
        cases = {{"knapsack", 8, 64, 12}, {"qp", 3, 32, 0}};
    } else {
        cases = {{"knapsack", 10, 128, 14},
                 {"knapsack", 10, 512, 14},
                 {"finite", 16, 1024, 64},
                 {"qp", 3, 128, 0},
                 {"qp", 4, 256, 0}};
    }
    const int repeats = quick ? 3 : 7;

    std::cout << std::left << std::setw(10) << "family" << std::right << std::setw(6) << "dim"
              << std::setw(8) << "N" << std::setw(13) << "serial_ms" << std::setw(13)
              << "parallel_ms" << std::setw(10) << "speedup" << std::setw(11) << "identical"
              << "\n";

    bool all_identical = true;
    for (const auto& c : cases) {
        wirl::cli::GenerateOptions gen;
        gen.family = c.family;
        gen.dim = c.dim;
        gen.samples = c.samples;
        gen.items = c.items > 0 ? c.items : 12;
        gen.seed = 42;
        const Dataset data = wirl::cli::generate_dataset(gen);

        const auto space = data.variant == wirl::core::Variant::Flat
                               ? wirl::projections::ParamSpace(wirl::projections::Simplex{c.dim})
                               : wirl::projections::ParamSpace(
                                     wirl::projections::QuadProduct{c.dim, gen.b0});
        const ParamVector phi = wirl::projections::space_center(space);

        wirl::learner::BatchEval serial_eval;
        wirl::learner::BatchEval parallel_eval;
        const double serial_ms =
            time_eval(phi, data, wirl::learner::Exec::Serial, repeats, serial_eval);
        const double parallel_ms =
            time_eval(phi, data, wirl::learner::Exec::Parallel, repeats, parallel_eval);
        const bool same = identical(serial_eval, parallel_eval);
        all_identical = all_identical && same;

        std::cout << std::left << std::setw(10) << c.family << std::right << std::setw(6) << c.dim
                  << std::setw(8) << c.samples << std::setw(13) << std::fixed
                  << std::setprecision(3) << serial_ms << std::setw(13) << parallel_ms
                  << std::setw(10) << std::setprecision(2) << (serial_ms / parallel_ms)
                  << std::setw(11) << (same ? "yes" : "NO") << "\n";
    }

    if (!all_identical) {
        std::cerr << "parallel evaluation diverged from the serial reference\n";
        return 1;
    }
    return 0;
}
