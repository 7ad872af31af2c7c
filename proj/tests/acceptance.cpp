// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Convergence criteria run the full generate -> learn pipeline
// through the CLI layer so the checked artifacts are the shipped ones.

#include <chrono>
#include <iomanip>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wirl/cli/commands.hpp"
#include "wirl/cli/io.hpp"
#include "wirl/core/dataset_io.hpp"
#include "wirl/learner/loop.hpp"
#include "wirl/projections/spaces.hpp"

namespace fs = std::filesystem;
using namespace wirl;
using core::Dataset;
using core::FeatureVector;
using core::ParamVector;
using core::Variant;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void note(const std::string& info) {
        if (!detail.empty()) detail += "; ";
        detail += info;
    }
};

struct RunArtifacts {
    std::string dataset_path;
    std::string trace_path;
    std::string summary_path;
    std::vector<learner::TraceRow> rows;
    double final_best = 0.0;
    bool converged = false;
};

/// Swallows the nested CLI chatter so the suite prints one line per criterion.
class QuietCout {
public:
    QuietCout() : old_(std::cout.rdbuf(sink_.rdbuf())) {}
    ~QuietCout() { std::cout.rdbuf(old_); }

private:
    std::ostringstream sink_;
    std::streambuf* old_;
};

struct Context {
    fs::path dir;
    std::vector<RunArtifacts> knapsack_runs;
    std::vector<RunArtifacts> qp_runs;
};

RunArtifacts pipeline_run(const fs::path& dir, const std::string& tag,
                          const cli::GenerateOptions& gen_base, const std::string& schedule,
                          int iters, double eps, std::uint64_t seed) {
    cli::GenerateOptions gen = gen_base;
    gen.seed = seed;
    gen.out_path = (dir / (tag + "_data.json")).string();
    QuietCout quiet;
    if (cli::cmd_generate(gen) != 0) throw std::runtime_error("generate failed for " + tag);

    cli::LearnOptions learn;
    learn.data_path = gen.out_path;
    learn.schedule = schedule;
    learn.iters = iters;
    learn.eps = eps;
    learn.out_prefix = (dir / tag).string();
    if (cli::cmd_learn(learn) != 0) throw std::runtime_error("learn failed for " + tag);

    RunArtifacts art;
    art.dataset_path = gen.out_path;
    art.trace_path = learn.trace_path();
    art.summary_path = learn.summary_path();
    art.rows = cli::parse_trace_csv(cli::read_file(art.trace_path));
    art.final_best = art.rows.back().best_objective;
    const auto summary = nlohmann::json::parse(cli::read_file(art.summary_path));
    art.converged = summary.at("result").at("converged").get<bool>();
    return art;
}

Dataset small_random_dataset(const std::string& family, std::uint64_t seed, int dim, int samples,
                             int items) {
    cli::GenerateOptions o;
    o.family = family;
    o.dim = dim;
    o.samples = samples;
    o.items = items;
    o.seed = seed;
    if (family == "qp") {
        o.grid_extent = 2;
        o.qp_subset = items;
    }
    return cli::generate_dataset(o);
}

projections::ParamSpace natural_space(const Dataset& ds) {
    if (ds.variant == Variant::Flat) return projections::Simplex{ds.dim};
    return projections::QuadProduct{ds.dim, ds.metadata.b0.value_or(1.0)};
}

// --- criteria -------------------------------------------------------------

void criterion_realizable_convergence(Context& ctx, Outcome& out) {
    cli::GenerateOptions gen;
    gen.family = "knapsack";
    gen.dim = 10;
    gen.samples = 50;
    gen.items = 12;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto art = pipeline_run(ctx.dir, "knapsack_s" + std::to_string(seed), gen,
                                      "invsqrt:1.0", 2000, 1e-2, seed);
        if (!(art.final_best <= 1e-2)) {
            out.fail("seed " + std::to_string(seed) +
                     ": F_best = " + cli::format_double(art.final_best));
        }
        ctx.knapsack_runs.push_back(art);
    }
}

void criterion_qp_convergence(Context& ctx, Outcome& out) {
    cli::GenerateOptions gen;
    gen.family = "qp";
    gen.dim = 3;
    gen.samples = 30;
    gen.b0 = 1.0;
    gen.grid_extent = 2;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto art = pipeline_run(ctx.dir, "qp_s" + std::to_string(seed), gen, "invsqrt:1.0",
                                      3000, 5e-2, seed);
        if (!(art.final_best <= 5e-2)) {
            out.fail("seed " + std::to_string(seed) +
                     ": F_best = " + cli::format_double(art.final_best));
        }
        ctx.qp_runs.push_back(art);
    }
}

void criterion_bound_everywhere(Context& ctx, Outcome& out) {
    int checked = 0;
    for (const auto* runs : {&ctx.knapsack_runs, &ctx.qp_runs}) {
        for (const auto& art : *runs) {
            for (const auto& row : art.rows) {
                if (!row.bound) {
                    out.fail("missing bound column in " + art.trace_path);
                    return;
                }
                ++checked;
                if (!(row.best_objective <= *row.bound + 1e-9)) {
                    out.fail(art.trace_path + " row k=" + std::to_string(row.k) + ": F_best " +
                             cli::format_double(row.best_objective) + " > bound " +
                             cli::format_double(*row.bound));
                    return;
                }
            }
        }
    }
    out.note(std::to_string(checked) + " iterations checked");
}

void criterion_inequality_suite(Context&, Outcome& out) {
    const std::vector<std::string> families = {"knapsack", "finite", "polytope", "qp"};
    const auto solve = learner::default_solve_fn();
    for (const auto& family : families) {
        std::mt19937_64 rng(0x4c454d00 + family.size());
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        double worst_convex = 0.0;
        double worst_lipschitz = 0.0;
        double worst_subgrad = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            const int dim = family == "qp" ? 2 : 2 + trial % 4;
            const Dataset ds = small_random_dataset(family, 10000 + trial, dim, 1 + trial % 3,
                                                    4 + trial % 4);
            const auto space = natural_space(ds);
            const auto phi = projections::sample_feasible(space, rng);
            const auto psi = projections::sample_feasible(space, rng);
            const double t = uni(rng);

            const auto at_phi = learner::evaluate_batch(phi, ds, solve);
            const double f_psi = learner::objective_value(psi, ds, solve);

            ParamVector mix = ParamVector::zeros(phi.variant(), phi.dim());
            mix.add_scaled(phi, t);
            mix.add_scaled(psi, 1.0 - t);
            worst_convex = std::max(worst_convex,
                                    learner::objective_value(mix, ds, solve) -
                                        t * at_phi.objective - (1.0 - t) * f_psi);

            const auto lipschitz = learner::lipschitz_constant(ds);
            worst_lipschitz = std::max(worst_lipschitz,
                                       std::abs(at_phi.objective - f_psi) -
                                           lipschitz.value * core::distance(phi, psi));

            ParamVector delta = psi;
            delta.add_scaled(phi, -1.0);
            worst_subgrad = std::max(worst_subgrad,
                                     at_phi.objective +
                                         core::inner_product(at_phi.subgradient, delta) - f_psi);
        }
        if (worst_convex > 1e-10) {
            out.fail(family + ": convexity violation " + cli::format_double(worst_convex));
        }
        if (worst_lipschitz > 1e-10) {
            out.fail(family + ": lipschitz violation " + cli::format_double(worst_lipschitz));
        }
        if (worst_subgrad > 1e-10) {
            out.fail(family + ": subgradient violation " + cli::format_double(worst_subgrad));
        }
    }
}

void criterion_homogeneity(Context&, Outcome& out) {
    std::mt19937_64 rng(0x484f4d);
    const auto solve = learner::default_solve_fn();
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::string family = trial % 2 == 0 ? "knapsack" : "finite";
        const int dim = 2 + trial % 5;
        const Dataset ds =
            small_random_dataset(family, 20000 + trial, dim, 1 + trial % 3, 4 + trial % 5);
        const auto phi = projections::sample_feasible(projections::Simplex{dim}, rng);
        const double base = learner::objective_value(phi, ds, solve);
        for (const double gamma : {0.5, 2.0, 10.0}) {
            ParamVector scaled = phi;
            scaled.scale(gamma);
            worst = std::max(worst,
                             std::abs(learner::objective_value(scaled, ds, solve) - gamma * base));
            for (std::size_t s = 0; s < ds.samples.size(); ++s) {
                if (solve(scaled, ds.samples[s].problem).witness !=
                    solve(phi, ds.samples[s].problem).witness) {
                    out.fail("witness changed under gamma=" + cli::format_double(gamma) +
                             " at trial " + std::to_string(trial));
                    return;
                }
            }
        }
    }
    if (worst > 1e-10) out.fail("homogeneity violation " + cli::format_double(worst));
    else out.note("max |F(gf) - gF(f)| = " + cli::format_double(worst));
}

void criterion_projections(Context&, Outcome& out) {
    const std::vector<projections::ParamSpace> spaces = {
        projections::Simplex{5}, projections::Box{4, 1.2}, projections::Spectrahedron{3},
        projections::QuadProduct{2, 1.0}};
    for (const auto& space : spaces) {
        std::mt19937_64 rng(0x50524f + projections::space_dim(space));
        std::uniform_real_distribution<double> uni(-2.5, 2.5);
        double worst = -1e300;
        for (int trial = 0; trial < 10000; ++trial) {
            ParamVector x = ParamVector::zeros(projections::space_variant(space),
                                               projections::space_dim(space));
            for (double& v : x.raw_mut()) v = uni(rng);
            const auto p = projections::project_param(x, space);
            worst = std::max(worst,
                             projections::vi_certificate(x, p, space, 100,
                                                         0xC0FFEE + static_cast<std::uint64_t>(trial)));
        }
        if (worst > 1e-9) {
            out.fail(projections::space_name(space) + ": certificate " +
                     cli::format_double(worst));
        }
    }

    // Dense-grid oracle on the 2-simplex.
    std::mt19937_64 rng(0x475249);
    std::uniform_real_distribution<double> uni(-1.5, 1.5);
    const double step = 1e-4;
    for (int trial = 0; trial < 100; ++trial) {
        const std::vector<double> v = {uni(rng), uni(rng)};
        const auto exact = projections::project_simplex(v);
        const auto grid = testing::grid_project_delta2(v, step);
        const double err = std::hypot(exact[0] - grid[0], exact[1] - grid[1]);
        if (err > 2.0 * step) {
            out.fail("grid oracle mismatch " + cli::format_double(err));
            return;
        }
    }
}

void criterion_eigensolver(Context&, Outcome& out) {
    std::mt19937_64 rng(0x454947);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_int_distribution<int> pick_d(2, 8);
    for (int trial = 0; trial < 1000; ++trial) {
        const int d = pick_d(rng);
        linalg::SymmetricMatrix a(d);
        for (int i = 0; i < d; ++i) {
            for (int j = i; j < d; ++j) a.set(i, j, uni(rng));
        }
        const auto eig = linalg::jacobi_eigh(a);

        const auto back = linalg::reconstruct(eig);
        double recon = 0.0;
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) recon = std::max(recon, std::abs(a(i, j) - back(i, j)));
        }
        if (recon > 1e-8) {
            out.fail("reconstruction error " + cli::format_double(recon));
            return;
        }

        double ortho = 0.0;
        for (int c1 = 0; c1 < d; ++c1) {
            for (int c2 = 0; c2 < d; ++c2) {
                double dotv = 0.0;
                for (int r = 0; r < d; ++r) dotv += eig.vec(r, c1) * eig.vec(r, c2);
                ortho = std::max(ortho, std::abs(dotv - (c1 == c2 ? 1.0 : 0.0)));
            }
        }
        if (ortho > 1e-10) {
            out.fail("orthonormality error " + cli::format_double(ortho));
            return;
        }

        double eig_sum = 0.0;
        for (double lambda : eig.eigenvalues) eig_sum += lambda;
        if (std::abs(eig_sum - a.trace()) > 1e-9 * std::max(1.0, std::abs(a.trace()))) {
            out.fail("eigenvalue sum vs trace " + cli::format_double(eig_sum - a.trace()));
            return;
        }
    }
}

void criterion_solver_exactness(Context&, Outcome& out) {
    std::mt19937_64 rng(0x534f4c);
    std::uniform_real_distribution<double> feat(-1.0, 1.0);
    std::uniform_int_distribution<int> milli(0, 500);
    std::uniform_int_distribution<int> pick_n(1, 16);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = pick_n(rng);
        const int dim = 2 + trial % 4;
        core::Knapsack p;
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            std::vector<double> f(dim);
            for (double& x : f) x = feat(rng);
            const double w = milli(rng) * 1e-3;
            total += w;
            p.items.push_back({std::move(f), w});
        }
        p.capacity = std::uniform_real_distribution<double>(0.0, std::max(total, 1e-3))(rng);

        const auto phi = projections::sample_feasible(projections::Simplex{dim}, rng);
        const auto dp = solvers::solve_knapsack(phi, p);
        const auto brute = testing::brute_knapsack(phi.values(), p);
        if (dp.witness != brute.selection || dp.feature.values() != brute.feature ||
            std::abs(dp.value - brute.value) > 1e-12) {
            out.fail("DP/enumeration mismatch at trial " + std::to_string(trial));
            return;
        }
        // Optimality certificate against every feasible feature.
        for (const auto& f : testing::feasible_features(core::ProblemSpec(p))) {
            if (dp.value < core::inner_product(phi, f) - 1e-12) {
                out.fail("optimality certificate failed at trial " + std::to_string(trial));
                return;
            }
        }
    }

    // Certificates for the scan-based solvers.
    std::uniform_int_distribution<int> coord(-2, 2);
    for (int trial = 0; trial < 100; ++trial) {
        core::FiniteSet fs;
        core::VertexPolytope vp;
        for (int i = 0; i < 12; ++i) {
            fs.features.push_back({feat(rng), feat(rng), feat(rng)});
            vp.vertices.push_back({feat(rng), feat(rng), feat(rng)});
        }
        core::QpCandidates qp;
        for (int i = 0; i < 40; ++i) {
            qp.points.push_back({static_cast<double>(coord(rng)), static_cast<double>(coord(rng))});
        }
        const auto flat_phi = projections::sample_feasible(projections::Simplex{3}, rng);
        const auto quad_phi =
            projections::sample_feasible(projections::QuadProduct{2, 1.0}, rng);
        for (const auto& problem :
             {core::ProblemSpec(fs), core::ProblemSpec(vp), core::ProblemSpec(qp)}) {
            const auto& phi =
                core::problem_variant(problem) == Variant::Flat ? flat_phi : quad_phi;
            const auto res = solvers::solve(phi, problem);
            for (const auto& f : testing::feasible_features(problem)) {
                if (res.value < core::inner_product(phi, f) - 1e-12) {
                    out.fail("certificate failed for " +
                             std::string(core::problem_type_name(problem)));
                    return;
                }
            }
        }
    }
}

void criterion_constant_step(Context&, Outcome& out) {
    const double alpha = 0.1;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const Dataset ds = small_random_dataset("knapsack", 30000 + seed, 6, 20, 10);
        const auto space = natural_space(ds);
        const double g = learner::lipschitz_constant(ds).value;

        learner::LearnerConfig config;
        config.schedule = learner::Constant{alpha};
        config.max_iters = 1500;
        config.init = projections::space_center(space);
        config.space = space;
        const auto trace = learner::run_intention_learning(ds, config);
        const double plateau = trace.rows.back().best_objective;
        const double cap = g * g * alpha / 2.0 + 1e-6;
        if (!(plateau <= cap)) {
            out.fail("seed " + std::to_string(seed) + ": plateau " + cli::format_double(plateau) +
                     " > " + cli::format_double(cap));
        }
    }
}

void criterion_pipeline_determinism(Context& ctx, Outcome& out) {
    // Re-verify every convergence trace.
    int verified = 0;
    for (const auto* runs : {&ctx.knapsack_runs, &ctx.qp_runs}) {
        for (const auto& art : *runs) {
            cli::VerifyOptions verify;
            verify.data_path = art.dataset_path;
            verify.trace_path = art.trace_path;
            verify.summary_path = art.summary_path;
            verify.spot_checks = 60;
            verify.seed = 1000 + verified;
            QuietCout quiet;
            if (cli::cmd_verify(verify) != 0) {
                out.fail("verify reported violations for " + art.trace_path);
                return;
            }
            ++verified;
        }
    }
    out.note(std::to_string(verified) + " traces verified");

    // Byte-identical rerun of the first seed of each family.
    struct Rerun {
        const char* tag;
        cli::GenerateOptions gen;
        std::string schedule;
        int iters;
        double eps;
        const RunArtifacts* original;
    };
    cli::GenerateOptions kn;
    kn.family = "knapsack";
    kn.dim = 10;
    kn.samples = 50;
    kn.items = 12;
    cli::GenerateOptions qp;
    qp.family = "qp";
    qp.dim = 3;
    qp.samples = 30;
    qp.b0 = 1.0;
    qp.grid_extent = 2;
    const std::vector<Rerun> reruns = {
        {"knapsack_rerun", kn, "invsqrt:1.0", 2000, 1e-2, &ctx.knapsack_runs.front()},
        {"qp_rerun", qp, "invsqrt:1.0", 3000, 5e-2, &ctx.qp_runs.front()},
    };
    for (const auto& r : reruns) {
        const auto again = pipeline_run(ctx.dir, r.tag, r.gen, r.schedule, r.iters, r.eps, 1);
        if (cli::read_file(again.dataset_path) != cli::read_file(r.original->dataset_path)) {
            out.fail(std::string(r.tag) + ": dataset bytes differ across reruns");
        }
        if (cli::read_file(again.trace_path) != cli::read_file(r.original->trace_path)) {
            out.fail(std::string(r.tag) + ": trace bytes differ across reruns");
        }
    }
}

}  // namespace

int main() {
    Context ctx;
    ctx.dir = fs::temp_directory_path() / "wirl_acceptance";
    fs::remove_all(ctx.dir);
    fs::create_directories(ctx.dir);

    struct Criterion {
        int id;
        std::string name;
        std::function<void(Context&, Outcome&)> body;
    };
    const std::vector<Criterion> criteria = {
        {1, "realizable knapsack convergence (10 seeds, F_best <= 1e-2)",
         criterion_realizable_convergence},
        {2, "qp-case convergence (10 seeds, F_best <= 5e-2)", criterion_qp_convergence},
        {3, "relaxed error bound holds at every iteration", criterion_bound_everywhere},
        {4, "convexity / lipschitz / subgradient inequalities (1000 tuples per family)",
         criterion_inequality_suite},
        {5, "positive homogeneity and witness scale invariance (500 cases)",
         criterion_homogeneity},
        {6, "projection correctness (VI certificate + grid oracle)", criterion_projections},
        {7, "eigensolver tolerances (1000 random matrices)", criterion_eigensolver},
        {8, "solver exactness (DP vs enumeration, optimality certificates)",
         criterion_solver_exactness},
        {9, "constant-step plateau within G^2*alpha/2", criterion_constant_step},
        {10, "pipeline determinism and verify-pass", criterion_pipeline_determinism},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        Outcome out;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.body(ctx, out);
        } catch (const std::exception& e) {
            out.fail(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (out.pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion.id << ": "
                  << criterion.name << " (" << std::fixed << std::setprecision(1) << secs << "s)";
        if (!out.detail.empty()) std::cout << " -- " << out.detail;
        std::cout << "\n" << std::defaultfloat;
        if (!out.pass) ++failures;
    }

    if (failures == 0) {
        std::cout << "acceptance: all " << criteria.size() << " criteria pass\n";
        fs::remove_all(ctx.dir);
        return 0;
    }
    std::cout << "acceptance: " << failures << " criteria failed (artifacts kept in " << ctx.dir
              << ")\n";
    return 1;
}
