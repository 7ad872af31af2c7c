#include <doctest.h>

#include <filesystem>
#include <cstdlib>
#include <fstream>

#include "wirl/cli/commands.hpp"
#include "wirl/cli/io.hpp"
#include "wirl/core/dataset_io.hpp"

using namespace wirl;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(std::vector<std::string> args) {
    std::vector<const char*> argv = {"wirl"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return cli::run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generate: constructive postconditions") {
    TempDir dir("wirl_cli_generate");
    cli::GenerateOptions o;
    o.family = "knapsack";
    o.dim = 10;
    o.samples = 50;
    o.seed = 42;
    o.out_path = dir.file("d.json");
    CHECK(cli::cmd_generate(o) == 0);

    const auto ds = core::parse_dataset(cli::read_file(o.out_path));
    CHECK(ds.samples.size() == 50);
    CHECK(ds.dim == 10);
    REQUIRE(ds.metadata.phi0.has_value());
    // phi0 lies on the simplex.
    double sum = 0.0;
    for (double x : ds.metadata.phi0->values()) {
        CHECK(x >= 0.0);
        sum += x;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_NOTHROW((void)core::validate_dataset(ds));
}

TEST_CASE("generate: qp family draws a quad parameter in its space") {
    TempDir dir("wirl_cli_generate_qp");
    cli::GenerateOptions o;
    o.family = "qp";
    o.dim = 3;
    o.samples = 20;
    o.b0 = 1.0;
    o.seed = 9;
    o.out_path = dir.file("q.json");
    CHECK(cli::cmd_generate(o) == 0);
    const auto ds = core::parse_dataset(cli::read_file(o.out_path));
    CHECK(ds.variant == core::Variant::Quad);
    REQUIRE(ds.metadata.phi0.has_value());
    const projections::ParamSpace space = projections::QuadProduct{3, 1.0};
    CHECK(core::max_abs_diff(projections::project_param(*ds.metadata.phi0, space),
                             *ds.metadata.phi0) <= 1e-9);
    CHECK(ds.metadata.b0 == 1.0);
    // Full grid {-2..2}^3 per sample.
    CHECK(std::get<core::QpCandidates>(ds.samples[0].problem).points.size() == 125);
}

TEST_CASE("generate: same seed gives byte-identical files") {
    TempDir dir("wirl_cli_generate_det");
    cli::GenerateOptions o;
    o.family = "knapsack";
    o.dim = 6;
    o.samples = 12;
    o.seed = 77;
    o.out_path = dir.file("a.json");
    CHECK(cli::cmd_generate(o) == 0);
    o.out_path = dir.file("b.json");
    CHECK(cli::cmd_generate(o) == 0);
    CHECK(cli::read_file(dir.file("a.json")) == cli::read_file(dir.file("b.json")));
}

TEST_CASE("full pipeline: learn then verify, deterministic reruns") {
    TempDir dir("wirl_cli_pipeline");
    cli::GenerateOptions gen;
    gen.family = "knapsack";
    gen.dim = 6;
    gen.samples = 10;
    gen.items = 8;
    gen.seed = 5;
    gen.out_path = dir.file("d.json");
    REQUIRE(cli::cmd_generate(gen) == 0);

    cli::LearnOptions learn;
    learn.data_path = gen.out_path;
    learn.schedule = "invsqrt:1.0";
    learn.iters = 200;
    learn.eps = 1e-2;
    learn.out_prefix = dir.file("run1");
    REQUIRE(cli::cmd_learn(learn) == 0);

    learn.out_prefix = dir.file("run2");
    REQUIRE(cli::cmd_learn(learn) == 0);
    CHECK(cli::read_file(dir.file("run1.trace.csv")) == cli::read_file(dir.file("run2.trace.csv")));

    // Serial rerun produces the same trace bytes.
    learn.out_prefix = dir.file("run3");
    learn.serial = true;
    REQUIRE(cli::cmd_learn(learn) == 0);
    CHECK(cli::read_file(dir.file("run1.trace.csv")) == cli::read_file(dir.file("run3.trace.csv")));

    cli::VerifyOptions verify;
    verify.data_path = gen.out_path;
    verify.trace_path = dir.file("run1.trace.csv");
    verify.summary_path = dir.file("run1.summary.json");
    verify.spot_checks = 40;
    CHECK(cli::cmd_verify(verify) == 0);

    const auto summary = nlohmann::json::parse(cli::read_file(dir.file("run1.summary.json")));
    CHECK(summary.at("result").at("converged").get<bool>());
}

TEST_CASE("verify: corrupted best column fails monotonicity") {
    TempDir dir("wirl_cli_corrupt");
    cli::GenerateOptions gen;
    gen.family = "finite";
    gen.dim = 4;
    gen.samples = 6;
    gen.items = 5;
    gen.seed = 11;
    gen.out_path = dir.file("d.json");
    REQUIRE(cli::cmd_generate(gen) == 0);

    cli::LearnOptions learn;
    learn.data_path = gen.out_path;
    learn.iters = 30;
    learn.out_prefix = dir.file("run");
    REQUIRE(cli::cmd_learn(learn) == 0);

    auto rows = cli::parse_trace_csv(cli::read_file(dir.file("run.trace.csv")));
    REQUIRE(rows.size() >= 3);
    rows[2].best_objective = rows[2].best_objective + 1.0;
    cli::write_file_atomic(dir.file("run.trace.csv"), cli::format_trace_csv(rows));

    cli::VerifyOptions verify;
    verify.data_path = gen.out_path;
    verify.trace_path = dir.file("run.trace.csv");
    verify.summary_path = dir.file("run.summary.json");
    verify.spot_checks = 10;
    CHECK(cli::cmd_verify(verify) == 3);
}

TEST_CASE("verify: perturbed expert feature fails at validation") {
    TempDir dir("wirl_cli_invalid");
    cli::GenerateOptions gen;
    gen.family = "finite";
    gen.dim = 3;
    gen.samples = 4;
    gen.items = 4;
    gen.seed = 13;
    gen.out_path = dir.file("d.json");
    REQUIRE(cli::cmd_generate(gen) == 0);

    cli::LearnOptions learn;
    learn.data_path = gen.out_path;
    learn.iters = 10;
    learn.out_prefix = dir.file("run");
    REQUIRE(cli::cmd_learn(learn) == 0);

    auto ds = core::parse_dataset(cli::read_file(gen.out_path));
    auto broken = ds.samples[1].expert_feature.values();
    broken[0] += 0.5;
    ds.samples[1].expert_feature = core::FeatureVector::flat(broken);
    cli::write_file_atomic(gen.out_path, core::serialize_dataset(ds));

    CHECK_THROWS_AS((void)cli::cmd_verify({gen.out_path, dir.file("run.trace.csv"),
                                           dir.file("run.summary.json"), 10, 0}),
                    core::ValidationError);
    // Through the CLI entry point that maps to exit code 2.
    CHECK(run({"verify", "--data", gen.out_path, "--trace", dir.file("run.trace.csv"),
               "--summary", dir.file("run.summary.json")}) == 2);
}

TEST_CASE("learn: infeasible init is a config error") {
    TempDir dir("wirl_cli_badinit");
    cli::GenerateOptions gen;
    gen.family = "finite";
    gen.dim = 3;
    gen.samples = 3;
    gen.items = 4;
    gen.seed = 3;
    gen.out_path = dir.file("d.json");
    REQUIRE(cli::cmd_generate(gen) == 0);

    const int rc = run({"learn", "--data", gen.out_path, "--iters", "5", "--init",
                        "[0.9, 0.9, 0.9]", "--out", dir.file("run")});
    CHECK(rc == 1);
}

TEST_CASE("report: merges runs and flags missing bounds") {
    TempDir dir("wirl_cli_report");
    cli::GenerateOptions gen;
    gen.family = "finite";
    gen.dim = 3;
    gen.samples = 4;
    gen.items = 4;
    gen.seed = 21;
    gen.out_path = dir.file("d.json");
    REQUIRE(cli::cmd_generate(gen) == 0);

    cli::LearnOptions learn;
    learn.data_path = gen.out_path;
    learn.iters = 5;
    learn.out_prefix = dir.file("a");
    REQUIRE(cli::cmd_learn(learn) == 0);
    learn.out_prefix = dir.file("b");
    learn.no_bound = true;
    REQUIRE(cli::cmd_learn(learn) == 0);

    cli::ReportOptions report;
    report.trace_paths = {dir.file("a.trace.csv"), dir.file("b.trace.csv")};
    report.out_path = dir.file("merged.csv");
    CHECK(cli::cmd_report(report) == 0);

    const auto merged = cli::read_file(dir.file("merged.csv"));
    CHECK(merged.find("run_id,k,F_best,bound") != std::string::npos);
    CHECK(merged.find("# note: bound column empty") != std::string::npos);
    CHECK(merged.find("a,1,") != std::string::npos);
    CHECK(merged.find("b,1,") != std::string::npos);

    // Mismatched schema: not a trace file.
    cli::write_file_atomic(dir.file("bogus.csv"), "k,alpha\n1,2\n");
    report.trace_paths = {dir.file("bogus.csv")};
    CHECK_THROWS_AS((void)cli::cmd_report(report), core::ParseError);

    CHECK(run({"report", "--traces", dir.file("bogus.csv"), "--out", dir.file("x.csv")}) == 2);
    CHECK(run({"report", "--out", dir.file("x.csv")}) == 1);  // missing required --traces
}

TEST_CASE("config file supplies defaults, flags override") {
    TempDir dir("wirl_cli_config");
    const std::string cfg = std::string("{\"generate\": {\"family\": \"finite\", \"dim\": 3, ") +
                            "\"samples\": 4, \"items\": 4, \"seed\": 19, \"out\": \"" +
                            dir.file("cfg.json") + "\"}}\n";
    cli::write_file_atomic(dir.file("conf.json"), cfg);
    CHECK(run({"--config", dir.file("conf.json"), "generate"}) == 0);
    const auto ds = core::parse_dataset(cli::read_file(dir.file("cfg.json")));
    CHECK(ds.dim == 3);
    CHECK(ds.metadata.seed == 19);

    // Command line overrides the config value.
    CHECK(run({"--config", dir.file("conf.json"), "generate", "--seed", "23", "--out",
               dir.file("cfg2.json")}) == 0);
    const auto ds2 = core::parse_dataset(cli::read_file(dir.file("cfg2.json")));
    CHECK(ds2.metadata.seed == 23);
}

TEST_CASE("environment variable supplies the default seed") {
    TempDir dir("wirl_cli_env");
    setenv("WIRL_SEED", "31", 1);
    CHECK(run({"generate", "--family", "finite", "--dim", "3", "--samples", "3", "--items", "4",
               "--out", dir.file("env.json")}) == 0);
    unsetenv("WIRL_SEED");
    const auto ds = core::parse_dataset(cli::read_file(dir.file("env.json")));
    CHECK(ds.metadata.seed == 31);
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run({"generate", "--family", "nope", "--out", "/tmp/wirl_nope.json"}) == 1);
    CHECK(run({"learn", "--data", "/does/not/exist.json"}) == 1);
    CHECK(run({"frobnicate"}) == 1);
}

}  // TEST_SUITE
