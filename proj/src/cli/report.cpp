#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include "wirl/cli/commands.hpp"
#include "wirl/cli/io.hpp"

namespace wirl::cli {

int cmd_report(const ReportOptions& options) {
    if (options.trace_paths.empty()) {
        throw core::ConfigError("report needs at least one trace file");
    }

    struct Run {
        std::string id;
        std::vector<learner::TraceRow> rows;
        bool has_bound = false;
    };
    std::vector<Run> runs;
    std::set<std::string> used_ids;
    for (const auto& path : options.trace_paths) {
        Run run;
        run.rows = parse_trace_csv(read_file(path));
        for (const auto& row : run.rows) {
            if (row.bound) run.has_bound = true;
        }
        std::string stem = std::filesystem::path(path).stem().string();
        if (stem.size() > 6 && stem.ends_with(".trace")) stem.resize(stem.size() - 6);
        std::string id = stem;
        for (int suffix = 2; used_ids.count(id) > 0; ++suffix) {
            id = stem + "_" + std::to_string(suffix);
        }
        used_ids.insert(id);
        run.id = std::move(id);
        runs.push_back(std::move(run));
    }

    std::ostringstream out;
    out << "# long-format learning traces: one row per (run, iteration)\n";
    std::string missing;
    for (const auto& run : runs) {
        if (!run.has_bound) missing += (missing.empty() ? "" : ", ") + run.id;
    }
    if (!missing.empty()) {
        out << "# note: bound column empty for runs without bound data: " << missing << "\n";
    }
    out << "run_id,k,F_best,bound\n";
    for (const auto& run : runs) {
        for (const auto& row : run.rows) {
            out << run.id << ',' << row.k << ',' << format_double(row.best_objective) << ','
                << (row.bound ? format_double(*row.bound) : std::string()) << "\n";
        }
    }
    write_file_atomic(options.out_path, out.str());
    std::cout << "wrote " << options.out_path << ": " << runs.size() << " run(s)\n";
    return 0;
}

}  // namespace wirl::cli
