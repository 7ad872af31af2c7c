#pragma once

#include <string>
#include <vector>

#include "wirl/learner/loop.hpp"
#include "wirl/projections/spaces.hpp"

#include <json.hpp>

namespace wirl::cli {

/// Whole-file read; ConfigError when the path is unreadable.
std::string read_file(const std::string& path);

/// Single-writer atomic write: temp file in the target directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

/// Learning trace as CSV with header `k,alpha,F,F_best,subgrad_norm,bound`.
/// Doubles are written in shortest round-trip form; a missing bound is an
/// empty field.
std::string format_trace_csv(const std::vector<learner::TraceRow>& rows);
std::vector<learner::TraceRow> parse_trace_csv(const std::string& text);

std::string format_double(double x);
double parse_double(const std::string& text);

nlohmann::ordered_json schedule_to_json(const learner::Schedule& schedule);
learner::Schedule schedule_from_json(const nlohmann::json& j);

nlohmann::ordered_json space_to_json(const projections::ParamSpace& space);
projections::ParamSpace space_from_json(const nlohmann::json& j);

}  // namespace wirl::cli
