#include "wirl/cli/io.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace wirl::cli {

using core::ConfigError;
using core::ParseError;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw ConfigError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out.good()) throw ConfigError("cannot write file: " + tmp.string());
        out << content;
        out.flush();
        if (!out.good()) throw ConfigError("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
    if (text.empty()) throw ParseError("empty numeric field");
    const char* begin = text.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end != begin + text.size()) throw ParseError("bad numeric field \"" + text + "\"");
    return value;
}

namespace {

constexpr const char* kTraceHeader = "k,alpha,F,F_best,subgrad_norm,bound";

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

}  // namespace

std::string format_trace_csv(const std::vector<learner::TraceRow>& rows) {
    std::ostringstream out;
    out << kTraceHeader << "\n";
    for (const auto& row : rows) {
        out << row.k << ',' << format_double(row.alpha) << ',' << format_double(row.objective)
            << ',' << format_double(row.best_objective) << ','
            << format_double(row.subgradient_norm) << ','
            << (row.bound ? format_double(*row.bound) : std::string()) << "\n";
    }
    return out.str();
}

std::vector<learner::TraceRow> parse_trace_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kTraceHeader) {
        throw ParseError(std::string("trace schema mismatch: expected header \"") + kTraceHeader +
                         "\"");
    }
    std::vector<learner::TraceRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 6) {
            throw ParseError("trace line " + std::to_string(line_no) + ": expected 6 fields, got " +
                             std::to_string(fields.size()));
        }
        try {
            learner::TraceRow row;
            row.k = static_cast<int>(parse_double(fields[0]));
            row.alpha = parse_double(fields[1]);
            row.objective = parse_double(fields[2]);
            row.best_objective = parse_double(fields[3]);
            row.subgradient_norm = parse_double(fields[4]);
            if (!fields[5].empty()) row.bound = parse_double(fields[5]);
            rows.push_back(row);
        } catch (const ParseError& e) {
            throw ParseError("trace line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (rows.empty()) throw ParseError("trace has no data rows");
    return rows;
}

nlohmann::ordered_json schedule_to_json(const learner::Schedule& schedule) {
    nlohmann::ordered_json j;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, learner::Constant>) {
                j["type"] = "constant";
                j["param"] = s.alpha;
            } else if constexpr (std::is_same_v<T, learner::InvSqrt>) {
                j["type"] = "invsqrt";
                j["param"] = s.c;
            } else {
                j["type"] = "harmonic";
                j["param"] = s.c;
            }
        },
        schedule);
    return j;
}

learner::Schedule schedule_from_json(const nlohmann::json& j) {
    try {
        const std::string type = j.at("type").get<std::string>();
        const double param = j.at("param").get<double>();
        if (type == "constant") return learner::Constant{param};
        if (type == "invsqrt") return learner::InvSqrt{param};
        if (type == "harmonic") return learner::Harmonic{param};
        throw ParseError("unknown schedule type \"" + type + "\"");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad schedule value: ") + e.what());
    }
}

nlohmann::ordered_json space_to_json(const projections::ParamSpace& space) {
    nlohmann::ordered_json j;
    j["type"] = projections::space_name(space);
    j["dim"] = projections::space_dim(space);
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, projections::Box> ||
                          std::is_same_v<T, projections::QuadProduct>) {
                j["b0"] = s.b0;
            }
        },
        space);
    return j;
}

projections::ParamSpace space_from_json(const nlohmann::json& j) {
    try {
        const std::string type = j.at("type").get<std::string>();
        const int dim = j.at("dim").get<int>();
        if (type == "simplex") return projections::Simplex{dim};
        if (type == "box") return projections::Box{dim, j.at("b0").get<double>()};
        if (type == "spectrahedron") return projections::Spectrahedron{dim};
        if (type == "quad_product") return projections::QuadProduct{dim, j.at("b0").get<double>()};
        throw ParseError("unknown space type \"" + type + "\"");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad space value: ") + e.what());
    }
}

}  // namespace wirl::cli
