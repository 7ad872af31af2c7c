#pragma once

#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wirl/cli/io.hpp"

namespace wirl::cli {

/// CLI11 config formatter for JSON-shaped config files. Top-level keys are
/// option names (without dashes); subcommand options nest under an object
/// keyed by the subcommand name, e.g. {"learn": {"iters": 2000}}.
class ConfigJson : public CLI::Config {
public:
    std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
        return dump_app(app, default_also).dump(2) + "\n";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        nlohmann::json j;
        try {
            input >> j;
        } catch (const nlohmann::json::exception& e) {
            throw CLI::FileError(std::string("config is not valid JSON: ") + e.what());
        }
        return collect(j, "", {});
    }

private:
    static nlohmann::ordered_json dump_app(const CLI::App* app, bool default_also) {
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        for (const CLI::Option* opt : app->get_options({})) {
            if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
            const std::string& name = opt->get_lnames()[0];
            if (opt->get_type_size() != 0) {
                if (opt->count() == 1) {
                    j[name] = opt->results().at(0);
                } else if (opt->count() > 1) {
                    j[name] = opt->results();
                } else if (default_also && !opt->get_default_str().empty()) {
                    j[name] = opt->get_default_str();
                }
            } else if (opt->count() > 0) {
                j[name] = true;
            }
        }
        for (const CLI::App* sub : app->get_subcommands({})) {
            j[sub->get_name()] = dump_app(sub, default_also);
        }
        return j;
    }

    static std::string scalar_to_string(const nlohmann::json& j) {
        if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
        if (j.is_string()) return j.get<std::string>();
        if (j.is_number_unsigned()) return std::to_string(j.get<std::uint64_t>());
        if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
        if (j.is_number_float()) return format_double(j.get<double>());
        throw CLI::ConversionError("unsupported JSON config value: " + j.dump());
    }

    std::vector<CLI::ConfigItem> collect(const nlohmann::json& j, const std::string& name,
                                         std::vector<std::string> prefix) const {
        std::vector<CLI::ConfigItem> results;
        if (j.is_object()) {
            if (!name.empty()) prefix.push_back(name);
            for (auto it = j.begin(); it != j.end(); ++it) {
                auto sub = collect(it.value(), it.key(), prefix);
                results.insert(results.end(), sub.begin(), sub.end());
            }
            return results;
        }
        if (name.empty()) {
            throw CLI::ConversionError("top-level config values must live in a JSON object");
        }
        CLI::ConfigItem item;
        item.name = name;
        item.parents = std::move(prefix);
        if (j.is_array()) {
            for (const auto& element : j) item.inputs.push_back(scalar_to_string(element));
        } else {
            item.inputs.push_back(scalar_to_string(j));
        }
        results.push_back(std::move(item));
        return results;
    }
};

}  // namespace wirl::cli
