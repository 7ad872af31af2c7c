#include "wirl/learner/schedule.hpp"

#include <cmath>
#include <stdexcept>

#include "wirl/core/error.hpp"

namespace wirl::learner {

double schedule_rate(const Schedule& schedule, int k) {
    if (k < 1) throw std::domain_error("schedule_rate: iteration index must be >= 1");
    return std::visit(
        [k](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Constant>) return s.alpha;
            else if constexpr (std::is_same_v<T, InvSqrt>) return s.c / std::sqrt(static_cast<double>(k));
            else return s.c / static_cast<double>(k);
        },
        schedule);
}

Schedule parse_schedule(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    double param = 0.0;
    if (colon != std::string::npos) {
        try {
            std::size_t used = 0;
            param = std::stod(text.substr(colon + 1), &used);
            if (used != text.size() - colon - 1) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw core::ConfigError("bad schedule parameter in \"" + text + "\"");
        }
    } else {
        throw core::ConfigError("schedule must look like name:param, got \"" + text + "\"");
    }
    if (!(param > 0.0)) {
        throw core::ConfigError("schedule parameter must be > 0 in \"" + text + "\"");
    }
    if (name == "constant") return Constant{param};
    if (name == "invsqrt") return InvSqrt{param};
    if (name == "harmonic") return Harmonic{param};
    throw core::ConfigError("unknown schedule \"" + name +
                            "\" (expected constant, invsqrt, or harmonic)");
}

std::string schedule_to_string(const Schedule& schedule) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Constant>) return "constant:" + std::to_string(s.alpha);
            else if constexpr (std::is_same_v<T, InvSqrt>) return "invsqrt:" + std::to_string(s.c);
            else return "harmonic:" + std::to_string(s.c);
        },
        schedule);
}

}  // namespace wirl::learner
