#pragma once

#include <string>
#include <variant>

namespace wirl::learner {

/// Learning-rate rules. Constant keeps alpha fixed; InvSqrt and Harmonic
/// are nonsummable diminishing rules (alpha_k -> 0, sum alpha_k = inf).
struct Constant {
    double alpha = 0.1;
};
struct InvSqrt {
    double c = 1.0;  // alpha_k = c / sqrt(k)
};
struct Harmonic {
    double c = 1.0;  // alpha_k = c / k
};

using Schedule = std::variant<Constant, InvSqrt, Harmonic>;

/// alpha_k for k >= 1; throws std::domain_error on k < 1.
double schedule_rate(const Schedule& schedule, int k);

/// Parses "constant:0.5" | "invsqrt:1.0" | "harmonic:2.0".
Schedule parse_schedule(const std::string& text);

std::string schedule_to_string(const Schedule& schedule);

}  // namespace wirl::learner
