#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wirl/core/problem.hpp"
#include "wirl/core/vector.hpp"

namespace wirl::core {

/// One expert observation: a state, its forward problem, and the feature
/// embedding of the action the expert chose there.
struct Sample {
    std::string state_id;
    ProblemSpec problem;
    FeatureVector expert_feature;

    friend bool operator==(const Sample&, const Sample&) = default;
};

struct DatasetMetadata {
    std::uint64_t seed = 0;
    std::string generator;
    std::optional<ParamVector> phi0;  // hidden generating parameter, when synthetic
    std::optional<double> b0;         // box half-width for quad-variant data
    // Set by validate_dataset when a knapsack sample was too large for the
    // exhaustive feasibility check and was accepted unverified.
    bool feasibility_unverified = false;

    friend bool operator==(const DatasetMetadata&, const DatasetMetadata&) = default;
};

struct Dataset {
    int dim = 0;
    Variant variant = Variant::Flat;
    DatasetMetadata metadata;
    std::vector<Sample> samples;

    std::size_t size() const { return samples.size(); }

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

}  // namespace wirl::core
