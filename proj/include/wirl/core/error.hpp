#pragma once

#include <stdexcept>
#include <string>

namespace wirl::core {

// Variant or dimension mismatch between vectors, spaces, and problems.
class ShapeError : public std::runtime_error {
public:
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

// Dataset contents violate a structural or feasibility invariant.
// sample_index() is -1 when the failure is not tied to one sample.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what, int sample_index = -1)
        : std::runtime_error(what), sample_index_(sample_index) {}
    int sample_index() const noexcept { return sample_index_; }

private:
    int sample_index_;
};

// Malformed serialized input (dataset files, trace files, parameter JSON).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid run configuration: bad flags, infeasible initial point,
// weights not representable at the declared resolution, and the like.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Internal numerical failure (eigensolver non-convergence, solver failure
// mid-run). Treated as a bug signal, not a user error.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wirl::core
