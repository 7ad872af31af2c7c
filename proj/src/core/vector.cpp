#include "wirl/core/vector.hpp"

#include <cmath>
#include <utility>

namespace wirl::core {

namespace {

void check_finite(const std::vector<double>& data, const char* what) {
    for (double x : data) {
        if (!std::isfinite(x)) {
            throw ShapeError(std::string(what) + ": non-finite entry");
        }
    }
}

}  // namespace

const char* variant_name(Variant v) {
    return v == Variant::Flat ? "flat" : "quad";
}

ParamVector::ParamVector(Variant variant, int dim, std::vector<double> data)
    : variant_(variant), dim_(dim), data_(std::move(data)) {}

ParamVector ParamVector::flat(std::vector<double> values) {
    if (values.empty()) throw ShapeError("flat vector must have dimension >= 1");
    check_finite(values, "flat vector");
    const int d = static_cast<int>(values.size());
    return ParamVector(Variant::Flat, d, std::move(values));
}

ParamVector ParamVector::quad(int dim, std::vector<double> mat_packed, std::vector<double> vec) {
    if (dim < 1) throw ShapeError("quad vector must have dimension >= 1");
    if (mat_packed.size() != packed_size(dim)) {
        throw ShapeError("quad matrix block: expected " + std::to_string(packed_size(dim)) +
                         " packed entries, got " + std::to_string(mat_packed.size()));
    }
    if (vec.size() != static_cast<std::size_t>(dim)) {
        throw ShapeError("quad vector block: expected " + std::to_string(dim) +
                         " entries, got " + std::to_string(vec.size()));
    }
    check_finite(mat_packed, "quad matrix block");
    check_finite(vec, "quad vector block");
    std::vector<double> data(std::move(mat_packed));
    data.insert(data.end(), vec.begin(), vec.end());
    return ParamVector(Variant::Quad, dim, std::move(data));
}

ParamVector ParamVector::zeros(Variant variant, int dim) {
    if (dim < 1) throw ShapeError("vector must have dimension >= 1");
    const std::size_t n = variant == Variant::Flat
                              ? static_cast<std::size_t>(dim)
                              : packed_size(dim) + static_cast<std::size_t>(dim);
    return ParamVector(variant, dim, std::vector<double>(n, 0.0));
}

const std::vector<double>& ParamVector::values() const {
    if (!is_flat()) throw ShapeError("values(): not a flat vector");
    return data_;
}

std::span<const double> ParamVector::mat_packed() const {
    if (!is_quad()) throw ShapeError("mat_packed(): not a quad vector");
    return std::span<const double>(data_).first(packed_size(dim_));
}

std::span<const double> ParamVector::vec_part() const {
    if (!is_quad()) throw ShapeError("vec_part(): not a quad vector");
    return std::span<const double>(data_).subspan(packed_size(dim_));
}

double ParamVector::mat_at(int i, int j) const {
    if (!is_quad()) throw ShapeError("mat_at(): not a quad vector");
    if (i > j) std::swap(i, j);
    return data_[packed_index(dim_, i, j)];
}

ParamVector& ParamVector::add_scaled(const ParamVector& other, double factor) {
    require_same_shape(other);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += factor * other.data_[k];
    return *this;
}

ParamVector& ParamVector::scale(double factor) {
    for (double& x : data_) x *= factor;
    return *this;
}

double ParamVector::norm() const {
    return std::sqrt(inner_product(*this, *this));
}

std::vector<double> ParamVector::flattened() const {
    if (is_flat()) return data_;
    std::vector<double> out(data_.size());
    const double root2 = std::sqrt(2.0);
    std::size_t idx = 0;
    for (int i = 0; i < dim_; ++i) {
        for (int j = i; j < dim_; ++j, ++idx) {
            out[idx] = (i == j) ? data_[idx] : root2 * data_[idx];
        }
    }
    for (std::size_t k = idx; k < data_.size(); ++k) out[k] = data_[k];
    return out;
}

void ParamVector::require_same_shape(const ParamVector& other) const {
    if (!same_shape(other)) {
        throw ShapeError(std::string("shape mismatch: ") + variant_name(variant_) + "(" +
                         std::to_string(dim_) + ") vs " + variant_name(other.variant_) + "(" +
                         std::to_string(other.dim_) + ")");
    }
}

double inner_product(const ParamVector& p, const FeatureVector& f) {
    p.require_same_shape(f);
    const auto a = p.raw();
    const auto b = f.raw();
    if (p.is_flat()) {
        double acc = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
        return acc;
    }
    // Off-diagonal packed entries appear twice in Tr(A M).
    const int d = p.dim();
    double acc = 0.0;
    std::size_t idx = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j, ++idx) {
            acc += (i == j ? 1.0 : 2.0) * a[idx] * b[idx];
        }
    }
    for (std::size_t k = idx; k < a.size(); ++k) acc += a[k] * b[k];
    return acc;
}

double distance(const ParamVector& a, const ParamVector& b) {
    a.require_same_shape(b);
    const auto x = a.raw();
    const auto y = b.raw();
    double acc = 0.0;
    if (a.is_flat()) {
        for (std::size_t k = 0; k < x.size(); ++k) {
            const double diff = x[k] - y[k];
            acc += diff * diff;
        }
        return std::sqrt(acc);
    }
    const int d = a.dim();
    std::size_t idx = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j, ++idx) {
            const double diff = x[idx] - y[idx];
            acc += (i == j ? 1.0 : 2.0) * diff * diff;
        }
    }
    for (std::size_t k = idx; k < x.size(); ++k) {
        const double diff = x[k] - y[k];
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

double max_abs_diff(const ParamVector& a, const ParamVector& b) {
    a.require_same_shape(b);
    const auto x = a.raw();
    const auto y = b.raw();
    double worst = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        worst = std::max(worst, std::abs(x[k] - y[k]));
    }
    return worst;
}

}  // namespace wirl::core
