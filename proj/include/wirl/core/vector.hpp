#pragma once

#include <span>
#include <string>
#include <vector>

#include "wirl/core/error.hpp"

namespace wirl::core {

enum class Variant { Flat, Quad };

const char* variant_name(Variant v);

/// A point of the parameter inner-product space.
///
/// Flat points are plain vectors in R^d. Quad points are (A, b) pairs with
/// A a symmetric matrix of order d and b in R^d; A is stored as its packed
/// row-major upper triangle so that all vector arithmetic (add, scale) runs
/// on one contiguous array for both variants. The inner product weights the
/// off-diagonal entries of A by 2, which makes the Quad pairing equal to
/// Tr(A M) + b.v.
class ParamVector {
public:
    ParamVector() = default;

    static ParamVector flat(std::vector<double> values);
    static ParamVector quad(int dim, std::vector<double> mat_packed, std::vector<double> vec);
    static ParamVector zeros(Variant variant, int dim);

    Variant variant() const { return variant_; }
    bool is_flat() const { return variant_ == Variant::Flat; }
    bool is_quad() const { return variant_ == Variant::Quad; }

    /// Parameter dimension d (matrix order for Quad, length for Flat).
    int dim() const { return dim_; }
    /// Total number of stored coefficients.
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    /// Flat coefficients; throws ShapeError on a Quad point.
    const std::vector<double>& values() const;

    /// Packed upper triangle of A, row-major; throws on a Flat point.
    std::span<const double> mat_packed() const;
    /// The b block; throws on a Flat point.
    std::span<const double> vec_part() const;
    /// Entry A(i, j) of the matrix block (symmetric access).
    double mat_at(int i, int j) const;

    std::span<const double> raw() const { return data_; }
    std::span<double> raw_mut() { return data_; }

    /// *this += factor * other. Same shape required.
    ParamVector& add_scaled(const ParamVector& other, double factor);
    ParamVector& scale(double factor);

    /// Norm induced by the space inner product (Frobenius norm of A plus
    /// Euclidean norm of b, combined, for Quad points).
    double norm() const;

    /// Isometric flat embedding: off-diagonal matrix entries scaled by
    /// sqrt(2) so the plain dot product of two embeddings reproduces the
    /// space inner product.
    std::vector<double> flattened() const;

    bool same_shape(const ParamVector& other) const {
        return variant_ == other.variant_ && dim_ == other.dim_;
    }
    void require_same_shape(const ParamVector& other) const;

    friend bool operator==(const ParamVector&, const ParamVector&) = default;

    static std::size_t packed_size(int dim) {
        return static_cast<std::size_t>(dim) * (static_cast<std::size_t>(dim) + 1) / 2;
    }
    /// Index of A(i, j), i <= j, in the packed upper triangle.
    static std::size_t packed_index(int dim, int i, int j) {
        return static_cast<std::size_t>(i) * dim - static_cast<std::size_t>(i) * (i - 1) / 2 +
               static_cast<std::size_t>(j - i);
    }

private:
    ParamVector(Variant variant, int dim, std::vector<double> data);

    Variant variant_ = Variant::Flat;
    int dim_ = 0;
    std::vector<double> data_;
};

/// Feature embeddings h(x) live in the same inner-product space as the
/// parameters; only the pairing phi^T h(x) is ever consumed.
using FeatureVector = ParamVector;

/// Bilinear pairing <p, f>: dot product for Flat, Tr(A M) + b.v for Quad.
double inner_product(const ParamVector& p, const FeatureVector& f);

/// Distance induced by the space inner product.
double distance(const ParamVector& a, const ParamVector& b);

/// Componentwise max |a_i - b_i| over the packed storage.
double max_abs_diff(const ParamVector& a, const ParamVector& b);

}  // namespace wirl::core
