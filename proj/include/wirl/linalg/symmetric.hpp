#pragma once

#include <vector>

#include "wirl/core/error.hpp"

namespace wirl::linalg {

/// Dense symmetric matrix stored as its packed row-major upper triangle.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(int order);
    static SymmetricMatrix from_packed(int order, std::vector<double> packed);
    static SymmetricMatrix identity(int order);

    int order() const { return order_; }
    const std::vector<double>& packed() const { return packed_; }

    double operator()(int i, int j) const;
    void set(int i, int j, double value);

    /// Row-major dense copy, order*order entries.
    std::vector<double> dense() const;

    double trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

    static std::size_t packed_size(int order) {
        return static_cast<std::size_t>(order) * (static_cast<std::size_t>(order) + 1) / 2;
    }
    static std::size_t packed_index(int order, int i, int j);

private:
    int order_;
    std::vector<double> packed_;
};

/// Spectral factorization A = V diag(lambda) V^T with eigenvalues in
/// non-increasing order; column i of V pairs with eigenvalue i.
struct EigenDecomposition {
    int order = 0;
    std::vector<double> eigenvalues;    // descending
    std::vector<double> eigenvectors;   // row-major order*order, columns are vectors

    double vec(int row, int col) const { return eigenvectors[static_cast<std::size_t>(row) * order + col]; }
};

/// Cyclic Jacobi rotations with a fixed sweep order, so results are
/// deterministic for a given input. Rotations with |a_pq| below
/// 1e-14 * ||A||_F are skipped; convergence is declared when a full sweep
/// performs no rotation. Intended for small orders (desk scale, d <= ~64).
EigenDecomposition jacobi_eigh(const SymmetricMatrix& a, int max_sweeps = 100);

/// Sum of eigenvalue-weighted outer products, symmetrized to packed storage.
SymmetricMatrix reconstruct(const EigenDecomposition& eig);

}  // namespace wirl::linalg
