#include "wirl/linalg/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace wirl::linalg {

using core::NumericalError;
using core::ShapeError;

SymmetricMatrix::SymmetricMatrix(int order)
    : order_(order), packed_(packed_size(order), 0.0) {
    if (order < 1) throw ShapeError("symmetric matrix order must be >= 1");
}

SymmetricMatrix SymmetricMatrix::from_packed(int order, std::vector<double> packed) {
    SymmetricMatrix m(order);
    if (packed.size() != packed_size(order)) {
        throw ShapeError("packed storage size mismatch: expected " +
                         std::to_string(packed_size(order)) + ", got " +
                         std::to_string(packed.size()));
    }
    for (double x : packed) {
        if (!std::isfinite(x)) throw ShapeError("symmetric matrix: non-finite entry");
    }
    m.packed_ = std::move(packed);
    return m;
}

SymmetricMatrix SymmetricMatrix::identity(int order) {
    SymmetricMatrix m(order);
    for (int i = 0; i < order; ++i) m.set(i, i, 1.0);
    return m;
}

std::size_t SymmetricMatrix::packed_index(int order, int i, int j) {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i) * order - static_cast<std::size_t>(i) * (i - 1) / 2 +
           static_cast<std::size_t>(j - i);
}

double SymmetricMatrix::operator()(int i, int j) const {
    return packed_[packed_index(order_, i, j)];
}

void SymmetricMatrix::set(int i, int j, double value) {
    packed_[packed_index(order_, i, j)] = value;
}

std::vector<double> SymmetricMatrix::dense() const {
    std::vector<double> out(static_cast<std::size_t>(order_) * order_);
    for (int i = 0; i < order_; ++i) {
        for (int j = 0; j < order_; ++j) {
            out[static_cast<std::size_t>(i) * order_ + j] = (*this)(i, j);
        }
    }
    return out;
}

double SymmetricMatrix::trace() const {
    double acc = 0.0;
    for (int i = 0; i < order_; ++i) acc += (*this)(i, i);
    return acc;
}

double SymmetricMatrix::frobenius_norm() const {
    double acc = 0.0;
    std::size_t idx = 0;
    for (int i = 0; i < order_; ++i) {
        for (int j = i; j < order_; ++j, ++idx) {
            acc += (i == j ? 1.0 : 2.0) * packed_[idx] * packed_[idx];
        }
    }
    return std::sqrt(acc);
}

double SymmetricMatrix::max_abs() const {
    double worst = 0.0;
    for (double x : packed_) worst = std::max(worst, std::abs(x));
    return worst;
}

EigenDecomposition jacobi_eigh(const SymmetricMatrix& input, int max_sweeps) {
    const int d = input.order();
    std::vector<double> a = input.dense();
    std::vector<double> v(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i) * d + i] = 1.0;

    const double thresh = 1e-14 * input.frobenius_norm();
    auto at = [&](int r, int c) -> double& { return a[static_cast<std::size_t>(r) * d + c]; };

    bool converged = (d == 1);
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const double apq = at(p, q);
                if (std::abs(apq) <= thresh) continue;
                rotated = true;

                const double app = at(p, p);
                const double aqq = at(q, q);
                const double tau = (aqq - app) / (2.0 * apq);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (int r = 0; r < d; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = at(r, p);
                    const double arq = at(r, q);
                    at(r, p) = at(p, r) = c * arp - s * arq;
                    at(r, q) = at(q, r) = s * arp + c * arq;
                }
                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = at(q, p) = 0.0;

                for (int r = 0; r < d; ++r) {
                    const double vrp = v[static_cast<std::size_t>(r) * d + p];
                    const double vrq = v[static_cast<std::size_t>(r) * d + q];
                    v[static_cast<std::size_t>(r) * d + p] = c * vrp - s * vrq;
                    v[static_cast<std::size_t>(r) * d + q] = s * vrp + c * vrq;
                }
            }
        }
        converged = !rotated;
    }
    if (!converged) {
        throw NumericalError("jacobi_eigh: no convergence within " + std::to_string(max_sweeps) +
                             " sweeps");
    }

    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
        return a[static_cast<std::size_t>(lhs) * d + lhs] > a[static_cast<std::size_t>(rhs) * d + rhs];
    });

    EigenDecomposition eig;
    eig.order = d;
    eig.eigenvalues.resize(d);
    eig.eigenvectors.resize(static_cast<std::size_t>(d) * d);
    for (int c = 0; c < d; ++c) {
        const int src = order[c];
        eig.eigenvalues[c] = a[static_cast<std::size_t>(src) * d + src];
        for (int r = 0; r < d; ++r) {
            eig.eigenvectors[static_cast<std::size_t>(r) * d + c] =
                v[static_cast<std::size_t>(r) * d + src];
        }
    }
    return eig;
}

SymmetricMatrix reconstruct(const EigenDecomposition& eig) {
    const int d = eig.order;
    if (d < 1 || eig.eigenvalues.size() != static_cast<std::size_t>(d) ||
        eig.eigenvectors.size() != static_cast<std::size_t>(d) * d) {
        throw ShapeError("reconstruct: inconsistent decomposition");
    }
    SymmetricMatrix out(d);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            double acc = 0.0;
            for (int k = 0; k < d; ++k) {
                acc += eig.eigenvalues[k] * eig.vec(i, k) * eig.vec(j, k);
            }
            out.set(i, j, acc);
        }
    }
    return out;
}

}  // namespace wirl::linalg
