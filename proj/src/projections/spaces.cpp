#include "wirl/projections/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace wirl::projections {

using core::ParamVector;
using core::ShapeError;
using core::Variant;
using linalg::SymmetricMatrix;

int space_dim(const ParamSpace& space) {
    return std::visit([](const auto& s) { return s.dim; }, space);
}

core::Variant space_variant(const ParamSpace& space) {
    if (std::holds_alternative<Simplex>(space) || std::holds_alternative<Box>(space)) {
        return Variant::Flat;
    }
    return Variant::Quad;
}

std::string space_name(const ParamSpace& space) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Simplex>) return "simplex";
            else if constexpr (std::is_same_v<T, Box>) return "box";
            else if constexpr (std::is_same_v<T, Spectrahedron>) return "spectrahedron";
            else return "quad_product";
        },
        space);
}

double diameter(const ParamSpace& space) {
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Simplex>) {
                (void)s;
                return std::sqrt(2.0);
            } else if constexpr (std::is_same_v<T, Box>) {
                return 2.0 * s.b0 * std::sqrt(static_cast<double>(s.dim));
            } else if constexpr (std::is_same_v<T, Spectrahedron>) {
                (void)s;
                return std::sqrt(2.0);
            } else {
                return std::sqrt(2.0 + 4.0 * s.dim * s.b0 * s.b0);
            }
        },
        space);
}

core::ParamVector space_center(const ParamSpace& space) {
    const int d = space_dim(space);
    if (d < 1) throw ShapeError("parameter space dimension must be >= 1");
    return std::visit(
        [d](const auto& s) -> ParamVector {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Simplex>) {
                return ParamVector::flat(std::vector<double>(d, 1.0 / d));
            } else if constexpr (std::is_same_v<T, Box>) {
                return ParamVector::flat(std::vector<double>(d, 0.0));
            } else {
                // I/d in the matrix block, zero vector block.
                std::vector<double> packed(ParamVector::packed_size(d), 0.0);
                for (int i = 0; i < d; ++i) {
                    packed[ParamVector::packed_index(d, i, i)] = 1.0 / d;
                }
                return ParamVector::quad(d, std::move(packed), std::vector<double>(d, 0.0));
            }
        },
        space);
}

std::vector<double> project_simplex(std::span<const double> v) {
    const int n = static_cast<int>(v.size());
    if (n < 1) throw ShapeError("project_simplex: dimension must be >= 1");
    for (double x : v) {
        if (!std::isfinite(x)) throw ShapeError("project_simplex: non-finite entry");
    }

    std::vector<double> u(v.begin(), v.end());
    std::sort(u.begin(), u.end(), std::greater<>());

    // Largest rho with u_rho + (1 - sum_{i<=rho} u_i)/rho > 0; the common
    // shift is lambda at that rho.
    double cumulative = 0.0;
    double lambda = 0.0;
    for (int i = 0; i < n; ++i) {
        cumulative += u[i];
        const double shift = (1.0 - cumulative) / (i + 1);
        if (u[i] + shift > 0.0) lambda = shift;
    }

    std::vector<double> out(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        out[i] = std::max(v[i] + lambda, 0.0);
        sum += out[i];
    }
    for (double& x : out) x /= sum;
    return out;
}

std::vector<double> project_box(std::span<const double> v, double b0) {
    if (!(b0 > 0.0)) throw ShapeError("project_box: b0 must be > 0");
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) throw ShapeError("project_box: non-finite entry");
        out[i] = std::max(std::min(v[i], b0), -b0);
    }
    return out;
}

linalg::SymmetricMatrix project_spectrahedron(const SymmetricMatrix& a) {
    const auto eig = linalg::jacobi_eigh(a);
    auto projected = eig;
    projected.eigenvalues = project_simplex(eig.eigenvalues);
    return linalg::reconstruct(projected);
}

linalg::SymmetricMatrix mat_block(const ParamVector& p) {
    const auto packed = p.mat_packed();
    return SymmetricMatrix::from_packed(p.dim(),
                                        std::vector<double>(packed.begin(), packed.end()));
}

namespace {

void require_space_match(const ParamVector& p, const ParamSpace& space) {
    if (p.variant() != space_variant(space) || p.dim() != space_dim(space)) {
        throw ShapeError("parameter does not match space " + space_name(space) + "(" +
                         std::to_string(space_dim(space)) + ")");
    }
}

ParamVector quad_from_blocks(const SymmetricMatrix& a, std::vector<double> b) {
    return ParamVector::quad(a.order(), a.packed(), std::move(b));
}

}  // namespace

core::ParamVector project_param(const ParamVector& p, const ParamSpace& space) {
    require_space_match(p, space);
    return std::visit(
        [&](const auto& s) -> ParamVector {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Simplex>) {
                return ParamVector::flat(project_simplex(p.values()));
            } else if constexpr (std::is_same_v<T, Box>) {
                return ParamVector::flat(project_box(p.values(), s.b0));
            } else if constexpr (std::is_same_v<T, Spectrahedron>) {
                // Vector block is pinned to zero on this space.
                return quad_from_blocks(project_spectrahedron(mat_block(p)),
                                        std::vector<double>(p.dim(), 0.0));
            } else {
                return quad_from_blocks(project_spectrahedron(mat_block(p)),
                                        project_box(p.vec_part(), s.b0));
            }
        },
        space);
}

std::vector<double> random_orthonormal(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> q(static_cast<std::size_t>(dim) * dim);
    auto col = [&](int r, int c) -> double& { return q[static_cast<std::size_t>(r) * dim + c]; };
    for (int c = 0; c < dim; ++c) {
        while (true) {
            for (int r = 0; r < dim; ++r) col(r, c) = gauss(rng);
            // Modified Gram-Schmidt against the finished columns.
            for (int k = 0; k < c; ++k) {
                double proj = 0.0;
                for (int r = 0; r < dim; ++r) proj += col(r, k) * col(r, c);
                for (int r = 0; r < dim; ++r) col(r, c) -= proj * col(r, k);
            }
            double norm = 0.0;
            for (int r = 0; r < dim; ++r) norm += col(r, c) * col(r, c);
            norm = std::sqrt(norm);
            if (norm > 1e-8) {
                for (int r = 0; r < dim; ++r) col(r, c) /= norm;
                break;
            }
        }
    }
    return q;
}

namespace {

std::vector<double> sample_simplex(int dim, std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> out(dim);
    double sum = 0.0;
    for (double& x : out) {
        x = expo(rng);
        sum += x;
    }
    for (double& x : out) x /= sum;
    return out;
}

std::vector<double> sample_box(int dim, double b0, std::mt19937_64& rng) {
    if (!(b0 > 0.0)) throw ShapeError("sample_feasible: b0 must be > 0");
    std::uniform_real_distribution<double> uni(-b0, b0);
    std::vector<double> out(dim);
    for (double& x : out) x = uni(rng);
    return out;
}

SymmetricMatrix sample_spectrahedron(int dim, std::mt19937_64& rng) {
    const auto basis = random_orthonormal(dim, rng);
    const auto spectrum = sample_simplex(dim, rng);
    SymmetricMatrix out(dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            double acc = 0.0;
            for (int k = 0; k < dim; ++k) {
                acc += spectrum[k] * basis[static_cast<std::size_t>(i) * dim + k] *
                       basis[static_cast<std::size_t>(j) * dim + k];
            }
            out.set(i, j, acc);
        }
    }
    return out;
}

}  // namespace

core::ParamVector sample_feasible(const ParamSpace& space, std::mt19937_64& rng) {
    return std::visit(
        [&](const auto& s) -> ParamVector {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Simplex>) {
                return ParamVector::flat(sample_simplex(s.dim, rng));
            } else if constexpr (std::is_same_v<T, Box>) {
                return ParamVector::flat(sample_box(s.dim, s.b0, rng));
            } else if constexpr (std::is_same_v<T, Spectrahedron>) {
                return quad_from_blocks(sample_spectrahedron(s.dim, rng),
                                        std::vector<double>(s.dim, 0.0));
            } else {
                auto mat = sample_spectrahedron(s.dim, rng);
                return quad_from_blocks(mat, sample_box(s.dim, s.b0, rng));
            }
        },
        space);
}

double vi_certificate(const ParamVector& x, const ParamVector& p, const ParamSpace& space,
                      int trials, std::uint64_t rng_seed) {
    require_space_match(p, space);
    x.require_same_shape(p);
    if (trials < 1) throw ShapeError("vi_certificate: trials must be >= 1");

    ParamVector residual = x;
    residual.add_scaled(p, -1.0);

    std::mt19937_64 rng(rng_seed);
    double worst = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        ParamVector y = sample_feasible(space, rng);
        y.add_scaled(p, -1.0);
        worst = std::max(worst, core::inner_product(y, residual));
    }
    return worst;
}

}  // namespace wirl::projections
