#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wirl/core/vector.hpp"
#include "wirl/linalg/symmetric.hpp"

namespace wirl::projections {

/// The probability simplex: entries >= 0 summing to 1.
struct Simplex {
    int dim = 0;
};

/// The centered box [-b0, b0]^d.
struct Box {
    int dim = 0;
    double b0 = 1.0;
};

/// Trace-one positive semidefinite matrices of order d, paired with Quad
/// points whose vector block is pinned to zero.
struct Spectrahedron {
    int dim = 0;
};

/// Product of the spectrahedron (matrix block) and the box (vector block).
struct QuadProduct {
    int dim = 0;
    double b0 = 1.0;
};

using ParamSpace = std::variant<Simplex, Box, Spectrahedron, QuadProduct>;

int space_dim(const ParamSpace& space);
core::Variant space_variant(const ParamSpace& space);
std::string space_name(const ParamSpace& space);

/// Largest distance between two points of the space: sqrt(2) for the
/// simplex and the spectrahedron, 2*b0*sqrt(d) for the box, and the
/// Euclidean combination for the product.
double diameter(const ParamSpace& space);

/// A canonical interior point: uniform weights, the scaled identity, zero.
core::ParamVector space_center(const ParamSpace& space);

/// Sort-based Euclidean projection onto the probability simplex. The
/// positive part is renormalized at the end so the output sums to 1 to
/// within accumulated rounding, which downstream trace checks rely on.
std::vector<double> project_simplex(std::span<const double> v);

/// Componentwise clamp to [-b0, b0].
std::vector<double> project_box(std::span<const double> v, double b0);

/// Eigendecompose, project the spectrum onto the simplex, reconstruct.
linalg::SymmetricMatrix project_spectrahedron(const linalg::SymmetricMatrix& a);

/// Dispatch to the component projections; the product space projects the
/// matrix and vector blocks independently.
core::ParamVector project_param(const core::ParamVector& p, const ParamSpace& space);

/// Draw a feasible point: normalized exponentials on the simplex, uniform
/// coordinates in the box, a random orthonormal basis with simplex-sampled
/// spectrum on the spectrahedron.
core::ParamVector sample_feasible(const ParamSpace& space, std::mt19937_64& rng);

/// Test oracle for the projection characterization: p = Proj(x) iff
/// <y - p, x - p> <= 0 for every feasible y. Samples `trials` feasible
/// points and returns the largest pairing observed.
double vi_certificate(const core::ParamVector& x, const core::ParamVector& p,
                      const ParamSpace& space, int trials, std::uint64_t rng_seed);

/// Row-major d x d matrix with orthonormal columns, built by modified
/// Gram-Schmidt over Gaussian draws.
std::vector<double> random_orthonormal(int dim, std::mt19937_64& rng);

/// Conversions between the matrix block of a Quad point and SymmetricMatrix.
linalg::SymmetricMatrix mat_block(const core::ParamVector& p);

}  // namespace wirl::projections
