#pragma once

#include <vector>

#include "eigedge/image.hpp"

namespace eigedge {

/// Dense symmetric matrix, row-major.
struct SymMatrix {
    int order = 0;
    std::vector<double> entries;

    SymMatrix() = default;
    explicit SymMatrix(int d)
        : order(d), entries(static_cast<size_t>(d) * d, 0.0) {}

    double& at(int i, int j) { return entries[static_cast<size_t>(i) * order + j]; }
    double at(int i, int j) const { return entries[static_cast<size_t>(i) * order + j]; }

    double trace() const;
    double frobenius_norm() const;
    bool is_symmetric(double rel_tol = 1e-12) const;
};

/// Eigenvalues ascending; eigenvectors[j] is the unit-norm vector paired
/// with eigenvalues[j], sign-fixed so its largest-magnitude entry
/// (lowest index on ties) is positive.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenvectors;
};

/// Cyclic Jacobi rotations. Stops when the off-diagonal Frobenius norm
/// falls below 1e-12 * ||m||_F, or throws ConvergenceError after 100
/// sweeps. Throws std::invalid_argument for an asymmetric input.
EigenDecomposition jacobi_eigen(const SymMatrix& m);

} // namespace eigedge
