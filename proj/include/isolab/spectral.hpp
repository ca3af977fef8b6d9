#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "isolab/graph.hpp"

namespace isolab {

/// Eigen-decomposition of a real symmetric matrix, eigenvalues ascending.
struct SymmetricEigen {
    std::size_t n = 0;
    std::vector<double> values;
    std::vector<double> vectors;  // vector j occupies [j*n, (j+1)*n)
    std::size_t sweeps = 0;

    std::span<const double> vector(std::size_t j) const {
        return std::span<const double>(vectors).subspan(j * n, n);
    }
};

/// Cyclic Jacobi rotations on a row-major n x n symmetric matrix until the
/// largest off-diagonal magnitude is <= tol. Eigenpairs are sorted by
/// eigenvalue, ties kept in the order the rotations left them.
/// Throws ConvergenceError after max_sweeps sweeps.
SymmetricEigen jacobi_eigen(std::vector<double> matrix, std::size_t n, double tol = 1e-14,
                            std::size_t max_sweeps = 100);

/// Row-major I - D^{-1/2} A D^{-1/2}; isolated nodes keep a unit diagonal.
std::vector<double> normalized_laplacian(const Graph& g);

}  // namespace isolab
