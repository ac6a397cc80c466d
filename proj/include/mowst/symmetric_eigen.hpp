#ifndef MOWST_SYMMETRIC_EIGEN_HPP
#define MOWST_SYMMETRIC_EIGEN_HPP

#include <cstddef>
#include <vector>

namespace mowst {

struct EigenDecomposition {
    std::vector<double> values;          // ascending
    std::vector<double> vectors;         // column-major: vectors[i + n*k] = component i of eigenvector k
    std::size_t n = 0;

    double vector_at(std::size_t i, std::size_t k) const { return vectors[i + n * k]; }
};

/// Cyclic Jacobi rotations on a dense symmetric matrix (row-major n x n).
/// Sweeps until the off-diagonal Frobenius norm drops below `tol`.
EigenDecomposition jacobi_eigen_symmetric(std::vector<double> a, std::size_t n,
                                          double tol = 1e-10);

} // namespace mowst

#endif
