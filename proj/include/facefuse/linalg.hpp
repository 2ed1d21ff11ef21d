#pragma once

#include <vector>

namespace facefuse {

struct EigenDecomposition {
    std::vector<double> eigenvalues;               // non-increasing
    std::vector<std::vector<double>> eigenvectors; // eigenvectors[i] pairs with eigenvalues[i]
};

// Cyclic Jacobi eigendecomposition of a symmetric matrix (row-major n*n).
// Converges when the off-diagonal Frobenius mass drops below 1e-12 * ||M||_F,
// capped at 100 sweeps. Eigenvectors are orthonormal and sign-fixed so the
// first nonzero component is non-negative.
// Throws NotSymmetric if |M[i][j] - M[j][i]| > 1e-9, NoConvergence at the cap.
EigenDecomposition symmetric_eigendecomposition(const std::vector<double>& matrix, int n);

} // namespace facefuse
