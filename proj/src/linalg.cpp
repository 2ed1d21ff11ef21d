#include "facefuse/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "facefuse/errors.hpp"

namespace facefuse {

namespace {

double frobenius(const std::vector<double>& a) {
    double sum = 0.0;
    for (double v : a) {
        sum += v * v;
    }
    return std::sqrt(sum);
}

double offdiag_frobenius(const std::vector<double>& a, int n) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) {
                sum += a[static_cast<size_t>(i) * n + j] * a[static_cast<size_t>(i) * n + j];
            }
        }
    }
    return std::sqrt(sum);
}

void fix_sign(std::vector<double>& v) {
    for (double x : v) {
        if (std::abs(x) > 1e-12) {
            if (x < 0.0) {
                for (double& y : v) {
                    y = -y;
                }
            }
            return;
        }
    }
}

} // namespace

EigenDecomposition symmetric_eigendecomposition(const std::vector<double>& matrix, int n) {
    if (n < 1) {
        throw InvalidParameters("matrix order must be at least 1");
    }
    if (matrix.size() != static_cast<size_t>(n) * n) {
        throw LengthMismatch("matrix storage does not match its order");
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(matrix[static_cast<size_t>(i) * n + j] -
                         matrix[static_cast<size_t>(j) * n + i]) > 1e-9) {
                throw NotSymmetric("matrix is not symmetric within 1e-9");
            }
        }
    }

    // work on a symmetrized copy
    std::vector<double> a(matrix);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double m = 0.5 * (a[static_cast<size_t>(i) * n + j] +
                                    a[static_cast<size_t>(j) * n + i]);
            a[static_cast<size_t>(i) * n + j] = m;
            a[static_cast<size_t>(j) * n + i] = m;
        }
    }

    std::vector<double> v(static_cast<size_t>(n) * n, 0.0); // columns accumulate eigenvectors
    for (int i = 0; i < n; ++i) {
        v[static_cast<size_t>(i) * n + i] = 1.0;
    }

    const double norm = frobenius(a);
    const double tol = 1e-12 * norm;
    constexpr int max_sweeps = 100;
    bool converged = offdiag_frobenius(a, n) <= tol;

    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[static_cast<size_t>(p) * n + q];
                if (apq == 0.0) {
                    continue;
                }
                const double app = a[static_cast<size_t>(p) * n + p];
                const double aqq = a[static_cast<size_t>(q) * n + q];
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                            : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                a[static_cast<size_t>(p) * n + p] = app - t * apq;
                a[static_cast<size_t>(q) * n + q] = aqq + t * apq;
                a[static_cast<size_t>(p) * n + q] = 0.0;
                a[static_cast<size_t>(q) * n + p] = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) {
                        continue;
                    }
                    const double akp = a[static_cast<size_t>(k) * n + p];
                    const double akq = a[static_cast<size_t>(k) * n + q];
                    a[static_cast<size_t>(k) * n + p] = c * akp - s * akq;
                    a[static_cast<size_t>(p) * n + k] = a[static_cast<size_t>(k) * n + p];
                    a[static_cast<size_t>(k) * n + q] = s * akp + c * akq;
                    a[static_cast<size_t>(q) * n + k] = a[static_cast<size_t>(k) * n + q];
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v[static_cast<size_t>(k) * n + p];
                    const double vkq = v[static_cast<size_t>(k) * n + q];
                    v[static_cast<size_t>(k) * n + p] = c * vkp - s * vkq;
                    v[static_cast<size_t>(k) * n + q] = s * vkp + c * vkq;
                }
            }
        }
        converged = offdiag_frobenius(a, n) <= tol;
    }
    if (!converged) {
        throw NoConvergence("Jacobi sweep cap reached before convergence");
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return a[static_cast<size_t>(i) * n + i] > a[static_cast<size_t>(j) * n + j];
    });

    EigenDecomposition result;
    result.eigenvalues.reserve(n);
    result.eigenvectors.reserve(n);
    for (int idx : order) {
        result.eigenvalues.push_back(a[static_cast<size_t>(idx) * n + idx]);
        std::vector<double> column(n);
        for (int kk = 0; kk < n; ++kk) {
            column[kk] = v[static_cast<size_t>(kk) * n + idx];
        }
        fix_sign(column);
        result.eigenvectors.push_back(std::move(column));
    }
    return result;
}

} // namespace facefuse
