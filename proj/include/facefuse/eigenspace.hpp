#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "facefuse/image.hpp"

namespace facefuse {

// Coordinates of an image in face space, optionally tagged with its class.
struct FeatureVector {
    std::vector<double> coords;
    std::string subject; // empty when unlabeled
};

// Mean face plus an ordered orthonormal eigenface basis. Eigenvalues are the
// Gram eigenvalues divided by the training count, sorted non-increasing.
struct Eigenspace {
    int width = 0;
    int height = 0;
    int training_count = 0;
    std::vector<double> mean;               // length D = width * height
    std::vector<std::vector<double>> basis; // k eigenfaces, each length D
    std::vector<double> eigenvalues;        // length k

    int k() const { return static_cast<int>(basis.size()); }
    size_t dim() const { return mean.size(); }
};

// Elementwise mean of equally sized vectors.
PixelVector compute_mean(const std::vector<PixelVector>& images);

// Snapshot-method eigenface construction: eigendecomposes the N x N Gram
// matrix of the centered training images and maps each retained Gram
// eigenvector u through the centered data matrix (A*u, normalized). Gram
// eigenpairs at or below 1e-10 * lambda_max are treated as numerical noise
// and dropped, so the result keeps min(k, rank) eigenfaces.
Eigenspace build_eigenspace(const std::vector<PixelVector>& training, int k,
                            int width, int height);

// coords[i] = <basis[i], image - mean>
FeatureVector project(const Eigenspace& space, const PixelVector& image);

// mean + sum coords[i] * basis[i]
PixelVector reconstruct(const Eigenspace& space, const FeatureVector& feature);

// Binary format: magic "FEIG", version, dims, N, k, then mean / eigenvalues /
// basis as little-endian binary64 arrays, terminated by a CRC32.
void save_eigenspace(const Eigenspace& space, const std::filesystem::path& path);
Eigenspace load_eigenspace(const std::filesystem::path& path);

inline int default_k(int training_count) {
    return training_count - 1 < 40 ? training_count - 1 : 40;
}

} // namespace facefuse
