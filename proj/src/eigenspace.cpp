#include "facefuse/eigenspace.hpp"

#include <cmath>

#include "facefuse/errors.hpp"
#include "facefuse/linalg.hpp"
#include "serial.hpp"

namespace facefuse {

namespace {

constexpr uint32_t kEigenspaceVersion = 1;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        sum += a[i] * b[i];
    }
    return sum;
}

void check_equal_lengths(const std::vector<PixelVector>& images) {
    const size_t d = images.front().size();
    for (const auto& img : images) {
        if (img.size() != d) {
            throw LengthMismatch("training vectors have differing lengths");
        }
    }
}

} // namespace

PixelVector compute_mean(const std::vector<PixelVector>& images) {
    if (images.empty()) {
        throw EmptyTrainingSet("cannot average an empty image set");
    }
    check_equal_lengths(images);
    const size_t d = images.front().size();
    PixelVector mean(d, 0.0);
    for (const auto& img : images) {
        for (size_t i = 0; i < d; ++i) {
            mean[i] += img[i];
        }
    }
    const double inv = 1.0 / static_cast<double>(images.size());
    for (double& m : mean) {
        m *= inv;
    }
    return mean;
}

Eigenspace build_eigenspace(const std::vector<PixelVector>& training, int k,
                            int width, int height) {
    const int n = static_cast<int>(training.size());
    if (n == 0) {
        throw EmptyTrainingSet("no training images");
    }
    check_equal_lengths(training);
    if (training.front().size() != static_cast<size_t>(width) * height) {
        throw LengthMismatch("pixel vectors do not match the given dimensions");
    }
    if (k < 1 || k > n - 1) {
        throw KOutOfRange("k must satisfy 1 <= k <= N-1 (N=" + std::to_string(n) +
                          ", k=" + std::to_string(k) + ")");
    }

    const PixelVector mean = compute_mean(training);
    const size_t d = mean.size();

    // centered rows: row i is image i minus the mean (column i of A)
    std::vector<std::vector<double>> centered(n, std::vector<double>(d));
    for (int i = 0; i < n; ++i) {
        for (size_t j = 0; j < d; ++j) {
            centered[i][j] = training[i][j] - mean[j];
        }
    }

    // snapshot Gram matrix A^T A, exactly symmetric by construction
    std::vector<double> gram(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double g = dot(centered[i], centered[j]);
            gram[static_cast<size_t>(i) * n + j] = g;
            gram[static_cast<size_t>(j) * n + i] = g;
        }
    }

    const EigenDecomposition eig = symmetric_eigendecomposition(gram, n);
    const double lambda_max = eig.eigenvalues.front();
    if (lambda_max <= 0.0) {
        throw DegenerateTrainingSet("training set has zero covariance (all images identical)");
    }
    const double lambda_floor = 1e-10 * lambda_max;

    int rank = 0;
    while (rank < n && eig.eigenvalues[rank] > lambda_floor) {
        ++rank;
    }
    const int retained = k < rank ? k : rank;

    Eigenspace space;
    space.width = width;
    space.height = height;
    space.training_count = n;
    space.mean = mean;
    space.basis.reserve(retained);
    space.eigenvalues.reserve(retained);
    for (int e = 0; e < retained; ++e) {
        std::vector<double> face(d, 0.0);
        for (int i = 0; i < n; ++i) {
            const double u = eig.eigenvectors[e][i];
            for (size_t j = 0; j < d; ++j) {
                face[j] += u * centered[i][j];
            }
        }
        const double norm = std::sqrt(dot(face, face));
        for (double& f : face) {
            f /= norm;
        }
        // deterministic orientation, same convention as the eigensolver
        for (size_t j = 0; j < d; ++j) {
            if (std::abs(face[j]) > 1e-12) {
                if (face[j] < 0.0) {
                    for (double& f : face) {
                        f = -f;
                    }
                }
                break;
            }
        }
        space.basis.push_back(std::move(face));
        const double lambda = eig.eigenvalues[e] / static_cast<double>(n);
        space.eigenvalues.push_back(lambda > 0.0 ? lambda : 0.0);
    }
    return space;
}

FeatureVector project(const Eigenspace& space, const PixelVector& image) {
    if (image.size() != space.dim()) {
        throw LengthMismatch("image length does not match the eigenspace dimension");
    }
    std::vector<double> diff(space.dim());
    for (size_t i = 0; i < diff.size(); ++i) {
        diff[i] = image[i] - space.mean[i];
    }
    FeatureVector feature;
    feature.coords.reserve(space.basis.size());
    for (const auto& face : space.basis) {
        feature.coords.push_back(dot(face, diff));
    }
    return feature;
}

PixelVector reconstruct(const Eigenspace& space, const FeatureVector& feature) {
    if (feature.coords.size() != space.basis.size()) {
        throw LengthMismatch("feature length does not match the eigenspace rank");
    }
    PixelVector out = space.mean;
    for (size_t e = 0; e < space.basis.size(); ++e) {
        const double c = feature.coords[e];
        const auto& face = space.basis[e];
        for (size_t i = 0; i < out.size(); ++i) {
            out[i] += c * face[i];
        }
    }
    return out;
}

void save_eigenspace(const Eigenspace& space, const std::filesystem::path& path) {
    detail::PayloadWriter w;
    w.magic("FEIG");
    w.u32(kEigenspaceVersion);
    w.u32(static_cast<uint32_t>(space.width));
    w.u32(static_cast<uint32_t>(space.height));
    w.u32(static_cast<uint32_t>(space.training_count));
    w.u32(static_cast<uint32_t>(space.basis.size()));
    w.f64_array(space.mean);
    w.f64_array(space.eigenvalues);
    for (const auto& face : space.basis) {
        w.f64_array(face);
    }
    w.write_file(path);
}

Eigenspace load_eigenspace(const std::filesystem::path& path) {
    auto r = detail::PayloadReader::from_file(path);
    r.expect_magic("FEIG");
    const uint32_t version = r.u32();
    if (version != kEigenspaceVersion) {
        throw VersionMismatch("eigenspace file version " + std::to_string(version) +
                              " is not supported");
    }
    r.verify_crc();

    Eigenspace space;
    space.width = static_cast<int>(r.u32());
    space.height = static_cast<int>(r.u32());
    space.training_count = static_cast<int>(r.u32());
    const uint32_t k = r.u32();
    if (space.width < 1 || space.height < 1) {
        throw CorruptModel("eigenspace file carries invalid dimensions");
    }
    const size_t d = static_cast<size_t>(space.width) * space.height;
    space.mean = r.f64_array(d);
    space.eigenvalues = r.f64_array(k);
    space.basis.reserve(k);
    for (uint32_t e = 0; e < k; ++e) {
        space.basis.push_back(r.f64_array(d));
    }
    if (!r.at_payload_end()) {
        throw CorruptModel("eigenspace file has trailing bytes");
    }
    return space;
}

} // namespace facefuse
