#include "facefuse/synthetic.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "facefuse/errors.hpp"
#include "facefuse/pgm.hpp"
#include "facefuse/rng.hpp"

namespace facefuse {

namespace {

// A smooth layout of a few Gaussian bumps, clamped to [0, 1]. Every draw
// goes through the shared generator so output is a pure function of the seed.
GrayImage blob_pattern(int width, int height, Rng& rng) {
    constexpr int blob_count = 4;
    struct Blob {
        double cx, cy, sigma, amplitude;
    };
    std::vector<Blob> blobs;
    blobs.reserve(blob_count);
    const double min_dim = static_cast<double>(width < height ? width : height);
    for (int b = 0; b < blob_count; ++b) {
        Blob blob;
        blob.cx = rng.uniform(0.0, width - 1.0);
        blob.cy = rng.uniform(0.0, height - 1.0);
        blob.sigma = rng.uniform(0.10, 0.35) * min_dim;
        blob.amplitude = rng.uniform(0.35, 1.0);
        blobs.push_back(blob);
    }

    GrayImage image;
    image.width = width;
    image.height = height;
    image.pixels.resize(static_cast<size_t>(width) * height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double v = 0.0;
            for (const Blob& blob : blobs) {
                const double dx = x - blob.cx;
                const double dy = y - blob.cy;
                v += blob.amplitude *
                     std::exp(-(dx * dx + dy * dy) / (2.0 * blob.sigma * blob.sigma));
            }
            image.at(x, y) = v > 1.0 ? 1.0 : v;
        }
    }
    return image;
}

GrayImage noisy_variant(const GrayImage& base, double sigma, Rng& rng) {
    GrayImage out = base;
    if (sigma == 0.0) {
        return out;
    }
    for (double& p : out.pixels) {
        p += sigma * rng.gaussian();
        if (p < 0.0) p = 0.0;
        if (p > 1.0) p = 1.0;
    }
    return out;
}

} // namespace

DatasetManifest make_synthetic_dataset(const SyntheticSpec& spec,
                                       const std::filesystem::path& out_dir) {
    if (spec.classes < 1) {
        throw InvalidParameters("need at least one class");
    }
    if (spec.per_class_train < 0 || spec.per_class_test < 0) {
        throw InvalidParameters("per-class sample counts must be non-negative");
    }
    if (spec.width < 1 || spec.height < 1) {
        throw InvalidParameters("image dimensions must be positive");
    }
    if (!(spec.separation >= 0.0)) {
        throw InvalidParameters("separation must be non-negative");
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoFailure("cannot create output directory " + out_dir.string());
    }

    Rng rng(spec.seed);
    DatasetManifest manifest;
    for (int c = 0; c < spec.classes; ++c) {
        std::ostringstream subject;
        subject << "class" << std::setw(3) << std::setfill('0') << c;
        manifest.class_labels.push_back(subject.str());

        const GrayImage visual_base = blob_pattern(spec.width, spec.height, rng);
        const GrayImage thermal_base = blob_pattern(spec.width, spec.height, rng);

        const int total = spec.per_class_train + spec.per_class_test;
        for (int s = 0; s < total; ++s) {
            const GrayImage visual = noisy_variant(visual_base, spec.separation, rng);
            const GrayImage thermal = noisy_variant(thermal_base, spec.separation, rng);

            std::ostringstream stem;
            stem << "c" << std::setw(3) << std::setfill('0') << c << "_s" << std::setw(3)
                 << std::setfill('0') << s;
            const auto visual_path = out_dir / ("visual_" + stem.str() + ".pgm");
            const auto thermal_path = out_dir / ("thermal_" + stem.str() + ".pgm");
            save_grayscale(visual, visual_path, 255);
            save_grayscale(thermal, thermal_path, 255);

            ManifestEntry entry;
            entry.visual_path = visual_path;
            entry.thermal_path = thermal_path;
            entry.subject = subject.str();
            entry.split = s < spec.per_class_train ? Split::train : Split::test;
            manifest.entries.push_back(std::move(entry));
        }
    }
    save_manifest(manifest, out_dir / "manifest.csv");
    return manifest;
}

} // namespace facefuse
