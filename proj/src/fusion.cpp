#include "facefuse/fusion.hpp"

#include <cmath>
#include <sstream>

#include "facefuse/errors.hpp"
#include "facefuse/pgm.hpp"

namespace facefuse {

FusionWeights::FusionWeights(double visual_weight, double thermal_weight)
    : visual_(visual_weight), thermal_(thermal_weight) {
    if (!(visual_ >= 0.0 && visual_ <= 1.0) || !(thermal_ >= 0.0 && thermal_ <= 1.0)) {
        throw InvalidWeights("fusion weights must lie in [0, 1]");
    }
    if (std::abs(visual_ + thermal_ - 1.0) > 1e-9) {
        std::ostringstream msg;
        msg << "fusion weights must be convex: " << visual_ << " + " << thermal_
            << " != 1";
        throw InvalidWeights(msg.str());
    }
}

GrayImage fuse_weighted(const GrayImage& visual, const GrayImage& thermal,
                        const FusionWeights& weights) {
    if (visual.width != thermal.width || visual.height != thermal.height) {
        std::ostringstream msg;
        msg << "fusion pair dimensions differ: " << visual.width << "x" << visual.height
            << " vs " << thermal.width << "x" << thermal.height;
        throw DimensionMismatch(msg.str());
    }
    const double a = weights.visual();
    const double b = weights.thermal();
    GrayImage fused;
    fused.width = visual.width;
    fused.height = visual.height;
    fused.pixels.resize(visual.pixels.size());
    for (size_t i = 0; i < visual.pixels.size(); ++i) {
        double f = a * visual.pixels[i] + b * thermal.pixels[i];
        // weights within the convexity tolerance can overshoot by ~1e-9
        if (f < 0.0) f = 0.0;
        if (f > 1.0) f = 1.0;
        fused.pixels[i] = f;
    }
    return fused;
}

FusedManifest fuse_dataset(const DatasetManifest& manifest, const FusionWeights& weights,
                           const std::filesystem::path& output_dir,
                           std::optional<Dims> target_dims) {
    if (target_dims && (target_dims->width < 1 || target_dims->height < 1)) {
        throw InvalidDimensions("fusion target dimensions must be positive");
    }

    std::error_code ec;
    std::filesystem::create_directories(output_dir, ec);
    if (ec) {
        throw IoFailure("cannot create output directory " + output_dir.string());
    }

    FusedManifest fused;
    fused.class_labels = manifest.class_labels;
    size_t index = 0;
    for (const auto& entry : manifest.entries) {
        try {
            GrayImage visual = load_grayscale(entry.visual_path);
            GrayImage thermal = load_grayscale(entry.thermal_path);
            if (target_dims) {
                visual = resize_bilinear(visual, target_dims->width, target_dims->height);
                thermal = resize_bilinear(thermal, target_dims->width, target_dims->height);
            }
            const GrayImage result = fuse_weighted(visual, thermal, weights);

            std::ostringstream name;
            name << "fused_" << std::setw(5) << std::setfill('0') << index << ".pgm";
            const auto out_path = output_dir / name.str();
            save_grayscale(result, out_path, 255);
            fused.entries.push_back({out_path, entry.subject, entry.split});
        } catch (const Error& e) {
            // abort on first failure, naming the offending entry
            throw Error(e.kind(), "entry " + std::to_string(index) + " (" +
                                      entry.visual_path.string() + ", " +
                                      entry.thermal_path.string() + "): " + e.what());
        }
        ++index;
    }
    save_fused_manifest(fused, output_dir / "fused_manifest.csv");
    return fused;
}

} // namespace facefuse
