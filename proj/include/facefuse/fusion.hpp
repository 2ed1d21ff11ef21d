#pragma once

#include <filesystem>
#include <optional>

#include "facefuse/image.hpp"
#include "facefuse/manifest.hpp"

namespace facefuse {

// Convex per-pixel blend weights. The pair must satisfy a, b in [0, 1] and
// a + b = 1 within 1e-9; anything else is rejected instead of clamped.
class FusionWeights {
public:
    FusionWeights() : FusionWeights(0.70, 0.30) {}
    FusionWeights(double visual_weight, double thermal_weight);

    double visual() const { return visual_; }
    double thermal() const { return thermal_; }

private:
    double visual_;
    double thermal_;
};

// F = a*V + b*T per pixel. Inputs must share dimensions. Endpoint weights
// (a=1 or b=1) return the corresponding input bit-exactly.
GrayImage fuse_weighted(const GrayImage& visual, const GrayImage& thermal,
                        const FusionWeights& weights);

// Fuses every manifest entry into output_dir as P5 PGM (maxval 255) and
// returns the fused manifest, preserving entry order. When target_dims is
// set, both images are resized to it before fusion; otherwise the pair must
// already share dimensions. Stops at the first failing entry, naming it.
// Also writes `fused_manifest.csv` into output_dir.
struct Dims {
    int width = 0;
    int height = 0;
};

FusedManifest fuse_dataset(const DatasetManifest& manifest, const FusionWeights& weights,
                           const std::filesystem::path& output_dir,
                           std::optional<Dims> target_dims);

} // namespace facefuse
