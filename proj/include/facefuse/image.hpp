#pragma once

#include <vector>

namespace facefuse {

// Single-channel raster with row-major intensities normalized to [0, 1].
// Invariant: pixels.size() == width * height.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    double at(int x, int y) const {
        return pixels[static_cast<size_t>(y) * width + x];
    }
    double& at(int x, int y) {
        return pixels[static_cast<size_t>(y) * width + x];
    }
    size_t pixel_count() const { return pixels.size(); }
};

using PixelVector = std::vector<double>;

// Corner-aligned bilinear resampling. Identity targets return the input
// pixels unchanged; constant images stay constant.
GrayImage resize_bilinear(const GrayImage& image, int target_width, int target_height);

// Row-major flattening; reshape is its inverse.
PixelVector flatten(const GrayImage& image);
GrayImage reshape(int width, int height, const PixelVector& values);

} // namespace facefuse
