#include "facefuse/image.hpp"

#include <cmath>

#include "facefuse/errors.hpp"

namespace facefuse {

namespace {

// a + t*(b - a): exact for t = 0 and for a == b, which keeps the identity
// and constant-image cases bit-stable.
double lerp_at(double a, double b, double t) {
    return a + t * (b - a);
}

} // namespace

GrayImage resize_bilinear(const GrayImage& image, int target_width, int target_height) {
    if (target_width < 1 || target_height < 1) {
        throw InvalidDimensions("resize target must be positive");
    }
    if (target_width == image.width && target_height == image.height) {
        return image;
    }

    GrayImage out;
    out.width = target_width;
    out.height = target_height;
    out.pixels.resize(static_cast<size_t>(target_width) * target_height);

    // Corner-aligned sampling: first/last output samples coincide with the
    // first/last input samples along each axis.
    const double sx_scale =
        target_width > 1 ? static_cast<double>(image.width - 1) / (target_width - 1) : 0.0;
    const double sy_scale =
        target_height > 1 ? static_cast<double>(image.height - 1) / (target_height - 1) : 0.0;

    for (int y = 0; y < target_height; ++y) {
        const double sy = y * sy_scale;
        const int y0 = static_cast<int>(std::floor(sy));
        const int y1 = y0 + 1 < image.height ? y0 + 1 : image.height - 1;
        const double fy = sy - y0;
        for (int x = 0; x < target_width; ++x) {
            const double sx = x * sx_scale;
            const int x0 = static_cast<int>(std::floor(sx));
            const int x1 = x0 + 1 < image.width ? x0 + 1 : image.width - 1;
            const double fx = sx - x0;
            const double top = lerp_at(image.at(x0, y0), image.at(x1, y0), fx);
            const double bottom = lerp_at(image.at(x0, y1), image.at(x1, y1), fx);
            out.at(x, y) = lerp_at(top, bottom, fy);
        }
    }
    return out;
}

PixelVector flatten(const GrayImage& image) {
    return image.pixels;
}

GrayImage reshape(int width, int height, const PixelVector& values) {
    if (width < 1 || height < 1) {
        throw InvalidDimensions("reshape dimensions must be positive");
    }
    if (values.size() != static_cast<size_t>(width) * height) {
        throw LengthMismatch("pixel vector length does not match dimensions");
    }
    return GrayImage{width, height, values};
}

} // namespace facefuse
