#pragma once

#include <filesystem>

#include "facefuse/image.hpp"

namespace facefuse {

// Reads a PGM file (P2 ascii or P5 binary, '#' comments allowed in the
// header). Samples are mapped to [0, 1] by dividing by maxval. P5 samples
// are one byte for maxval <= 255 and two bytes big-endian above that.
GrayImage load_grayscale(const std::filesystem::path& path);

// Writes binary P5. Each intensity is stored as round(i * maxval), so a
// round trip is accurate to 1/(2*maxval). maxval must be in [1, 65535].
void save_grayscale(const GrayImage& image, const std::filesystem::path& path,
                    int maxval = 255);

} // namespace facefuse
