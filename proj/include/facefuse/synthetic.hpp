#pragma once

#include <cstdint>
#include <filesystem>

#include "facefuse/manifest.hpp"

namespace facefuse {

// Desk-scale stand-in for a paired visual/thermal face database. Each class
// gets two smooth blob layouts (one per modality); samples are the layout
// plus per-pixel Gaussian noise of standard deviation `separation`, clamped
// to [0, 1]. Identical seeds produce byte-identical files.
struct SyntheticSpec {
    int classes = 10;
    int per_class_train = 10;
    int per_class_test = 10;
    int width = 64;
    int height = 64;
    double separation = 0.15; // noise sigma; 0 = duplicates within a class
    uint64_t seed = 42;
};

// Writes visual/thermal PGMs and `manifest.csv` into out_dir; the returned
// manifest holds resolved paths.
DatasetManifest make_synthetic_dataset(const SyntheticSpec& spec,
                                       const std::filesystem::path& out_dir);

} // namespace facefuse
