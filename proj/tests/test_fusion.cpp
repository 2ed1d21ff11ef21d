#include <doctest.h>

#include <cmath>

#include "facefuse/errors.hpp"
#include "facefuse/fusion.hpp"
#include "facefuse/pgm.hpp"
#include "test_support.hpp"

using namespace facefuse;
using testsupport::TempDir;

TEST_CASE("fuse_weighted applies the weighted sum") {
    const GrayImage visual{1, 1, {0.4}};
    const GrayImage thermal{1, 1, {0.8}};
    const GrayImage fused = fuse_weighted(visual, thermal, FusionWeights(0.70, 0.30));
    CHECK(fused.pixels[0] == doctest::Approx(0.52).epsilon(1e-12));
}

TEST_CASE("fusing an image with itself returns it") {
    Rng rng(5);
    const GrayImage image = testsupport::random_image(6, 4, rng);
    const GrayImage fused = fuse_weighted(image, image, FusionWeights(0.70, 0.30));
    for (size_t i = 0; i < image.pixels.size(); ++i) {
        CHECK(fused.pixels[i] == doctest::Approx(image.pixels[i]).epsilon(1e-15));
    }
}

TEST_CASE("endpoint weights reproduce the inputs bit-exactly") {
    Rng rng(6);
    const GrayImage visual = testsupport::random_image(5, 5, rng);
    const GrayImage thermal = testsupport::random_image(5, 5, rng);
    CHECK(fuse_weighted(visual, thermal, FusionWeights(1.0, 0.0)).pixels == visual.pixels);
    CHECK(fuse_weighted(visual, thermal, FusionWeights(0.0, 1.0)).pixels == thermal.pixels);
}

TEST_CASE("fusion is affine in each input") {
    Rng rng(7);
    const FusionWeights weights(0.70, 0.30);
    for (int trial = 0; trial < 10; ++trial) {
        const GrayImage v1 = testsupport::random_image(4, 3, rng);
        const GrayImage v2 = testsupport::random_image(4, 3, rng);
        const GrayImage t = testsupport::random_image(4, 3, rng);
        const double alpha = rng.next_double();

        GrayImage mixed = v1;
        for (size_t i = 0; i < mixed.pixels.size(); ++i) {
            mixed.pixels[i] = alpha * v1.pixels[i] + (1.0 - alpha) * v2.pixels[i];
        }
        const GrayImage lhs = fuse_weighted(mixed, t, weights);
        const GrayImage f1 = fuse_weighted(v1, t, weights);
        const GrayImage f2 = fuse_weighted(v2, t, weights);
        for (size_t i = 0; i < lhs.pixels.size(); ++i) {
            const double rhs = alpha * f1.pixels[i] + (1.0 - alpha) * f2.pixels[i];
            CHECK(lhs.pixels[i] == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("fusion preserves the [0,1] range") {
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = rng.next_double();
        const FusionWeights weights(a, 1.0 - a);
        const GrayImage v = testsupport::random_image(3, 3, rng);
        const GrayImage t = testsupport::random_image(3, 3, rng);
        for (double p : fuse_weighted(v, t, weights).pixels) {
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
        }
    }
}

TEST_CASE("default weights are 0.70/0.30") {
    const FusionWeights weights;
    CHECK(weights.visual() == 0.70);
    CHECK(weights.thermal() == 0.30);
}

TEST_CASE("non-convex weights are rejected") {
    CHECK_THROWS_AS(FusionWeights(0.6, 0.5), InvalidWeights);
    CHECK_THROWS_AS(FusionWeights(-0.1, 1.1), InvalidWeights);
    CHECK_THROWS_AS(FusionWeights(1.2, -0.2), InvalidWeights);
    CHECK_NOTHROW(FusionWeights(0.5, 0.5));
}

TEST_CASE("mismatched pair dimensions are rejected") {
    const GrayImage a{2, 1, {0.0, 0.0}};
    const GrayImage b{1, 2, {0.0, 0.0}};
    CHECK_THROWS_AS(fuse_weighted(a, b, FusionWeights()), DimensionMismatch);
}

namespace {

DatasetManifest write_pair_dataset(const TempDir& dir, int pairs, int width, int height,
                                   Rng& rng) {
    DatasetManifest manifest;
    for (int i = 0; i < pairs; ++i) {
        const auto vpath = dir.file("v" + std::to_string(i) + ".pgm");
        const auto tpath = dir.file("t" + std::to_string(i) + ".pgm");
        save_grayscale(testsupport::random_image(width, height, rng), vpath, 255);
        save_grayscale(testsupport::random_image(width, height, rng), tpath, 255);
        manifest.entries.push_back({vpath, tpath, "s" + std::to_string(i % 2), Split::train});
    }
    manifest.class_labels = {"s0", "s1"};
    return manifest;
}

} // namespace

TEST_CASE("fuse_dataset writes one fused image per entry") {
    Rng rng(9);
    TempDir dir("fuse");
    const DatasetManifest manifest = write_pair_dataset(dir, 4, 6, 6, rng);
    TempDir out("fuse_out");

    const FusedManifest fused =
        fuse_dataset(manifest, FusionWeights(), out.path(), Dims{4, 4});
    CHECK(fused.entries.size() == 4);
    CHECK(fused.class_labels == manifest.class_labels);
    for (const auto& entry : fused.entries) {
        const GrayImage image = load_grayscale(entry.fused_path);
        CHECK(image.width == 4);
        CHECK(image.height == 4);
    }
    CHECK(std::filesystem::exists(out.file("fused_manifest.csv")));
    const FusedManifest reloaded = load_fused_manifest(out.file("fused_manifest.csv"));
    CHECK(reloaded.entries.size() == 4);
}

TEST_CASE("fuse_dataset on an empty manifest writes nothing") {
    TempDir out("fuse_empty");
    DatasetManifest manifest;
    const FusedManifest fused =
        fuse_dataset(manifest, FusionWeights(), out.path(), Dims{4, 4});
    CHECK(fused.entries.empty());
    size_t pgm_files = 0;
    for (const auto& e : std::filesystem::directory_iterator(out.path())) {
        if (e.path().extension() == ".pgm") {
            ++pgm_files;
        }
    }
    CHECK(pgm_files == 0);
}

TEST_CASE("fuse_dataset names the failing entry") {
    Rng rng(10);
    TempDir dir("fuse_err");
    TempDir out("fuse_err_out");

    SUBCASE("missing file") {
        DatasetManifest manifest;
        manifest.class_labels = {"s0"};
        manifest.entries.push_back(
            {dir.file("absent_v.pgm"), dir.file("absent_t.pgm"), "s0", Split::train});
        try {
            fuse_dataset(manifest, FusionWeights(), out.path(), Dims{4, 4});
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("entry 0") != std::string::npos);
            CHECK(std::string(e.what()).find("absent_v.pgm") != std::string::npos);
        }
    }

    SUBCASE("mismatched sizes with resizing disabled") {
        DatasetManifest manifest;
        manifest.class_labels = {"s0"};
        const auto vpath = dir.file("v.pgm");
        const auto tpath = dir.file("t.pgm");
        save_grayscale(testsupport::random_image(4, 4, rng), vpath, 255);
        save_grayscale(testsupport::random_image(5, 4, rng), tpath, 255);
        manifest.entries.push_back({vpath, tpath, "s0", Split::train});
        try {
            fuse_dataset(manifest, FusionWeights(), out.path(), std::nullopt);
            FAIL("expected DimensionMismatch");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("entry 0") != std::string::npos);
        }
    }
}
