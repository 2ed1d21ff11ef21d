#include <doctest.h>

#include <cmath>

#include "facefuse/errors.hpp"
#include "facefuse/manifest.hpp"
#include "facefuse/pgm.hpp"
#include "test_support.hpp"

using namespace facefuse;
using testsupport::TempDir;

TEST_CASE("load_grayscale maps P5 samples onto [0,1]") {
    TempDir dir("pgm");
    const auto path = dir.file("one.pgm");

    testsupport::write_bytes(path, std::string("P5\n1 1\n255\n") + '\xff');
    CHECK(load_grayscale(path).pixels[0] == 1.0);

    testsupport::write_bytes(path, std::string("P5\n1 1\n255\n") + '\x33'); // 51
    CHECK(load_grayscale(path).pixels[0] == 0.2);
}

TEST_CASE("load_grayscale reads P2 with comments") {
    TempDir dir("pgm");
    const auto path = dir.file("ascii.pgm");
    testsupport::write_text(path, "P2\n# a comment\n2 1\n255\n0 128\n");
    const GrayImage image = load_grayscale(path);
    CHECK(image.width == 2);
    CHECK(image.height == 1);
    CHECK(image.pixels[0] == 0.0);
    CHECK(image.pixels[1] == doctest::Approx(128.0 / 255.0));
}

TEST_CASE("load_grayscale rejects malformed files") {
    TempDir dir("pgm");
    const auto path = dir.file("bad.pgm");

    CHECK_THROWS_AS(load_grayscale(dir.file("missing.pgm")), FileNotFound);

    testsupport::write_text(path, "P7\n1 1\n255\n");
    CHECK_THROWS_AS(load_grayscale(path), MalformedImage);

    testsupport::write_text(path, "P5\n1 1\n0\n");
    CHECK_THROWS_AS(load_grayscale(path), MalformedImage);

    testsupport::write_bytes(path, "P5\n2 2\n255\nab"); // 2 of 4 samples
    CHECK_THROWS_AS(load_grayscale(path), MalformedImage);

    testsupport::write_text(path, "P2\n1 1\n255\n300\n"); // sample above maxval
    CHECK_THROWS_AS(load_grayscale(path), MalformedImage);
}

TEST_CASE("save_grayscale rounds intensities to the sample grid") {
    TempDir dir("pgm");
    const auto path = dir.file("out.pgm");

    save_grayscale(GrayImage{1, 1, {1.0}}, path, 255);
    std::string bytes = testsupport::read_bytes(path);
    CHECK(static_cast<unsigned char>(bytes.back()) == 255);

    save_grayscale(GrayImage{1, 1, {0.0}}, path, 255);
    bytes = testsupport::read_bytes(path);
    CHECK(static_cast<unsigned char>(bytes.back()) == 0);

    save_grayscale(GrayImage{1, 1, {0.5}}, path, 255);
    bytes = testsupport::read_bytes(path);
    CHECK(static_cast<unsigned char>(bytes.back()) == 128);

    CHECK_THROWS_AS(save_grayscale(GrayImage{1, 1, {0.5}}, path, 0), InvalidParameters);
    CHECK_THROWS_AS(save_grayscale(GrayImage{1, 1, {0.5}}, path, 70000), InvalidParameters);
}

TEST_CASE("PGM round trip stays within half a quantization step") {
    Rng rng(11);
    TempDir dir("pgm");
    const int maxvals[] = {1, 3, 255, 1000, 65535};
    for (int maxval : maxvals) {
        for (int trial = 0; trial < 10; ++trial) {
            const GrayImage original = testsupport::random_image(7, 5, rng);
            const auto path = dir.file("rt.pgm");
            save_grayscale(original, path, maxval);
            const GrayImage loaded = load_grayscale(path);
            REQUIRE(loaded.width == original.width);
            REQUIRE(loaded.height == original.height);
            const double tol = 0.5 / maxval + 1e-12;
            for (size_t i = 0; i < original.pixels.size(); ++i) {
                CHECK(std::abs(loaded.pixels[i] - original.pixels[i]) <= tol);
            }
        }
    }
}

TEST_CASE("resize_bilinear identity returns the exact pixels") {
    Rng rng(3);
    const GrayImage image = testsupport::random_image(4, 4, rng);
    const GrayImage out = resize_bilinear(image, 4, 4);
    CHECK(out.pixels == image.pixels);
}

TEST_CASE("resize_bilinear preserves constant images") {
    GrayImage image{3, 2, std::vector<double>(6, 0.3)};
    const int targets[][2] = {{1, 1}, {2, 5}, {7, 3}, {10, 10}};
    for (const auto& t : targets) {
        const GrayImage out = resize_bilinear(image, t[0], t[1]);
        for (double p : out.pixels) {
            CHECK(p == 0.3);
        }
    }
}

TEST_CASE("resize_bilinear uses corner-aligned sampling") {
    const GrayImage image{2, 1, {0.0, 1.0}};
    const GrayImage out = resize_bilinear(image, 3, 1);
    REQUIRE(out.pixels.size() == 3);
    CHECK(out.pixels[0] == 0.0);
    CHECK(out.pixels[1] == doctest::Approx(0.5));
    CHECK(out.pixels[2] == 1.0);
}

TEST_CASE("resize_bilinear keeps intensities in range") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const int w = 1 + static_cast<int>(rng.next() % 8);
        const int h = 1 + static_cast<int>(rng.next() % 8);
        const GrayImage image = testsupport::random_image(w, h, rng);
        const int tw = 1 + static_cast<int>(rng.next() % 12);
        const int th = 1 + static_cast<int>(rng.next() % 12);
        const GrayImage out = resize_bilinear(image, tw, th);
        for (double p : out.pixels) {
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
        }
    }
}

TEST_CASE("resize_bilinear rejects non-positive targets") {
    const GrayImage image{1, 1, {0.5}};
    CHECK_THROWS_AS(resize_bilinear(image, 0, 4), InvalidDimensions);
    CHECK_THROWS_AS(resize_bilinear(image, 4, -1), InvalidDimensions);
}

TEST_CASE("flatten and reshape are inverse") {
    const GrayImage image{2, 2, {0.1, 0.2, 0.3, 0.4}};
    const PixelVector flat = flatten(image);
    CHECK(flat == std::vector<double>{0.1, 0.2, 0.3, 0.4});
    const GrayImage back = reshape(2, 2, flat);
    CHECK(back.pixels == image.pixels);

    CHECK(flatten(GrayImage{1, 3, {0.1, 0.2, 0.3}}) ==
          std::vector<double>{0.1, 0.2, 0.3});

    CHECK_THROWS_AS(reshape(2, 2, {0.1}), LengthMismatch);
}

TEST_CASE("load_manifest collects classes in first-appearance order") {
    TempDir dir("manifest");
    const auto path = dir.file("m.csv");
    testsupport::write_text(path,
                            "visual_path,thermal_path,subject,split\n"
                            "v1.pgm,t1.pgm,s1,train\n"
                            "v2.pgm,t2.pgm,s1,test\n");
    const DatasetManifest m = load_manifest(path);
    CHECK(m.entries.size() == 2);
    CHECK(m.class_labels == std::vector<std::string>{"s1"});
    CHECK(m.entries[0].split == Split::train);
    CHECK(m.entries[1].split == Split::test);
    // relative paths resolve against the manifest directory
    CHECK(m.entries[0].visual_path == dir.file("v1.pgm"));
}

TEST_CASE("load_manifest accepts CRLF line endings") {
    TempDir dir("manifest");
    const auto path = dir.file("m.csv");
    testsupport::write_text(path,
                            "visual_path,thermal_path,subject,split\r\n"
                            "v.pgm,t.pgm,s1,train\r\n");
    CHECK(load_manifest(path).entries.size() == 1);
}

TEST_CASE("load_manifest rejects bad input") {
    TempDir dir("manifest");
    const auto path = dir.file("m.csv");

    testsupport::write_text(path, "");
    CHECK_THROWS_AS(load_manifest(path), MalformedManifest);

    testsupport::write_text(path, "visual_path,thermal_path,subject\n");
    CHECK_THROWS_AS(load_manifest(path), MalformedManifest);

    testsupport::write_text(path, "visual_path,thermal_path,subject,split\n"
                                  "v.pgm,t.pgm,s1,validate\n");
    CHECK_THROWS_AS(load_manifest(path), MalformedManifest);

    testsupport::write_text(path, "visual_path,thermal_path,subject,split\n"
                                  "v.pgm,t.pgm,s1\n");
    CHECK_THROWS_AS(load_manifest(path), MalformedManifest);

    testsupport::write_text(path, "visual_path,thermal_path,subject,split\n"
                                  "same.pgm,same.pgm,s1,train\n");
    CHECK_THROWS_AS(load_manifest(path), MalformedManifest);
}

TEST_CASE("load_manifest handles the paper-shaped split") {
    TempDir dir("manifest");
    const auto path = dir.file("m.csv");
    std::string text = "visual_path,thermal_path,subject,split\n";
    for (int c = 0; c < 10; ++c) {
        for (int i = 0; i < 20; ++i) {
            const std::string id = std::to_string(c) + "_" + std::to_string(i);
            text += "v" + id + ".pgm,t" + id + ".pgm,s" + std::to_string(c) + "," +
                    (i < 10 ? "train" : "test") + "\n";
        }
    }
    testsupport::write_text(path, text);
    const DatasetManifest m = load_manifest(path);
    CHECK(m.entries.size() == 200);
    CHECK(m.class_labels.size() == 10);
}

TEST_CASE("manifest save/load round trip") {
    TempDir dir("manifest");
    DatasetManifest m;
    m.class_labels = {"a", "b"};
    m.entries.push_back({dir.file("va.pgm"), dir.file("ta.pgm"), "a", Split::train});
    m.entries.push_back({dir.file("vb.pgm"), dir.file("tb.pgm"), "b", Split::test});
    const auto path = dir.file("m.csv");
    save_manifest(m, path);
    const DatasetManifest back = load_manifest(path);
    REQUIRE(back.entries.size() == 2);
    CHECK(back.class_labels == m.class_labels);
    CHECK(back.entries[0].visual_path == m.entries[0].visual_path);
    CHECK(back.entries[1].split == Split::test);
}
