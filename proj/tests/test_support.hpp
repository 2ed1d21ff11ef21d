#pragma once

// shared helpers for the test suites

#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "facefuse/image.hpp"
#include "facefuse/rng.hpp"

namespace testsupport {

// Scratch directory removed at scope exit.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<uint64_t> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("facefuse_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
}

inline void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

inline std::string read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline facefuse::GrayImage random_image(int width, int height, facefuse::Rng& rng) {
    facefuse::GrayImage image;
    image.width = width;
    image.height = height;
    image.pixels.resize(static_cast<size_t>(width) * height);
    for (double& p : image.pixels) {
        p = rng.next_double();
    }
    return image;
}

inline std::vector<double> random_vector(size_t length, facefuse::Rng& rng) {
    std::vector<double> v(length);
    for (double& x : v) {
        x = rng.next_double();
    }
    return v;
}

} // namespace testsupport
