#pragma once

// Internal binary-format plumbing shared by the eigenspace and model files:
// little-endian fields with a trailing CRC32 over everything before it.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace facefuse::detail {

class PayloadWriter {
public:
    void u32(uint32_t v);
    void u64(uint64_t v);
    void f64(double v);
    void f64_array(const std::vector<double>& values);
    void magic(const char tag[4]);

    // Appends the CRC32 of the buffer and writes everything to disk.
    void write_file(const std::filesystem::path& path) const;

private:
    std::string buf_;
};

class PayloadReader {
public:
    // Reads the whole file; length and CRC are not checked yet so the
    // version tag can be inspected first.
    static PayloadReader from_file(const std::filesystem::path& path);

    void expect_magic(const char tag[4]); // CorruptModel on mismatch
    void verify_crc();                    // CorruptModel on mismatch/truncation
    uint32_t u32();
    uint64_t u64();
    double f64();
    std::vector<double> f64_array(size_t count);
    bool at_payload_end() const;

private:
    std::string buf_;
    size_t pos_ = 0;

    void need(size_t n) const; // CorruptModel if fewer than n payload bytes remain
};

} // namespace facefuse::detail
