#include "serial.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <zlib.h>

#include "facefuse/errors.hpp"

namespace facefuse::detail {

namespace {

uint32_t crc_of(const std::string& bytes, size_t count) {
    return static_cast<uint32_t>(
        ::crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()),
                static_cast<uInt>(count)));
}

} // namespace

void PayloadWriter::u32(uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
}

void PayloadWriter::u64(uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
}

void PayloadWriter::f64(double v) {
    u64(std::bit_cast<uint64_t>(v));
}

void PayloadWriter::f64_array(const std::vector<double>& values) {
    for (double v : values) {
        f64(v);
    }
}

void PayloadWriter::magic(const char tag[4]) {
    buf_.append(tag, 4);
}

void PayloadWriter::write_file(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoFailure("cannot open " + path.string() + " for writing");
    }
    out.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    const uint32_t crc = crc_of(buf_, buf_.size());
    char tail[4];
    for (int i = 0; i < 4; ++i) {
        tail[i] = static_cast<char>((crc >> (8 * i)) & 0xff);
    }
    out.write(tail, 4);
    if (!out) {
        throw IoFailure("write failed: " + path.string());
    }
}

PayloadReader PayloadReader::from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoFailure("cannot open " + path.string());
    }
    PayloadReader r;
    r.buf_.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    if (!in.eof() && in.fail()) {
        throw IoFailure("read failed: " + path.string());
    }
    return r;
}

void PayloadReader::need(size_t n) const {
    if (buf_.size() < 4 || pos_ + n > buf_.size() - 4) {
        throw CorruptModel("truncated file");
    }
}

void PayloadReader::expect_magic(const char tag[4]) {
    need(4);
    if (std::memcmp(buf_.data() + pos_, tag, 4) != 0) {
        throw CorruptModel("bad magic bytes");
    }
    pos_ += 4;
}

void PayloadReader::verify_crc() {
    if (buf_.size() < 4) {
        throw CorruptModel("truncated file");
    }
    const size_t payload = buf_.size() - 4;
    uint32_t stored = 0;
    for (int i = 0; i < 4; ++i) {
        stored |= static_cast<uint32_t>(static_cast<unsigned char>(buf_[payload + i])) << (8 * i);
    }
    if (stored != crc_of(buf_, payload)) {
        throw CorruptModel("checksum mismatch");
    }
}

uint32_t PayloadReader::u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
        v |= static_cast<uint32_t>(static_cast<unsigned char>(buf_[pos_ + i])) << (8 * i);
    }
    pos_ += 4;
    return v;
}

uint64_t PayloadReader::u64() {
    need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v |= static_cast<uint64_t>(static_cast<unsigned char>(buf_[pos_ + i])) << (8 * i);
    }
    pos_ += 8;
    return v;
}

double PayloadReader::f64() {
    return std::bit_cast<double>(u64());
}

std::vector<double> PayloadReader::f64_array(size_t count) {
    std::vector<double> values;
    values.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        values.push_back(f64());
    }
    return values;
}

bool PayloadReader::at_payload_end() const {
    return buf_.size() >= 4 && pos_ == buf_.size() - 4;
}

} // namespace facefuse::detail
