#include "facefuse/pgm.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "facefuse/errors.hpp"

namespace facefuse {

namespace {

// Header tokens are separated by whitespace; '#' starts a comment that runs
// to end of line.
std::string next_header_token(std::istream& in) {
    std::string token;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') {
                c = in.get();
            }
        } else if (std::isspace(c)) {
            if (!token.empty()) {
                in.unget();
                return token;
            }
        } else {
            token.push_back(static_cast<char>(c));
        }
        c = in.get();
    }
    return token;
}

long parse_header_int(std::istream& in, const std::filesystem::path& path,
                      const char* what) {
    const std::string token = next_header_token(in);
    if (token.empty()) {
        throw MalformedImage(path.string() + ": missing " + what);
    }
    try {
        size_t used = 0;
        const long value = std::stol(token, &used);
        if (used != token.size()) {
            throw std::invalid_argument(token);
        }
        return value;
    } catch (const std::exception&) {
        throw MalformedImage(path.string() + ": bad " + std::string(what) + " '" + token + "'");
    }
}

} // namespace

GrayImage load_grayscale(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FileNotFound("no such image file: " + path.string());
    }

    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (!in || m0 != 'P' || (m1 != '2' && m1 != '5')) {
        throw MalformedImage(path.string() + ": not a P2/P5 PGM file");
    }
    const bool binary = m1 == '5';

    const long width = parse_header_int(in, path, "width");
    const long height = parse_header_int(in, path, "height");
    const long maxval = parse_header_int(in, path, "maxval");
    if (width < 1 || height < 1) {
        throw MalformedImage(path.string() + ": non-positive dimensions");
    }
    if (maxval <= 0 || maxval > 65535) {
        throw MalformedImage(path.string() + ": maxval out of range");
    }

    GrayImage image;
    image.width = static_cast<int>(width);
    image.height = static_cast<int>(height);
    const size_t count = static_cast<size_t>(width) * static_cast<size_t>(height);
    image.pixels.resize(count);
    const double scale = 1.0 / static_cast<double>(maxval);

    if (binary) {
        // exactly one whitespace byte separates maxval from the samples
        const int sep = in.get();
        if (sep == EOF || !std::isspace(sep)) {
            throw MalformedImage(path.string() + ": missing sample separator");
        }
        const int bytes_per_sample = maxval <= 255 ? 1 : 2;
        std::string raw(count * bytes_per_sample, '\0');
        in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
        if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
            throw MalformedImage(path.string() + ": truncated pixel payload");
        }
        for (size_t i = 0; i < count; ++i) {
            long v;
            if (bytes_per_sample == 1) {
                v = static_cast<unsigned char>(raw[i]);
            } else {
                v = (static_cast<long>(static_cast<unsigned char>(raw[2 * i])) << 8) |
                    static_cast<unsigned char>(raw[2 * i + 1]);
            }
            if (v > maxval) {
                throw MalformedImage(path.string() + ": sample exceeds maxval");
            }
            image.pixels[i] = static_cast<double>(v) * scale;
        }
    } else {
        for (size_t i = 0; i < count; ++i) {
            const long v = parse_header_int(in, path, "sample");
            if (v < 0 || v > maxval) {
                throw MalformedImage(path.string() + ": sample out of range");
            }
            image.pixels[i] = static_cast<double>(v) * scale;
        }
    }
    return image;
}

void save_grayscale(const GrayImage& image, const std::filesystem::path& path, int maxval) {
    if (maxval < 1 || maxval > 65535) {
        throw InvalidParameters("maxval must be in [1, 65535]");
    }
    if (image.width < 1 || image.height < 1 ||
        image.pixels.size() != static_cast<size_t>(image.width) * image.height) {
        throw InvalidDimensions("image dimensions inconsistent with pixel count");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoFailure("cannot open " + path.string() + " for writing");
    }
    out << "P5\n" << image.width << " " << image.height << "\n" << maxval << "\n";
    std::string raw;
    raw.reserve(image.pixels.size() * (maxval <= 255 ? 1 : 2));
    for (double intensity : image.pixels) {
        const long v = std::lround(intensity * maxval);
        if (maxval <= 255) {
            raw.push_back(static_cast<char>(v & 0xff));
        } else {
            raw.push_back(static_cast<char>((v >> 8) & 0xff)); // big-endian
            raw.push_back(static_cast<char>(v & 0xff));
        }
    }
    out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
    if (!out) {
        throw IoFailure("write failed: " + path.string());
    }
}

} // namespace facefuse
