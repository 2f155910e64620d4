#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "gverify/errors.hpp"

namespace gverify {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    bool operator==(const Rgb&) const = default;
};

// Interleaved 8-bit RGB raster. Images are plain values; nothing in the
// library mutates an input image.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // width*height*3 bytes, row-major

    Image() = default;
    Image(int w, int h, Rgb fill = {0, 0, 0});

    Rgb at(int x, int y) const {
        size_t i = (static_cast<size_t>(y) * width + x) * 3;
        return {data[i], data[i + 1], data[i + 2]};
    }
    void set(int x, int y, Rgb c) {
        size_t i = (static_cast<size_t>(y) * width + x) * 3;
        data[i] = c.r;
        data[i + 1] = c.g;
        data[i + 2] = c.b;
    }

    bool operator==(const Image&) const = default;
};

// Decodes a PNG file into RGB (alpha discarded, palette and gray expanded).
// Throws IoError when the file cannot be read, DecodeError when it is not
// a PNG we can decode.
Image load_image(const std::filesystem::path& path);

// Encodes to a PNG file. Throws IoError on write failure.
void save_image(const Image& image, const std::filesystem::path& path);

// In-memory PNG codec, used for chat message image parts.
Image decode_png(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> encode_png(const Image& image);

}  // namespace gverify
