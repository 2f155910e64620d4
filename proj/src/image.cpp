#include "gverify/image.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <fstream>

namespace gverify {

namespace {

struct ByteReader {
    const std::vector<std::uint8_t>* bytes;
    size_t offset = 0;
};

void read_from_vector(png_structp png, png_bytep out, png_size_t count) {
    auto* reader = static_cast<ByteReader*>(png_get_io_ptr(png));
    if (reader->offset + count > reader->bytes->size()) {
        png_error(png, "unexpected end of PNG data");
    }
    std::memcpy(out, reader->bytes->data() + reader->offset, count);
    reader->offset += count;
}

void write_to_vector(png_structp png, png_bytep data, png_size_t count) {
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + count);
}

void flush_noop(png_structp) {}

Image decode_common(png_structp png, png_infop info) {
    png_read_info(png, info);

    png_uint_32 width = png_get_image_width(png, info);
    png_uint_32 height = png_get_image_height(png, info);
    int color_type = png_get_color_type(png, info);
    int bit_depth = png_get_bit_depth(png, info);

    // Normalize every variant to 8-bit RGB, alpha dropped.
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    Image image(static_cast<int>(width), static_cast<int>(height));
    std::vector<png_bytep> rows(height);
    for (png_uint_32 y = 0; y < height; ++y) {
        rows[y] = image.data.data() + static_cast<size_t>(y) * width * 3;
    }
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    return image;
}

}  // namespace

Image::Image(int w, int h, Rgb fill) : width(w), height(h), data(static_cast<size_t>(w) * h * 3) {
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) set(x, y, fill);
}

Image load_image(const std::filesystem::path& path) {
    std::FILE* file = std::fopen(path.string().c_str(), "rb");
    if (!file) throw IoError("cannot open image file: " + path.string());

    unsigned char header[8];
    if (std::fread(header, 1, 8, file) != 8 || png_sig_cmp(header, 0, 8) != 0) {
        std::fclose(file);
        throw DecodeError("not a PNG file: " + path.string());
    }

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(file);
        throw DecodeError("libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(file);
        throw DecodeError("corrupt PNG data: " + path.string());
    }

    png_init_io(png, file);
    png_set_sig_bytes(png, 8);
    Image image = decode_common(png, info);

    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(file);
    return image;
}

Image decode_png(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
        throw DecodeError("not PNG data");
    }

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DecodeError("libpng initialization failed");
    }

    ByteReader reader{&bytes, 0};
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DecodeError("corrupt PNG data");
    }
    png_set_read_fn(png, &reader, read_from_vector);
    Image image = decode_common(png, info);

    png_destroy_read_struct(&png, &info, nullptr);
    return image;
}

std::vector<std::uint8_t> encode_png(const Image& image) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng initialization failed");
    }

    std::vector<std::uint8_t> out;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("PNG encoding failed");
    }
    png_set_write_fn(png, &out, write_to_vector, flush_noop);
    // Fast compression: encoded size is irrelevant here and recording
    // digests hash decoded pixels, never container bytes.
    png_set_compression_level(png, 1);
    png_set_IHDR(png, info, image.width, image.height, 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_bytep> rows(image.height);
    for (int y = 0; y < image.height; ++y) {
        rows[y] = const_cast<png_bytep>(image.data.data() + static_cast<size_t>(y) * image.width * 3);
    }
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

void save_image(const Image& image, const std::filesystem::path& path) {
    std::vector<std::uint8_t> bytes = encode_png(image);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace gverify
