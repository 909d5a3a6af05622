#include "etsynth/png_io.hpp"

#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <memory>
#include <vector>

namespace etsynth::png {
namespace {

struct FileCloser {
    void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open(const std::filesystem::path& path, const char* mode)
{
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f)
        throw IoError("cannot open " + path.string());
    return f;
}

// libpng is C; errors unwind with longjmp back to the caller's setjmp.
struct ErrorSlot {
    char message[256] = {};
};

[[noreturn]] void on_error(png_structp png, png_const_charp msg)
{
    if (auto* slot = static_cast<ErrorSlot*>(png_get_error_ptr(png)))
        std::snprintf(slot->message, sizeof slot->message, "%s", msg);
    png_longjmp(png, 1);
}

void on_warning(png_structp, png_const_charp) {}

template <typename Pixel>
void write_gray(const std::filesystem::path& path, const Image<Pixel>& img, int bit_depth)
{
    if (img.empty())
        throw ValidationError("refusing to write an empty image to " + path.string());
    auto file = open(path, "wb");
    ErrorSlot slot;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &slot, on_error, on_warning);
    if (!png)
        throw IoError("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    struct Guard {
        png_structp* p;
        png_infop* i;
        ~Guard() { png_destroy_write_struct(p, i); }
    } guard{&png, &info};
    if (!info)
        throw IoError("png_create_info_struct failed");

    std::vector<Pixel> row(static_cast<std::size_t>(img.width()));
    if (setjmp(png_jmpbuf(png)))
        throw IoError(path.string() + ": libpng: " + slot.message);

    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()), static_cast<png_uint_32>(img.height()), bit_depth,
                 PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    if (bit_depth == 16)
        png_set_swap(png);  // rows are handed over in host (little-endian) order

    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x)
            row[static_cast<std::size_t>(x)] = img(x, y);
        png_write_row(png, reinterpret_cast<png_const_bytep>(row.data()));
    }
    png_write_end(png, nullptr);
}

}  // namespace

Image<std::uint8_t> read_gray8(const std::filesystem::path& path)
{
    auto file = open(path, "rb");
    ErrorSlot slot;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &slot, on_error, on_warning);
    if (!png)
        throw IoError("png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    struct Guard {
        png_structp* p;
        png_infop* i;
        ~Guard() { png_destroy_read_struct(p, i, nullptr); }
    } guard{&png, &info};
    if (!info)
        throw IoError("png_create_info_struct failed");

    Image<std::uint8_t> img;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png)))
        throw IoError(path.string() + ": libpng: " + slot.message);

    {
        png_init_io(png, file.get());
        png_read_info(png, info);

        const auto color = png_get_color_type(png, info);
        const auto depth = png_get_bit_depth(png, info);
        if (color == PNG_COLOR_TYPE_PALETTE)
            png_set_palette_to_rgb(png);
        if (color == PNG_COLOR_TYPE_GRAY && depth < 8)
            png_set_expand_gray_1_2_4_to_8(png);
        if (depth == 16)
            png_set_strip_16(png);
        if (color & PNG_COLOR_MASK_ALPHA)
            png_set_strip_alpha(png);
        if (png_get_valid(png, info, PNG_INFO_tRNS))
            png_set_tRNS_to_alpha(png), png_set_strip_alpha(png);
        if (color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGB_ALPHA || color == PNG_COLOR_TYPE_PALETTE)
            png_set_rgb_to_gray_fixed(png, 1, -1, -1);
        png_read_update_info(png, info);

        const int width = static_cast<int>(png_get_image_width(png, info));
        const int height = static_cast<int>(png_get_image_height(png, info));
        const auto rowbytes = png_get_rowbytes(png, info);
        if (rowbytes != static_cast<std::size_t>(width))
            png_error(png, "unexpected channel layout");

        img = Image<std::uint8_t>(width, height);
        rows.resize(static_cast<std::size_t>(height));
        for (int y = 0; y < height; ++y)
            rows[static_cast<std::size_t>(y)] = &img(0, y);
        png_read_image(png, rows.data());
        png_read_end(png, nullptr);
    }
    return img;
}

void write_gray8(const std::filesystem::path& path, const Image<std::uint8_t>& img)
{
    write_gray(path, img, 8);
}

void write_gray16(const std::filesystem::path& path, const Image<std::uint16_t>& img)
{
    write_gray(path, img, 16);
}

}  // namespace etsynth::png
