#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "etsynth/errors.hpp"

namespace etsynth {

/// Row-major single-channel image. Row 0 is the top of the picture.
template <typename T>
class Image {
public:
    Image() = default;
    Image(int width, int height, T fill = T{})
        : width_(width), height_(height)
    {
        if (width < 0 || height < 0)
            throw ValidationError("image dimensions must be non-negative");
        data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    bool contains(int x, int y) const noexcept
    {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }

    T& operator()(int x, int y) noexcept { return data_[index(x, y)]; }
    const T& operator()(int x, int y) const noexcept { return data_[index(x, y)]; }

    std::vector<T>& pixels() noexcept { return data_; }
    const std::vector<T>& pixels() const noexcept { return data_; }

    bool same_shape(const Image& other) const noexcept
    {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const Image&, const Image&) = default;

private:
    std::size_t index(int x, int y) const noexcept
    {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

using GrayImage = Image<double>;
using BinaryImage = Image<std::uint8_t>;

/// Mirror columns: x -> width - 1 - x.
template <typename T>
Image<T> flip_horizontal(const Image<T>& img)
{
    Image<T> out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            out(img.width() - 1 - x, y) = img(x, y);
    return out;
}

/// Area-weighted resampling. Exact box averaging when shrinking, bilinear when enlarging.
GrayImage resize(const GrayImage& img, int width, int height);

/// [0,1] -> 0..255 with round-to-nearest and clamping.
Image<std::uint8_t> to_u8(const GrayImage& img);
GrayImage from_u8(const Image<std::uint8_t>& img);

}  // namespace etsynth
