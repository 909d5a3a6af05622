#include "etsynth/image.hpp"

#include <algorithm>
#include <cmath>

namespace etsynth {
namespace {

struct Tap {
    int index;
    double weight;
};

// Per-output-sample taps for resampling n_in samples to n_out along one axis.
std::vector<std::vector<Tap>> axis_taps(int n_in, int n_out)
{
    std::vector<std::vector<Tap>> taps(static_cast<std::size_t>(n_out));
    const double scale = static_cast<double>(n_in) / n_out;
    for (int o = 0; o < n_out; ++o) {
        auto& t = taps[static_cast<std::size_t>(o)];
        if (scale >= 1.0) {
            // box filter over [o*scale, (o+1)*scale)
            const double a = o * scale;
            const double b = (o + 1) * scale;
            for (int i = static_cast<int>(std::floor(a)); i < static_cast<int>(std::ceil(b)) && i < n_in; ++i) {
                const double cover = std::min(b, i + 1.0) - std::max(a, static_cast<double>(i));
                if (cover > 0.0)
                    t.push_back({i, cover / scale});
            }
        } else {
            const double src = (o + 0.5) * scale - 0.5;
            const double f = std::floor(src);
            const double frac = src - f;
            const int i0 = std::clamp(static_cast<int>(f), 0, n_in - 1);
            const int i1 = std::clamp(static_cast<int>(f) + 1, 0, n_in - 1);
            t.push_back({i0, 1.0 - frac});
            t.push_back({i1, frac});
        }
    }
    return taps;
}

}  // namespace

GrayImage resize(const GrayImage& img, int width, int height)
{
    if (width <= 0 || height <= 0)
        throw ValidationError("resize target must be positive");
    if (img.empty())
        throw ValidationError("cannot resize an empty image");
    if (img.width() == width && img.height() == height)
        return img;

    const auto xt = axis_taps(img.width(), width);
    const auto yt = axis_taps(img.height(), height);

    GrayImage rows(width, img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < width; ++x) {
            double acc = 0.0;
            for (const auto& tap : xt[static_cast<std::size_t>(x)])
                acc += tap.weight * img(tap.index, y);
            rows(x, y) = acc;
        }

    GrayImage out(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            double acc = 0.0;
            for (const auto& tap : yt[static_cast<std::size_t>(y)])
                acc += tap.weight * rows(x, tap.index);
            out(x, y) = acc;
        }
    return out;
}

Image<std::uint8_t> to_u8(const GrayImage& img)
{
    Image<std::uint8_t> out(img.width(), img.height());
    auto& dst = out.pixels();
    const auto& src = img.pixels();
    for (std::size_t i = 0; i < src.size(); ++i)
        dst[i] = static_cast<std::uint8_t>(std::lround(std::clamp(src[i], 0.0, 1.0) * 255.0));
    return out;
}

GrayImage from_u8(const Image<std::uint8_t>& img)
{
    GrayImage out(img.width(), img.height());
    auto& dst = out.pixels();
    const auto& src = img.pixels();
    for (std::size_t i = 0; i < src.size(); ++i)
        dst[i] = src[i] / 255.0;
    return out;
}

}  // namespace etsynth
