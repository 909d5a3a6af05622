#include "etsynth/compositor.hpp"

#include <algorithm>
#include <cmath>

namespace etsynth {

TubeOverlay stamp_tube(const TrajectoryCurve& curve, const ProjectionProfile& profile, CanvasSize canvas,
                       double mask_threshold)
{
    if (canvas.width <= 0 || canvas.height <= 0)
        throw ValidationError("stamp_tube: canvas must be non-empty");
    if (!(mask_threshold > 0.0 && mask_threshold < 1.0))
        throw ValidationError("stamp_tube: mask threshold must lie in (0, 1)");
    if (curve.tangents.size() != curve.dense_points.size())
        throw ValidationError("stamp_tube: tangents and dense points differ in length");
    for (const auto& p : curve.dense_points)
        if (p.x < kStampMargin || p.x > canvas.width - 1 - kStampMargin)
            throw ValidationError("stamp_tube: curve leaves the " + std::to_string(kStampMargin) +
                                  " px horizontal margin at x = " + std::to_string(p.x));

    TubeOverlay overlay{GrayImage(canvas.width, canvas.height, 0.0), profile.angle_deg, mask_threshold};
    GrayImage& opacity = overlay.opacity;
    auto deposit = [&](int x, int y, double v) {
        if (v > 0.0 && opacity.contains(x, y))
            opacity(x, y) = std::max(opacity(x, y), v);
    };

    constexpr double centre = (kProfileSamples - 1) / 2.0;
    for (std::size_t j = 0; j < curve.dense_points.size(); ++j) {
        const Point2 p = curve.dense_points[j];
        const Point2 t = curve.tangents[j];
        const Point2 normal{t.y, -t.x};
        for (std::size_t k = 0; k < kProfileSamples; ++k) {
            const double value = profile.samples[k];
            if (value <= 0.0)
                continue;
            const double off = static_cast<double>(k) - centre;
            const double qx = p.x + off * normal.x;
            const double qy = p.y + off * normal.y;
            const double fx = std::floor(qx);
            const double fy = std::floor(qy);
            const double ax = qx - fx;
            const double ay = qy - fy;
            const int x0 = static_cast<int>(fx);
            const int y0 = static_cast<int>(fy);
            deposit(x0, y0, value * (1.0 - ax) * (1.0 - ay));
            deposit(x0 + 1, y0, value * ax * (1.0 - ay));
            deposit(x0, y0 + 1, value * (1.0 - ax) * ay);
            deposit(x0 + 1, y0 + 1, value * ax * ay);
        }
    }
    return overlay;
}

BinaryImage derive_mask(const TubeOverlay& overlay)
{
    BinaryImage mask(overlay.opacity.width(), overlay.opacity.height(), 0);
    const auto& src = overlay.opacity.pixels();
    auto& dst = mask.pixels();
    for (std::size_t i = 0; i < src.size(); ++i)
        dst[i] = src[i] >= overlay.mask_threshold ? 1 : 0;
    return mask;
}

GrayImage blend(const GrayImage& radiograph, const TubeOverlay& overlay, double weight)
{
    if (!radiograph.same_shape(overlay.opacity))
        throw ValidationError("blend: radiograph is " + std::to_string(radiograph.width()) + "x" +
                              std::to_string(radiograph.height()) + " but overlay is " +
                              std::to_string(overlay.opacity.width()) + "x" + std::to_string(overlay.opacity.height()));
    if (!(weight >= 0.0 && weight <= 1.0))
        throw ValidationError("blend: weight must lie in [0, 1]");

    GrayImage out = radiograph;
    const auto& alpha = overlay.opacity.pixels();
    auto& dst = out.pixels();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        if (alpha[i] == 0.0)
            continue;
        const double a = weight * alpha[i];
        dst[i] = (1.0 - a) * dst[i] + a;
    }
    return out;
}

}  // namespace etsynth
