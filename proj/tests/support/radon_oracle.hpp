#pragma once

// Brute-force projection oracle, kept independent of radon_project: the grid
// is rotated onto a padded canvas with ordinary pixel-space bilinear warping
// and the canvas columns are summed.

#include <cmath>
#include <numbers>
#include <vector>

#include "etsynth/image.hpp"

namespace etsynth::fixtures {

inline std::vector<double> oracle_projection(const GrayImage& grid, double angle_deg)
{
    const int n = grid.width();
    const int pad = static_cast<int>(std::ceil(n * std::numbers::sqrt2)) + 2;
    const double a = angle_deg * std::numbers::pi / 180.0;

    // Canvas pixel (cx, cy), y down, centred on the grid centre. A canvas
    // column is one ray; rotating the canvas back by the projection angle
    // (counter-clockwise on screen) finds the grid pixel it came from.
    const double cc = (pad - 1) / 2.0;
    const double gc = (n - 1) / 2.0;
    GrayImage canvas(n, pad, 0.0);
    for (int cy = 0; cy < pad; ++cy)
        for (int cx = 0; cx < n; ++cx) {
            const double px = cx - gc;
            const double py = cy - cc;
            const double gx = gc + px * std::cos(a) + py * std::sin(a);
            const double gy = gc - px * std::sin(a) + py * std::cos(a);
            const int x0 = static_cast<int>(std::floor(gx));
            const int y0 = static_cast<int>(std::floor(gy));
            const double fx = gx - x0;
            const double fy = gy - y0;
            double v = 0.0;
            for (int dy = 0; dy <= 1; ++dy)
                for (int dx = 0; dx <= 1; ++dx) {
                    const int x = x0 + dx;
                    const int y = y0 + dy;
                    if (x >= 0 && y >= 0 && x < n && y < n)
                        v += grid(x, y) * (dx ? fx : 1.0 - fx) * (dy ? fy : 1.0 - fy);
                }
            canvas(cx, cy) = v;
        }

    std::vector<double> proj(static_cast<std::size_t>(n), 0.0);
    for (int cx = 0; cx < n; ++cx)
        for (int cy = 0; cy < pad; ++cy)
            proj[static_cast<std::size_t>(cx)] += canvas(cx, cy);
    return proj;
}

}  // namespace etsynth::fixtures
