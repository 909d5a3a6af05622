#include "etsynth/tube_profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "etsynth/png_io.hpp"

namespace etsynth {

void TubeCrossSection::validate() const
{
    auto fail = [](const std::string& what) { throw ValidationError("TubeCrossSection: " + what); };
    if (grid_size <= 0)
        fail("grid_size must be positive");
    if (!(inner_diameter > 0.0))
        fail("inner diameter d2 must be > 0");
    if (!(inner_diameter < outer_diameter))
        fail("inner diameter d2 must be < outer diameter d1");
    if (!(outer_diameter <= grid_size))
        fail("outer diameter d1 must be <= grid_size");
    if (!(strip_thickness > 0.0))
        fail("strip thickness t must be > 0");
    if (!(strip_thickness <= wall_thickness()))
        fail("strip thickness t must be <= (d1 - d2) / 2");
    if (!(tube_attenuation > 0.0))
        fail("tube attenuation c1 must be > 0");
    if (!(tube_attenuation < marker_attenuation))
        fail("tube attenuation c1 must be < marker attenuation c2");
}

AttenuationGrid rasterize_cross_section(const TubeCrossSection& spec)
{
    spec.validate();
    const int n = spec.grid_size;
    const double half = n / 2.0;
    const double r_in = spec.inner_diameter / 2.0;
    const double r_out = spec.outer_diameter / 2.0;
    const double half_strip = spec.strip_thickness / 2.0;

    AttenuationGrid grid(n, n, 0.0);
    for (int row = 0; row < n; ++row) {
        const double y = half - row - 0.5;
        for (int col = 0; col < n; ++col) {
            const double x = col + 0.5 - half;
            const double r = std::hypot(x, y);
            if (r < r_in || r > r_out)
                continue;
            grid(col, row) = std::abs(x) <= half_strip && y > 0.0 ? spec.marker_attenuation : spec.tube_attenuation;
        }
    }
    return grid;
}

namespace {

double bilinear_zero_padded(const AttenuationGrid& grid, double fx, double fy)
{
    const double x0f = std::floor(fx);
    const double y0f = std::floor(fy);
    const int x0 = static_cast<int>(x0f);
    const int y0 = static_cast<int>(y0f);
    const double ax = fx - x0f;
    const double ay = fy - y0f;
    auto at = [&](int x, int y) { return grid.contains(x, y) ? grid(x, y) : 0.0; };
    return (1.0 - ay) * ((1.0 - ax) * at(x0, y0) + ax * at(x0 + 1, y0))
           + ay * ((1.0 - ax) * at(x0, y0 + 1) + ax * at(x0 + 1, y0 + 1));
}

}  // namespace

std::vector<double> radon_project(const AttenuationGrid& grid, double angle_deg)
{
    if (!(angle_deg >= 0.0 && angle_deg < 180.0))
        throw ValidationError("radon_project: angle must lie in [0, 180)");
    if (grid.width() != grid.height() || grid.empty())
        throw ValidationError("radon_project: grid must be square and non-empty");

    const int n = grid.width();
    const double half = n / 2.0;
    const double a = angle_deg * std::numbers::pi / 180.0;
    const double c = std::cos(a);
    const double s = std::sin(a);

    // ray samples cover the grid diagonal; an even count keeps them on
    // half-integer offsets, i.e. pixel centres at 0 degrees
    int steps = static_cast<int>(std::ceil(n * std::numbers::sqrt2)) + 2;
    steps += steps % 2;

    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        const double offset = i + 0.5 - half;
        double acc = 0.0;
        for (int k = 0; k < steps; ++k) {
            const double t = k + 0.5 - steps / 2.0;
            // world point offset*u + t*v, y up
            const double x = offset * c - t * s;
            const double y = offset * s + t * c;
            acc += bilinear_zero_padded(grid, x + half - 0.5, half - 0.5 - y);
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

ProjectionProfile sample_profile(std::span<const double> raw_projection, double angle_deg)
{
    constexpr double kDust = 1e-9;
    auto positive = [](double v) { return v >= kDust; };
    const auto first = std::find_if(raw_projection.begin(), raw_projection.end(), positive);
    if (first == raw_projection.end())
        throw ValidationError("sample_profile: projection has empty support");
    const auto last = std::find_if(raw_projection.rbegin(), raw_projection.rend(), positive).base();

    std::vector<double> support(first, last);
    for (double& v : support)
        if (v < kDust)
            v = 0.0;

    ProjectionProfile profile;
    profile.angle_deg = angle_deg;
    const std::size_t m = support.size();
    for (std::size_t j = 0; j < kProfileSamples; ++j) {
        if (m == 1) {
            profile.samples[j] = support[0];
            continue;
        }
        const double pos = static_cast<double>(j) * static_cast<double>(m - 1) / (kProfileSamples - 1);
        const auto lo = std::min(static_cast<std::size_t>(pos), m - 2);
        const double frac = pos - static_cast<double>(lo);
        profile.samples[j] = (1.0 - frac) * support[lo] + frac * support[lo + 1];
    }

    const double peak = *std::max_element(profile.samples.begin(), profile.samples.end());
    for (double& v : profile.samples)
        v /= peak;
    return profile;
}

ProjectionProfile tube_profile(const TubeCrossSection& spec, double angle_deg)
{
    const auto projection = radon_project(rasterize_cross_section(spec), angle_deg);
    return sample_profile(projection, angle_deg);
}

namespace debug {

void write_grid_png16(const std::filesystem::path& path, const AttenuationGrid& grid)
{
    const double peak = grid.empty() ? 0.0 : *std::max_element(grid.pixels().begin(), grid.pixels().end());
    Image<std::uint16_t> out(grid.width(), grid.height());
    for (std::size_t i = 0; i < grid.size(); ++i)
        out.pixels()[i] = peak > 0.0 ? static_cast<std::uint16_t>(std::lround(grid.pixels()[i] / peak * 65535.0)) : 0;
    png::write_gray16(path, out);
}

void write_projections_png16(const std::filesystem::path& path, std::span<const std::vector<double>> projections)
{
    if (projections.empty())
        throw ValidationError("no projections to write");
    const int width = static_cast<int>(projections.front().size());
    double peak = 0.0;
    for (const auto& p : projections) {
        if (static_cast<int>(p.size()) != width)
            throw ValidationError("projections differ in length");
        for (double v : p)
            peak = std::max(peak, v);
    }
    Image<std::uint16_t> out(width, static_cast<int>(projections.size()));
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < width; ++x) {
            const double v = projections[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
            out(x, y) = peak > 0.0 ? static_cast<std::uint16_t>(std::lround(std::max(v, 0.0) / peak * 65535.0)) : 0;
        }
    png::write_gray16(path, out);
}

void write_profiles_csv(const std::filesystem::path& path, std::span<const ProjectionProfile> profiles)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path.string());
    out << "angle";
    for (std::size_t j = 0; j < kProfileSamples; ++j)
        out << ",s" << j;
    out << '\n';
    out.precision(17);
    for (const auto& p : profiles) {
        out << p.angle_deg;
        for (double v : p.samples)
            out << ',' << v;
        out << '\n';
    }
    if (!out)
        throw IoError("write failed: " + path.string());
}

}  // namespace debug
}  // namespace etsynth
