#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "etsynth/image.hpp"

namespace etsynth {

/// Physical cross-section of an endotracheal tube slice, in simulation-grid units.
///
/// The tube is a hollow cylinder (annulus between inner and outer diameter) of
/// low-attenuation material with a radiopaque marker strip embedded in its wall.
/// The defaults describe an adult tube: {c1, c2, d1, d2, t} = {0.1, 1, 160, 100, 20}.
struct TubeCrossSection {
    double outer_diameter = 160.0;
    double inner_diameter = 100.0;
    double strip_thickness = 20.0;
    double tube_attenuation = 0.1;
    double marker_attenuation = 1.0;
    int grid_size = 256;

    /// Throws ValidationError naming the first violated constraint.
    void validate() const;

    double wall_thickness() const noexcept { return (outer_diameter - inner_diameter) / 2.0; }
};

/// Square grid of attenuation coefficients; row 0 is the top (12 o'clock side).
using AttenuationGrid = GrayImage;

inline constexpr std::size_t kProfileSamples = 15;
inline constexpr std::array<int, 4> kCanonicalAngles{0, 30, 60, 90};

/// Normalized tube intensity profile across the tube, sampled at 15 points.
struct ProjectionProfile {
    double angle_deg = 0.0;
    std::array<double, kProfileSamples> samples{};
};

/// Draws the cross-section: c1 annulus, c2 marker rectangle on the +y wall, zero elsewhere.
///
/// Pixel (col,row) covers the continuous square centered at
/// (col + 0.5 - N/2, N/2 - row - 0.5), so the tube axis sits on the grid center.
/// The marker is the part of the wall inside the vertical strip |x| <= t/2 on
/// the +y side; it replaces the wall material there.
AttenuationGrid rasterize_cross_section(const TubeCrossSection& spec);

/// Parallel-beam line integrals of `grid` at `angle_deg` in [0, 180).
///
/// Bin i sits at detector offset s = i + 0.5 - N/2 along the axis
/// u = (cos a, sin a). Each ray runs along v = (-sin a, cos a) and is sampled
/// with unit steps, bilinear interpolation and zero padding, so at 0 degrees
/// bin i is exactly the sum of column i.
std::vector<double> radon_project(const AttenuationGrid& grid, double angle_deg);

/// Crops the projection to its positive support, resamples it linearly to 15
/// points (both endpoints included) and divides by the maximum.
/// Throws ValidationError when the projection has no positive element.
ProjectionProfile sample_profile(std::span<const double> raw_projection, double angle_deg = 0.0);

/// rasterize -> project -> sample for one angle.
ProjectionProfile tube_profile(const TubeCrossSection& spec, double angle_deg);

namespace debug {

/// Grid scaled so its maximum maps to 65535.
void write_grid_png16(const std::filesystem::path& path, const AttenuationGrid& grid);

/// One row per projection, scaled by the global maximum.
void write_projections_png16(const std::filesystem::path& path,
                             std::span<const std::vector<double>> projections);

/// Rows of `angle,s0,...,s14`, with a header line.
void write_profiles_csv(const std::filesystem::path& path, std::span<const ProjectionProfile> profiles);

}  // namespace debug

}  // namespace etsynth
