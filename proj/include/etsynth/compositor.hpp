#pragma once

#include "etsynth/image.hpp"
#include "etsynth/trajectory.hpp"
#include "etsynth/tube_profile.hpp"

namespace etsynth {

inline constexpr double kDefaultMaskThreshold = 0.05;
/// Half the profile width plus one pixel of bilinear spread.
inline constexpr int kStampMargin = 8;

struct TubeOverlay {
    GrayImage opacity;
    double profile_angle = 0.0;
    double mask_threshold = kDefaultMaskThreshold;
};

struct CanvasSize {
    int width = 0;
    int height = 0;
};

/// Lays the profile across the curve at every dense point, along the normal
/// (t_y, -t_x) so that sample 0 is on the left of a downward tube. Each sample
/// is splatted bilinearly; overlapping contributions keep the per-pixel maximum.
/// Rows outside the canvas are clipped; throws ValidationError if any dense
/// point is closer than 8 px to the left or right edge.
TubeOverlay stamp_tube(const TrajectoryCurve& curve, const ProjectionProfile& profile, CanvasSize canvas,
                       double mask_threshold = kDefaultMaskThreshold);

/// 1 where opacity >= overlay.mask_threshold.
BinaryImage derive_mask(const TubeOverlay& overlay);

/// out = (1 - w*o) * radiograph + w*o, brightening toward white. Pixels with
/// zero opacity are copied untouched. Throws ValidationError on shape mismatch
/// or w outside [0, 1].
GrayImage blend(const GrayImage& radiograph, const TubeOverlay& overlay, double weight);

}  // namespace etsynth
