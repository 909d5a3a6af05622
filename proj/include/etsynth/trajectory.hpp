#pragma once

#include <cstdint>
#include <vector>

#include "etsynth/landmarks.hpp"
#include "etsynth/random.hpp"

namespace etsynth {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

struct IntRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    friend bool operator==(const IntRange&, const IntRange&) = default;
};

struct TrajectoryParams {
    IntRange x_jitter{-2, 2};
    IntRange y_end_offset{0, 30};
    int num_control_points = 4;
    /// 0 selects 4 x image height.
    int samples_per_curve = 0;

    void validate(int image_height) const;
    int resolved_samples(int image_height) const noexcept
    {
        return samples_per_curve > 0 ? samples_per_curve : 4 * image_height;
    }
};

struct TrajectoryCurve {
    std::vector<Point2> control_points;
    std::vector<Point2> dense_points;
    /// Unit direction at each dense point.
    std::vector<Point2> tangents;
};

/// Control points from the image top down to low_y + U{y_end_offset}, evenly
/// spaced in y, each x = mid_x + U{x_jitter} drawn independently.
///
/// Draw order: end offset first, then one jitter per point from the top.
/// Throws ValidationError if low_y + y_end_offset.hi reaches image_height.
std::vector<Point2> sample_control_points(const ClavicleLandmarks& landmarks, const TrajectoryParams& params,
                                          int image_height, RandomStream& rng);

/// Natural cubic spline through the control points in chord-length
/// parameterization, sampled at `samples` uniformly spaced parameter values
/// (both ends included). Requires >= 4 points with strictly increasing y.
TrajectoryCurve interpolate_bspline(const std::vector<Point2>& control_points, int samples);

/// Second-derivative solve for a natural cubic spline over knots t, values f.
/// Exposed for tests.
std::vector<double> natural_spline_moments(const std::vector<double>& t, const std::vector<double>& f);

}  // namespace etsynth
