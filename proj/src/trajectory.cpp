#include "etsynth/trajectory.hpp"

#include <cmath>
#include <string>

#include "etsynth/errors.hpp"

namespace etsynth {

void TrajectoryParams::validate(int image_height) const
{
    if (x_jitter.lo > x_jitter.hi)
        throw ValidationError("trajectory: x_jitter range is empty");
    if (y_end_offset.lo > y_end_offset.hi)
        throw ValidationError("trajectory: y_end_offset range is empty");
    if (y_end_offset.lo < 0)
        throw ValidationError("trajectory: y_end_offset must be non-negative");
    if (num_control_points < 4)
        throw ValidationError("trajectory: num_control_points must be >= 4");
    if (samples_per_curve != 0 && samples_per_curve < image_height)
        throw ValidationError("trajectory: samples_per_curve must be >= image height");
}

std::vector<Point2> sample_control_points(const ClavicleLandmarks& landmarks, const TrajectoryParams& params,
                                          int image_height, RandomStream& rng)
{
    params.validate(image_height);
    if (landmarks.low_y < 0 || landmarks.low_y >= image_height || landmarks.mid_x < 0)
        throw ValidationError("trajectory: landmarks outside the image");
    if (landmarks.low_y + params.y_end_offset.hi >= image_height)
        throw ValidationError("trajectory: end point low_y + " + std::to_string(params.y_end_offset.hi) +
                              " exceeds image height " + std::to_string(image_height));

    const double end_y = static_cast<double>(landmarks.low_y + rng.uniform_int(params.y_end_offset.lo, params.y_end_offset.hi));
    const int n = params.num_control_points;
    std::vector<Point2> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double jitter = static_cast<double>(rng.uniform_int(params.x_jitter.lo, params.x_jitter.hi));
        const double y = k == n - 1 ? end_y : end_y * k / (n - 1);
        points.push_back({landmarks.mid_x + jitter, y});
    }
    return points;
}

std::vector<double> natural_spline_moments(const std::vector<double>& t, const std::vector<double>& f)
{
    const std::size_t n = t.size();
    std::vector<double> m(n, 0.0);
    if (n < 3)
        return m;
    // Thomas algorithm on the interior equations, M[0] = M[n-1] = 0
    const std::size_t k = n - 2;
    std::vector<double> diag(k), upper(k), rhs(k);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = t[i] - t[i - 1];
        const double h1 = t[i + 1] - t[i];
        diag[i - 1] = 2.0 * (h0 + h1);
        upper[i - 1] = h1;
        rhs[i - 1] = 6.0 * ((f[i + 1] - f[i]) / h1 - (f[i] - f[i - 1]) / h0);
    }
    for (std::size_t i = 1; i < k; ++i) {
        const double lower = t[i + 1] - t[i];  // h of row i, left neighbour coefficient
        const double w = lower / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    m[k] = rhs[k - 1] / diag[k - 1];
    for (std::size_t i = k - 1; i-- > 0;)
        m[i + 1] = (rhs[i] - upper[i] * m[i + 2]) / diag[i];
    return m;
}

namespace {

struct Spline1D {
    std::vector<double> t, f, m;

    double operator()(double u, std::size_t seg) const
    {
        const double h = t[seg + 1] - t[seg];
        const double a = (t[seg + 1] - u) / h;
        const double b = (u - t[seg]) / h;
        return a * f[seg] + b * f[seg + 1] + ((a * a * a - a) * m[seg] + (b * b * b - b) * m[seg + 1]) * h * h / 6.0;
    }
};

}  // namespace

TrajectoryCurve interpolate_bspline(const std::vector<Point2>& control_points, int samples)
{
    if (control_points.size() < 4)
        throw ValidationError("interpolate_bspline: need at least 4 control points");
    if (samples < 2)
        throw ValidationError("interpolate_bspline: need at least 2 samples");
    for (std::size_t i = 1; i < control_points.size(); ++i)
        if (!(control_points[i].y > control_points[i - 1].y))
            throw ValidationError("interpolate_bspline: control point y must be strictly increasing");

    const std::size_t n = control_points.size();
    std::vector<double> knots(n, 0.0), xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = control_points[i].x;
        ys[i] = control_points[i].y;
        if (i > 0)
            knots[i] = knots[i - 1] + std::hypot(xs[i] - xs[i - 1], ys[i] - ys[i - 1]);
    }
    const Spline1D sx{knots, xs, natural_spline_moments(knots, xs)};
    const Spline1D sy{knots, ys, natural_spline_moments(knots, ys)};

    TrajectoryCurve curve;
    curve.control_points = control_points;
    curve.dense_points.reserve(static_cast<std::size_t>(samples));
    const double total = knots.back();
    std::size_t seg = 0;
    for (int j = 0; j < samples; ++j) {
        const double u = j == samples - 1 ? total : total * j / (samples - 1);
        while (seg + 2 < n && u > knots[seg + 1])
            ++seg;
        curve.dense_points.push_back({sx(u, seg), sy(u, seg)});
    }

    curve.tangents.resize(curve.dense_points.size());
    Point2 last{0.0, 1.0};
    for (std::size_t j = 0; j < curve.dense_points.size(); ++j) {
        const auto& p = curve.dense_points;
        const std::size_t a = j + 1 < p.size() ? j : j - 1;
        const double dx = p[a + 1].x - p[a].x;
        const double dy = p[a + 1].y - p[a].y;
        const double len = std::hypot(dx, dy);
        if (len > 0.0)
            last = {dx / len, dy / len};
        curve.tangents[j] = last;
    }
    return curve;
}

}  // namespace etsynth
