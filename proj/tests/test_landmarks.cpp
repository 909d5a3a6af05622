#include <gtest/gtest.h>

#include <cmath>

#include "corpus.hpp"
#include "etsynth/landmarks.hpp"
#include "etsynth/png_io.hpp"

using namespace etsynth;

namespace {

void fill_rect(BinaryImage& m, int x0, int y0, int w, int h)
{
    for (int y = y0; y < y0 + h; ++y)
        for (int x = x0; x < x0 + w; ++x)
            m(x, y) = 1;
}

ClavicleMask two_squares()
{
    // columns 55..64 and 155..164 -> centroids 59.5 and 159.5; bottom row 80
    ClavicleMask m{BinaryImage(224, 224, 0), "case"};
    fill_rect(m.pixels, 55, 71, 10, 10);
    fill_rect(m.pixels, 155, 71, 10, 10);
    return m;
}

BinaryImage shifted(const BinaryImage& m, int dx, int dy)
{
    BinaryImage out(m.width(), m.height(), 0);
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x)
            if (m(x, y)) {
                EXPECT_TRUE(out.contains(x + dx, y + dy)) << "shift would clip";
                if (out.contains(x + dx, y + dy))
                    out(x + dx, y + dy) = 1;
            }
    return out;
}

}  // namespace

TEST(ConnectedComponents, FourConnectivitySplitsDiagonalNeighbours)
{
    BinaryImage m(4, 4, 0);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 1) = 1;
    Image<int> labels;
    const auto comps = connected_components(m, &labels);
    ASSERT_EQ(comps.size(), 2u);
    EXPECT_EQ(comps[0].area, 1);
    EXPECT_EQ(comps[1].area, 2);
    EXPECT_EQ(labels(0, 0), 1);
    EXPECT_EQ(labels(2, 1), 2);
    EXPECT_EQ(labels(3, 3), 0);
    EXPECT_DOUBLE_EQ(comps[1].centroid_x, 1.5);
}

TEST(ExtractLandmarks, TwoSquares)
{
    const auto lm = extract_landmarks(two_squares());
    EXPECT_EQ(lm.mid_x, 110);  // (59.5 + 159.5) / 2 = 109.5 rounds up
    EXPECT_EQ(lm.low_y, 80);
}

TEST(ExtractLandmarks, SquaresWithIntegerCentroids)
{
    // columns 55..65 and 155..165 (11 wide) -> centroids 60 and 160
    ClavicleMask m{BinaryImage(224, 224, 0), "c"};
    fill_rect(m.pixels, 55, 70, 11, 11);
    fill_rect(m.pixels, 155, 70, 11, 11);
    EXPECT_EQ(extract_landmarks(m), (ClavicleLandmarks{110, 80}));
}

TEST(ExtractLandmarks, SingleBlobIsAnError)
{
    ClavicleMask m{BinaryImage(224, 224, 0), "lonely_case"};
    fill_rect(m.pixels, 40, 40, 30, 10);
    try {
        extract_landmarks(m);
        FAIL() << "expected LandmarkError";
    } catch (const LandmarkError& e) {
        EXPECT_EQ(e.source_id(), "lonely_case");
        EXPECT_NE(std::string(e.what()).find("lonely_case"), std::string::npos);
    }
}

TEST(ExtractLandmarks, SpeckleIsIgnored)
{
    auto m = two_squares();
    // 24 px speckle below both clavicles must neither count nor move low_y
    fill_rect(m.pixels, 100, 150, 6, 4);
    EXPECT_EQ(extract_landmarks(m), (ClavicleLandmarks{110, 80}));

    ClavicleMask one{BinaryImage(224, 224, 0), "x"};
    fill_rect(one.pixels, 10, 10, 10, 10);
    fill_rect(one.pixels, 100, 100, 5, 4);  // 20 px
    EXPECT_THROW(extract_landmarks(one), LandmarkError);
}

TEST(ExtractLandmarks, PicksTwoLargest)
{
    auto m = two_squares();
    fill_rect(m.pixels, 100, 120, 6, 6);  // 36 px, third largest
    EXPECT_EQ(extract_landmarks(m), (ClavicleLandmarks{110, 80}));
}

TEST(ExtractLandmarks, NonBinaryRejected)
{
    auto m = two_squares();
    m.pixels(0, 0) = 7;
    EXPECT_THROW(extract_landmarks(m), ValidationError);
}

TEST(ExtractLandmarks, MirroredFixture)
{
    ClavicleMask m{BinaryImage(224, 224, 0), "c"};
    fill_rect(m.pixels, 55, 70, 11, 11);
    fill_rect(m.pixels, 151, 66, 11, 15);  // centroid 156, midpoint 108
    const auto original = extract_landmarks(m);
    ASSERT_EQ(original.mid_x, 108);
    const auto mirrored = extract_landmarks({flip_horizontal(m.pixels), "c"});
    EXPECT_EQ(mirrored.mid_x, 223 - original.mid_x);
    EXPECT_EQ(mirrored.low_y, original.low_y);
}

TEST(ExtractLandmarks, FlipAndTranslationProperties)
{
    // Random ellipse pairs. Flip equivariance is exact except when the centroid
    // midpoint is an exact half-integer, where round-half-up (needed for exact
    // translation equivariance) shifts the mirrored result by one column.
    RandomStream rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int size = 224;
        // clavicles span mid +- 72 px; keep every shift inside the frame
        const int mid = static_cast<int>(rng.uniform_int(100, 124));
        const int low = static_cast<int>(rng.uniform_int(40, 120));
        BinaryImage mask = fixtures::make_clavicle_mask(size, mid, low);
        // asymmetric perturbation so centroids are not trivially mirrored
        const int bump_x = static_cast<int>(rng.uniform_int(25, 60));
        for (int y = low - 6; y <= low - 3; ++y)
            for (int x = bump_x; x < bump_x + 5; ++x)
                mask(x, y) = 1;
        const ClavicleMask m{mask, "p"};
        const auto base = extract_landmarks(m);

        auto comps = connected_components(mask);
        std::erase_if(comps, [](const Component& c) { return c.area < kMinClavicleArea; });
        std::stable_sort(comps.begin(), comps.end(), [](auto& a, auto& b) { return a.area > b.area; });
        const double exact_mid = (comps[0].centroid_x + comps[1].centroid_x) / 2.0;
        const bool half = std::abs(exact_mid - std::floor(exact_mid) - 0.5) < 1e-9;

        const auto flipped = extract_landmarks({flip_horizontal(mask), "p"});
        EXPECT_EQ(flipped.low_y, base.low_y);
        if (half)
            EXPECT_EQ(flipped.mid_x, size - 1 - base.mid_x + 1);
        else
            EXPECT_EQ(flipped.mid_x, size - 1 - base.mid_x);

        const int dx = static_cast<int>(rng.uniform_int(-20, 20));
        const int dy = static_cast<int>(rng.uniform_int(-20, 20));
        const auto moved = extract_landmarks({shifted(mask, dx, dy), "p"});
        EXPECT_EQ(moved.mid_x, base.mid_x + dx);
        EXPECT_EQ(moved.low_y, base.low_y + dy);

        EXPECT_EQ(extract_landmarks(m), base);
        ++checked;
    }
    EXPECT_EQ(checked, 300);
}

TEST(LoadClavicleMask, ReadsNonzeroAsForeground)
{
    fixtures::TempDir dir("mask");
    Image<std::uint8_t> raw(224, 224, 0);
    raw(3, 4) = 17;
    raw(5, 6) = 255;
    png::write_gray8(dir.path() / "abc_clavicle.png", raw);
    const auto m = load_clavicle_mask(dir.path(), "abc", 224);
    EXPECT_EQ(m.source_id, "abc");
    EXPECT_EQ(m.pixels(3, 4), 1);
    EXPECT_EQ(m.pixels(5, 6), 1);
    EXPECT_EQ(m.pixels(0, 0), 0);

    EXPECT_THROW(load_clavicle_mask(dir.path(), "abc", 256), ValidationError);
    EXPECT_THROW(load_clavicle_mask(dir.path(), "missing", 224), IoError);
}
