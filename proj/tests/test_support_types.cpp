#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <numeric>

#include "corpus.hpp"
#include "etsynth/png_io.hpp"
#include "etsynth/random.hpp"

using namespace etsynth;

TEST(RandomStream, UniformIntCoversRangeEvenly)
{
    RandomStream rng(123);
    std::array<int, 5> hist{};
    for (int i = 0; i < 50000; ++i) {
        const auto v = rng.uniform_int(-2, 2);
        ASSERT_GE(v, -2);
        ASSERT_LE(v, 2);
        ++hist[static_cast<std::size_t>(v + 2)];
    }
    for (int h : hist)
        EXPECT_NEAR(h, 10000, 500);
    EXPECT_EQ(rng.uniform_int(4, 4), 4);
    EXPECT_THROW(rng.uniform_int(3, 2), ValidationError);
}

TEST(RandomStream, UniformRealInRange)
{
    RandomStream rng(5);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double v = rng.uniform_real(0.1, 0.2);
        ASSERT_GE(v, 0.1);
        ASSERT_LT(v, 0.2);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    EXPECT_LT(lo, 0.101);
    EXPECT_GT(hi, 0.199);
}

TEST(RandomStream, FrozenSequence)
{
    // mt19937_64 is fully specified; the mapping on top must not drift either
    RandomStream rng(42);
    std::vector<std::int64_t> draws;
    for (int i = 0; i < 8; ++i)
        draws.push_back(rng.uniform_int(0, 30));
    RandomStream again(42);
    for (auto d : draws)
        EXPECT_EQ(again.uniform_int(0, 30), d);
    EXPECT_EQ(RandomStream(5489).next_u64(), 14514284786278117030ULL);
}

TEST(DeriveSeed, StableAndSensitive)
{
    EXPECT_EQ(derive_seed(7, "00000001_000"), derive_seed(7, "00000001_000"));
    EXPECT_NE(derive_seed(7, "00000001_000"), derive_seed(8, "00000001_000"));
    EXPECT_NE(derive_seed(7, "00000001_000"), derive_seed(7, "00000002_000"));
}

TEST(Shuffle, IsAPermutation)
{
    std::vector<int> v(100);
    std::iota(v.begin(), v.end(), 0);
    RandomStream rng(9);
    auto w = v;
    shuffle(w, rng);
    EXPECT_NE(v, w);
    std::sort(w.begin(), w.end());
    EXPECT_EQ(v, w);
}

TEST(Resize, ShrinkAveragesBoxes)
{
    GrayImage img(4, 2);
    for (int x = 0; x < 4; ++x) {
        img(x, 0) = x;
        img(x, 1) = x + 4;
    }
    const auto small = resize(img, 2, 1);
    EXPECT_DOUBLE_EQ(small(0, 0), (0 + 1 + 4 + 5) / 4.0);
    EXPECT_DOUBLE_EQ(small(1, 0), (2 + 3 + 6 + 7) / 4.0);
}

TEST(Resize, ConstantStaysConstant)
{
    const GrayImage img(100, 70, 0.3);
    for (auto [w, h] : {std::pair{224, 224}, std::pair{33, 17}, std::pair{100, 300}}) {
        const auto out = resize(img, w, h);
        for (double v : out.pixels())
            EXPECT_NEAR(v, 0.3, 1e-12);
    }
}

TEST(Png, RoundTripsGray8And16)
{
    fixtures::TempDir dir("png");
    Image<std::uint8_t> a(7, 5);
    for (std::size_t i = 0; i < a.size(); ++i)
        a.pixels()[i] = static_cast<std::uint8_t>(i * 7);
    png::write_gray8(dir.path() / "a.png", a);
    EXPECT_EQ(png::read_gray8(dir.path() / "a.png"), a);

    Image<std::uint16_t> b(3, 3);
    b(1, 1) = 65535;
    b(0, 2) = 256;
    png::write_gray16(dir.path() / "b.png", b);
    const auto back = png::read_gray8(dir.path() / "b.png");  // 16-bit is truncated to the high byte
    EXPECT_EQ(back(1, 1), 255);
    EXPECT_EQ(back(0, 2), 1);
}

TEST(Png, ErrorsAreIoErrors)
{
    fixtures::TempDir dir("png");
    EXPECT_THROW(png::read_gray8(dir.path() / "missing.png"), IoError);
    std::ofstream(dir.path() / "junk.png") << "definitely not a png";
    EXPECT_THROW(png::read_gray8(dir.path() / "junk.png"), IoError);
}

TEST(Quantize, RoundsAndClamps)
{
    GrayImage g(4, 1);
    g(0, 0) = -0.5;
    g(1, 0) = 0.5;
    g(2, 0) = 1.0;
    g(3, 0) = 2.0;
    const auto q = to_u8(g);
    EXPECT_EQ(q(0, 0), 0);
    EXPECT_EQ(q(1, 0), 128);
    EXPECT_EQ(q(2, 0), 255);
    EXPECT_EQ(q(3, 0), 255);
}
