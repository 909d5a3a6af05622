#pragma once

#include <cstdint>
#include <filesystem>

#include "etsynth/image.hpp"

namespace etsynth::png {

/// Reads any PNG and reduces it to 8-bit gray (color is averaged with Rec.601 weights by libpng,
/// alpha is stripped, 16-bit is truncated).
Image<std::uint8_t> read_gray8(const std::filesystem::path& path);

void write_gray8(const std::filesystem::path& path, const Image<std::uint8_t>& img);
void write_gray16(const std::filesystem::path& path, const Image<std::uint16_t>& img);

}  // namespace etsynth::png
