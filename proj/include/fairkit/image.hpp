#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace fairkit {

/// 8-bit interleaved RGB raster, row-major.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    RgbImage() = default;
    RgbImage(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}

    bool empty() const noexcept { return width <= 0 || height <= 0; }

    std::uint8_t& at(int x, int y, int c) {
        return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    std::uint8_t at(int x, int y, int c) const {
        return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }

    bool operator==(const RgbImage&) const = default;
};

/// Reads any 8-bit or 16-bit PNG and converts it to 8-bit RGB.
RgbImage read_png(const std::filesystem::path& path);

/// Writes 8-bit RGB without time or text chunks, so equal images give equal bytes.
void write_png(const RgbImage& image, const std::filesystem::path& path);

}  // namespace fairkit
