#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "binv/candidate.hpp"

namespace binv {

using Rgba = std::array<std::uint8_t, 4>;

// Row-major RGBA image with value semantics.
struct RasterImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // 4 bytes per pixel

    static RasterImage filled(int width, int height, Rgba color);

    Rgba at(int x, int y) const;
    void set(int x, int y, Rgba color);
    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width && y >= 0 && y < height;
    }
    bool operator==(const RasterImage&) const = default;
};

// Lossless PNG I/O (8-bit gray/RGB/RGBA, non-interlaced). Writer output is
// deterministic so golden-image tests can compare bytes.
std::vector<std::uint8_t> encode_png(const RasterImage& image);
RasterImage decode_png(const std::vector<std::uint8_t>& bytes);

void write_png(const std::string& path, const RasterImage& image);
RasterImage read_png(const std::string& path);

}  // namespace binv
