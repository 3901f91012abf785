#pragma once

#include "binv/quantize.hpp"
#include "binv/raster.hpp"

namespace binv {

struct OverlayStyle {
    Rgba line_color{255, 0, 0, 255};       // grid lines
    Rgba highlight_color{0, 200, 0, 255};  // selected box / cell
    int line_thickness = 2;
    int highlight_thickness = 4;
    bool index_labels = true;
};

// Grid lines centered on every cell boundary plus the outer border, with
// optional (row,col) labels at each cell's top-left. Input is not mutated.
RasterImage draw_grid(const RasterImage& image, const GridSpec& spec,
                      const OverlayStyle& style);

// Rectangle outline for one candidate box. Out-of-bounds boxes are clamped to
// the image; `clamped`, when given, reports whether clamping happened.
RasterImage highlight_box(const RasterImage& image, const PixelBox& box,
                          const OverlayStyle& style, bool* clamped = nullptr);

// Full grid plus an outline around cell (row, col), both 1-indexed.
RasterImage highlight_cell(const RasterImage& image, const GridSpec& spec, int row,
                           int col, const OverlayStyle& style);

// 3x5 bitmap text (digits and "(),"), white with a dark outline. Exposed for
// deterministic label tests.
void draw_label(RasterImage& image, int x, int y, const std::string& text);

}  // namespace binv
