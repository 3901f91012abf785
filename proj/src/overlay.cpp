#include "binv/overlay.hpp"

#include <algorithm>

namespace binv {

namespace {

// 3x5 glyphs, row-major bitmasks (bit 2 = leftmost column).
struct Glyph {
    char ch;
    std::uint8_t rows[5];
};

constexpr Glyph kFont[] = {
    {'0', {0b111, 0b101, 0b101, 0b101, 0b111}},
    {'1', {0b010, 0b110, 0b010, 0b010, 0b111}},
    {'2', {0b111, 0b001, 0b111, 0b100, 0b111}},
    {'3', {0b111, 0b001, 0b111, 0b001, 0b111}},
    {'4', {0b101, 0b101, 0b111, 0b001, 0b001}},
    {'5', {0b111, 0b100, 0b111, 0b001, 0b111}},
    {'6', {0b111, 0b100, 0b111, 0b101, 0b111}},
    {'7', {0b111, 0b001, 0b010, 0b010, 0b010}},
    {'8', {0b111, 0b101, 0b111, 0b101, 0b111}},
    {'9', {0b111, 0b101, 0b111, 0b001, 0b111}},
    {'(', {0b001, 0b010, 0b010, 0b010, 0b001}},
    {')', {0b100, 0b010, 0b010, 0b010, 0b100}},
    {',', {0b000, 0b000, 0b000, 0b010, 0b100}},
};

const Glyph* find_glyph(char c) {
    for (const auto& g : kFont)
        if (g.ch == c) return &g;
    return nullptr;
}

void fill_rect(RasterImage& img, std::int64_t x0, std::int64_t y0, std::int64_t x1,
               std::int64_t y1, Rgba color) {
    x0 = std::max<std::int64_t>(x0, 0);
    y0 = std::max<std::int64_t>(y0, 0);
    x1 = std::min<std::int64_t>(x1, img.width);
    y1 = std::min<std::int64_t>(y1, img.height);
    for (std::int64_t y = y0; y < y1; ++y)
        for (std::int64_t x = x0; x < x1; ++x)
            img.set(static_cast<int>(x), static_cast<int>(y), color);
}

// Outline drawn inside the rectangle edges so a full-image box equals a border.
void outline_rect(RasterImage& img, const PixelBox& box, int thickness, Rgba color) {
    const std::int64_t t = thickness;
    fill_rect(img, box.x_min, box.y_min, box.x_max, box.y_min + t, color);           // top
    fill_rect(img, box.x_min, box.y_max - t, box.x_max, box.y_max, color);           // bottom
    fill_rect(img, box.x_min, box.y_min, box.x_min + t, box.y_max, color);           // left
    fill_rect(img, box.x_max - t, box.y_min, box.x_max, box.y_max, color);           // right
}

void check_style(const OverlayStyle& style) {
    if (style.line_thickness < 1 || style.highlight_thickness < 1)
        throw InvalidInputError("OverlayStyle: thickness must be >= 1");
}

void check_dims(const RasterImage& image, const GridSpec& spec) {
    if (spec.image_width != image.width || spec.image_height != image.height)
        throw InvalidInputError("overlay: grid spec does not match image dimensions");
}

}  // namespace

void draw_label(RasterImage& image, int x, int y, const std::string& text) {
    const Rgba white{255, 255, 255, 255};
    const Rgba dark{32, 32, 32, 255};
    // Dark outline pass first, then the glyph pixels.
    for (int pass = 0; pass < 2; ++pass) {
        int cx = x;
        for (char ch : text) {
            const Glyph* g = find_glyph(ch);
            if (!g) { cx += 4; continue; }
            for (int gy = 0; gy < 5; ++gy)
                for (int gx = 0; gx < 3; ++gx) {
                    if (!((g->rows[gy] >> (2 - gx)) & 1)) continue;
                    int px = cx + gx, py = y + gy;
                    if (pass == 0) {
                        for (int dy = -1; dy <= 1; ++dy)
                            for (int dx = -1; dx <= 1; ++dx)
                                if (image.in_bounds(px + dx, py + dy))
                                    image.set(px + dx, py + dy, dark);
                    } else if (image.in_bounds(px, py)) {
                        image.set(px, py, white);
                    }
                }
            cx += 4;
        }
    }
}

RasterImage draw_grid(const RasterImage& image, const GridSpec& spec,
                      const OverlayStyle& style) {
    check_style(style);
    check_dims(image, spec);
    if (spec.rows < 1 || spec.cols < 1)
        throw InvalidInputError("draw_grid: grid dimensions must be positive");

    RasterImage out = image;
    const int t = style.line_thickness;
    const int w = image.width, h = image.height;

    // Outer border.
    fill_rect(out, 0, 0, w, t, style.line_color);
    fill_rect(out, 0, h - t, w, h, style.line_color);
    fill_rect(out, 0, 0, t, h, style.line_color);
    fill_rect(out, w - t, 0, w, h, style.line_color);

    // Interior boundaries, lines centered on the boundary coordinate.
    for (int k = 1; k < spec.cols; ++k) {
        std::int64_t b = grid_boundary(k, w, spec.cols);
        fill_rect(out, b - t / 2, 0, b - t / 2 + t, h, style.line_color);
    }
    for (int k = 1; k < spec.rows; ++k) {
        std::int64_t b = grid_boundary(k, h, spec.rows);
        fill_rect(out, 0, b - t / 2, w, b - t / 2 + t, style.line_color);
    }

    if (style.index_labels) {
        for (int r = 1; r <= spec.rows; ++r)
            for (int c = 1; c <= spec.cols; ++c) {
                PixelBox rect = cell_rect(spec, r, c);
                std::string text = std::to_string(r) + "," + std::to_string(c);
                draw_label(out, static_cast<int>(rect.x_min) + t + 1,
                           static_cast<int>(rect.y_min) + t + 1, text);
            }
    }
    return out;
}

RasterImage highlight_box(const RasterImage& image, const PixelBox& box,
                          const OverlayStyle& style, bool* clamped) {
    check_style(style);
    PixelBox b = box;
    b.x_min = std::clamp<std::int64_t>(b.x_min, 0, image.width);
    b.x_max = std::clamp<std::int64_t>(b.x_max, 0, image.width);
    b.y_min = std::clamp<std::int64_t>(b.y_min, 0, image.height);
    b.y_max = std::clamp<std::int64_t>(b.y_max, 0, image.height);
    bool was_clamped = b.x_min != box.x_min || b.x_max != box.x_max ||
                       b.y_min != box.y_min || b.y_max != box.y_max;
    if (clamped) *clamped = was_clamped;
    if (!b.valid())
        throw InvalidInputError("highlight_box: degenerate box after clamping");

    RasterImage out = image;
    outline_rect(out, b, style.highlight_thickness, style.highlight_color);
    return out;
}

RasterImage highlight_cell(const RasterImage& image, const GridSpec& spec, int row,
                           int col, const OverlayStyle& style) {
    check_dims(image, spec);
    if (row < 1 || row > spec.rows || col < 1 || col > spec.cols)
        throw InvalidInputError("highlight_cell: index out of range");
    RasterImage out = draw_grid(image, spec, style);
    outline_rect(out, cell_rect(spec, row, col), style.highlight_thickness,
                 style.highlight_color);
    return out;
}

}  // namespace binv
