#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <set>

#include "binv/overlay.hpp"
#include "binv/raster.hpp"

using namespace binv;

namespace {

const Rgba kGray{128, 128, 128, 255};

OverlayStyle thin_style() {
    OverlayStyle s;
    s.line_thickness = 1;
    s.highlight_thickness = 1;
    s.index_labels = false;
    return s;
}

}  // namespace

TEST_CASE("png: encode/decode round trip is pixel-identical") {
    RasterImage img = RasterImage::filled(33, 17, kGray);
    img.set(0, 0, {255, 0, 0, 255});
    img.set(32, 16, {0, 0, 255, 128});
    img.set(16, 8, {1, 2, 3, 4});
    CHECK(decode_png(encode_png(img)) == img);
}

TEST_CASE("png: writer output is byte-stable") {
    RasterImage img = RasterImage::filled(10, 10, {7, 9, 11, 255});
    CHECK(encode_png(img) == encode_png(img));
}

TEST_CASE("png: file round trip") {
    auto dir = std::filesystem::temp_directory_path() / "binv_png_test";
    std::filesystem::create_directories(dir);
    RasterImage img = RasterImage::filled(5, 4, {200, 100, 50, 255});
    write_png((dir / "t.png").string(), img);
    CHECK(read_png((dir / "t.png").string()) == img);
}

TEST_CASE("draw_grid: 5x5 over 100x100 puts lines exactly on boundaries") {
    RasterImage img = RasterImage::filled(100, 100, kGray);
    auto style = thin_style();
    RasterImage out = draw_grid(img, {5, 5, 100, 100}, style);

    std::set<int> line_cols, line_rows;
    for (int x = 0; x < 100; ++x)
        if (out.at(x, 50) == style.line_color) line_cols.insert(x);
    for (int y = 0; y < 100; ++y)
        if (out.at(50, y) == style.line_color) line_rows.insert(y);
    std::set<int> expected{0, 20, 40, 60, 80, 99};
    CHECK(line_cols == expected);
    CHECK(line_rows == expected);
}

TEST_CASE("draw_grid: 1x1 grid is border only") {
    RasterImage img = RasterImage::filled(20, 20, kGray);
    auto style = thin_style();
    RasterImage out = draw_grid(img, {1, 1, 20, 20}, style);
    for (int y = 1; y < 19; ++y)
        for (int x = 1; x < 19; ++x) CHECK(out.at(x, y) == kGray);
    CHECK(out.at(0, 5) == style.line_color);
    CHECK(out.at(19, 5) == style.line_color);
}

TEST_CASE("draw_grid: idempotent") {
    RasterImage img = RasterImage::filled(70, 70, kGray);
    OverlayStyle style;  // defaults, labels on
    RasterImage once = draw_grid(img, {7, 7, 70, 70}, style);
    RasterImage twice = draw_grid(once, {7, 7, 70, 70}, style);
    CHECK(once == twice);
}

TEST_CASE("draw_grid: input untouched, changes confined to lines/labels") {
    RasterImage img = RasterImage::filled(100, 100, kGray);
    RasterImage copy = img;
    auto style = thin_style();
    RasterImage out = draw_grid(img, {5, 5, 100, 100}, style);
    CHECK(img == copy);
    // Any changed pixel must be the line color (labels disabled here).
    for (int y = 0; y < 100; ++y)
        for (int x = 0; x < 100; ++x)
            if (!(out.at(x, y) == img.at(x, y))) CHECK(out.at(x, y) == style.line_color);
}

TEST_CASE("draw_grid: mismatched dimensions rejected") {
    RasterImage img = RasterImage::filled(50, 50, kGray);
    CHECK_THROWS_AS(draw_grid(img, {5, 5, 100, 100}, thin_style()), InvalidInputError);
}

TEST_CASE("grid lines agree with cell_rect boundaries") {
    GridSpec spec{6, 5, 37, 91};
    RasterImage img = RasterImage::filled(37, 91, kGray);
    auto style = thin_style();
    RasterImage out = draw_grid(img, spec, style);
    // Every interior vertical boundary from cell_rect must be a drawn column.
    for (int c = 2; c <= spec.cols; ++c) {
        auto rect = cell_rect(spec, 1, c);
        int x = static_cast<int>(rect.x_min);
        for (int y = 0; y < spec.image_height; ++y)
            CHECK(out.at(x, y) == style.line_color);
    }
    for (int r = 2; r <= spec.rows; ++r) {
        auto rect = cell_rect(spec, r, 1);
        int y = static_cast<int>(rect.y_min);
        for (int x = 0; x < spec.image_width; ++x)
            CHECK(out.at(x, y) == style.line_color);
    }
}

TEST_CASE("highlight_box: outline only, interior unchanged") {
    RasterImage img = RasterImage::filled(100, 100, kGray);
    auto style = thin_style();
    RasterImage out = highlight_box(img, {10, 10, 50, 50}, style);
    CHECK(out.at(10, 10) == style.highlight_color);
    CHECK(out.at(49, 49) == style.highlight_color);
    CHECK(out.at(10, 30) == style.highlight_color);
    CHECK(out.at(30, 30) == kGray);  // interior
    CHECK(out.at(9, 9) == kGray);    // outside
    CHECK(out.at(50, 50) == kGray);
}

TEST_CASE("highlight_box: full-image box equals a border draw") {
    RasterImage img = RasterImage::filled(30, 30, kGray);
    auto style = thin_style();
    RasterImage out = highlight_box(img, {0, 0, 30, 30}, style);
    for (int i = 0; i < 30; ++i) {
        CHECK(out.at(i, 0) == style.highlight_color);
        CHECK(out.at(i, 29) == style.highlight_color);
        CHECK(out.at(0, i) == style.highlight_color);
        CHECK(out.at(29, i) == style.highlight_color);
    }
    CHECK(out.at(1, 1) == kGray);
}

TEST_CASE("highlight_box: out-of-range box clamps and warns") {
    RasterImage img = RasterImage::filled(40, 40, kGray);
    bool clamped = false;
    RasterImage out = highlight_box(img, {-5, 10, 20, 60}, thin_style(), &clamped);
    CHECK(clamped);
    CHECK(out.at(0, 10) == thin_style().highlight_color);  // clipped at the edge
    // Fully outside after clamping is degenerate.
    CHECK_THROWS_AS(highlight_box(img, {50, 50, 60, 60}, thin_style()),
                    InvalidInputError);
}

TEST_CASE("highlight_cell: (3,3) on 5x5 over 100x100 outlines [40,60)") {
    RasterImage img = RasterImage::filled(100, 100, kGray);
    auto style = thin_style();
    RasterImage grid_only = draw_grid(img, {5, 5, 100, 100}, style);
    RasterImage out = highlight_cell(img, {5, 5, 100, 100}, 3, 3, style);
    // Differences against the grid-only render sit exactly on the cell outline.
    for (int y = 0; y < 100; ++y)
        for (int x = 0; x < 100; ++x) {
            bool differs = !(out.at(x, y) == grid_only.at(x, y));
            bool on_perimeter = (x >= 40 && x < 60 && (y == 40 || y == 59)) ||
                                (y >= 40 && y < 60 && (x == 40 || x == 59));
            if (differs) CHECK(on_perimeter);
            if (on_perimeter) CHECK(out.at(x, y) == style.highlight_color);
        }
}

TEST_CASE("highlight_cell: (1,1) on 1x1 highlights the whole image border") {
    RasterImage img = RasterImage::filled(25, 25, kGray);
    auto style = thin_style();
    RasterImage out = highlight_cell(img, {1, 1, 25, 25}, 1, 1, style);
    CHECK(out.at(0, 12) == style.highlight_color);
    CHECK(out.at(24, 12) == style.highlight_color);
}

TEST_CASE("highlight_cell: out-of-range index rejected") {
    RasterImage img = RasterImage::filled(100, 100, kGray);
    CHECK_THROWS_AS(highlight_cell(img, {5, 5, 100, 100}, 6, 1, thin_style()),
                    InvalidInputError);
}

TEST_CASE("draw_label: white glyphs with dark outline") {
    RasterImage img = RasterImage::filled(30, 10, kGray);
    draw_label(img, 5, 2, "1,2");
    int white = 0, dark = 0;
    for (int y = 0; y < 10; ++y)
        for (int x = 0; x < 30; ++x) {
            if (img.at(x, y) == Rgba{255, 255, 255, 255}) ++white;
            if (img.at(x, y) == Rgba{32, 32, 32, 255}) ++dark;
        }
    CHECK(white > 0);
    CHECK(dark > 0);
}
