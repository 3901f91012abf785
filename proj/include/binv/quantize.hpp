#pragma once

#include <string>
#include <vector>

#include "binv/candidate.hpp"

namespace binv {

// One detector output row as ingested from a detections file.
struct Detection {
    PixelBox box;
    double score = 0.0;
    std::string label;
};

struct ShortlistConfig {
    double tau = 0.25;  // detector confidence threshold
    std::size_t max_candidates = 0;  // 0 = no cap
};

struct GridSpec {
    int rows = 1;
    int cols = 1;
    int image_width = 0;
    int image_height = 0;
};

// Boundary k of a span of `total` pixels cut into `parts`: floor(k*total/parts).
// Non-divisible dimensions still tile exactly under this rule.
std::int64_t grid_boundary(std::int64_t k, std::int64_t total, std::int64_t parts);

// Pixel rectangle of 1-indexed cell (row, col).
PixelBox cell_rect(const GridSpec& spec, int row, int col);

// Detector-confidence filtering: keep score >= tau, descending score order,
// ids a1..am. An empty result is legal and carries the no-candidate flag.
Alphabet shortlist_detections(const std::vector<Detection>& detections,
                              const ShortlistConfig& config);

// rows*cols cell candidates, each holding its (row, col) index and tiling the
// image exactly.
Alphabet make_grid_alphabet(const GridSpec& spec);

// One candidate per label, order preserved. Labels must be unique.
Alphabet native_label_alphabet(const std::vector<std::string>& labels);

// Deterministic prompt asking the model for a single coarse object class for
// the given referring expression.
std::string build_class_extraction_prompt(const std::string& expression);

}  // namespace binv
