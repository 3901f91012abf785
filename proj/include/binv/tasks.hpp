#pragma once

#include <array>
#include <string>
#include <vector>

#include "binv/candidate.hpp"
#include "binv/maze.hpp"

namespace binv {
namespace tasks {

// --- REC ---------------------------------------------------------------

// Fixed per-box claim; the referring expression is appended verbatim. The same
// text is paired with a different highlighted-box rendering per candidate.
std::string rec_claim(const std::string& expression);

struct IouScore {
    std::int64_t intersection = 0;
    std::int64_t union_area = 0;
    double iou = 0.0;
    bool correct = false;  // strict IoU > 0.5, decided in exact rational arithmetic
};

IouScore score_rec(const PixelBox& predicted, const PixelBox& ground_truth);

// --- Spatial-Map -------------------------------------------------------

inline constexpr std::array<const char*, 4> kDirectionOptions{"NW", "SW", "SE", "NE"};

// One claim per compass option, issued individually.
std::vector<std::string> map_claims(const std::string& entity_a,
                                    const std::string& entity_b);

// --- Spatial-Grid ------------------------------------------------------

// One claim per candidate category for the queried cell. Categories must be
// unique; the rendering (grid + highlighted cell) is shared across claims.
std::vector<std::string> grid_claims(const CellIndex& cell,
                                     const std::vector<std::string>& categories);

// --- Spatial-Maze ------------------------------------------------------

// Prompt requesting the cell-index path plus parallel per-step corridor checks.
std::string maze_prompt(int rows, int cols);

struct MazeResponse {
    MazePath path;
    bool parse_failed = false;
    // Any per-step False marks the attempt self-rejected (scored incorrect).
    bool self_rejected = false;
};

// Parses a "PATH: (r,c) ... / CHECKS: True ..." style reply. A missing or
// misaligned verdict list is a parse failure.
MazeResponse parse_maze_response(const std::string& raw);

// --- Jigsaw ------------------------------------------------------------

inline constexpr std::size_t kJigsawRejectIndex = 2;  // option C

// Three-way option set for a two-tile jigsaw item: A (tile 1), B (tile 2),
// C (neither is correct), each with its verification claim. Exactly two tiles
// are required.
std::vector<Candidate> jigsaw_options(std::size_t tile_count);

}  // namespace tasks
}  // namespace binv
