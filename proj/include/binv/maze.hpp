#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "binv/candidate.hpp"

namespace binv {

enum class MazeCell : std::uint8_t { Wall, Corridor, Start, Goal };

// Rectangular maze: exactly one start, one goal, both traversable.
struct MazeModel {
    int rows = 0;
    int cols = 0;
    std::vector<MazeCell> cells;  // row-major

    MazeCell at(int row, int col) const;  // 1-indexed
    bool traversable(int row, int col) const;
    CellIndex start() const;
    CellIndex goal() const;

    // Text grid, one row per line: S, E, '.' corridor, '#' wall.
    static MazeModel parse(const std::string& text);
    std::string to_text() const;
};

struct PathViolation {
    int step = 0;  // index into the expanded cell sequence (0 = start)
    std::string reason;
};

// A path either as critical points (start, turns, end) or as the full cell
// sequence, optionally with per-step True/False corridor checks.
struct MazePath {
    std::vector<CellIndex> critical_points;
    std::vector<CellIndex> cell_sequence;
    std::vector<bool> step_verdicts;  // aligned with intermediate cells when present

    bool has_critical_points() const { return !critical_points.empty(); }
    bool has_cell_sequence() const { return !cell_sequence.empty(); }
};

// Expands critical points along axis-aligned segments into the full cell
// sequence. Non-collinear consecutive points are a structural violation.
std::optional<std::vector<CellIndex>> expand_critical_points(
    const std::vector<CellIndex>& points, PathViolation* violation = nullptr);

// Re-extracts (start, turns, end) from a cell sequence.
std::vector<CellIndex> extract_critical_points(const std::vector<CellIndex>& cells);

// Valid iff the path starts at S, ends at E, moves between 4-adjacent cells,
// and never leaves traversable cells. Returns the first violation otherwise.
std::optional<PathViolation> validate_maze_path(const MazeModel& maze,
                                                const MazePath& path);

// Randomized DFS-carved maze with guaranteed S-E connectivity. Used to build
// test fixtures; rows/cols are cell counts and must be >= 2.
MazeModel generate_maze(int rows, int cols, std::uint64_t seed);

}  // namespace binv
