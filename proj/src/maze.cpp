#include "binv/maze.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace binv {

MazeCell MazeModel::at(int row, int col) const {
    if (row < 1 || row > rows || col < 1 || col > cols)
        throw InvalidInputError("MazeModel::at: cell out of range");
    return cells[static_cast<std::size_t>(row - 1) * cols + (col - 1)];
}

bool MazeModel::traversable(int row, int col) const {
    return at(row, col) != MazeCell::Wall;
}

namespace {

CellIndex find_unique(const MazeModel& maze, MazeCell kind, const char* name) {
    std::optional<CellIndex> found;
    for (int r = 1; r <= maze.rows; ++r)
        for (int c = 1; c <= maze.cols; ++c)
            if (maze.at(r, c) == kind) {
                if (found)
                    throw InvalidInputError(std::string("MazeModel: duplicate ") + name);
                found = CellIndex{r, c};
            }
    if (!found) throw InvalidInputError(std::string("MazeModel: missing ") + name);
    return *found;
}

}  // namespace

CellIndex MazeModel::start() const { return find_unique(*this, MazeCell::Start, "start"); }
CellIndex MazeModel::goal() const { return find_unique(*this, MazeCell::Goal, "goal"); }

MazeModel MazeModel::parse(const std::string& text) {
    MazeModel m;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (m.cols == 0)
            m.cols = static_cast<int>(line.size());
        else if (static_cast<int>(line.size()) != m.cols)
            throw InvalidInputError("MazeModel::parse: ragged rows");
        for (char ch : line) {
            switch (ch) {
                case '#': m.cells.push_back(MazeCell::Wall); break;
                case '.': m.cells.push_back(MazeCell::Corridor); break;
                case 'S': m.cells.push_back(MazeCell::Start); break;
                case 'E': m.cells.push_back(MazeCell::Goal); break;
                default:
                    throw InvalidInputError(std::string("MazeModel::parse: bad char '") +
                                            ch + "'");
            }
        }
        ++m.rows;
    }
    if (m.rows < 2 || m.cols < 2)
        throw InvalidInputError("MazeModel::parse: maze must be at least 2x2");
    m.start();  // uniqueness checks
    m.goal();
    return m;
}

std::string MazeModel::to_text() const {
    std::string out;
    for (int r = 1; r <= rows; ++r) {
        for (int c = 1; c <= cols; ++c) {
            switch (at(r, c)) {
                case MazeCell::Wall: out += '#'; break;
                case MazeCell::Corridor: out += '.'; break;
                case MazeCell::Start: out += 'S'; break;
                case MazeCell::Goal: out += 'E'; break;
            }
        }
        out += '\n';
    }
    return out;
}

std::optional<std::vector<CellIndex>> expand_critical_points(
    const std::vector<CellIndex>& points, PathViolation* violation) {
    if (points.empty()) {
        if (violation) *violation = {0, "empty critical point list"};
        return std::nullopt;
    }
    std::vector<CellIndex> cells{points.front()};
    for (std::size_t i = 1; i < points.size(); ++i) {
        CellIndex from = points[i - 1], to = points[i];
        if (from.row != to.row && from.col != to.col) {
            if (violation)
                *violation = {static_cast<int>(cells.size()),
                              "non-collinear consecutive critical points"};
            return std::nullopt;
        }
        if (from == to) continue;
        int dr = (to.row > from.row) - (to.row < from.row);
        int dc = (to.col > from.col) - (to.col < from.col);
        CellIndex cur = from;
        while (!(cur == to)) {
            cur.row += dr;
            cur.col += dc;
            cells.push_back(cur);
        }
    }
    return cells;
}

std::vector<CellIndex> extract_critical_points(const std::vector<CellIndex>& cells) {
    if (cells.empty()) return {};
    std::vector<CellIndex> points{cells.front()};
    for (std::size_t i = 1; i + 1 < cells.size(); ++i) {
        int dr1 = cells[i].row - cells[i - 1].row;
        int dc1 = cells[i].col - cells[i - 1].col;
        int dr2 = cells[i + 1].row - cells[i].row;
        int dc2 = cells[i + 1].col - cells[i].col;
        if (dr1 != dr2 || dc1 != dc2) points.push_back(cells[i]);
    }
    if (cells.size() > 1) points.push_back(cells.back());
    return points;
}

std::optional<PathViolation> validate_maze_path(const MazeModel& maze,
                                                const MazePath& path) {
    std::vector<CellIndex> cells;
    if (path.has_cell_sequence()) {
        cells = path.cell_sequence;
    } else if (path.has_critical_points()) {
        PathViolation v;
        auto expanded = expand_critical_points(path.critical_points, &v);
        if (!expanded) return v;
        cells = std::move(*expanded);
    } else {
        return PathViolation{0, "empty path"};
    }

    for (std::size_t i = 0; i < cells.size(); ++i) {
        const CellIndex& cell = cells[i];
        if (cell.row < 1 || cell.row > maze.rows || cell.col < 1 ||
            cell.col > maze.cols)
            return PathViolation{static_cast<int>(i), "cell outside maze"};
        if (i > 0) {
            int dist = std::abs(cell.row - cells[i - 1].row) +
                       std::abs(cell.col - cells[i - 1].col);
            if (dist != 1)
                return PathViolation{static_cast<int>(i), "cells not 4-adjacent"};
        }
        if (!maze.traversable(cell.row, cell.col))
            return PathViolation{static_cast<int>(i), "cell is a wall"};
    }
    if (!(cells.front() == maze.start()))
        return PathViolation{0, "path does not start at S"};
    if (!(cells.back() == maze.goal()))
        return PathViolation{static_cast<int>(cells.size()) - 1,
                             "path does not end at E"};
    return std::nullopt;
}

MazeModel generate_maze(int rows, int cols, std::uint64_t seed) {
    if (rows < 2 || cols < 2)
        throw InvalidInputError("generate_maze: dimensions must be >= 2");
    MazeModel m;
    m.rows = rows;
    m.cols = cols;
    m.cells.assign(static_cast<std::size_t>(rows) * cols, MazeCell::Wall);
    auto idx = [&](int r, int c) { return static_cast<std::size_t>(r) * cols + c; };

    // Iterative DFS carving on odd lattice points, knocking out the wall
    // between visited neighbors two cells apart.
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> stack{{0, 0}};
    std::vector<bool> visited(m.cells.size(), false);
    visited[idx(0, 0)] = true;
    m.cells[idx(0, 0)] = MazeCell::Corridor;
    const int dr[] = {0, 0, 2, -2};
    const int dc[] = {2, -2, 0, 0};
    while (!stack.empty()) {
        auto [r, c] = stack.back();
        std::vector<int> dirs{0, 1, 2, 3};
        std::shuffle(dirs.begin(), dirs.end(), rng);
        bool advanced = false;
        for (int d : dirs) {
            int nr = r + dr[d], nc = c + dc[d];
            if (nr < 0 || nr >= rows || nc < 0 || nc >= cols || visited[idx(nr, nc)])
                continue;
            visited[idx(nr, nc)] = true;
            m.cells[idx(nr, nc)] = MazeCell::Corridor;
            m.cells[idx((r + nr) / 2, (c + nc) / 2)] = MazeCell::Corridor;
            stack.emplace_back(nr, nc);
            advanced = true;
            break;
        }
        if (!advanced) stack.pop_back();
    }

    // Start at the top-left corridor, goal at the farthest bottom-right one.
    m.cells[idx(0, 0)] = MazeCell::Start;
    for (int r = rows - 1; r >= 0; --r) {
        for (int c = cols - 1; c >= 0; --c) {
            if (m.cells[idx(r, c)] == MazeCell::Corridor) {
                m.cells[idx(r, c)] = MazeCell::Goal;
                return m;
            }
        }
    }
    throw std::runtime_error("generate_maze: no goal cell carved");
}

}  // namespace binv
