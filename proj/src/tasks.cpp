#include "binv/tasks.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace binv {
namespace tasks {

std::string rec_claim(const std::string& expression) {
    if (expression.empty()) throw InvalidInputError("rec_claim: empty expression");
    return "Does the object in the highlighted bounding box match the referring "
           "description? Answer with True or False. Referring description: " +
           expression;
}

IouScore score_rec(const PixelBox& predicted, const PixelBox& ground_truth) {
    if (!ground_truth.valid())
        throw InvalidInputError("score_rec: degenerate ground-truth box");
    if (!predicted.valid())
        throw InvalidInputError("score_rec: degenerate predicted box");

    std::int64_t ix = std::max<std::int64_t>(
        0, std::min(predicted.x_max, ground_truth.x_max) -
               std::max(predicted.x_min, ground_truth.x_min));
    std::int64_t iy = std::max<std::int64_t>(
        0, std::min(predicted.y_max, ground_truth.y_max) -
               std::max(predicted.y_min, ground_truth.y_min));

    IouScore s;
    s.intersection = ix * iy;
    s.union_area = predicted.area() + ground_truth.area() - s.intersection;
    s.iou = static_cast<double>(s.intersection) / static_cast<double>(s.union_area);
    // IoU > 1/2 exactly iff 2*I > U; no floating-point tie ambiguity.
    s.correct = 2 * s.intersection > s.union_area;
    return s;
}

std::vector<std::string> map_claims(const std::string& entity_a,
                                    const std::string& entity_b) {
    if (entity_a.empty() || entity_b.empty())
        throw InvalidInputError("map_claims: empty entity name");
    static constexpr std::array<const char*, 4> words{"northwest", "southwest",
                                                      "southeast", "northeast"};
    std::vector<std::string> out;
    for (const char* w : words)
        out.push_back(entity_a + " is " + w + " of " + entity_b +
                      ". Answer: True or False.");
    return out;
}

std::vector<std::string> grid_claims(const CellIndex& cell,
                                     const std::vector<std::string>& categories) {
    if (categories.empty()) throw InvalidInputError("grid_claims: no categories");
    std::set<std::string> seen;
    for (const auto& c : categories)
        if (!seen.insert(c).second)
            throw InvalidInputError("grid_claims: duplicate category '" + c + "'");
    if (cell.row < 1 || cell.col < 1)
        throw InvalidInputError("grid_claims: cell index out of range");

    std::vector<std::string> out;
    for (const auto& y : categories)
        out.push_back("The object in cell (" + std::to_string(cell.row) + "," +
                      std::to_string(cell.col) + ") is a " + y +
                      ". Answer with True or False.");
    return out;
}

std::string maze_prompt(int rows, int cols) {
    std::ostringstream out;
    out << "The image shows a maze on a " << rows << "x" << cols
        << " grid with visible cell boundaries and indices. The start cell S is "
           "green, the goal E is red, corridor cells are blue, walls are black.\n"
           "Find a path from S to E. Reply with exactly two lines:\n"
           "PATH: (r,c) (r,c) ... listing every cell on the path in order\n"
           "CHECKS: one True or False per intermediate cell, answering: is that "
           "cell blue?";
    return out.str();
}

namespace {

// All "(r,c)" pairs on a line, in order.
std::vector<CellIndex> parse_pairs(const std::string& line) {
    std::vector<CellIndex> out;
    std::size_t i = 0;
    while ((i = line.find('(', i)) != std::string::npos) {
        std::size_t close = line.find(')', i);
        if (close == std::string::npos) break;
        std::string inner = line.substr(i + 1, close - i - 1);
        std::size_t comma = inner.find(',');
        if (comma != std::string::npos) {
            try {
                int r = std::stoi(inner.substr(0, comma));
                int c = std::stoi(inner.substr(comma + 1));
                out.push_back({r, c});
            } catch (const std::exception&) {
                // not a coordinate pair, skip
            }
        }
        i = close + 1;
    }
    return out;
}

std::string find_line(const std::string& raw, const std::string& marker) {
    std::istringstream in(raw);
    std::string line;
    while (std::getline(in, line)) {
        std::string low = line;
        std::transform(low.begin(), low.end(), low.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (low.find(marker) != std::string::npos) return line;
    }
    return {};
}

}  // namespace

MazeResponse parse_maze_response(const std::string& raw) {
    MazeResponse resp;
    std::string path_line = find_line(raw, "path:");
    std::string checks_line = find_line(raw, "checks:");
    if (path_line.empty() || checks_line.empty()) {
        resp.parse_failed = true;
        return resp;
    }

    resp.path.cell_sequence = parse_pairs(path_line);
    if (resp.path.cell_sequence.empty()) {
        resp.parse_failed = true;
        return resp;
    }

    std::istringstream in(checks_line.substr(checks_line.find(':') + 1));
    std::string tok;
    while (in >> tok) {
        std::transform(tok.begin(), tok.end(), tok.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (tok == "true")
            resp.path.step_verdicts.push_back(true);
        else if (tok == "false")
            resp.path.step_verdicts.push_back(false);
    }
    if (resp.path.step_verdicts.empty()) {
        resp.parse_failed = true;
        return resp;
    }
    for (bool ok : resp.path.step_verdicts)
        if (!ok) resp.self_rejected = true;
    return resp;
}

std::vector<Candidate> jigsaw_options(std::size_t tile_count) {
    if (tile_count != 2)
        throw InvalidInputError("jigsaw_options: exactly two tile images expected");
    std::vector<Candidate> out(3);
    out[0].id = "A";
    out[0].claim = "Tile A correctly completes the image. Answer with True or False.";
    out[0].payload = TileIndex{0};
    out[1].id = "B";
    out[1].claim = "Tile B correctly completes the image. Answer with True or False.";
    out[1].payload = TileIndex{1};
    out[2].id = "C";
    out[2].claim = "Neither tile is correct. Answer with True or False.";
    out[2].payload = TileIndex{2};
    return out;
}

}  // namespace tasks
}  // namespace binv
