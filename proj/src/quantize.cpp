#include "binv/quantize.hpp"

#include <algorithm>
#include <set>

namespace binv {

std::int64_t grid_boundary(std::int64_t k, std::int64_t total, std::int64_t parts) {
    return k * total / parts;
}

PixelBox cell_rect(const GridSpec& spec, int row, int col) {
    if (spec.image_width <= 0 || spec.image_height <= 0)
        throw InvalidInputError("cell_rect: zero-dimension image");
    if (row < 1 || row > spec.rows || col < 1 || col > spec.cols)
        throw InvalidInputError("cell_rect: cell index out of range");
    PixelBox r;
    r.x_min = grid_boundary(col - 1, spec.image_width, spec.cols);
    r.x_max = grid_boundary(col, spec.image_width, spec.cols);
    r.y_min = grid_boundary(row - 1, spec.image_height, spec.rows);
    r.y_max = grid_boundary(row, spec.image_height, spec.rows);
    return r;
}

Alphabet shortlist_detections(const std::vector<Detection>& detections,
                              const ShortlistConfig& config) {
    if (config.tau < 0.0 || config.tau > 1.0)
        throw InvalidInputError("shortlist_detections: tau outside [0,1]");

    std::vector<Detection> kept;
    for (const auto& d : detections)
        if (d.score >= config.tau) kept.push_back(d);
    std::stable_sort(kept.begin(), kept.end(),
                     [](const Detection& a, const Detection& b) { return a.score > b.score; });
    if (config.max_candidates > 0 && kept.size() > config.max_candidates)
        kept.resize(config.max_candidates);

    Alphabet out;
    out.kind = AlphabetKind::Boxes;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        Candidate c;
        c.id = "a" + std::to_string(i + 1);
        c.claim = "box " + std::to_string(i + 1);
        c.payload = kept[i].box;
        out.members.push_back(std::move(c));
    }
    out.no_candidate_flag = out.members.empty();
    return out;
}

Alphabet make_grid_alphabet(const GridSpec& spec) {
    if (spec.rows < 1 || spec.cols < 1)
        throw InvalidInputError("make_grid_alphabet: grid dimensions must be positive");
    if (spec.image_width <= 0 || spec.image_height <= 0)
        throw InvalidInputError("make_grid_alphabet: zero-dimension image");

    Alphabet out;
    out.kind = AlphabetKind::Cells;
    for (int r = 1; r <= spec.rows; ++r) {
        for (int c = 1; c <= spec.cols; ++c) {
            Candidate cand;
            cand.id = "cell(" + std::to_string(r) + "," + std::to_string(c) + ")";
            cand.claim = "cell (" + std::to_string(r) + "," + std::to_string(c) + ")";
            cand.payload = CellIndex{r, c};
            out.members.push_back(std::move(cand));
        }
    }
    return out;
}

Alphabet native_label_alphabet(const std::vector<std::string>& labels) {
    if (labels.empty())
        throw InvalidInputError("native_label_alphabet: empty label set");
    std::set<std::string> seen;
    Alphabet out;
    out.kind = AlphabetKind::Labels;
    for (const auto& label : labels) {
        if (!seen.insert(label).second)
            throw InvalidInputError("native_label_alphabet: duplicate label '" + label + "'");
        Candidate c;
        c.id = label;
        c.claim = label;
        c.payload = label;
        out.members.push_back(std::move(c));
    }
    return out;
}

std::string build_class_extraction_prompt(const std::string& expression) {
    if (expression.empty())
        throw InvalidInputError("build_class_extraction_prompt: empty expression");
    return "Name the coarse object class of the referent in the following "
           "referring expression. Reply with a single word (e.g., person, cat, "
           "mug).\nExpression: " + expression;
}

}  // namespace binv
