#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace binv {

// Pixel-space axis-aligned rectangle, closed-open: [x_min, x_max) x [y_min, y_max).
struct PixelBox {
    std::int64_t x_min = 0;
    std::int64_t y_min = 0;
    std::int64_t x_max = 0;
    std::int64_t y_max = 0;

    std::int64_t width() const { return x_max - x_min; }
    std::int64_t height() const { return y_max - y_min; }
    std::int64_t area() const { return width() * height(); }
    bool valid() const { return x_min < x_max && y_min < y_max; }
};

// 1-indexed grid cell coordinate.
struct CellIndex {
    int row = 1;
    int col = 1;
    bool operator==(const CellIndex&) const = default;
};

struct TileIndex {
    int index = 0;  // 0-based tile position
    bool operator==(const TileIndex&) const = default;
};

// The visual unit a candidate refers to.
using CandidatePayload = std::variant<PixelBox, CellIndex, TileIndex, std::string>;

// One verifiable hypothesis in a shortlist.
struct Candidate {
    std::string id;
    std::string claim;
    CandidatePayload payload;
};

enum class AlphabetKind { Boxes, Cells, Labels, Tiles };

// Ordered finite candidate set produced by quantization.
struct Alphabet {
    AlphabetKind kind = AlphabetKind::Labels;
    std::vector<Candidate> members;
    // Set when a filter legitimately produced no members (REC items whose
    // detections all fall below tau). Scored as incorrect downstream.
    bool no_candidate_flag = false;

    bool empty() const { return members.empty(); }
    std::size_t size() const { return members.size(); }
};

struct InvalidInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace binv
