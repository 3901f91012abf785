#pragma once

#include <optional>
#include <string>
#include <vector>

#include "binv/candidate.hpp"
#include "binv/quantize.hpp"
#include "binv/maze.hpp"

namespace binv {

enum class TaskKind { Rec, SpatialMap, SpatialGrid, SpatialMaze, Jigsaw, Labels };

const char* to_string(TaskKind kind);
TaskKind task_kind_from_string(const std::string& name);

// One benchmark item. Which fields are meaningful depends on `kind`; the
// loader validates per kind.
struct TaskInstance {
    TaskKind kind = TaskKind::Labels;
    std::string id;
    std::string image_path;  // optional

    // REC
    std::string expression;
    std::vector<Detection> detections;
    std::optional<PixelBox> gt_box;

    // Spatial-Map
    std::string entity_a;
    std::string entity_b;

    // Spatial-Grid
    GridSpec grid;
    CellIndex cell;
    std::vector<std::string> categories;

    // Spatial-Maze
    std::string maze_text;

    // Jigsaw: number of tiles (always 2)
    std::size_t tile_count = 2;

    // Labels (generic native-label task, also used for synthetic runs)
    std::vector<std::string> labels;

    // Ground truth for label-like kinds (direction, category, option id, label).
    std::string gt_label;
};

struct ManifestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Line-delimited JSON, one instance per line, single task kind per file.
// Detections referenced through side files are resolved relative to the
// manifest. With fail_fast off, bad lines raise only after the full scan with
// every line number listed.
std::vector<TaskInstance> load_manifest(const std::string& path,
                                        bool fail_fast = true);

// Detections side file: JSON array of {box: [x0,y0,x1,y1], score, label}.
std::vector<Detection> load_detections_file(const std::string& path);

}  // namespace binv
