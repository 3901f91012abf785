#include "binv/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace binv {

namespace fs = std::filesystem;
using nlohmann::json;

const char* to_string(TaskKind kind) {
    switch (kind) {
        case TaskKind::Rec: return "rec";
        case TaskKind::SpatialMap: return "map";
        case TaskKind::SpatialGrid: return "grid";
        case TaskKind::SpatialMaze: return "maze";
        case TaskKind::Jigsaw: return "jigsaw";
        case TaskKind::Labels: return "labels";
    }
    return "?";
}

TaskKind task_kind_from_string(const std::string& name) {
    if (name == "rec") return TaskKind::Rec;
    if (name == "map") return TaskKind::SpatialMap;
    if (name == "grid") return TaskKind::SpatialGrid;
    if (name == "maze") return TaskKind::SpatialMaze;
    if (name == "jigsaw") return TaskKind::Jigsaw;
    if (name == "labels") return TaskKind::Labels;
    throw ManifestError("unknown task kind '" + name + "'");
}

namespace {

PixelBox parse_box(const json& j) {
    if (!j.is_array() || j.size() != 4)
        throw ManifestError("box must be [x_min,y_min,x_max,y_max]");
    PixelBox b{j[0].get<std::int64_t>(), j[1].get<std::int64_t>(),
               j[2].get<std::int64_t>(), j[3].get<std::int64_t>()};
    if (!b.valid()) throw ManifestError("degenerate box");
    return b;
}

Detection parse_detection(const json& j) {
    Detection d;
    d.box = parse_box(j.at("box"));
    d.score = j.at("score").get<double>();
    if (d.score < 0.0 || d.score > 1.0) throw ManifestError("score outside [0,1]");
    d.label = j.value("label", "");
    return d;
}

TaskInstance parse_instance(const json& j, const fs::path& base_dir) {
    TaskInstance t;
    t.kind = task_kind_from_string(j.at("task").get<std::string>());
    t.id = j.at("id").get<std::string>();
    t.image_path = j.value("image", "");

    switch (t.kind) {
        case TaskKind::Rec: {
            t.expression = j.at("expression").get<std::string>();
            if (t.expression.empty()) throw ManifestError("empty expression");
            if (j.contains("detections_file")) {
                fs::path p = base_dir / j.at("detections_file").get<std::string>();
                t.detections = load_detections_file(p.string());
            } else {
                for (const auto& d : j.at("detections"))
                    t.detections.push_back(parse_detection(d));
            }
            t.gt_box = parse_box(j.at("gt_box"));
            break;
        }
        case TaskKind::SpatialMap: {
            t.entity_a = j.at("entity_a").get<std::string>();
            t.entity_b = j.at("entity_b").get<std::string>();
            t.gt_label = j.at("gt").get<std::string>();
            std::set<std::string> dirs{"NW", "SW", "SE", "NE"};
            if (!dirs.count(t.gt_label))
                throw ManifestError("gt direction must be one of NW/SW/SE/NE");
            break;
        }
        case TaskKind::SpatialGrid: {
            t.grid.rows = j.at("rows").get<int>();
            t.grid.cols = j.at("cols").get<int>();
            t.grid.image_width = j.value("image_width", 0);
            t.grid.image_height = j.value("image_height", 0);
            const auto& cell = j.at("cell");
            t.cell = CellIndex{cell.at(0).get<int>(), cell.at(1).get<int>()};
            if (t.cell.row < 1 || t.cell.row > t.grid.rows || t.cell.col < 1 ||
                t.cell.col > t.grid.cols)
                throw ManifestError("query cell outside grid");
            t.categories = j.at("categories").get<std::vector<std::string>>();
            t.gt_label = j.at("gt").get<std::string>();
            bool found = false;
            for (const auto& c : t.categories) found |= c == t.gt_label;
            if (!found) throw ManifestError("gt category not in category list");
            break;
        }
        case TaskKind::SpatialMaze: {
            if (j.contains("maze_file")) {
                fs::path p = base_dir / j.at("maze_file").get<std::string>();
                std::ifstream f(p);
                if (!f) throw ManifestError("cannot open maze file " + p.string());
                std::ostringstream ss;
                ss << f.rdbuf();
                t.maze_text = ss.str();
            } else {
                t.maze_text = j.at("maze").get<std::string>();
            }
            MazeModel::parse(t.maze_text);  // validates
            break;
        }
        case TaskKind::Jigsaw: {
            t.tile_count = j.value("tile_count", std::size_t{2});
            t.gt_label = j.at("gt").get<std::string>();
            if (t.gt_label != "A" && t.gt_label != "B" && t.gt_label != "C")
                throw ManifestError("jigsaw gt must be A, B, or C");
            break;
        }
        case TaskKind::Labels: {
            t.labels = j.at("labels").get<std::vector<std::string>>();
            if (t.labels.empty()) throw ManifestError("empty label list");
            t.gt_label = j.at("gt").get<std::string>();
            bool found = false;
            for (const auto& l : t.labels) found |= l == t.gt_label;
            if (!found) throw ManifestError("gt label not in label list");
            break;
        }
    }
    return t;
}

}  // namespace

std::vector<Detection> load_detections_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ManifestError("cannot open detections file " + path);
    json j = json::parse(f);
    std::vector<Detection> out;
    for (const auto& d : j) out.push_back(parse_detection(d));
    return out;
}

std::vector<TaskInstance> load_manifest(const std::string& path, bool fail_fast) {
    std::ifstream f(path);
    if (!f) throw ManifestError("cannot open manifest " + path);
    fs::path base_dir = fs::path(path).parent_path();

    std::vector<TaskInstance> out;
    std::vector<std::string> errors;
    std::optional<TaskKind> kind;
    std::string line;
    int line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            TaskInstance t = parse_instance(json::parse(line), base_dir);
            if (kind && *kind != t.kind)
                throw ManifestError("task kind mixes " +
                                    std::string(to_string(*kind)) + " and " +
                                    to_string(t.kind) +
                                    " (single-kind rule)");
            kind = t.kind;
            out.push_back(std::move(t));
        } catch (const std::exception& e) {
            std::string msg = "line " + std::to_string(line_no) + ": " + e.what();
            if (fail_fast) throw ManifestError(msg);
            errors.push_back(std::move(msg));
        }
    }
    if (!errors.empty()) {
        std::string all;
        for (const auto& e : errors) all += e + "\n";
        throw ManifestError(all);
    }
    if (out.empty()) throw ManifestError("manifest is empty");
    return out;
}

}  // namespace binv
