#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "binv/backends.hpp"
#include "binv/harness.hpp"
#include "binv/http_backend.hpp"
#include "binv/overlay.hpp"
#include "binv/tasks.hpp"
#include "binv/theory.hpp"

using namespace binv;

namespace {

struct RunOptions {
    std::string manifest;
    std::string mode = "binary";
    std::string backend = "sim";
    SimulatorParams sim;
    RunConfig config;
    HttpBackendConfig http;
    std::string report_path = "report.json";
    std::string items_path;
    std::string breakdown_path;
};

int cmd_run(const RunOptions& opt) {
    RunConfig config = opt.config;
    config.mode = run_mode_from_string(opt.mode);

    std::unique_ptr<VerifierBackend> backend;
    if (opt.backend == "sim") {
        SimulatorParams params = opt.sim;
        params.seed = config.seed;
        backend = std::make_unique<SimulatorBackend>(params);
    } else if (opt.backend == "http") {
        backend = std::make_unique<HttpBackend>(opt.http);
    } else {
        throw InvalidInputError("unknown backend '" + opt.backend + "'");
    }

    auto instances = load_manifest(opt.manifest);
    RunReport report = run(config, instances, *backend);

    write_report_json(opt.report_path, report);
    if (!opt.items_path.empty()) write_items_jsonl(opt.items_path, report);
    if (!opt.breakdown_path.empty()) write_breakdown_csv(opt.breakdown_path, report);

    std::printf("items %d  correct %d  incorrect %d  errored %d  no-candidate %d\n",
                report.counted, report.correct, report.incorrect, report.errored,
                report.no_candidate);
    std::printf("accuracy %.4f  (95%% CI over per-item means: %.4f..%.4f)\n",
                report.accuracy, report.ci_low, report.ci_high);
    for (const auto& [name, s] : report.branches)
        std::printf("  %-13s %5.1f%%  candidates %.1f -> %.1f  accuracy %.1f%%\n",
                    name.c_str(), s.frequency_pct, s.mean_candidates_before,
                    s.mean_candidates_after, s.accuracy_pct);
    return 0;
}

struct TheoryOptions {
    double q1 = 0.9;
    double q2 = 0.1;
    std::string accuracy_csv;
    std::string crossover_csv;
    int grid_points = 101;
};

int cmd_theory(const TheoryOptions& opt) {
    double pstar = theory::mcq_threshold(opt.q1, opt.q2);
    std::printf("q1 %.4f  q2 %.4f  p* %.6f\n", opt.q1, opt.q2, pstar);

    if (!opt.accuracy_csv.empty()) {
        std::ofstream f(opt.accuracy_csv);
        if (!f) throw std::runtime_error("cannot open " + opt.accuracy_csv);
        f << "p,binary_accuracy,mcq_accuracy\n";
        for (int i = 0; i < opt.grid_points; ++i) {
            double p = static_cast<double>(i) / (opt.grid_points - 1);
            f << p << "," << theory::binary_accuracy({opt.q1, opt.q2, p}) << ","
              << p << "\n";
        }
    }
    if (!opt.crossover_csv.empty()) {
        std::ofstream f(opt.crossover_csv);
        if (!f) throw std::runtime_error("cannot open " + opt.crossover_csv);
        f << "q1,p_star\n";
        for (int i = 1; i < opt.grid_points - 1; ++i) {
            double q1 = static_cast<double>(i) / (opt.grid_points - 1);
            f << q1 << "," << theory::mcq_threshold(q1, opt.q2) << "\n";
        }
    }
    return 0;
}

struct OverlayOptions {
    std::string input;
    std::string output = "overlay.png";
    int width = 100;
    int height = 100;
    int rows = 5;
    int cols = 5;
    std::vector<int> cell;
    std::vector<std::int64_t> box;
    int thickness = 2;
    bool no_labels = false;
};

int cmd_overlay(const OverlayOptions& opt) {
    RasterImage image = opt.input.empty()
                            ? RasterImage::filled(opt.width, opt.height,
                                                  {255, 255, 255, 255})
                            : read_png(opt.input);
    GridSpec grid{opt.rows, opt.cols, image.width, image.height};
    OverlayStyle style;
    style.line_thickness = opt.thickness;
    style.index_labels = !opt.no_labels;

    if (!opt.cell.empty()) {
        if (opt.cell.size() != 2)
            throw InvalidInputError("--cell needs row and column");
        image = highlight_cell(image, grid, opt.cell[0], opt.cell[1], style);
    } else if (!opt.box.empty()) {
        if (opt.box.size() != 4)
            throw InvalidInputError("--box needs x_min y_min x_max y_max");
        bool clamped = false;
        image = highlight_box(image, {opt.box[0], opt.box[1], opt.box[2], opt.box[3]},
                              style, &clamped);
        if (clamped)
            std::fprintf(stderr, "warning: box clamped to the image bounds\n");
    } else {
        image = draw_grid(image, grid, style);
    }
    write_png(opt.output, image);
    std::printf("wrote %s (%dx%d)\n", opt.output.c_str(), image.width, image.height);
    return 0;
}

struct MazeOptions {
    std::string maze_file;
    std::string path_text;
    bool critical = false;
};

int cmd_validate_maze(const MazeOptions& opt) {
    std::ifstream f(opt.maze_file);
    if (!f) throw std::runtime_error("cannot open " + opt.maze_file);
    std::ostringstream ss;
    ss << f.rdbuf();
    MazeModel maze = MazeModel::parse(ss.str());

    tasks::MazeResponse parsed =
        tasks::parse_maze_response("PATH: " + opt.path_text + "\nCHECKS: True");
    if (parsed.parse_failed) {
        std::printf("invalid: could not parse any (r,c) pairs\n");
        return 1;
    }
    MazePath path;
    if (opt.critical)
        path.critical_points = parsed.path.cell_sequence;
    else
        path.cell_sequence = parsed.path.cell_sequence;

    if (auto violation = validate_maze_path(maze, path)) {
        std::printf("invalid: step %d: %s\n", violation->step,
                    violation->reason.c_str());
        return 1;
    }
    std::printf("valid: %zu cells from S to E\n",
                opt.critical
                    ? expand_critical_points(path.critical_points)->size()
                    : path.cell_sequence.size());
    return 0;
}

struct ReportOptions {
    std::string input;
    std::string csv;
};

int cmd_report(const ReportOptions& opt) {
    RunReport report = read_report_json(opt.input);
    std::printf("items %d  accuracy %.4f  CI %.4f..%.4f  errored %d  "
                "no-candidate %d\n",
                report.counted, report.accuracy, report.ci_low, report.ci_high,
                report.errored, report.no_candidate);
    for (const auto& [name, s] : report.branches)
        std::printf("  %-13s n=%-5d %5.1f%%  candidates %.1f -> %.1f  "
                    "accuracy %.1f%%\n",
                    name.c_str(), s.count, s.frequency_pct,
                    s.mean_candidates_before, s.mean_candidates_after,
                    s.accuracy_pct);
    if (!opt.csv.empty()) write_breakdown_csv(opt.csv, report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Binary-verification inference orchestration"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run_cmd = app.add_subcommand("run", "Evaluate a manifest against a backend");
    run_cmd->add_option("--manifest", run_opt.manifest, "JSONL task manifest")
        ->required();
    run_cmd->add_option("--mode", run_opt.mode, "open|mcq|mcq-mv|binary");
    run_cmd->add_option("--backend", run_opt.backend, "sim|http");
    run_cmd->add_option("--q1", run_opt.sim.q1, "simulator P(True | claim true)");
    run_cmd->add_option("--q2", run_opt.sim.q2, "simulator P(True | claim false)");
    run_cmd->add_option("--p", run_opt.sim.p, "simulator MCQ accuracy");
    run_cmd->add_option("--tau", run_opt.config.shortlist.tau,
                        "detector confidence threshold");
    run_cmd->add_option("--max-candidates", run_opt.config.shortlist.max_candidates,
                        "shortlist cap (0 = unlimited)");
    run_cmd->add_option("--retries", run_opt.config.resolution.max_retries,
                        "re-verification rounds before MCQ fallback");
    run_cmd->add_flag("--certainty", run_opt.config.resolution.certainty_policy,
                      "append the if-uncertain-answer-False policy");
    run_cmd->add_option("--temperature", run_opt.config.temperature);
    run_cmd->add_option("--mv-repeats", run_opt.config.mv_repeats,
                        "majority-vote repeats (odd, >= 3)");
    run_cmd->add_option("--repeats", run_opt.config.repeats_per_item,
                        "repeats per item for confidence intervals");
    run_cmd->add_option("--seed", run_opt.config.seed);
    run_cmd->add_option("--parallelism", run_opt.config.parallelism);
    run_cmd->add_option("--endpoint", run_opt.http.endpoint_url, "HTTP backend URL");
    run_cmd->add_option("--model", run_opt.http.model);
    run_cmd->add_option("--auth-env", run_opt.http.auth_env_var,
                        "environment variable holding the bearer token");
    run_cmd->add_option("--cache-dir", run_opt.http.cache_dir);
    run_cmd->add_option("--http-log", run_opt.http.log_path,
                        "JSONL prompt/reply log");
    run_cmd->add_option("--out", run_opt.report_path, "report JSON path");
    run_cmd->add_option("--items", run_opt.items_path, "per-item JSONL path");
    run_cmd->add_option("--breakdown", run_opt.breakdown_path,
                        "branch breakdown CSV path");

    TheoryOptions theory_opt;
    auto* theory_cmd =
        app.add_subcommand("theory", "Closed-form accuracy and bound tables");
    theory_cmd->add_option("--q1", theory_opt.q1);
    theory_cmd->add_option("--q2", theory_opt.q2);
    theory_cmd->add_option("--accuracy-csv", theory_opt.accuracy_csv,
                           "binary vs MCQ accuracy over a p grid");
    theory_cmd->add_option("--crossover-csv", theory_opt.crossover_csv,
                           "p*(q1) crossover curve");
    theory_cmd->add_option("--grid-points", theory_opt.grid_points);

    OverlayOptions overlay_opt;
    auto* overlay_cmd = app.add_subcommand("overlay", "Render grid or box overlays");
    overlay_cmd->add_option("--image", overlay_opt.input,
                            "input PNG (blank canvas when omitted)");
    overlay_cmd->add_option("--out", overlay_opt.output, "output PNG");
    overlay_cmd->add_option("--width", overlay_opt.width);
    overlay_cmd->add_option("--height", overlay_opt.height);
    overlay_cmd->add_option("--rows", overlay_opt.rows);
    overlay_cmd->add_option("--cols", overlay_opt.cols);
    overlay_cmd->add_option("--cell", overlay_opt.cell,
                            "highlight a grid cell: row col")
        ->expected(2);
    overlay_cmd->add_option("--box", overlay_opt.box,
                            "highlight a box: x_min y_min x_max y_max")
        ->expected(4);
    overlay_cmd->add_option("--thickness", overlay_opt.thickness);
    overlay_cmd->add_flag("--no-labels", overlay_opt.no_labels);

    MazeOptions maze_opt;
    auto* maze_cmd =
        app.add_subcommand("validate-maze", "Check a path against a maze file");
    maze_cmd->add_option("--maze", maze_opt.maze_file, "maze text file")->required();
    maze_cmd->add_option("--path", maze_opt.path_text,
                         "cells like \"(1,1) (1,2) (2,2)\"")
        ->required();
    maze_cmd->add_flag("--critical", maze_opt.critical,
                       "treat the cells as critical points (start, turns, end)");

    ReportOptions report_opt;
    auto* report_cmd = app.add_subcommand("report", "Summarize a report JSON");
    report_cmd->add_option("--in", report_opt.input, "report JSON")->required();
    report_cmd->add_option("--csv", report_opt.csv, "breakdown CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return cmd_run(run_opt);
        if (*theory_cmd) return cmd_theory(theory_opt);
        if (*overlay_cmd) return cmd_overlay(overlay_opt);
        if (*maze_cmd) return cmd_validate_maze(maze_opt);
        if (*report_cmd) return cmd_report(report_opt);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
