#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "binv/maze.hpp"
#include "binv/tasks.hpp"
#include "binv/verifier.hpp"
#include "oracles.hpp"

using namespace binv;
using namespace binv::tasks;

TEST_CASE("score_rec: worked example and endpoints") {
    IouScore s = score_rec({0, 0, 10, 10}, {5, 5, 15, 15});
    CHECK(s.intersection == 25);
    CHECK(s.union_area == 175);
    CHECK(s.iou == doctest::Approx(25.0 / 175.0));
    CHECK_FALSE(s.correct);

    IouScore same = score_rec({3, 4, 10, 12}, {3, 4, 10, 12});
    CHECK(same.iou == doctest::Approx(1.0));
    CHECK(same.correct);

    IouScore disjoint = score_rec({0, 0, 5, 5}, {10, 10, 20, 20});
    CHECK(disjoint.intersection == 0);
    CHECK(disjoint.iou == doctest::Approx(0.0));
    CHECK_FALSE(disjoint.correct);

    CHECK_THROWS_AS(score_rec({0, 0, 0, 5}, {0, 0, 5, 5}), InvalidInputError);
    CHECK_THROWS_AS(score_rec({0, 0, 5, 5}, {5, 5, 5, 5}), InvalidInputError);
}

TEST_CASE("score_rec: IoU exactly 1/2 is not a hit") {
    // [0,2)x[0,1) vs [1,3)x[0,1): I = 1, U = 3. Instead use half overlap:
    // [0,1)x[0,1) vs [0,1)x[0,2): I = 1, U = 2, IoU = 0.5 exactly.
    IouScore s = score_rec({0, 0, 1, 1}, {0, 0, 1, 2});
    CHECK(s.intersection * 2 == s.union_area);
    CHECK_FALSE(s.correct);
}

TEST_CASE("score_rec matches pixel counting on random boxes") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> coord(0, 40);
    std::uniform_int_distribution<std::int64_t> extent(1, 30);
    for (int trial = 0; trial < 1000; ++trial) {
        PixelBox a{coord(rng), coord(rng), 0, 0};
        a.x_max = a.x_min + extent(rng);
        a.y_max = a.y_min + extent(rng);
        PixelBox b{coord(rng), coord(rng), 0, 0};
        b.x_max = b.x_min + extent(rng);
        b.y_max = b.y_min + extent(rng);

        IouScore s = score_rec(a, b);
        double counted = oracles::pixel_count_iou(a, b);
        CHECK(s.iou == doctest::Approx(counted).epsilon(1e-12));
        CHECK(score_rec(b, a).iou == doctest::Approx(s.iou));  // symmetry
        CHECK(s.iou >= 0.0);
        CHECK(s.iou <= 1.0);
    }
}

TEST_CASE("claim templates") {
    CHECK(rec_claim("the red mug on the left") ==
          "Does the object in the highlighted bounding box match the referring "
          "description? Answer with True or False. Referring description: the red "
          "mug on the left");
    CHECK_THROWS_AS(rec_claim(""), InvalidInputError);

    auto maps = map_claims("the cafe", "the bank");
    REQUIRE(maps.size() == 4);
    CHECK(maps[0] == "the cafe is northwest of the bank. Answer: True or False.");
    CHECK(maps[2] == "the cafe is southeast of the bank. Answer: True or False.");
    CHECK(std::string(kDirectionOptions[2]) == "SE");
    CHECK_THROWS_AS(map_claims("", "x"), InvalidInputError);

    auto grid = grid_claims({2, 3}, {"dog", "cat"});
    REQUIRE(grid.size() == 2);
    CHECK(grid[0] == "The object in cell (2,3) is a dog. Answer with True or False.");
    CHECK_THROWS_AS(grid_claims({2, 3}, {"dog", "dog"}), InvalidInputError);
    CHECK_THROWS_AS(grid_claims({0, 3}, {"dog"}), InvalidInputError);
}

TEST_CASE("MazeModel::parse and round trip") {
    const std::string text = "S.#\n..#\n#.E\n";
    MazeModel maze = MazeModel::parse(text);
    CHECK(maze.rows == 3);
    CHECK(maze.cols == 3);
    CHECK(maze.start() == CellIndex{1, 1});
    CHECK(maze.goal() == CellIndex{3, 3});
    CHECK(maze.traversable(2, 2));
    CHECK_FALSE(maze.traversable(1, 3));
    CHECK(MazeModel::parse(maze.to_text()).to_text() == maze.to_text());

    CHECK_THROWS_AS(MazeModel::parse("S.\n..."), InvalidInputError);   // ragged
    CHECK_THROWS_AS(MazeModel::parse("S?\n.E"), InvalidInputError);    // bad char
    CHECK_THROWS_AS(MazeModel::parse("SS\n.E"), InvalidInputError);    // duplicate S
    CHECK_THROWS_AS(MazeModel::parse("S.\n.."), InvalidInputError);    // missing E
    CHECK_THROWS_AS(MazeModel::parse("SE"), InvalidInputError);        // one row
}

TEST_CASE("validate_maze_path: valid BFS path and corrupted variants") {
    MazeModel maze = MazeModel::parse("S.#\n..#\n#.E\n");
    auto cells = oracles::bfs_path(maze);
    REQUIRE_FALSE(cells.empty());

    MazePath path;
    path.cell_sequence = cells;
    CHECK_FALSE(validate_maze_path(maze, path).has_value());

    // Divert one step into a wall.
    MazePath through_wall;
    through_wall.cell_sequence = {{1, 1}, {1, 2}, {1, 3}};
    auto v = validate_maze_path(maze, through_wall);
    REQUIRE(v.has_value());
    CHECK(v->step == 2);

    // Teleporting move.
    MazePath teleport;
    teleport.cell_sequence = {{1, 1}, {2, 2}};
    v = validate_maze_path(maze, teleport);
    REQUIRE(v.has_value());
    CHECK(v->step == 1);

    // Starts off S.
    MazePath wrong_start;
    wrong_start.cell_sequence = {{1, 2}, {1, 1}};
    v = validate_maze_path(maze, wrong_start);
    REQUIRE(v.has_value());
    CHECK(v->step == 0);

    // Ends short of E.
    MazePath short_path;
    short_path.cell_sequence = cells;
    short_path.cell_sequence.pop_back();
    CHECK(validate_maze_path(maze, short_path).has_value());

    // Out of bounds.
    MazePath oob;
    oob.cell_sequence = {{1, 1}, {0, 1}};
    v = validate_maze_path(maze, oob);
    REQUIRE(v.has_value());
    CHECK(v->step == 1);
}

TEST_CASE("generated mazes accept their BFS paths, reject corrupted ones") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        int rows = 3 + static_cast<int>(rng() % 5);
        int cols = 2 + static_cast<int>(rng() % 6);
        MazeModel maze = generate_maze(rows, cols, rng());
        auto cells = oracles::bfs_path(maze);
        REQUIRE_FALSE(cells.empty());

        MazePath path;
        path.cell_sequence = cells;
        CHECK_FALSE(validate_maze_path(maze, path).has_value());

        if (cells.size() >= 3) {
            // Replace an interior cell with a definitely wrong one.
            std::size_t k = 1 + rng() % (cells.size() - 2);
            MazePath bad;
            bad.cell_sequence = cells;
            bad.cell_sequence[k] = {maze.rows + 1, maze.cols + 1};
            auto v = validate_maze_path(maze, bad);
            REQUIRE(v.has_value());
            CHECK(v->step == static_cast<int>(k));
        }
    }
}

TEST_CASE("critical points round trip through expansion") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 100; ++trial) {
        MazeModel maze = generate_maze(3 + static_cast<int>(rng() % 5),
                                       3 + static_cast<int>(rng() % 5), rng());
        auto cells = oracles::bfs_path(maze);
        REQUIRE_FALSE(cells.empty());

        auto points = extract_critical_points(cells);
        auto expanded = expand_critical_points(points);
        REQUIRE(expanded.has_value());
        CHECK(*expanded == cells);
    }

    PathViolation violation;
    auto bad = expand_critical_points({{1, 1}, {3, 4}}, &violation);
    CHECK_FALSE(bad.has_value());
    CHECK(violation.reason.find("collinear") != std::string::npos);
}

TEST_CASE("validate_maze_path accepts critical-point form") {
    MazeModel maze = MazeModel::parse("S..\n##.\n##E\n");
    MazePath path;
    path.critical_points = {{1, 1}, {1, 3}, {3, 3}};
    CHECK_FALSE(validate_maze_path(maze, path).has_value());

    path.critical_points = {{1, 1}, {3, 1}, {3, 3}};  // cuts through walls
    CHECK(validate_maze_path(maze, path).has_value());
}

TEST_CASE("parse_maze_response") {
    MazeResponse ok = parse_maze_response(
        "PATH: (1,1) (1,2) (2,2) (3,2) (3,3)\nCHECKS: True True True True True");
    CHECK_FALSE(ok.parse_failed);
    CHECK_FALSE(ok.self_rejected);
    REQUIRE(ok.path.cell_sequence.size() == 5);
    CHECK(ok.path.cell_sequence[2] == CellIndex{2, 2});
    CHECK(ok.path.step_verdicts.size() == 5);

    MazeResponse rejected = parse_maze_response(
        "path: (1,1) (1,2) (2,2)\nchecks: True True False");
    CHECK_FALSE(rejected.parse_failed);
    CHECK(rejected.self_rejected);

    CHECK(parse_maze_response("PATH: (1,1) (1,2)").parse_failed);
    CHECK(parse_maze_response("CHECKS: True True").parse_failed);
    CHECK(parse_maze_response("PATH: none\nCHECKS: True").parse_failed);
    CHECK(parse_maze_response("gibberish").parse_failed);
}

TEST_CASE("maze_prompt mentions both required reply lines") {
    std::string prompt = maze_prompt(4, 5);
    CHECK(prompt.find("4x5") != std::string::npos);
    CHECK(prompt.find("PATH:") != std::string::npos);
    CHECK(prompt.find("CHECKS:") != std::string::npos);
}

TEST_CASE("jigsaw_options") {
    auto opts = jigsaw_options(2);
    REQUIRE(opts.size() == 3);
    CHECK(opts[0].id == "A");
    CHECK(opts[1].id == "B");
    CHECK(opts[kJigsawRejectIndex].id == "C");
    CHECK(opts[kJigsawRejectIndex].claim ==
          "Neither tile is correct. Answer with True or False.");

    // The certainty suffix attaches at query-render time, not in the claim.
    ClaimQuery q;
    q.claim_text = opts[0].claim;
    q.certainty_policy = true;
    CHECK(q.rendered_claim() ==
          "Tile A correctly completes the image. Answer with True or False. "
          "(if uncertain, answer False)");

    CHECK_THROWS_AS(jigsaw_options(1), InvalidInputError);
    CHECK_THROWS_AS(jigsaw_options(3), InvalidInputError);
}
