#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "spectral_reach/bundled_maps.hpp"
#include "spectral_reach/envgrid.hpp"
#include "spectral_reach/error.hpp"

using namespace spectral_reach;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

std::size_t floor_count(const MazeSpec& m) { return StateIndex(m).size(); }

}  // namespace

TEST(ParseMaze, CountsFloorCells) {
  EXPECT_EQ(floor_count(parse_maze("####\n#..#\n####")), 2u);
  EXPECT_EQ(floor_count(parse_maze(fixtures::kTwoRoom)), 9u);
}

TEST(ParseMaze, RejectsRaggedRows) {
  EXPECT_EQ(code_of([] { parse_maze("####\n#..#\n###"); }), ErrorCode::RaggedRows);
}

TEST(ParseMaze, RejectsUnknownCharacterWithPosition) {
  try {
    parse_maze("####\n#.x#\n####");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownCharacter);
    EXPECT_NE(std::string(e.what()).find("line 2, column 3"), std::string::npos) << e.what();
  }
}

TEST(ParseMaze, RejectsOpenBorder) {
  EXPECT_EQ(code_of([] { parse_maze("####\n#...\n####"); }), ErrorCode::OpenBorder);
}

TEST(ParseMaze, RejectsMapsWithoutFloor) {
  EXPECT_EQ(code_of([] { parse_maze("###\n###\n###"); }), ErrorCode::NoFloor);
  EXPECT_EQ(code_of([] { parse_maze(""); }), ErrorCode::NoFloor);
}

TEST(ParseMaze, TagsAreFloor) {
  const auto m = parse_maze("#####\n#BG.#\n#####\n");
  EXPECT_EQ(m.at({1, 1}), CellKind::Bias);
  EXPECT_EQ(m.at({2, 1}), CellKind::Goal);
  EXPECT_TRUE(m.floor({1, 1}));
  EXPECT_TRUE(m.floor({2, 1}));
  EXPECT_FALSE(m.floor({0, 1}));
}

TEST(ParseMaze, RenderRoundTripsOnBundledMaps) {
  for (auto name : bundled_map_names()) {
    const auto text = std::string(*bundled_map(name));
    const auto m = parse_maze(text);
    EXPECT_EQ(render_text(m), text) << name;
    EXPECT_EQ(parse_maze(render_text(m)), m) << name;
  }
}

TEST(Step, CorridorMoves) {
  const auto m = parse_maze(fixtures::kP3);
  EXPECT_EQ(step(m, {2, 1}, Action::Left), (Cell{1, 1}));
  EXPECT_EQ(step(m, {1, 1}, Action::Left), (Cell{1, 1}));
  EXPECT_EQ(step(m, {2, 1}, Action::Up), (Cell{2, 1}));
  EXPECT_EQ(step(m, {2, 1}, Action::Right), (Cell{3, 1}));
}

TEST(Step, RejectsWallState) {
  const auto m = parse_maze(fixtures::kP3);
  EXPECT_EQ(code_of([&] { step(m, {0, 0}, Action::Left); }), ErrorCode::InvalidState);
  EXPECT_EQ(code_of([&] { step(m, {9, 9}, Action::Left); }), ErrorCode::InvalidState);
}

TEST(Step, ReversibleAndIdempotentAgainstWalls) {
  for (auto name : bundled_map_names()) {
    const auto m = parse_maze(*bundled_map(name));
    const StateIndex index(m);
    for (const Cell c : index.coords()) {
      for (Action a : kActions) {
        const Cell n = step(m, c, a);
        if (n == c) {
          EXPECT_EQ(step(m, n, a), c);
          continue;
        }
        bool back = false;
        for (Action b : kActions) back = back || step(m, n, b) == c;
        EXPECT_TRUE(back) << name;
      }
    }
  }
}

TEST(StateIndex, RowMajorAndContiguous) {
  const auto m = parse_maze(fixtures::kTwoRoom);
  const StateIndex index(m);
  ASSERT_EQ(index.size(), 9u);
  EXPECT_EQ(index.coord(0), (Cell{1, 1}));
  EXPECT_EQ(index.coord(2), (Cell{4, 1}));
  EXPECT_EQ(index.coord(4), (Cell{1, 2}));
  for (std::size_t s = 0; s < index.size(); ++s) EXPECT_EQ(index.index_of(index.coord(s)), s);
  EXPECT_FALSE(index.index_of({3, 1}).has_value());
  EXPECT_FALSE(index.index_of({-1, 1}).has_value());
}

TEST(Discretize, EmptyBoxIsAllFloor) {
  ContinuousMazeSpec cm{2, 2, 0, {}};
  const auto m = discretize_continuous(cm, 1.0);
  EXPECT_EQ(m.width(), 4);
  EXPECT_EQ(m.height(), 4);
  EXPECT_EQ(floor_count(m), 4u);
}

TEST(Discretize, FullyCoveredBoxHasNoFloor) {
  ContinuousMazeSpec cm{3, 3, 0, {{0, 0, 3, 3}}};
  EXPECT_EQ(code_of([&] { discretize_continuous(cm, 1.0); }), ErrorCode::NoFloor);
}

TEST(Discretize, CentralWallMatchesGeometricEnumeration) {
  ContinuousMazeSpec cm{15, 15, 0.5, {{7, 1, 1, 13}}};
  const auto m = discretize_continuous(cm, 1.0);
  EXPECT_EQ(floor_count(m), oracle::count_free_cells(cm, 1.0));
  EXPECT_EQ(floor_count(m), 212u);
  // Rooms join above and below the wall.
  EXPECT_TRUE(m.floor({8, 1}));
  EXPECT_TRUE(m.floor({8, 15}));
  EXPECT_FALSE(m.floor({8, 8}));
}

TEST(Discretize, BundledContinuousMazesMatchEnumeration) {
  for (auto name : bundled_continuous_names()) {
    const auto cm = parse_continuous_maze(*bundled_continuous_maze(name));
    for (double res : {1.0, 2.0, 3.0}) {
      EXPECT_EQ(floor_count(discretize_continuous(cm, res)), oracle::count_free_cells(cm, res)) << name << " " << res;
    }
  }
}

TEST(Discretize, ValidatesInput) {
  EXPECT_EQ(code_of([] { discretize_continuous({0, 2, 0, {}}, 1.0); }), ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([] { discretize_continuous({2, 2, 0, {{1, 1, 5, 5}}}, 1.0); }), ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([] { discretize_continuous({2, 2, 0, {}}, 0.0); }), ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([] { parse_continuous_maze("{\"width\": 3}"); }), ErrorCode::InvalidInput);
}
