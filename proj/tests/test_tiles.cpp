#include <catch2/catch_amalgamated.hpp>

#include "roma/oracle.hpp"
#include "roma/prop.hpp"
#include "roma/tiles.hpp"

using namespace roma;

namespace {

// Closes a tile into a standalone board: the tile at (1,1), filler routed
// to a Roma cell in the corner.
BoardSpec closed_board(const Tile& t, int n) {
  BoardBuilder bb;
  bb.stamp(t, 1, 1);
  return bb.finish(n, 0, 0);
}

// All solutions must pairwise differ at every empty cell: fixing any one
// empty cell then leaves exactly one completion.
void check_single_fix_uniqueness(const BoardSpec& b,
                                 const std::vector<Assignment>& sols) {
  for (size_t i = 0; i < sols.size(); ++i)
    for (size_t j = i + 1; j < sols.size(); ++j)
      for (int32_t c : b.empty_cells())
        CHECK(sols[i].content[c] != sols[j].content[c]);
}

std::vector<Assignment> prop_solutions(const BoardSpec& b) {
  std::vector<Assignment> out;
  auto res = search(b, SearchMode::Count);
  if (res.count == 0) return out;
  // collect by hinting the first empty cell; gadget boards have two
  // solutions which already differ there
  std::vector<int32_t> empties = b.empty_cells();
  REQUIRE(!empties.empty());
  for (Dir d : kDirs) {
    BoardSpec hinted = b;
    hinted.preset[empties[0]] = to_cell(d);
    auto r = search(hinted, SearchMode::First);
    if (r.status == SolveResult::Status::Sat) out.push_back(*r.witness);
  }
  REQUIRE((uint64_t)out.size() == res.count);
  return out;
}

}  // namespace

TEST_CASE("straight-line gadget: two states, any fix forces the rest") {
  BoardSpec b = closed_board(straight_tile(), 7);
  REQUIRE(validate_spec(b).empty());
  auto sols = oracle_enumerate(b);
  REQUIRE(sols.count == 2);
  check_single_fix_uniqueness(b, sols.solutions);
  // the two states: left column uniform, right column opposite
  for (const auto& a : sols.solutions) {
    Cell l = a.content[b.idx(1, 1)];
    CHECK((l == Cell::Up || l == Cell::Down));
    CHECK(a.content[b.idx(1, 2)] == l);
    CHECK(a.content[b.idx(1, 3)] == l);
    Cell r = a.content[b.idx(4, 1)];
    CHECK(r == (l == Cell::Up ? Cell::Down : Cell::Up));
  }
}

TEST_CASE("straight-line gadget: one end fixed propagates all six cells") {
  BoardSpec plain = closed_board(straight_tile(), 7);
  BoardSpec b = plain;
  b.preset[b.idx(1, 1)] = Cell::Down;
  auto g = propagate(b);
  REQUIRE(g.has_value());
  for (int32_t c : plain.empty_cells())
    CHECK(g->content[c] != Cell::Empty);
  CHECK(g->content[b.idx(4, 3)] == Cell::Up);
}

TEST_CASE("fanout gadget: two states, any fix forces the rest") {
  BoardSpec b = closed_board(fanout_tile(), 13);
  REQUIRE(validate_spec(b).empty());
  auto sols = oracle_enumerate(b);
  REQUIRE(sols.count == 2);
  check_single_fix_uniqueness(b, sols.solutions);
  // taps: columns 1 and 7 share the phase, 4 and 10 carry the inverse
  for (const auto& a : sols.solutions) {
    Cell p = a.content[b.idx(1, 1)];
    CHECK(a.content[b.idx(7, 1)] == p);
    CHECK(a.content[b.idx(1, 3)] == p);
    Cell q = a.content[b.idx(4, 1)];
    CHECK(q == (p == Cell::Up ? Cell::Down : Cell::Up));
    CHECK(a.content[b.idx(10, 1)] == q);
  }
}

TEST_CASE("corner gadget signal turning") {
  BoardSpec b = closed_board(corner_tile(), 7);
  REQUIRE(validate_spec(b).empty());
  auto sols = oracle_enumerate(b);
  REQUIRE(sols.count >= 1);
  for (const auto& a : sols.solutions) {
    // the two implications of the corner lemma, in tile coordinates +1
    if (a.content[b.idx(3, 1)] == Cell::Left)
      CHECK(a.content[b.idx(1, 4)] == Cell::Up);
    if (a.content[b.idx(1, 4)] == Cell::Down)
      CHECK(a.content[b.idx(2, 1)] == Cell::Right);
  }
}

TEST_CASE("variable gadget: exactly two fills, matching the figures") {
  BoardBuilder bb;
  bb.stamp(variable_tile(), 1, 1);
  BoardSpec b = bb.finish(15, 0, 0);
  REQUIRE(validate_spec(b).empty());
  auto sols = prop_solutions(b);
  REQUIRE(sols.size() == 2);
  check_single_fix_uniqueness(b, sols);
  // frozen "true" fill from the figure (tile coordinates, +1 offset)
  std::map<std::pair<int, int>, char> true_fill = {
      {{0, 7}, 'v'},  {{0, 8}, 'v'},  {{0, 9}, 'v'},  {{0, 10}, 'v'},
      {{1, 5}, '>'},  {{2, 5}, '^'},  {{3, 0}, 'v'},  {{3, 1}, 'v'},
      {{3, 2}, 'v'},  {{3, 3}, '<'},  {{3, 8}, '^'},  {{3, 9}, '^'},
      {{3, 10}, '^'}, {{6, 0}, '^'},  {{6, 1}, '^'},  {{6, 2}, '^'},
      {{6, 8}, 'v'},  {{6, 9}, 'v'},  {{6, 10}, 'v'}, {{9, 0}, 'v'},
      {{9, 1}, 'v'},  {{9, 2}, 'v'},  {{9, 7}, '>'},  {{9, 8}, '^'},
      {{9, 9}, '^'},  {{9, 10}, '^'}, {{10, 5}, 'v'}, {{11, 5}, '<'},
      {{12, 0}, '^'}, {{12, 1}, '^'}, {{12, 2}, '^'}, {{12, 3}, '^'},
  };
  // identify the true fill by the decision cell (3,0): Down means true
  int ti = sols[0].content[b.idx(4, 1)] == Cell::Down ? 0 : 1;
  for (auto& [xy, g] : true_fill) {
    Cell want = cell_from_glyph(g).value();
    CHECK(sols[ti].content[b.idx(xy.first + 1, xy.second + 1)] == want);
  }
}

TEST_CASE("literal gadgets: two fills each; negated matches the figure") {
  for (bool negative : {false, true}) {
    BoardBuilder bb;
    bb.stamp(negative ? lit_neg_tile() : lit_pos_tile(), 1, 1);
    BoardSpec b = bb.finish(12, 0, 0);
    REQUIRE(validate_spec(b).empty());
    auto sols = prop_solutions(b);
    INFO("negative=" << negative);
    REQUIRE(sols.size() == 2);
    check_single_fix_uniqueness(b, sols);
    // the state with column 0 flowing down is the "variable true" state
    int ti = sols[0].content[b.idx(1, 1)] == Cell::Down ? 0 : 1;
    const Assignment& tsol = sols[ti];
    const Assignment& fsol = sols[1 - ti];
    if (negative) {
      // frozen from the figure: true funnels back, false leaves downwards
      CHECK(tsol.content[b.idx(4, 4)] == Cell::Left);   // (3,3) = Left
      CHECK(tsol.content[b.idx(7, 4)] == Cell::Left);   // (6,3) = Left
      CHECK(tsol.content[b.idx(5, 6)] == Cell::Right);  // (4,5) = Right
      CHECK(fsol.content[b.idx(5, 6)] == Cell::Left);
    } else {
      // positive literal: true (column 0 down) lets the flow leave down
      CHECK(tsol.content[b.idx(7, 4)] == Cell::Left);   // (6,3) = Left
      CHECK(fsol.content[b.idx(7, 4)] == Cell::Right);
    }
  }
}

namespace {

// Clause test board: three literal gadgets joined by the racetrack rows,
// as drawn (positive, negated, positive).
BoardSpec clause_board(const std::array<Cell, 3>& stubs) {
  BoardBuilder bb;
  const int X = 2, Y = 2;
  bb.stamp(lit_pos_tile(), X + 0, Y);
  bb.stamp(lit_neg_tile(), X + 12, Y);
  bb.stamp(lit_pos_tile(), X + 24, Y);
  for (int x = 0; x <= 33; ++x) {
    if (!bb.occupied(X + x, Y + 7))
      bb.put_1box(X + x, Y + 7, x == 33 ? Cell::Up : Cell::Right, 1);
    bb.put_1box(X + x, Y + 8, x == 0 ? Cell::Down : Cell::Left, 1);
  }
  BoardSpec b = bb.finish(40, 0, 0);
  b.preset[b.idx(X + 0, Y + 0)] = stubs[0];
  b.preset[b.idx(X + 12, Y + 0)] = stubs[1];
  b.preset[b.idx(X + 24, Y + 0)] = stubs[2];
  return b;
}

}  // namespace

TEST_CASE("clause gadget: solvable iff a literal lets the flow leave") {
  // positive literal diverts on Down, negated literal diverts on Up
  for (int combo = 0; combo < 8; ++combo) {
    bool v1 = combo & 1, v2 = (combo >> 1) & 1, v3 = (combo >> 2) & 1;
    std::array<Cell, 3> stubs = {v1 ? Cell::Down : Cell::Up,
                                 v2 ? Cell::Down : Cell::Up,
                                 v3 ? Cell::Down : Cell::Up};
    BoardSpec b = clause_board(stubs);
    bool expect = v1 || !v2 || v3;  // pos, neg, pos
    auto res = search(b, SearchMode::First);
    INFO("combo " << combo);
    CHECK((res.status == SolveResult::Status::Sat) == expect);
  }
}
