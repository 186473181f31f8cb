#include <catch2/catch_amalgamated.hpp>

#include "roma/dp.hpp"
#include "roma/oracle.hpp"
#include "testdata.hpp"

using namespace roma;

namespace {

uint8_t mask_of(std::initializer_list<Dir> dirs) {
  uint8_t m = 0;
  for (Dir d : dirs) m |= uint8_t(1u << int(d));
  return m;
}

RowConfiguration make_cfg(const std::vector<Cell>& contents,
                          const std::vector<uint8_t>& carry,
                          const std::vector<int8_t>& mouth, bool roma_above) {
  RowConfiguration cfg;
  cfg.cells.resize(contents.size());
  for (size_t i = 0; i < contents.size(); ++i) {
    cfg.cells[i].base = contents[i];
    cfg.cells[i].carry = carry[i];
  }
  cfg.mouth = mouth;
  cfg.roma_above = roma_above;
  return cfg;
}

// Balanced bracket skeletons on p pairs, counted by direct enumeration —
// the independent check against catalan_count.
uint64_t count_balanced(int p) {
  uint64_t total = 0;
  auto rec = [&](auto&& self, int open, int closed) -> void {
    if (open == p && closed == p) {
      ++total;
      return;
    }
    if (open < p) self(self, open + 1, closed);
    if (closed < open) self(self, open, closed + 1);
  };
  rec(rec, 0, 0);
  return total;
}

roma::BoardSpec flipped_vertically(const roma::BoardSpec& b) {
  BoardSpec f;
  f.n = b.n;
  f.box_of.assign(b.cells(), -1);
  f.preset.assign(b.cells(), Cell::Empty);
  f.boxes.assign(b.boxes.size(), {});
  auto flip = [&](int i) { return (b.n - 1 - i / b.n) * b.n + i % b.n; };
  for (int i = 0; i < b.cells(); ++i) {
    int j = flip(i);
    f.box_of[j] = b.box_of[i];
    Cell c = b.preset[i];
    if (c == Cell::Up)
      c = Cell::Down;
    else if (c == Cell::Down)
      c = Cell::Up;
    f.preset[j] = c;
  }
  for (size_t id = 0; id < b.boxes.size(); ++id)
    for (int32_t c : b.boxes[id]) f.boxes[id].push_back(flip(c));
  for (auto& box : f.boxes) std::sort(box.begin(), box.end());
  f.roma = flip(b.roma);
  return f;
}

}  // namespace

TEST_CASE("catalan numbers") {
  CHECK(catalan_count(0) == 1);
  CHECK(catalan_count(3) == 5);
  CHECK(catalan_count(5) == 42);
  std::vector<uint64_t> want = {1, 1, 2, 5, 14, 42, 132, 429, 1430};
  for (int p = 0; p <= 8; ++p) {
    CHECK(catalan_count(p) == want[p]);
    CHECK(count_balanced(p) == want[p]);
  }
}

TEST_CASE("row_content projects combined symbols and drops brackets") {
  // the Eq. (1) example row
  auto eq1 = make_cfg(
      {Cell::Down, Cell::Left, Cell::Up, Cell::Down, Cell::Up, Cell::Up},
      {0, 0, mask_of({Dir::Left, Dir::Down}), mask_of({Dir::Right, Dir::Left}),
       0, 0},
      {-1, -1, 3, -1, 0, 0}, false);
  CHECK(row_content(eq1) == std::vector<Cell>{Cell::Down, Cell::Left, Cell::Up,
                                              Cell::Down, Cell::Up, Cell::Up});
  CHECK(to_string(eq1) == "v[[<[(^,{v,<})](v,{<,>})^]^]");

  // a configuration with no brackets or carries is the identity
  auto plain = make_cfg({Cell::Left, Cell::Down}, {0, 0}, {-1, -1}, false);
  CHECK(row_content(plain) == std::vector<Cell>{Cell::Left, Cell::Down});
  CHECK(to_string(plain) == "<v");
}

TEST_CASE("worked sweep-row example: predecessor to sweep row") {
  BoardSpec b = sweeprow_board();
  REQUIRE(validate_spec(b).empty());
  // predecessor row (y=3): (>,{v,<}) v [ > v ^ ] (<,^)
  auto line1 = make_cfg(
      {Cell::Right, Cell::Down, Cell::Right, Cell::Down, Cell::Up, Cell::Left},
      {mask_of({Dir::Down, Dir::Left}), 0,
       mask_of({Dir::Up, Dir::Down, Dir::Left}), 0, 0, mask_of({Dir::Up})},
      {-1, -1, -1, -1, 1, -1}, false);
  CHECK(to_string(line1) == "(>,{v,<})v[>v^](<,^)");

  std::vector<Cell> sweep_content = {Cell::Down, Cell::Left, Cell::Up,
                                     Cell::Down, Cell::Up,   Cell::Up};
  auto succ = enumerate_successors(b, 3, line1, sweep_content);
  REQUIRE(succ.size() == 1);

  // Both cells of the continuing 4-box carry the availability pair, as in
  // the paper's successor-row example; Eq. (1) itself leaves the second
  // cell of that box unannotated.
  auto line2 = make_cfg(
      sweep_content,
      {0, 0, mask_of({Dir::Down, Dir::Left}), mask_of({Dir::Left, Dir::Right}),
       mask_of({Dir::Left, Dir::Right}), 0},
      {-1, -1, 3, -1, 0, 0}, false);
  CHECK(to_string(line2) == "v[[<[(^,{v,<})](v,{<,>})(^,{<,>})]^]");
  CHECK(succ[0] == line2);
}

TEST_CASE("worked sweep-row example: sweep row to successor") {
  BoardSpec b = sweeprow_board();
  auto line2 = make_cfg(
      {Cell::Down, Cell::Left, Cell::Up, Cell::Down, Cell::Up, Cell::Up},
      {0, 0, mask_of({Dir::Down, Dir::Left}), mask_of({Dir::Left, Dir::Right}),
       mask_of({Dir::Left, Dir::Right}), 0},
      {-1, -1, 3, -1, 0, 0}, false);
  std::vector<Cell> next = {Cell::Down, Cell::Left, Cell::Down,
                            Cell::Right, Cell::Up,  Cell::Left};
  auto succ = enumerate_successors(b, 2, line2, next);
  REQUIRE(succ.size() == 1);
  auto line3 = make_cfg(
      next,
      {mask_of({Dir::Up, Dir::Left, Dir::Right}), 0, 0, mask_of({Dir::Left}),
       mask_of({Dir::Down, Dir::Right}), mask_of({Dir::Down, Dir::Right})},
      {-1, -1, -1, -1, 0, -1}, false);
  CHECK(to_string(line3) == "v[<v(>,<)(^,{v,>})](<,{v,>})");
  CHECK(succ[0] == line3);
}

TEST_CASE("mutual vertical arrows make an empty successor set") {
  // sweep cell Down directly above a successor candidate Up (the spec's
  // bottom-up frame phrases the same pair as sweep Up below candidate Down)
  BoardSpec b = sweeprow_board();
  auto line2 = make_cfg(
      {Cell::Down, Cell::Left, Cell::Up, Cell::Down, Cell::Up, Cell::Up},
      {0, 0, mask_of({Dir::Down, Dir::Left}), mask_of({Dir::Left, Dir::Right}),
       mask_of({Dir::Left, Dir::Right}), 0},
      {-1, -1, 3, -1, 0, 0}, false);
  // column 0 holds Down on the sweep row; Up below it closes a 2-cycle
  std::vector<Cell> next = {Cell::Up,    Cell::Left, Cell::Down,
                            Cell::Right, Cell::Up,   Cell::Left};
  CHECK(enumerate_successors(b, 2, line2, next).empty());
}

TEST_CASE("carried arrow must be respected by a continuing box") {
  BoardSpec b = sweeprow_board();
  auto line2 = make_cfg(
      {Cell::Down, Cell::Left, Cell::Up, Cell::Down, Cell::Up, Cell::Up},
      {0, 0, mask_of({Dir::Down, Dir::Left}), mask_of({Dir::Left, Dir::Right}),
       mask_of({Dir::Left, Dir::Right}), 0},
      {-1, -1, 3, -1, 0, 0}, false);
  // box d continues at column 3 with {Left,Right} available; Up is not
  std::vector<Cell> next = {Cell::Down, Cell::Left, Cell::Down,
                            Cell::Up,   Cell::Up,   Cell::Left};
  CHECK(enumerate_successors(b, 2, line2, next).empty());
}

TEST_CASE("dp agrees with the oracle on the worked-example board") {
  BoardSpec b = sweeprow_board();
  uint64_t want = oracle_count(b);
  auto res = dp_run(b, DpMode::Count);
  CHECK(res.count == want);
  CHECK(res.sat == (want > 0));
}

TEST_CASE("dp on trivial boards") {
  CHECK(dp_run(make_board(1, {"a"}, {"o"}), DpMode::Count).count == 1);
  // fully preset valid board
  BoardSpec ok = make_board(2, {"a b", "r c"}, {"v v", "o <"});
  auto r = dp_run(ok, DpMode::Count);
  CHECK(r.sat);
  CHECK(r.count == 1);
  // two mutually pointing presets
  BoardSpec bad = make_board(2, {"a b", "c r"}, {"v v", "^ o"});
  auto r2 = dp_run(bad, DpMode::Count);
  CHECK_FALSE(r2.sat);
  CHECK(r2.count == 0);
}

TEST_CASE("dp equivalence corpus and Eq.(2) ceiling") {
  std::mt19937 rng(61);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + trial % 3;
    BoardSpec b = random_board(n, rng, trial % 2 ? 0.35 : 0.15);
    if (b.num_empty() > 12) continue;
    uint64_t want = oracle_count(b);
    auto res = dp_run(b, DpMode::Count);
    CHECK(res.count == want);
    CHECK(res.sat == (want > 0));
    uint64_t ceiling = 1;
    for (int i = 0; i < n; ++i) ceiling *= 39;
    CHECK(res.stats.max_row_configs <= ceiling);
    // sweep-direction independence
    auto res_flipped = dp_run(flipped_vertically(b), DpMode::Count);
    CHECK(res_flipped.count == want);
    // determinism
    auto res2 = dp_run(b, DpMode::Count);
    CHECK(res2.count == res.count);
    CHECK(res2.stats.row_configs == res.stats.row_configs);
    ++checked;
  }
  CHECK(checked > 40);
}

TEST_CASE("dp memory guard") {
  std::mt19937 rng(67);
  BoardSpec b = random_board(4, rng, 0.0);
  DpOptions opt;
  opt.max_configs = 2;
  CHECK_THROWS_AS(dp_run(b, DpMode::Count, opt), CapExceeded);
}
