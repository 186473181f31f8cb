#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "roma/compile.hpp"
#include "roma/prop.hpp"

using namespace roma;

namespace {

Cnf make_cnf(int vars, std::vector<std::vector<int>> cls) {
  Cnf f;
  f.num_vars = vars;
  for (auto& c : cls) {
    std::vector<Literal> cl;
    for (int l : cls.empty() ? std::vector<int>{} : c)
      cl.push_back({std::abs(l), l > 0});
    f.clauses.push_back(cl);
  }
  return f;
}

uint64_t board_count(const CompileResult& r) {
  return search(r.board, SearchMode::Count).count;
}

}  // namespace

TEST_CASE("compile single positive unit clause") {
  Cnf f = make_cnf(1, {{1}});
  auto r = compile(f);
  REQUIRE(validate_spec(r.board).empty());
  CHECK(board_count(r) == 1);
  auto res = search(r.board, SearchMode::First);
  REQUIRE(res.witness);
  auto truth = decode(r.board, r.varmap, *res.witness);
  CHECK(truth == std::vector<bool>{true});
}

TEST_CASE("compile unconstrained variable") {
  Cnf f = make_cnf(1, {});
  auto r = compile(f);
  CHECK(board_count(r) == 2);
}

TEST_CASE("compile (x1 or x2)") {
  Cnf f = make_cnf(2, {{1, 2}});
  auto r = compile(f);
  CHECK(board_count(r) == 3);
}

TEST_CASE("compile unsatisfiable pair") {
  Cnf f = make_cnf(1, {{1}, {-1}});
  auto r = compile(f);
  auto res = search(r.board, SearchMode::First);
  CHECK(res.status == SolveResult::Status::Unsat);
}

TEST_CASE("compile negative literals and mixed clauses") {
  CHECK(board_count(compile(make_cnf(1, {{-1}}))) == 1);
  CHECK(board_count(compile(make_cnf(2, {{-1, -2}}))) == 3);
  CHECK(board_count(compile(make_cnf(2, {{1, -2}, {-1, 2}}))) == 2);
  CHECK(board_count(compile(make_cnf(3, {{1, 2, 3}}))) == 7);
  CHECK(board_count(compile(make_cnf(3, {{-1, -2, -3}}))) == 7);
}

TEST_CASE("compile formula needing both sides") {
  // {1,3} and {2,4} interleave, so the planner must split them
  Cnf f = make_cnf(4, {{1, 3}, {2, 4}});
  auto r = compile(f);
  CHECK(board_count(r) == sat_count(f));
}

TEST_CASE("decode round trip on every solution") {
  Cnf f = make_cnf(3, {{1, -2}, {2, 3}});
  auto r = compile(f);
  uint64_t want = sat_count(f);
  REQUIRE(board_count(r) == want);
  // enumerate board solutions by hinting decision cells
  auto models = sat_models(f);
  std::vector<std::vector<bool>> decoded;
  for (auto& m : models) {
    BoardSpec hinted = r.board;
    for (size_t i = 0; i < m.size(); ++i) {
      auto& e = r.varmap.entries[i];
      hinted.preset[hinted.idx(e.cell.x, e.cell.y)] =
          m[i] ? e.true_arrow : e.false_arrow;
    }
    auto res = search(hinted, SearchMode::Count);
    REQUIRE(res.count == 1);  // parsimony, per model
    decoded.push_back(decode(r.board, r.varmap, *res.witness));
    CHECK(decoded.back() == m);
  }
}

TEST_CASE("varmap serialization round trip") {
  Cnf f = make_cnf(2, {{1, 2}});
  auto r = compile(f);
  VarMap vm2 = parse_varmap(serialize_varmap(r.varmap));
  REQUIRE(vm2.entries.size() == r.varmap.entries.size());
  for (size_t i = 0; i < vm2.entries.size(); ++i) {
    CHECK(vm2.entries[i].var == r.varmap.entries[i].var);
    CHECK(vm2.entries[i].cell == r.varmap.entries[i].cell);
  }
}

TEST_CASE("compile small random suite is parsimonious") {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 15; ++trial) {
    Cnf f;
    f.num_vars = 2 + trial % 3;
    int m = 1 + trial % 3;
    for (int j = 0; j < m; ++j) {
      std::vector<Literal> cl;
      int width = 1 + (int)(rng() % 3);
      for (int t = 0; t < width; ++t)
        cl.push_back(Literal{1 + (int)(rng() % f.num_vars), rng() % 2 == 0});
      f.clauses.push_back(cl);
    }
    INFO(to_dimacs(f));
    auto r = compile(f);
    CHECK(board_count(r) == sat_count(f));
  }
}

TEST_CASE("unconstrained variable decodes to both truth values") {
  Cnf f = make_cnf(1, {});
  auto r = compile(f);
  std::set<bool> seen;
  for (Dir d : {Dir::Up, Dir::Down}) {
    BoardSpec hinted = r.board;
    auto& e = r.varmap.entries[0];
    hinted.preset[hinted.idx(e.cell.x, e.cell.y)] = to_cell(d);
    auto res = search(hinted, SearchMode::First);
    REQUIRE(res.witness);
    seen.insert(decode(r.board, r.varmap, *res.witness)[0]);
  }
  CHECK(seen == std::set<bool>{false, true});
}

TEST_CASE("crossover formula with signal connections") {
  Cnf f = parse_dimacs(
      "p cnf 9 18\n"
      "-1 -2 0\n1 3 2 0\n7 -6 0\n7 -8 0\n-6 -8 0\n8 4 5 0\n-8 -4 0\n"
      "9 -4 0\n-9 3 4 0\n9 -8 0\n-9 -7 8 0\n-3 -4 0\n-3 -2 0\n-4 -2 0\n"
      "2 6 -5 0\n-2 -6 0\n-1 -6 0\n1 -7 6 0\n");
  auto r = compile(f, {{1, 9}, {3, 7}});
  auto models = sat_models(f);
  REQUIRE(models.size() == 4);
  CHECK(search(r.board, SearchMode::Count).count == models.size());
  // decoded solutions are exactly the satisfying assignments
  std::set<std::vector<bool>> decoded, expected(models.begin(), models.end());
  for (auto& m : models) {
    BoardSpec hinted = r.board;
    for (size_t i = 0; i < m.size(); ++i) {
      auto& e = r.varmap.entries[i];
      hinted.preset[hinted.idx(e.cell.x, e.cell.y)] =
          m[i] ? e.true_arrow : e.false_arrow;
    }
    auto res = search(hinted, SearchMode::Count);
    REQUIRE(res.count == 1);
    decoded.insert(decode(r.board, r.varmap, *res.witness));
  }
  CHECK(decoded == expected);
}

TEST_CASE("decode rejects arrows outside the variable map") {
  Cnf f = make_cnf(1, {{1}});
  auto r = compile(f);
  auto res = search(r.board, SearchMode::First);
  REQUIRE(res.witness);
  Assignment bad = *res.witness;
  auto& e = r.varmap.entries[0];
  bad.content[r.board.idx(e.cell.x, e.cell.y)] = Cell::Left;
  CHECK_THROWS_AS(decode(r.board, r.varmap, bad), std::logic_error);
}
