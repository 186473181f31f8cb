#pragma once

// Brute-force ground truth: exhaustive enumeration over the 4^k fillings of
// the empty cells, exact counting, and fewest-clues search by exhaustion.
// This module is the provenance oracle for everything the faster engines
// claim; it prunes only in ways that cannot lose solutions (box duplicates,
// off-board arrows, closed cycles among already-fixed cells).

#include <cstdint>
#include <optional>
#include <utility>

#include "roma/board.hpp"

namespace roma {

struct SolutionSet {
  std::vector<Assignment> solutions;
  bool truncated = false;
  uint64_t count = 0;  // exact even when the listing is truncated
};

struct OracleOptions {
  int max_empty = 16;  // refuse instances with more empty cells than this
};

namespace detail {

// Enumeration order: empty cells in reading order (top row first, then x),
// directions in canonical order. Deterministic so golden files stay stable.
inline std::vector<int32_t> reading_order_empties(const BoardSpec& b) {
  std::vector<int32_t> cells;
  for (int row = 0; row < b.n; ++row) {
    int y = b.n - 1 - row;
    for (int x = 0; x < b.n; ++x)
      if (b.preset[b.idx(x, y)] == Cell::Empty) cells.push_back(b.idx(x, y));
  }
  return cells;
}

template <typename Fn>
void enumerate_fillings(const BoardSpec& b, Fn&& on_solution) {
  std::vector<int32_t> order = reading_order_empties(b);
  Assignment a;
  a.content = b.preset;
  // box usage masks for pruning
  std::vector<uint8_t> box_used(b.boxes.size(), 0);
  auto mask = [](Cell c) { return uint8_t(1u << (int(c) - 1)); };
  for (int i = 0; i < b.cells(); ++i)
    if (is_arrow(b.preset[i])) box_used[b.box_of[i]] |= mask(b.preset[i]);

  // follows the flow from t through already-filled cells; true if it
  // returns to origin (a directed cycle would be closed)
  auto closes_cycle = [&](int origin, int t) {
    int steps = 0;
    while (t >= 0 && is_arrow(a.content[t])) {
      if (t == origin) return true;
      t = b.step(t, to_dir(a.content[t]));
      if (++steps > b.cells()) return true;  // fixed cycle downstream
    }
    return t == origin;
  };

  auto rec = [&](auto&& self, size_t pos) -> void {
    if (pos == order.size()) {
      if (is_valid(b, a).empty()) on_solution(a);
      return;
    }
    int i = order[pos];
    for (Dir d : kDirs) {
      int t = b.step(i, d);
      if (t < 0) continue;  // off-board arrows can never become valid
      Cell c = to_cell(d);
      uint8_t m = uint8_t(1u << (int(c) - 1));
      if (box_used[b.box_of[i]] & m) continue;
      a.content[i] = c;
      if (!closes_cycle(i, t)) {
        box_used[b.box_of[i]] |= m;
        self(self, pos + 1);
        box_used[b.box_of[i]] &= uint8_t(~m);
      }
      a.content[i] = Cell::Empty;
    }
  };
  rec(rec, 0);
}

}  // namespace detail

// Enumerates every valid completion. `limit` caps the number of stored
// assignments; the count stays exact either way.
inline SolutionSet oracle_enumerate(const BoardSpec& b,
                                    std::optional<uint64_t> limit = {},
                                    const OracleOptions& opt = {}) {
  if (b.num_empty() > opt.max_empty)
    throw CapExceeded("oracle: instance has " +
                      std::to_string(b.num_empty()) +
                      " empty cells, cap is " + std::to_string(opt.max_empty));
  SolutionSet out;
  detail::enumerate_fillings(b, [&](const Assignment& a) {
    ++out.count;
    if (!limit || out.solutions.size() < *limit)
      out.solutions.push_back(a);
    else
      out.truncated = true;
  });
  return out;
}

inline uint64_t oracle_count(const BoardSpec& b, const OracleOptions& opt = {}) {
  if (b.num_empty() > opt.max_empty)
    throw CapExceeded("oracle: instance has " +
                      std::to_string(b.num_empty()) +
                      " empty cells, cap is " + std::to_string(opt.max_empty));
  uint64_t count = 0;
  detail::enumerate_fillings(b, [&](const Assignment&) { ++count; });
  return count;
}

// Fewest-clues search by exhaustion.
struct FcpResult {
  enum class Status { Found, NoneExists, Unsat } status;
  std::vector<std::pair<Coord, Cell>> hints;  // meaningful when Found
};

// Searches hint sets of size 0..k (subsets in reading order, arrow values
// in canonical order) whose addition makes the instance uniquely solvable.
// Hints must themselves extend to a solution, which the uniqueness check
// subsumes: a hinted instance with count 1 has exactly that extension.
inline FcpResult fcp_bruteforce(const BoardSpec& b, int k,
                                const OracleOptions& opt = {}) {
  if (oracle_count(b, opt) == 0) return {FcpResult::Status::Unsat, {}};
  auto order = detail::reading_order_empties(b);
  BoardSpec work = b;

  std::vector<int> chosen;
  std::vector<Cell> values;
  auto count_with_hints = [&]() {
    for (size_t i = 0; i < chosen.size(); ++i)
      work.preset[order[chosen[i]]] = values[i];
    uint64_t c = 0;
    bool over = false;
    detail::enumerate_fillings(work, [&](const Assignment&) {
      if (++c > 1) over = true;
    });
    (void)over;
    for (int ci : chosen) work.preset[order[ci]] = Cell::Empty;
    return c;
  };

  std::optional<std::vector<std::pair<Coord, Cell>>> found;
  auto assign_values = [&](auto&& self, size_t vi) -> bool {
    if (vi == chosen.size()) {
      if (count_with_hints() == 1) {
        std::vector<std::pair<Coord, Cell>> hints;
        for (size_t i = 0; i < chosen.size(); ++i)
          hints.emplace_back(b.coord(order[chosen[i]]), values[i]);
        found = std::move(hints);
        return true;
      }
      return false;
    }
    for (Dir d : kDirs) {
      values[vi] = to_cell(d);
      if (self(self, vi + 1)) return true;
    }
    return false;
  };
  auto choose = [&](auto&& self, size_t from, int remaining) -> bool {
    if (remaining == 0) {
      values.assign(chosen.size(), Cell::Empty);
      return assign_values(assign_values, 0);
    }
    for (size_t c = from; c + remaining <= order.size() + 0u; ++c) {
      chosen.push_back((int)c);
      if (self(self, c + 1, remaining - 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  for (int size = 0; size <= k; ++size) {
    chosen.clear();
    if (choose(choose, 0, size))
      return {FcpResult::Status::Found, std::move(*found)};
  }
  return {FcpResult::Status::NoneExists, {}};
}

}  // namespace roma
