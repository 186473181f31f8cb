#pragma once

// Search-tree solver: per-cell candidate elimination to a fixpoint, then
// DFS branching on a fewest-candidates cell. Elimination rules are the three
// from the paper's description: off-board directions, arrows already used in
// the cell's box, and directions whose adoption closes a directed cycle with
// already-fixed cells (the flow of a fixed neighbour is followed through
// fixed cells; following stops at the first empty cell).
//
// The fixpoint engine keeps, for every live (cell, direction) pair, the
// empty cell its flow-check stalled on; fixing that cell re-runs just the
// affected checks. All state changes go through a trail so the search can
// backtrack in O(changes).

#include <cstdint>
#include <optional>

#include "roma/board.hpp"

namespace roma {

struct CandidateGrid {
  // content[i] != Empty for preset or propagated cells; cand[i] is the
  // direction mask (bit = int(Dir)) for cells still empty.
  std::vector<Cell> content;
  std::vector<uint8_t> cand;

  std::vector<Dir> candidates(const BoardSpec& b, int x, int y) const {
    std::vector<Dir> out;
    int i = b.idx(x, y);
    if (content[i] != Cell::Empty) return out;
    for (Dir d : kDirs)
      if (cand[i] & (1u << int(d))) out.push_back(d);
    return out;
  }
};

enum class SearchMode { First, Count, AtMostTwo };

struct SolveResult {
  enum class Status { Sat, Unsat } status = Status::Unsat;
  std::optional<Assignment> witness;
  uint64_t count = 0;
  uint64_t nodes = 0;
};

namespace detail {

class Propagator {
 public:
  explicit Propagator(const BoardSpec& b) : b_(b) {
    content_ = b.preset;
    cand_.assign(b.cells(), 0);
    box_used_.assign(b.boxes.size(), 0);
    stop_.assign(b.cells() * 4, kUnregistered);
    watchers_.assign(b.cells(), {});
    for (int i = 0; i < b.cells(); ++i)
      if (is_arrow(content_[i])) box_used_[b.box_of[i]] |= bit(content_[i]);
  }

  // Initial elimination pass; does not fix singletons.
  void run_initial_eliminations() {
    for (int i = 0; i < b_.cells(); ++i) {
      if (content_[i] != Cell::Empty) continue;
      uint8_t m = 0;
      for (Dir d : kDirs) {
        if (b_.step(i, d) < 0) continue;                          // off-board
        if (box_used_[b_.box_of[i]] & bit(to_cell(d))) continue;  // box
        m |= uint8_t(1u << int(d));
      }
      cand_[i] = m;
      if (m == 0) {
        contradiction_ = true;
        contradiction_cell_ = i;
      }
    }
    for (int i = 0; i < b_.cells(); ++i) {
      if (content_[i] != Cell::Empty) continue;
      for (Dir d : kDirs)
        if (cand_[i] & (1u << int(d))) check_flow(i, d);
    }
    for (int i = 0; i < b_.cells(); ++i)
      if (content_[i] == Cell::Empty && popcount(cand_[i]) == 1)
        queue_.push_back(i);
  }

  // Applies an externally supplied grid (e.g. somebody narrowed candidates
  // by hand): fixes its fixed cells and intersects its masks.
  void seed_from(const CandidateGrid& g) {
    for (int i = 0; i < b_.cells(); ++i) {
      if (g.content[i] != Cell::Empty && content_[i] == Cell::Empty &&
          g.content[i] != Cell::Roma) {
        set_mask(i, uint8_t(cand_[i] & bit_of_dir_mask(g.content[i])));
      } else if (content_[i] == Cell::Empty) {
        set_mask(i, uint8_t(cand_[i] & g.cand[i]));
      }
    }
  }

  // Drains the fix queue; returns false on contradiction.
  bool drain() {
    while (!queue_.empty()) {
      if (contradiction_) return false;
      int c = queue_.back();
      queue_.pop_back();
      if (content_[c] != Cell::Empty) continue;
      uint8_t m = cand_[c];
      if (m == 0) {
        contradiction_ = true;
        return false;
      }
      if (popcount(m) != 1) continue;
      Dir d = Dir(ctz(m));
      // re-check the survivor against the current fixed flow before
      // committing; stale checks otherwise let a cycle slip through
      if (flow_returns(c, d)) {
        eliminate(c, d);
        if (contradiction_) return false;
        continue;
      }
      fix(c, to_cell(d));
      if (contradiction_) return false;
    }
    return !contradiction_;
  }

  bool contradiction() const { return contradiction_; }
  int32_t contradiction_cell() const { return contradiction_cell_; }

  // Branch helper: trailed decision. Committing a direction that closes a
  // fixed cycle is an immediate contradiction for that child.
  size_t mark() const { return trail_.size(); }
  void decide(int cell, Dir d) {
    queue_.clear();
    if (flow_returns(cell, d)) {
      contradiction_ = true;
      return;
    }
    fix(cell, to_cell(d));
  }
  void undo_to(size_t mark) {
    while (trail_.size() > mark) {
      TrailOp op = trail_.back();
      trail_.pop_back();
      switch (op.type) {
        case TrailOp::Fix:
          box_used_[b_.box_of[op.a]] &= uint8_t(~bit(content_[op.a]));
          content_[op.a] = Cell::Empty;
          break;
        case TrailOp::Mask:
          cand_[op.a] = op.old;
          break;
        case TrailOp::Stop:
          stop_[op.a] = op.prev;
          if (op.prev >= 0) watchers_[op.prev].push_back(op.a);
          break;
      }
    }
    contradiction_ = false;
    queue_.clear();
  }

  CandidateGrid grid() const {
    CandidateGrid g;
    g.content = content_;
    g.cand = cand_;
    for (int i = 0; i < b_.cells(); ++i)
      if (g.content[i] != Cell::Empty) g.cand[i] = 0;
    return g;
  }

  const std::vector<Cell>& content() const { return content_; }
  uint8_t mask(int i) const { return cand_[i]; }

  static int popcount(uint8_t m) { return __builtin_popcount(m); }
  static int ctz(uint8_t m) { return __builtin_ctz(m); }

 private:
  static constexpr int32_t kUnregistered = -1;
  static constexpr int32_t kSafe = -2;

  struct TrailOp {
    enum Type : uint8_t { Fix, Mask, Stop } type;
    int32_t a;     // cell (Fix/Mask) or watch id (Stop)
    int32_t prev;  // previous stop (Stop)
    uint8_t old;   // previous mask (Mask)
  };

  static uint8_t bit(Cell c) { return uint8_t(1u << int(to_dir(c))); }
  static uint8_t bit_of_dir_mask(Cell c) { return bit(c); }

  // Follows the fixed flow starting at `from`; reports where it stalls.
  // origin is the cell whose candidate is being checked.
  struct FollowResult {
    enum Outcome { Returns, Stalls, Terminal } outcome;
    int32_t at = -1;  // stall cell when Stalls
  };
  FollowResult follow(int origin, int from) const {
    int cur = from;
    long steps = 0, limit = (long)b_.cells() + 2;
    while (cur >= 0) {
      if (cur == origin) return {FollowResult::Returns, -1};
      Cell c = content_[cur];
      if (c == Cell::Empty) return {FollowResult::Stalls, cur};
      if (c == Cell::Roma) return {FollowResult::Terminal, -1};
      if (++steps > limit) return {FollowResult::Terminal, -1};
      cur = b_.step(cur, to_dir(c));
    }
    return {FollowResult::Terminal, -1};
  }

  bool flow_returns(int origin, Dir d) const {
    int t = b_.step(origin, d);
    if (t < 0) return false;  // off-board handled separately
    return follow(origin, t).outcome == FollowResult::Returns;
  }

  void set_stop(int wid, int32_t value) {
    trail_.push_back({TrailOp::Stop, wid, stop_[wid], 0});
    stop_[wid] = value;
    if (value >= 0) watchers_[value].push_back(wid);
  }

  // Runs the cycle check for candidate d at cell e and registers a watcher
  // on the stall cell.
  void check_flow(int e, Dir d) {
    int t = b_.step(e, d);
    if (t < 0) return;
    auto r = follow(e, t);
    if (r.outcome == FollowResult::Returns) {
      eliminate(e, d);
    } else if (r.outcome == FollowResult::Stalls) {
      set_stop(e * 4 + int(d), r.at);
    } else {
      set_stop(e * 4 + int(d), kSafe);
    }
  }

  void set_mask(int cell, uint8_t m) {
    if (m == cand_[cell]) return;
    trail_.push_back({TrailOp::Mask, cell, 0, cand_[cell]});
    cand_[cell] = m;
    if (content_[cell] != Cell::Empty) return;
    if (m == 0) {
      contradiction_ = true;
      contradiction_cell_ = cell;
    } else if (popcount(m) == 1)
      queue_.push_back(cell);
  }

  void eliminate(int cell, Dir d) {
    set_mask(cell, uint8_t(cand_[cell] & ~(1u << int(d))));
  }

  void fix(int c, Cell v) {
    trail_.push_back({TrailOp::Fix, c, 0, 0});
    content_[c] = v;
    box_used_[b_.box_of[c]] |= bit(v);
    for (int32_t j : b_.boxes[b_.box_of[c]])
      if (j != c && content_[j] == Cell::Empty) {
        eliminate(j, to_dir(v));
        if (contradiction_) return;
      }
    // wake the checks that stalled on c
    std::vector<int32_t> woken;
    woken.swap(watchers_[c]);
    for (int32_t wid : woken) {
      if (stop_[wid] != c) continue;  // stale entry
      int e = wid / 4;
      if (content_[e] != Cell::Empty) {
        watchers_[c].push_back(wid);  // keep registration for backtracking
        continue;
      }
      Dir d = Dir(wid % 4);
      if (!(cand_[e] & (1u << int(d)))) continue;
      auto r = follow(e, c);
      if (r.outcome == FollowResult::Returns) {
        set_stop(wid, kSafe);  // retire; elimination below governs
        eliminate(e, d);
        if (contradiction_) return;
      } else if (r.outcome == FollowResult::Stalls) {
        set_stop(wid, r.at);
      } else {
        set_stop(wid, kSafe);
      }
    }
  }

  const BoardSpec& b_;
  std::vector<Cell> content_;
  std::vector<uint8_t> cand_;
  std::vector<uint8_t> box_used_;
  std::vector<int32_t> stop_;
  std::vector<std::vector<int32_t>> watchers_;
  std::vector<TrailOp> trail_;
  std::vector<int32_t> queue_;
  bool contradiction_ = false;
  int32_t contradiction_cell_ = -1;
};

}  // namespace detail

// Candidate sets after the initial elimination rules, before any
// singleton-fixing.
inline CandidateGrid initial_candidates(const BoardSpec& b) {
  detail::Propagator p(b);
  p.run_initial_eliminations();
  return p.grid();
}

// Singleton-fixing and re-elimination to a fixpoint. Returns nullopt on
// contradiction (some cell lost all candidates).
inline std::optional<CandidateGrid> propagate(const BoardSpec& b,
                                              const CandidateGrid& g) {
  detail::Propagator p(b);
  p.run_initial_eliminations();
  p.seed_from(g);
  if (!p.drain()) return std::nullopt;
  return p.grid();
}

inline std::optional<CandidateGrid> propagate(const BoardSpec& b) {
  detail::Propagator p(b);
  p.run_initial_eliminations();
  if (!p.drain()) return std::nullopt;
  return p.grid();
}

// DFS with propagation. Branch cell: fewest candidates, ties in reading
// order; branch values in canonical direction order. Leaves are re-checked
// with the full is_valid.
inline SolveResult search(const BoardSpec& b, SearchMode mode) {
  SolveResult res;
  detail::Propagator p(b);
  p.run_initial_eliminations();

  // branch order: reading order for tie-breaks
  std::vector<int32_t> reading;
  for (int row = 0; row < b.n; ++row)
    for (int x = 0; x < b.n; ++x) reading.push_back(b.idx(x, b.n - 1 - row));

  uint64_t wanted = mode == SearchMode::First    ? 1
                    : mode == SearchMode::AtMostTwo ? 2
                                                    : UINT64_MAX;

  auto rec = [&](auto&& self) -> bool {  // true = stop search
    ++res.nodes;
    if (p.contradiction() || !p.drain()) return false;
    int branch = -1, best = 5;
    for (int32_t i : reading) {
      if (p.content()[i] != Cell::Empty) continue;
      int c = detail::Propagator::popcount(p.mask(i));
      if (c < best) {
        best = c;
        branch = i;
        if (c <= 1) break;  // 0 caught by drain; 1 cannot happen after drain
      }
    }
    if (branch < 0) {
      Assignment a{p.content()};
      if (is_valid(b, a).empty()) {
        ++res.count;
        if (!res.witness) res.witness = std::move(a);
        if (res.count >= wanted) return true;
      }
      return false;
    }
    uint8_t m = p.mask(branch);
    for (Dir d : kDirs) {
      if (!(m & (1u << int(d)))) continue;
      size_t mk = p.mark();
      p.decide(branch, d);
      bool stop = self(self);
      p.undo_to(mk);
      if (stop) return true;
    }
    return false;
  };
  rec(rec);
  res.status = res.count > 0 ? SolveResult::Status::Sat
                             : SolveResult::Status::Unsat;
  return res;
}

}  // namespace roma
