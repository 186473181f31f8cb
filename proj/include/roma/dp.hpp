#pragma once

// Row-sweep dynamic program over Catalan bracket structures.
//
// The sweep moves from the top row of the board downwards. A configuration
// summarises everything future rows can observe about the processed zone:
//   - the contents of the sweep row,
//   - for every box that continues below the sweep row, the set of arrows
//     still available to its remaining cells (the combined-symbol carry),
//   - the river matching: for each sweep-row cell holding an upward arrow,
//     the sweep-row cell (holding a downward arrow) where the path that
//     enters the processed zone at it descends again, or "drain" when that
//     path reaches the Roma cell inside the processed zone.
// The matching is exactly the paper's bracket structure: non-crossing by
// planarity, one bracket pair per returning upward arrow, mouths excluded
// so that several rivers may share one mouth.

#include <cstdint>
#include <unordered_map>

#include "roma/board.hpp"

namespace roma {

// One sweep-row cell: content plus the carry mask for its box (bits are
// Dir values; 0 when the box does not continue below the row).
struct RowSymbol {
  Cell base = Cell::Empty;
  uint8_t carry = 0;

  // Paper type tags, derivable from the stored data plus the partition:
  // 0 box ends at the row, 3 box started on the row and continues,
  // 1 one arrow left, 2 two arrows left.
  friend bool operator==(const RowSymbol&, const RowSymbol&) = default;
};

struct RowConfiguration {
  static constexpr int8_t kNoRiver = -1;  // not an upward arrow
  static constexpr int8_t kDrain = -2;    // river reaches Roma above

  std::vector<RowSymbol> cells;
  // For cells whose content is Up: index of the mouth cell, or kDrain.
  std::vector<int8_t> mouth;
  bool roma_above = false;  // Roma lies strictly above this row or on it

  friend bool operator==(const RowConfiguration&,
                         const RowConfiguration&) = default;

  std::vector<Cell> contents() const {
    std::vector<Cell> out;
    for (auto& s : cells) out.push_back(s.base);
    return out;
  }
};

// The morphism h: brackets dropped, combined symbols projected to their
// first component.
inline std::vector<Cell> row_content(const RowConfiguration& cfg) {
  return cfg.contents();
}

// p-th Catalan number; the oracle for bracket-skeleton counting.
inline uint64_t catalan_count(int p) {
  if (p < 0 || p > 30) throw std::logic_error("catalan_count: p out of range");
  // C_0 = 1, C_{k+1} = C_k * 2(2k+1)/(k+2)
  uint64_t c = 1;
  for (int k = 0; k < p; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

// Paper-style linear string for diagnostics and golden tests, e.g.
// "v[[<[(^,{v,<})](v,{<,>})^]^]".
inline std::string to_string(const RowConfiguration& cfg) {
  int n = (int)cfg.cells.size();
  // gap g holds brackets between cell g-1 and cell g; 0..n
  std::vector<std::string> gaps(n + 1);
  struct Pair {
    int open, close, source;
  };
  std::vector<Pair> pairs;
  for (int u = 0; u < n; ++u) {
    if (cfg.cells[u].base != Cell::Up) continue;
    int m = cfg.mouth[u];
    if (m == RowConfiguration::kDrain) continue;
    if (m < u)
      pairs.push_back({m + 1, u + 1, u});  // [ right of mouth, ] right of source
    else
      pairs.push_back({u, m, u});  // [ left of source, ] left of mouth
  }
  // wider pairs first so nested brackets print inside
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.open != b.open) return a.open < b.open;
    return a.close > b.close;
  });
  for (auto& p : pairs) gaps[p.open] += '[';
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.close != b.close) return a.close < b.close;
    return a.open > b.open;
  });
  for (auto& p : pairs) gaps[p.close] += ']';
  std::string out;
  for (int i = 0; i < n; ++i) {
    out += gaps[i];
    const RowSymbol& s = cfg.cells[i];
    // a three-arrow carry is a type-3 symbol (box started on this row);
    // the paper writes those as plain letters since the carry is derivable
    if (s.carry == 0 || __builtin_popcount(s.carry) == 3) {
      out += glyph(s.base);
    } else {
      out += '(';
      out += glyph(s.base);
      out += ',';
      int bits = __builtin_popcount(s.carry);
      if (bits > 1) out += '{';
      bool first = true;
      for (Dir d : kDirs)
        if (s.carry & (1u << int(d))) {
          if (!first) out += ',';
          out += glyph(to_cell(d));
          first = false;
        }
      if (bits > 1) out += '}';
      out += ')';
    }
  }
  out += gaps[n];
  return out;
}

namespace detail_dp {

// Per-row static facts about the box partition.
struct RowBoxInfo {
  // for each box id: cells of the box in this row (x coordinates),
  // whether the box has cells above / below this row, and a column of the
  // box in the row directly above (where its carry is stored)
  struct BoxRow {
    std::vector<int> xs;
    bool above = false;
    bool below = false;
    int above_col = -1;
  };
  std::unordered_map<int32_t, BoxRow> boxes;
};

inline RowBoxInfo row_box_info(const BoardSpec& b, int y) {
  RowBoxInfo info;
  for (int x = 0; x < b.n; ++x) {
    int32_t id = b.box_of[b.idx(x, y)];
    info.boxes[id].xs.push_back(x);
  }
  for (auto& [id, br] : info.boxes) {
    for (int32_t c : b.boxes[id]) {
      int cy = c / b.n;
      if (cy > y) br.above = true;
      if (cy < y) br.below = true;
      if (cy == y + 1) br.above_col = c % b.n;
    }
  }
  return info;
}

inline uint8_t dir_bit(Cell c) { return uint8_t(1u << int(to_dir(c))); }

// Packed canonical key for deduplication.
inline std::string key_of(const RowConfiguration& cfg) {
  std::string k;
  k.reserve(cfg.cells.size() * 3);
  for (size_t i = 0; i < cfg.cells.size(); ++i) {
    k += char(int(cfg.cells[i].base));
    k += char(cfg.cells[i].carry);
    k += char(cfg.mouth[i] + 8);
  }
  return k;
}

}  // namespace detail_dp

struct DpStats {
  uint64_t max_row_configs = 0;       // peak stored configurations per row
  std::vector<uint64_t> row_configs;  // per folded row, top first
};

struct DpOptions {
  uint64_t max_configs = 4'000'000;  // memory guard on live configurations
};

enum class DpMode { Decide, Count };

struct DpResult {
  bool sat = false;
  uint64_t count = 0;
  DpStats stats;
};

namespace detail_dp {

// Folds one candidate content row `w` for row y under configuration `cfg`
// of row y+1 (or seeds row n-1 when cfg == nullptr). Returns the unique
// successor configuration, or nullopt when inconsistent.
inline std::optional<RowConfiguration> fold_row(
    const BoardSpec& b, int y, const RowConfiguration* cfg,
    const std::vector<Cell>& w, const RowBoxInfo& info) {
  const int n = b.n;
  // --- arrow consistency ---------------------------------------------
  for (int x = 0; x < n; ++x) {
    Cell c = w[x];
    if (c == Cell::Roma) {
      if (b.idx(x, y) != b.roma) return std::nullopt;
      continue;
    }
    if (b.idx(x, y) == b.roma) return std::nullopt;
    Dir d = to_dir(c);
    int tx = x + dx(d), ty = y + dy(d);
    if (!b.in_bounds(tx, ty)) return std::nullopt;        // off-board
    if (d == Dir::Up && !cfg) return std::nullopt;        // top row
    // mutual vertical arrows
    if (cfg && d == Dir::Up && cfg->cells[x].base == Cell::Down)
      return std::nullopt;
  }
  // adjacent mutual horizontal arrows
  for (int x = 0; x + 1 < n; ++x)
    if (w[x] == Cell::Right && w[x + 1] == Cell::Left) return std::nullopt;

  // --- box consistency and new carries --------------------------------
  std::vector<RowSymbol> cells(n);
  for (int x = 0; x < n; ++x) cells[x].base = w[x];
  for (const auto& [id, br] : info.boxes) {
    uint8_t avail;
    if (br.above) {
      // a box spanning this row and rows above must, by 4-connectedness,
      // have a cell in the row directly above; its carry lives there
      if (!cfg || br.above_col < 0) return std::nullopt;
      avail = cfg->cells[br.above_col].carry;
      if (avail == 0) return std::nullopt;
    } else {
      avail = 0x0f;
    }
    uint8_t used = 0;
    for (int x : br.xs) {
      if (w[x] == Cell::Roma) continue;  // Roma box never carries
      uint8_t bit = dir_bit(w[x]);
      if (!(avail & bit)) return std::nullopt;  // arrow not available
      if (used & bit) return std::nullopt;      // duplicate inside the row
      used |= bit;
    }
    uint8_t rest = uint8_t(avail & ~used);
    if (br.below)
      for (int x : br.xs) cells[x].carry = rest;
  }

  // --- cycle consistency and the successor matching -------------------
  // exit map for the predecessor row: where does the flow from its cell x
  // leave the processed zone? (>=0: descends into our row at that column;
  // kDrain: reaches Roma; computed lazily with memoisation)
  std::vector<int8_t> mouth(n, RowConfiguration::kNoRiver);
  auto pred_exit = [&](int x0) -> int {
    // follows the predecessor row through laterals / matched rivers
    int x = x0;
    int steps = 0;
    while (true) {
      if (++steps > 4 * n + 4) return RowConfiguration::kDrain;  // unreachable
      Cell c = cfg->cells[x].base;
      switch (c) {
        case Cell::Roma: return RowConfiguration::kDrain;
        case Cell::Down: return x;
        case Cell::Left: x -= 1; break;
        case Cell::Right: x += 1; break;
        default: {  // Up: jump through its recorded river
          int m = cfg->mouth[x];
          if (m == RowConfiguration::kDrain) return RowConfiguration::kDrain;
          return m;  // mouths hold Down content: descend there
        }
      }
      if (x < 0 || x >= n) return RowConfiguration::kDrain;  // unreachable
    }
  };
  // Trace the flow from row-w cell x through (row w + processed zone) until
  // it descends below row w, drains, or loops.
  std::vector<uint8_t> on_path(n, 0);
  auto trace_from = [&](int start) -> int {
    // returns mouth column, kDrain, or -3 for a detected cycle
    std::fill(on_path.begin(), on_path.end(), 0);
    int x = start;
    while (true) {
      if (on_path[x]) return -3;
      on_path[x] = 1;
      Cell c = w[x];
      switch (c) {
        case Cell::Roma: return RowConfiguration::kDrain;
        case Cell::Down: return x;
        case Cell::Left: x -= 1; break;
        case Cell::Right: x += 1; break;
        default: {  // Up
          int e = pred_exit(x);
          if (e == RowConfiguration::kDrain) return RowConfiguration::kDrain;
          x = e;  // descend into our row at column e
          // the cell above column e pointed Down into us; continue at e
          continue;
        }
      }
    }
  };
  for (int x = 0; x < n; ++x) {
    if (w[x] != Cell::Up) continue;
    // first hop: into the predecessor row directly above
    int e = pred_exit(x);
    int m;
    if (e == RowConfiguration::kDrain) {
      m = RowConfiguration::kDrain;
    } else {
      // continue inside our own row from column e; but the descent lands on
      // our cell e, whose own content directs onwards
      m = trace_from(e);
      if (m == -3) return std::nullopt;  // cycle
    }
    mouth[x] = (int8_t)m;
  }

  RowConfiguration out;
  out.cells = std::move(cells);
  out.mouth = std::move(mouth);
  out.roma_above = b.roma / b.n >= y;
  return out;
}

// Enumerates candidate contents for row y (presets respected, Roma forced)
// and calls fn for each.
template <typename Fn>
void each_row_content(const BoardSpec& b, int y, Fn&& fn) {
  const int n = b.n;
  std::vector<Cell> w(n);
  std::vector<int> free_cells;
  for (int x = 0; x < n; ++x) {
    Cell p = b.preset[b.idx(x, y)];
    w[x] = p;
    if (p == Cell::Empty) free_cells.push_back(x);
  }
  uint64_t total = 1;
  for (size_t i = 0; i < free_cells.size(); ++i) total *= 4;
  for (uint64_t code = 0; code < total; ++code) {
    uint64_t c = code;
    for (int x : free_cells) {
      w[x] = to_cell(kDirs[c & 3]);
      c >>= 2;
    }
    fn(w);
  }
}

}  // namespace detail_dp

// Public fold-one-row operation; exposed for the worked-example tests.
// Given the configuration of row `row_index` and a candidate content of
// row `row_index - 1`, returns the zero or one successor configurations.
inline std::vector<RowConfiguration> enumerate_successors(
    const BoardSpec& b, int row_index, const RowConfiguration& cfg,
    const std::vector<Cell>& next_content) {
  if (row_index <= 0 || row_index >= b.n)
    throw std::logic_error("enumerate_successors: bad row index");
  auto info = detail_dp::row_box_info(b, row_index - 1);
  auto r = detail_dp::fold_row(b, row_index - 1, &cfg, next_content, info);
  std::vector<RowConfiguration> out;
  if (r) out.push_back(std::move(*r));
  return out;
}

// Seed configurations for the top row.
inline std::vector<RowConfiguration> seed_row(const BoardSpec& b) {
  auto info = detail_dp::row_box_info(b, b.n - 1);
  std::vector<RowConfiguration> out;
  detail_dp::each_row_content(b, b.n - 1, [&](const std::vector<Cell>& w) {
    auto r = detail_dp::fold_row(b, b.n - 1, nullptr, w, info);
    if (r) out.push_back(std::move(*r));
  });
  return out;
}

inline DpResult dp_run(const BoardSpec& b, DpMode mode,
                       const DpOptions& opt = {}) {
  DpResult res;
  // live configurations with multiplicities, keyed canonically
  struct Live {
    RowConfiguration cfg;
    uint64_t mult;
  };
  std::unordered_map<std::string, Live> live;
  auto add = [&](RowConfiguration&& cfg, uint64_t mult) {
    std::string k = detail_dp::key_of(cfg);
    auto it = live.find(k);
    if (it == live.end())
      live.emplace(std::move(k), Live{std::move(cfg), mult});
    else
      it->second.mult += mult;
  };
  for (auto& cfg : seed_row(b)) add(std::move(cfg), 1);
  if (live.size() > opt.max_configs)
    throw CapExceeded("dp: live configuration cap exceeded");
  res.stats.row_configs.push_back(live.size());
  res.stats.max_row_configs = live.size();

  for (int y = b.n - 2; y >= 0; --y) {
    std::unordered_map<std::string, Live> next;
    auto info = detail_dp::row_box_info(b, y);
    for (auto& [k, l] : live) {
      detail_dp::each_row_content(b, y, [&](const std::vector<Cell>& w) {
        auto r = detail_dp::fold_row(b, y, &l.cfg, w, info);
        if (!r) return;
        std::string nk = detail_dp::key_of(*r);
        auto it = next.find(nk);
        if (it == next.end())
          next.emplace(std::move(nk), Live{std::move(*r), l.mult});
        else
          it->second.mult += l.mult;
      });
      if (next.size() > opt.max_configs)
        throw CapExceeded("dp: live configuration cap exceeded");
    }
    live = std::move(next);
    res.stats.row_configs.push_back(live.size());
    res.stats.max_row_configs =
        std::max<uint64_t>(res.stats.max_row_configs, live.size());
    if (live.empty()) break;
  }
  for (auto& [k, l] : live) res.count += l.mult;
  res.sat = res.count > 0;
  if (mode == DpMode::Decide) res.count = res.sat ? res.count : 0;
  return res;
}

}  // namespace roma
