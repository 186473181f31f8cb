#pragma once

// Gadget tiles of the reduction, frozen cell-for-cell from the
// construction's drawings, plus a builder that stamps tiles, wire pieces
// and filler onto a growing board.
//
// Tile text: `B` rows give whitespace-separated box tokens (top row first,
// `~` marks a cell outside the tile), `C` rows give the content glyphs
// (`.` empty, `<>^v` preset arrows, `~` outside).

#include <cassert>
#include <map>
#include <unordered_map>

#include "roma/board.hpp"

namespace roma {

struct Tile {
  int w = 0, h = 0;
  std::vector<int16_t> box;   // -1 outside, else local box id, y*w+x
  std::vector<Cell> cell;     // Empty for cells to solve
  int boxes = 0;

  int at(int x, int y) const { return y * w + x; }
  bool inside(int x, int y) const { return box[at(x, y)] >= 0; }

  static Tile from_text(const std::vector<std::string>& box_rows,
                        const std::vector<std::string>& cell_rows) {
    Tile t;
    t.h = (int)box_rows.size();
    std::vector<std::vector<std::string>> toks(t.h);
    for (int r = 0; r < t.h; ++r) {
      std::istringstream is(box_rows[r]);
      std::string s;
      while (is >> s) toks[r].push_back(s);
    }
    t.w = (int)toks[0].size();
    t.box.assign(t.w * t.h, -1);
    t.cell.assign(t.w * t.h, Cell::Empty);
    std::map<std::string, int16_t> ids;
    for (int r = 0; r < t.h; ++r) {
      assert((int)toks[r].size() == t.w);
      std::string glyphs;
      for (char c : cell_rows[r])
        if (c != ' ') glyphs += c;
      assert((int)glyphs.size() == t.w);
      int y = t.h - 1 - r;
      for (int x = 0; x < t.w; ++x) {
        if (toks[r][x] == "~") {
          assert(glyphs[x] == '~');
          continue;
        }
        auto [it, fresh] = ids.emplace(toks[r][x], (int16_t)ids.size());
        t.box[t.at(x, y)] = it->second;
        auto c = cell_from_glyph(glyphs[x]);
        assert(c.has_value());
        t.cell[t.at(x, y)] = *c;
      }
    }
    t.boxes = (int)ids.size();
    return t;
  }

  // Vertical mirror: used for tiles hanging below the core-line.
  Tile mirrored() const {
    Tile m;
    m.w = w;
    m.h = h;
    m.boxes = boxes;
    m.box.assign(w * h, -1);
    m.cell.assign(w * h, Cell::Empty);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        Cell c = cell[at(x, y)];
        if (c == Cell::Up)
          c = Cell::Down;
        else if (c == Cell::Down)
          c = Cell::Up;
        m.box[m.at(x, h - 1 - y)] = box[at(x, y)];
        m.cell[m.at(x, h - 1 - y)] = c;
      }
    return m;
  }
};

// ---------------------------------------------------------------------------
// Frozen tiles.
// ---------------------------------------------------------------------------

// 4x3 straight-line gadget: three stacked conductor-boxes.
inline const Tile& straight_tile() {
  static const Tile t = Tile::from_text({"c c c c", "b b b b", "a a a a"},
                                        {". < > .", ". < > .", ". < > ."});
  return t;
}

// 10x3 fanout-gadget.
inline const Tile& fanout_tile() {
  static const Tile t = Tile::from_text(
      {
          "c c c c ~ ~ f f f f",
          "b b b d d d d g g g",
          "a a a a ~ ~ e e e e",
      },
      {
          ". < > . ~ ~ . < > .",
          ". < > . < > . < > .",
          ". < > . ~ ~ . < > .",
      });
  return t;
}

// 3x4 corner-gadget (the L-shaped 4-box with its three companions).
inline const Tile& corner_tile() {
  static const Tile t = Tile::from_text(
      {"b b ~", "a c ~", "a ~ ~", "a a d"},
      {". < ~", ". ^ ~", "< ~ ~", "^ . ."});
  return t;
}

// 13x11 variable-gadget. The middle row is the core-line segment; the
// bottom and top fanouts expose the signal taps. The fanout gap pairs
// ((7,0),(8,0) and (4,10),(5,10)) are prefilled 1-boxes routed into the
// neighbouring conductor columns, since tap chains may enclose them.
inline const Tile& variable_tile() {
  static const Tile t = Tile::from_text(
      {
          "b3 b3 b3 b3 g1 g2 b35 b35 b35 b35 ~ ~ ~",
          "b2 b2 b2 b15 b15 b15 b15 b42 b42 b42 ~ ~ ~",
          "b1 b1 b1 b1 b21 b27 b34 b34 b34 b34 b58 ~ ~",
          "b0 b5 b9 b14 b20 b26 b33 b41 b48 b53 b58 ~ ~",
          "b0 b4 b8 b13 b19 b25 b32 b40 b47 b53 b57 b62 b63",
          "b0 b0 b7 b7 b18 b24 b31 b39 b46 b53 b53 b61 b61",
          "~ ~ ~ b7 b17 b23 b30 b38 b45 b52 b56 b60 b61",
          "~ ~ b6 b7 b16 b22 b29 b37 b44 b51 b55 b59 b61",
          "~ ~ b6 b12 b12 b12 b12 b36 b43 b50 b50 b50 b50",
          "~ ~ ~ b11 b11 b11 b28 b28 b28 b28 b54 b54 b54",
          "~ ~ ~ b10 b10 b10 b10 g3 g4 b49 b49 b49 b49",
      },
      {
          ". < > . > ^ . < > . ~ ~ ~",
          ". < > . < > . < > . ~ ~ ~",
          ". < > . v v . < > . < ~ ~",
          ". ^ v v v v v v v . ^ ~ ~",
          "< < < < < < < < < < < < <",
          "^ . . v ^ ^ ^ ^ ^ ^ . . v",
          "~ ~ ~ > ^ ^ ^ ^ ^ < < < >",
          "~ ~ v . ^ ^ ^ ^ ^ < < v .",
          "~ ~ > . < > . ^ ^ . < > .",
          "~ ~ ~ . < > . < > . < > .",
          "~ ~ ~ . < > . > ^ . < > .",
      });
  return t;
}

// 10x8 positive literal-gadget.
inline const Tile& lit_pos_tile() {
  static const Tile t = Tile::from_text(
      {
          "~ ~ ~ ~ ~ ~ ~ q v ~",
          "~ ~ ~ ~ ~ ~ ~ p u ~",
          "~ ~ ~ e e i i o t ~",
          "~ ~ ~ e g g i n s ~",
          "~ ~ ~ e f h i m r ~",
          "c c c c f h k k k k",
          "b b b d d d d l l l",
          "a a a a g1 g2 j j j j",
      },
      {
          "~ ~ ~ ~ ~ ~ ~ v > ~",
          "~ ~ ~ ~ ~ ~ ~ v ^ ~",
          "~ ~ ~ ^ . . ^ v ^ ~",
          "~ ~ ~ v < > v < ^ ~",
          "~ ~ ~ . v v . > ^ ~",
          ". < > . < > . < > .",
          ". < > . < > . < > .",
          ". < > . > ^ . < > .",
      });
  return t;
}

// 10x8 negated literal-gadget.
inline const Tile& lit_neg_tile() {
  static const Tile t = Tile::from_text(
      {
          "~ ~ h l p s w ~ ~ ~",
          "~ ~ g k o s v ~ ~ ~",
          "~ ~ f j j r r ~ ~ ~",
          "~ ~ e j n n r ~ ~ ~",
          "~ ~ d j m q r ~ ~ ~",
          "c c c c m q u u u u",
          "b b b i i i i x x x",
          "a a a a g1 g2 t t t t",
      },
      {
          "~ ~ > > v > > ~ ~ ~",
          "~ ~ v < v ^ ^ ~ ~ ~",
          "~ ~ v ^ . . ^ ~ ~ ~",
          "~ ~ > v < > v ~ ~ ~",
          "~ ~ < . v v . ~ ~ ~",
          ". < > . < > . < > .",
          ". < > . < > . < > .",
          ". < > . > ^ . < > .",
      });
  return t;
}

// ---------------------------------------------------------------------------
// Builder.
// ---------------------------------------------------------------------------

// Grows a board by stamping tiles and wire structures on a virtual grid,
// then closes every remaining cell as a prefilled 1-box routed to the
// nearest drain (core-line, clause racetrack, Roma).
class BoardBuilder {
 public:
  // Filler flows are routed to the core-line whenever reachable. Only
  // encapsulated pockets may drain into a clause racetrack; pockets pick
  // the lowest-ranked adjacent track (clause levels closest to the core
  // first) so that a diverted clause flow always descends towards the
  // core and never re-enters the racetrack it came from.
  static constexpr int kCore = 0;
  static constexpr int kNoDrain = -1;

  struct CellData {
    Cell content = Cell::Empty;
    int32_t box = -1;
    int drain = kNoDrain;  // kCore, or a track rank >= 1
  };

  int next_box() { return box_count_++; }

  void put(int x, int y, Cell c, int32_t box, int drain = kNoDrain) {
    Key k{x, y};
    auto [it, fresh] = cells_.emplace(k, CellData{c, box, drain});
    if (!fresh) throw std::logic_error("builder: cell stamped twice at (" +
                                       std::to_string(x) + "," +
                                       std::to_string(y) + ")");
  }

  void put_1box(int x, int y, Cell c, int drain = kNoDrain) {
    put(x, y, c, next_box(), drain);
  }

  bool occupied(int x, int y) const { return cells_.count({x, y}) > 0; }

  void stamp(const Tile& t, int x0, int y0) {
    int base = box_count_;
    box_count_ += t.boxes;
    for (int y = 0; y < t.h; ++y)
      for (int x = 0; x < t.w; ++x)
        if (t.box[t.at(x, y)] >= 0)
          put(x0 + x, y0 + y, t.cell[t.at(x, y)], base + t.box[t.at(x, y)]);
  }

  // Vertical run of straight-line tiles over columns [x, x+3] and rows
  // [y0, y1]; the row count must be a multiple of three.
  void vwire(int x, int y0, int y1) {
    if ((y1 - y0 + 1) % 3 != 0 || y1 < y0)
      throw std::logic_error("builder: bad vertical wire extent");
    for (int y = y0; y <= y1; y += 3) stamp(straight_tile(), x, y);
  }

  // Horizontal conductor chain over columns [x0, x1] (width 4 mod 6) and
  // rows [y, y+2], the repeating fanout pattern. Signal taps sit in the
  // top and bottom rows at columns x0 + 6i and x0 + 6i + 3; taps at
  // x0 + 6i carry the phase of x0.
  void hchain(int x0, int x1, int y) {
    int len = x1 - x0 + 1;
    if (len < 4 || len % 6 != 4)
      throw std::logic_error("builder: bad chain width");
    if (len == 4) {
      stamp(straight_tile(), x0, y);
      return;
    }
    // bottom and top rows: conductors at 6i, gap cells between
    for (int row : {y, y + 2}) {
      for (int u = x0; u + 3 <= x1; u += 6) {
        int32_t b = next_box();
        put(u + 0, row, Cell::Empty, b);
        put(u + 1, row, Cell::Left, b);
        put(u + 2, row, Cell::Right, b);
        put(u + 3, row, Cell::Empty, b);
        if (u + 5 <= x1) {
          put_1box(u + 4, row, row == y ? Cell::Up : Cell::Down);
          put_1box(u + 5, row, row == y ? Cell::Up : Cell::Down);
        }
      }
    }
    // middle row: west 3-box, bridge conductors with full 2-boxes between
    // them, east 3-box
    {
      int32_t b = next_box();
      put(x0 + 0, y + 1, Cell::Empty, b);
      put(x0 + 1, y + 1, Cell::Left, b);
      put(x0 + 2, y + 1, Cell::Right, b);
      for (int u = x0 + 3; u + 3 <= x1 - 1; u += 6) {
        int32_t c = next_box();
        put(u + 0, y + 1, Cell::Empty, c);
        put(u + 1, y + 1, Cell::Left, c);
        put(u + 2, y + 1, Cell::Right, c);
        put(u + 3, y + 1, Cell::Empty, c);
        if (u + 9 <= x1 - 1) {  // a bridge follows: full 2-box between
          int32_t g = next_box();
          put(u + 4, y + 1, Cell::Left, g);
          put(u + 5, y + 1, Cell::Right, g);
        }
      }
      int32_t e = next_box();
      put(x1 - 2, y + 1, Cell::Left, e);
      put(x1 - 1, y + 1, Cell::Right, e);
      put(x1 - 0, y + 1, Cell::Empty, e);
    }
  }

  // Finalises into an n x n BoardSpec with the given Roma cell. All
  // unoccupied cells become prefilled 1-boxes whose flow runs to the
  // nearest drain by breadth-first search.
  BoardSpec finish(int n, int roma_x, int roma_y) {
    put(roma_x, roma_y, Cell::Roma, next_box(), kCore);
    BoardSpec b;
    b.n = n;
    b.box_of.assign((size_t)n * n, -1);
    b.preset.assign((size_t)n * n, Cell::Empty);
    b.roma = b.idx(roma_x, roma_y);

    int max_rank = 0;
    std::vector<int> drain((size_t)n * n, kNoDrain);
    for (auto& [k, cd] : cells_) {
      if (k.x < 0 || k.x >= n || k.y < 0 || k.y >= n)
        throw std::logic_error("builder: stamp outside the board");
      int i = b.idx(k.x, k.y);
      b.box_of[i] = cd.box;
      b.preset[i] = cd.content;
      drain[i] = cd.drain;
      max_rank = std::max(max_rank, cd.drain);
    }
    // filler: BFS rounds by drain rank; every region is claimed by the
    // lowest-ranked drain it touches
    std::vector<Cell> filler((size_t)n * n, Cell::Empty);
    auto run_tier = [&](int tier) {
      std::vector<int32_t> queue;
      for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
          int i = b.idx(x, y);
          if (b.box_of[i] >= 0 || filler[i] != Cell::Empty) continue;
          for (Dir d : kDirs) {
            int tx = x + dx(d), ty = y + dy(d);
            if (tx < 0 || tx >= n || ty < 0 || ty >= n) continue;
            int t = b.idx(tx, ty);
            if (b.box_of[t] >= 0 && drain[t] == tier) {
              filler[i] = to_cell(d);
              queue.push_back(i);
              break;
            }
          }
        }
      for (size_t head = 0; head < queue.size(); ++head) {
        int i = queue[head];
        int x = i % n, y = i / n;
        for (Dir d : kDirs) {
          int tx = x + dx(d), ty = y + dy(d);
          if (tx < 0 || tx >= n || ty < 0 || ty >= n) continue;
          int t = b.idx(tx, ty);
          if (b.box_of[t] >= 0 || filler[t] != Cell::Empty) continue;
          filler[t] = to_cell(opposite(d));
          queue.push_back(t);
        }
      }
    };
    for (int tier = 0; tier <= max_rank; ++tier) run_tier(tier);
    for (int i = 0; i < n * n; ++i) {
      if (b.box_of[i] >= 0) continue;
      if (filler[i] == Cell::Empty)
        throw std::logic_error("builder: filler cell with no route to a drain at (" +
                               std::to_string(i % n) + "," + std::to_string(i / n) + ")");
      b.box_of[i] = box_count_++;
      b.preset[i] = filler[i];
    }
    b.boxes.assign(box_count_, {});
    for (int i = 0; i < n * n; ++i) b.boxes[b.box_of[i]].push_back(i);
    // drop empty box ids to keep validate_spec happy
    std::vector<int32_t> remap(box_count_, -1);
    int32_t next = 0;
    for (int32_t id = 0; id < box_count_; ++id)
      if (!b.boxes[id].empty()) remap[id] = next++;
    for (int i = 0; i < n * n; ++i) b.box_of[i] = remap[b.box_of[i]];
    std::vector<std::vector<int32_t>> boxes(next);
    for (int32_t id = 0; id < box_count_; ++id)
      if (remap[id] >= 0) boxes[remap[id]] = std::move(b.boxes[id]);
    b.boxes = std::move(boxes);
    return b;
  }

  // Marks an already stamped cell as a drain target for the filler.
  void mark_drain(int x, int y, int rank) {
    auto it = cells_.find({x, y});
    if (it == cells_.end()) throw std::logic_error("builder: no cell to mark");
    it->second.drain = rank;
  }

  int box_count() const { return box_count_; }

 private:
  struct Key {
    int x, y;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      return std::hash<long long>()((long long)k.x * 1000003LL + k.y);
    }
  };
  std::unordered_map<Key, CellData, KeyHash> cells_;
  int box_count_ = 0;
};

}  // namespace roma
