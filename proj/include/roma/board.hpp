#pragma once

// Core Roma board model: cells, boxes, assignments, validity, tracing,
// parsing/serialization of the ROMA 1 file format, ASCII/SVG rendering.
//
// Conventions: coordinates are (x,y) with the origin at the bottom-left,
// x growing rightward and y growing upward. Board files list rows top
// to bottom; the parser performs the flip.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace roma {

enum class Dir : uint8_t { Up = 0, Down = 1, Left = 2, Right = 3 };

// Canonical direction order used by every enumeration in this library.
inline constexpr std::array<Dir, 4> kDirs = {Dir::Up, Dir::Down, Dir::Left,
                                             Dir::Right};

inline constexpr int dx(Dir d) {
  return d == Dir::Left ? -1 : d == Dir::Right ? 1 : 0;
}
inline constexpr int dy(Dir d) {
  return d == Dir::Down ? -1 : d == Dir::Up ? 1 : 0;
}
inline constexpr Dir opposite(Dir d) {
  switch (d) {
    case Dir::Up: return Dir::Down;
    case Dir::Down: return Dir::Up;
    case Dir::Left: return Dir::Right;
    default: return Dir::Left;
  }
}

// Cell content. Empty is only meaningful in preset maps; assignments are
// total over {arrows, Roma}.
enum class Cell : uint8_t {
  Empty = 0,
  Up = 1,
  Down = 2,
  Left = 3,
  Right = 4,
  Roma = 5
};

inline constexpr bool is_arrow(Cell c) {
  return c == Cell::Up || c == Cell::Down || c == Cell::Left ||
         c == Cell::Right;
}
inline constexpr Cell to_cell(Dir d) {
  switch (d) {
    case Dir::Up: return Cell::Up;
    case Dir::Down: return Cell::Down;
    case Dir::Left: return Cell::Left;
    default: return Cell::Right;
  }
}
inline constexpr Dir to_dir(Cell c) {
  switch (c) {
    case Cell::Up: return Dir::Up;
    case Cell::Down: return Dir::Down;
    case Cell::Left: return Dir::Left;
    default: return Dir::Right;
  }
}

inline constexpr char glyph(Cell c) {
  switch (c) {
    case Cell::Empty: return '.';
    case Cell::Up: return '^';
    case Cell::Down: return 'v';
    case Cell::Left: return '<';
    case Cell::Right: return '>';
    default: return 'o';
  }
}
inline std::optional<Cell> cell_from_glyph(char g) {
  switch (g) {
    case '.': return Cell::Empty;
    case '^': return Cell::Up;
    case 'v': return Cell::Down;
    case '<': return Cell::Left;
    case '>': return Cell::Right;
    case 'o': return Cell::Roma;
    default: return std::nullopt;
  }
}

struct Coord {
  int x = 0;
  int y = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Resource guards (enumeration size, DP configuration memory).
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An n x n Roma instance: box partition, presets, Roma cell.
// Cells are addressed by linear index y*n + x throughout.
struct BoardSpec {
  int n = 0;
  std::vector<int32_t> box_of;           // cell index -> box id
  std::vector<std::vector<int32_t>> boxes;  // box id -> sorted cell indices
  std::vector<Cell> preset;              // Cell::Empty where unset
  int32_t roma = -1;                     // cell index of the Roma cell

  int idx(int x, int y) const { return y * n + x; }
  Coord coord(int i) const { return Coord{i % n, i / n}; }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < n && y >= 0 && y < n;
  }
  // Neighbouring cell index in direction d, or -1 when off the board.
  int step(int i, Dir d) const {
    int x = i % n + dx(d), y = i / n + dy(d);
    return in_bounds(x, y) ? idx(x, y) : -1;
  }
  int cells() const { return n * n; }
  std::vector<int32_t> empty_cells() const {
    std::vector<int32_t> out;
    for (int32_t i = 0; i < cells(); ++i)
      if (preset[i] == Cell::Empty) out.push_back(i);
    return out;
  }

  // Derived k = |E_R|.
  int num_empty() const {
    int k = 0;
    for (Cell c : preset) k += (c == Cell::Empty);
    return k;
  }
  friend bool operator==(const BoardSpec&, const BoardSpec&) = default;
};

// A total cell -> content map extending the presets.
struct Assignment {
  std::vector<Cell> content;
  Cell at(const BoardSpec& b, int x, int y) const { return content[b.idx(x, y)]; }
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Directed graph derived from an assignment: out_edge[i] = -1 or target.
struct FlowGraph {
  std::vector<int32_t> out_edge;
};

struct Violation {
  enum class Kind {
    BoxDuplicate,
    OffBoardArrow,
    Cycle,
    ExtraSink,
    Disconnected,
    PresetConflict,
    MalformedPartition
  };
  Kind kind;
  std::vector<Coord> at;
  std::string note;
};

inline const char* to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::BoxDuplicate: return "BoxDuplicate";
    case Violation::Kind::OffBoardArrow: return "OffBoardArrow";
    case Violation::Kind::Cycle: return "Cycle";
    case Violation::Kind::ExtraSink: return "ExtraSink";
    case Violation::Kind::Disconnected: return "Disconnected";
    case Violation::Kind::PresetConflict: return "PresetConflict";
    default: return "MalformedPartition";
  }
}

// ---------------------------------------------------------------------------
// validate_spec: structural invariants of the instance itself.
// ---------------------------------------------------------------------------

inline std::vector<Violation> validate_spec(const BoardSpec& b) {
  std::vector<Violation> out;
  auto bad = [&](Violation::Kind k, std::vector<Coord> at, std::string note) {
    out.push_back(Violation{k, std::move(at), std::move(note)});
  };
  if (b.n <= 0 || (int)b.box_of.size() != b.cells() ||
      (int)b.preset.size() != b.cells()) {
    bad(Violation::Kind::MalformedPartition, {}, "inconsistent dimensions");
    return out;
  }
  // Exactly one Roma preset, at b.roma.
  int romas = 0;
  for (int i = 0; i < b.cells(); ++i)
    if (b.preset[i] == Cell::Roma) {
      ++romas;
      if (i != b.roma)
        bad(Violation::Kind::PresetConflict, {b.coord(i)},
            "Roma glyph not at the declared Roma cell");
    }
  if (romas != 1 || b.roma < 0 || b.roma >= b.cells() ||
      b.preset[b.roma] != Cell::Roma)
    bad(Violation::Kind::PresetConflict, {},
        "board must contain exactly one Roma cell");
  // Boxes: size 1..4, 4-connected, consistent with box_of.
  for (size_t id = 0; id < b.boxes.size(); ++id) {
    const auto& cells = b.boxes[id];
    if (cells.empty()) continue;
    if (cells.size() > 4)
      bad(Violation::Kind::MalformedPartition,
          {b.coord(cells[0])}, "box larger than four cells");
    for (int32_t c : cells)
      if (c < 0 || c >= b.cells() || b.box_of[c] != (int32_t)id)
        bad(Violation::Kind::MalformedPartition, {},
            "box membership inconsistent");
    // connectivity by flood fill inside the box
    std::vector<int32_t> stack{cells[0]};
    std::vector<char> seen(b.cells(), 0);
    seen[cells[0]] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
      int c = stack.back();
      stack.pop_back();
      for (Dir d : kDirs) {
        int t = b.step(c, d);
        if (t >= 0 && !seen[t] && b.box_of[t] == (int32_t)id) {
          seen[t] = 1;
          ++reached;
          stack.push_back(t);
        }
      }
    }
    if (reached != cells.size())
      bad(Violation::Kind::MalformedPartition, {b.coord(cells[0])},
          "box not 4-connected");
  }
  for (int i = 0; i < b.cells(); ++i)
    if (b.box_of[i] < 0 || b.box_of[i] >= (int32_t)b.boxes.size())
      bad(Violation::Kind::MalformedPartition, {b.coord(i)},
          "cell without box");
  // Roma in its own 1-box.
  if (b.roma >= 0 && b.roma < b.cells()) {
    int32_t rb = b.box_of[b.roma];
    if (rb >= 0 && rb < (int32_t)b.boxes.size() && b.boxes[rb].size() != 1)
      bad(Violation::Kind::MalformedPartition, {b.coord(b.roma)},
          "Roma cell must be in its own 1-box");
  }
  return out;
}

// ---------------------------------------------------------------------------
// flow_graph / is_valid / trace_to_roma
// ---------------------------------------------------------------------------

inline FlowGraph flow_graph(const BoardSpec& b, const Assignment& a) {
  FlowGraph g;
  g.out_edge.assign(b.cells(), -1);
  for (int i = 0; i < b.cells(); ++i) {
    Cell c = a.content[i];
    if (is_arrow(c)) g.out_edge[i] = b.step(i, to_dir(c));
  }
  return g;
}

// Full validity check: box condition plus the graph condition stated in
// terms of G(omega): acyclic, weakly connected, unique out-degree-zero
// vertex at the Roma cell. Violations come back as data.
inline std::vector<Violation> is_valid(const BoardSpec& b,
                                       const Assignment& a) {
  std::vector<Violation> out;
  if ((int)a.content.size() != b.cells()) {
    out.push_back(
        {Violation::Kind::PresetConflict, {}, "assignment not total"});
    return out;
  }
  for (int i = 0; i < b.cells(); ++i) {
    if (b.preset[i] != Cell::Empty && a.content[i] != b.preset[i])
      out.push_back({Violation::Kind::PresetConflict,
                     {b.coord(i)},
                     "assignment disagrees with preset"});
    if (a.content[i] == Cell::Roma && i != b.roma)
      out.push_back({Violation::Kind::ExtraSink,
                     {b.coord(i)},
                     "Roma content outside the Roma cell"});
    if (i == b.roma && a.content[i] != Cell::Roma)
      out.push_back({Violation::Kind::PresetConflict,
                     {b.coord(i)},
                     "Roma cell not holding Roma"});
  }
  // Box condition.
  for (const auto& cells : b.boxes) {
    for (size_t i = 0; i < cells.size(); ++i)
      for (size_t j = i + 1; j < cells.size(); ++j)
        if (is_arrow(a.content[cells[i]]) &&
            a.content[cells[i]] == a.content[cells[j]])
          out.push_back({Violation::Kind::BoxDuplicate,
                         {b.coord(cells[i]), b.coord(cells[j])},
                         "same arrow twice in one box"});
  }
  FlowGraph g = flow_graph(b, a);
  // Unique sink: every non-Roma cell needs an out-edge.
  for (int i = 0; i < b.cells(); ++i) {
    if (i == b.roma) continue;
    if (g.out_edge[i] < 0) {
      if (is_arrow(a.content[i]))
        out.push_back({Violation::Kind::OffBoardArrow,
                       {b.coord(i)},
                       "arrow points off the board"});
      else
        out.push_back(
            {Violation::Kind::ExtraSink, {b.coord(i)}, "extra sink"});
    }
  }
  // Cycle detection (iterative colouring).
  {
    std::vector<uint8_t> state(b.cells(), 0);  // 0 new, 1 active, 2 done
    for (int s = 0; s < b.cells(); ++s) {
      if (state[s]) continue;
      std::vector<int> path;
      int c = s;
      while (c >= 0 && state[c] == 0) {
        state[c] = 1;
        path.push_back(c);
        c = g.out_edge[c];
      }
      if (c >= 0 && state[c] == 1) {
        // walk the recorded path back to c to report the full cycle
        std::vector<Coord> cyc;
        bool in = false;
        for (int p : path) {
          if (p == c) in = true;
          if (in) cyc.push_back(b.coord(p));
        }
        out.push_back(
            {Violation::Kind::Cycle, std::move(cyc), "directed cycle"});
      }
      for (int p : path) state[p] = 2;
    }
  }
  // Weak connectivity via union-find over existing edges.
  {
    std::vector<int32_t> parent(b.cells());
    for (int i = 0; i < b.cells(); ++i) parent[i] = i;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int i = 0; i < b.cells(); ++i)
      if (g.out_edge[i] >= 0) parent[find(i)] = find(g.out_edge[i]);
    int root = find(b.roma < 0 ? 0 : b.roma);
    std::vector<Coord> stray;
    for (int i = 0; i < b.cells(); ++i)
      if (find(i) != root) stray.push_back(b.coord(i));
    if (!stray.empty())
      out.push_back({Violation::Kind::Disconnected, std::move(stray),
                     "flow graph not weakly connected"});
  }
  return out;
}

// Reduced validity route used as the solvers' pruning check: box condition,
// no off-board arrows, no directed cycles. Equivalent to is_valid by the
// derived lemma; the equivalence is asserted over the test corpus.
inline bool is_valid_fast(const BoardSpec& b, const Assignment& a) {
  for (int i = 0; i < b.cells(); ++i) {
    if (i == b.roma) {
      if (a.content[i] != Cell::Roma) return false;
      continue;
    }
    if (!is_arrow(a.content[i])) return false;
    if (b.step(i, to_dir(a.content[i])) < 0) return false;
  }
  for (const auto& cells : b.boxes)
    for (size_t i = 0; i < cells.size(); ++i)
      for (size_t j = i + 1; j < cells.size(); ++j)
        if (a.content[cells[i]] == a.content[cells[j]] &&
            is_arrow(a.content[cells[i]]))
          return false;
  FlowGraph g = flow_graph(b, a);
  std::vector<uint8_t> state(b.cells(), 0);
  for (int s = 0; s < b.cells(); ++s) {
    if (state[s]) continue;
    std::vector<int> path;
    int c = s;
    while (c >= 0 && state[c] == 0) {
      state[c] = 1;
      path.push_back(c);
      c = g.out_edge[c];
    }
    if (c >= 0 && state[c] == 1) return false;
    for (int p : path) state[p] = 2;
  }
  return true;
}

// Unique directed path from start to the Roma cell. Requires a valid
// assignment; throws std::logic_error otherwise.
inline std::vector<Coord> trace_to_roma(const BoardSpec& b,
                                        const Assignment& a, Coord start) {
  if (!b.in_bounds(start.x, start.y))
    throw std::logic_error("trace_to_roma: start off board");
  FlowGraph g = flow_graph(b, a);
  std::vector<Coord> path;
  int c = b.idx(start.x, start.y);
  long limit = (long)b.cells() + 1;
  while (true) {
    path.push_back(b.coord(c));
    if (c == b.roma && a.content[c] == Cell::Roma) return path;
    c = g.out_edge[c];
    if (c < 0 || (long)path.size() >= limit)
      throw std::logic_error(
          "trace_to_roma: assignment violates the validity precondition");
  }
}

// ---------------------------------------------------------------------------
// ROMA 1 file format
// ---------------------------------------------------------------------------

namespace detail {

inline std::string strip_comment(std::string line) {
  auto pos = line.find('#');
  if (pos != std::string::npos) line.erase(pos);
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                           line.back() == '\t'))
    line.pop_back();
  return line;
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

}  // namespace detail

// Parses the ROMA 1 text format. Rows appear top-first in the file and are
// flipped into the bottom-left frame. Rejects semantic errors (box size,
// connectivity, Roma placement) as well as syntax errors.
inline BoardSpec parse_board(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto next_line = [&](bool required) -> std::optional<std::string> {
    while (std::getline(in, line)) {
      ++lineno;
      std::string s = detail::strip_comment(line);
      if (!detail::tokens(s).empty()) return s;
    }
    if (required)
      throw ParseError("line " + std::to_string(lineno + 1) +
                       ": unexpected end of file");
    return std::nullopt;
  };
  auto expect = [&](const std::string& what) {
    auto l = next_line(true);
    return *l;
  };

  {
    auto hdr = detail::tokens(expect("header"));
    if (hdr.size() != 2 || hdr[0] != "ROMA" || hdr[1] != "1")
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected 'ROMA 1' header");
  }
  int n = 0;
  {
    auto toks = detail::tokens(expect("N"));
    if (toks.size() != 2 || toks[0] != "N")
      throw ParseError("line " + std::to_string(lineno) + ": expected 'N <size>'");
    try {
      n = std::stoi(toks[1]);
    } catch (...) {
      throw ParseError("line " + std::to_string(lineno) + ": bad board size");
    }
    if (n <= 0 || n > 10000)
      throw ParseError("line " + std::to_string(lineno) + ": bad board size");
  }
  {
    auto toks = detail::tokens(expect("BOXES"));
    if (toks.size() != 1 || toks[0] != "BOXES")
      throw ParseError("line " + std::to_string(lineno) + ": expected 'BOXES'");
  }
  BoardSpec b;
  b.n = n;
  b.box_of.assign(n * n, -1);
  b.preset.assign(n * n, Cell::Empty);
  std::map<std::string, int32_t> label_ids;
  for (int row = 0; row < n; ++row) {
    auto toks = detail::tokens(expect("box row"));
    if ((int)toks.size() != n)
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(n) + " box labels, got " +
                       std::to_string(toks.size()));
    int y = n - 1 - row;
    for (int x = 0; x < n; ++x) {
      auto [it, fresh] =
          label_ids.emplace(toks[x], (int32_t)label_ids.size());
      int32_t id = it->second;
      if (fresh) b.boxes.emplace_back();
      b.box_of[b.idx(x, y)] = id;
      b.boxes[id].push_back(b.idx(x, y));
    }
  }
  {
    auto toks = detail::tokens(expect("CELLS"));
    if (toks.size() != 1 || toks[0] != "CELLS")
      throw ParseError("line " + std::to_string(lineno) + ": expected 'CELLS'");
  }
  for (int row = 0; row < n; ++row) {
    auto raw = expect("cell row");
    auto toks = detail::tokens(raw);
    // accept either whitespace-separated glyphs or one compact token
    std::string glyphs;
    if ((int)toks.size() == n) {
      for (auto& t : toks) {
        if (t.size() != 1)
          throw ParseError("line " + std::to_string(lineno) +
                           ": cell token must be one glyph");
        glyphs += t[0];
      }
    } else if (toks.size() == 1 && (int)toks[0].size() == n) {
      glyphs = toks[0];
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(n) + " cell glyphs");
    }
    int y = n - 1 - row;
    for (int x = 0; x < n; ++x) {
      auto c = cell_from_glyph(glyphs[x]);
      if (!c)
        throw ParseError("line " + std::to_string(lineno) + ", column " +
                         std::to_string(x + 1) + ": bad cell glyph '" +
                         glyphs[x] + "'");
      b.preset[b.idx(x, y)] = *c;
      if (*c == Cell::Roma) {
        if (b.roma >= 0)
          throw ParseError("line " + std::to_string(lineno) +
                           ": more than one Roma cell");
        b.roma = b.idx(x, y);
      }
    }
  }
  if (auto extra = next_line(false))
    throw ParseError("line " + std::to_string(lineno) +
                     ": trailing content after CELLS grid");
  if (b.roma < 0) throw ParseError("board has no Roma cell");
  for (int i = 0; i < b.cells(); ++i) b.boxes[b.box_of[i]].size();
  for (auto& box : b.boxes) std::sort(box.begin(), box.end());
  auto viols = validate_spec(b);
  if (!viols.empty())
    throw ParseError(std::string("semantic error: ") + viols.front().note);
  return b;
}

namespace detail {
// Box labels in canonical serialization: a..z, aa..az, ...
inline std::string box_label(int id) {
  std::string s;
  ++id;
  while (id > 0) {
    --id;
    s.insert(s.begin(), char('a' + id % 26));
    id /= 26;
  }
  return s;
}
}  // namespace detail

// Canonical text form; boxes are relabelled in reading order (top row
// first). parse_board(serialize_board(b)) == b up to that relabelling.
inline std::string serialize_board(const BoardSpec& b) {
  std::ostringstream out;
  out << "ROMA 1\nN " << b.n << "\nBOXES\n";
  std::vector<int32_t> relabel(b.boxes.size(), -1);
  int next = 0;
  for (int row = 0; row < b.n; ++row) {
    int y = b.n - 1 - row;
    for (int x = 0; x < b.n; ++x) {
      int32_t& r = relabel[b.box_of[b.idx(x, y)]];
      if (r < 0) r = next++;
      out << (x ? " " : "") << detail::box_label(r);
    }
    out << "\n";
  }
  out << "CELLS\n";
  for (int row = 0; row < b.n; ++row) {
    int y = b.n - 1 - row;
    for (int x = 0; x < b.n; ++x)
      out << (x ? " " : "") << glyph(b.preset[b.idx(x, y)]);
    out << "\n";
  }
  return out.str();
}

// The CELLS grid of an assignment in file syntax (parseable as a board's
// cell section and printed by the CLI for solutions).
inline std::string cells_grid(const BoardSpec& b, const Assignment& a) {
  std::ostringstream out;
  for (int row = 0; row < b.n; ++row) {
    int y = b.n - 1 - row;
    for (int x = 0; x < b.n; ++x)
      out << (x ? " " : "") << glyph(a.content[b.idx(x, y)]);
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

enum class RenderFormat { Ascii, Svg };

// ASCII picture: cell glyphs on a lattice with thick borders drawn between
// boxes and around the board.
inline std::string render_ascii(const BoardSpec& b,
                                const Assignment* a = nullptr) {
  auto content = [&](int i) {
    return a ? a->content[i] : b.preset[i];
  };
  int W = 2 * b.n + 1, H = 2 * b.n + 1;
  std::vector<std::string> canvas(H, std::string(W, ' '));
  auto boxdiff = [&](int i, int j) {
    return i < 0 || j < 0 || b.box_of[i] != b.box_of[j];
  };
  for (int y = 0; y < b.n; ++y) {
    for (int x = 0; x < b.n; ++x) {
      int i = b.idx(x, y);
      int cy = 2 * (b.n - 1 - y) + 1, cx = 2 * x + 1;
      canvas[cy][cx] = glyph(content(i));
      if (boxdiff(i, b.step(i, Dir::Left))) canvas[cy][cx - 1] = '|';
      if (boxdiff(i, b.step(i, Dir::Right))) canvas[cy][cx + 1] = '|';
      if (boxdiff(i, b.step(i, Dir::Up))) canvas[cy - 1][cx] = '-';
      if (boxdiff(i, b.step(i, Dir::Down))) canvas[cy + 1][cx] = '-';
    }
  }
  for (int y = 0; y < H; y += 2)
    for (int x = 0; x < W; x += 2) canvas[y][x] = '+';
  std::string out;
  for (auto& row : canvas) {
    out += row;
    out += '\n';
  }
  return out;
}

inline std::string render_svg(const BoardSpec& b,
                              const Assignment* a = nullptr) {
  const int cs = 24;  // cell size in px
  auto content = [&](int i) { return a ? a->content[i] : b.preset[i]; };
  std::ostringstream s;
  int side = b.n * cs;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side + 2
    << "\" height=\"" << side + 2 << "\" viewBox=\"-1 -1 " << side + 2 << " "
    << side + 2 << "\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"" << side << "\" height=\"" << side
    << "\" fill=\"white\" stroke=\"none\"/>\n";
  // thin cell lattice
  s << "<g stroke=\"#bbbbbb\" stroke-width=\"1\">\n";
  for (int i = 1; i < b.n; ++i) {
    s << "<line x1=\"" << i * cs << "\" y1=\"0\" x2=\"" << i * cs
      << "\" y2=\"" << side << "\"/>\n";
    s << "<line x1=\"0\" y1=\"" << i * cs << "\" x2=\"" << side << "\" y2=\""
      << i * cs << "\"/>\n";
  }
  s << "</g>\n<g stroke=\"black\" stroke-width=\"3\" stroke-linecap=\"square\">\n";
  auto boxdiff = [&](int i, int j) {
    return j < 0 || b.box_of[i] != b.box_of[j];
  };
  for (int y = 0; y < b.n; ++y)
    for (int x = 0; x < b.n; ++x) {
      int i = b.idx(x, y);
      int px = x * cs, py = (b.n - 1 - y) * cs;  // svg y grows downward
      if (boxdiff(i, b.step(i, Dir::Left)))
        s << "<line x1=\"" << px << "\" y1=\"" << py << "\" x2=\"" << px
          << "\" y2=\"" << py + cs << "\"/>\n";
      if (boxdiff(i, b.step(i, Dir::Right)))
        s << "<line x1=\"" << px + cs << "\" y1=\"" << py << "\" x2=\""
          << px + cs << "\" y2=\"" << py + cs << "\"/>\n";
      if (boxdiff(i, b.step(i, Dir::Up)))
        s << "<line x1=\"" << px << "\" y1=\"" << py << "\" x2=\"" << px + cs
          << "\" y2=\"" << py << "\"/>\n";
      if (boxdiff(i, b.step(i, Dir::Down)))
        s << "<line x1=\"" << px << "\" y1=\"" << py + cs << "\" x2=\""
          << px + cs << "\" y2=\"" << py + cs << "\"/>\n";
    }
  s << "</g>\n<g fill=\"black\">\n";
  for (int y = 0; y < b.n; ++y)
    for (int x = 0; x < b.n; ++x) {
      int i = b.idx(x, y);
      Cell c = content(i);
      double cx = x * cs + cs / 2.0, cy = (b.n - 1 - y) * cs + cs / 2.0;
      if (c == Cell::Roma) {
        s << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\""
          << cs / 3.0 << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
      } else if (is_arrow(c)) {
        // arrow as a line with a head, drawn per direction
        Dir d = to_dir(c);
        double ax = cx - dx(d) * cs * 0.28, ay = cy + dy(d) * cs * 0.28;
        double bx2 = cx + dx(d) * cs * 0.28, by2 = cy - dy(d) * cs * 0.28;
        double hx = -dy(d) * cs * 0.12, hy = -dx(d) * cs * 0.12;
        s << "<line x1=\"" << ax << "\" y1=\"" << ay << "\" x2=\"" << bx2
          << "\" y2=\"" << by2 << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        s << "<polygon points=\"" << bx2 << "," << by2 << " "
          << bx2 - dx(d) * cs * 0.14 + hx << "," << by2 + dy(d) * cs * 0.14 + hy
          << " " << bx2 - dx(d) * cs * 0.14 - hx << ","
          << by2 + dy(d) * cs * 0.14 - hy << "\"/>\n";
      }
    }
  s << "</g>\n</svg>\n";
  return s.str();
}

inline std::string render(const BoardSpec& b, const Assignment* a,
                          RenderFormat f) {
  return f == RenderFormat::Ascii ? render_ascii(b, a) : render_svg(b, a);
}

// ---------------------------------------------------------------------------
// Small construction helpers shared by tests and generators.
// ---------------------------------------------------------------------------

// Builds a BoardSpec from box-label rows and glyph rows, both top row
// first, as in the file format.
inline BoardSpec make_board(int n, const std::vector<std::string>& box_rows,
                            const std::vector<std::string>& cell_rows) {
  std::ostringstream text;
  text << "ROMA 1\nN " << n << "\nBOXES\n";
  for (auto& r : box_rows) text << r << "\n";
  text << "CELLS\n";
  for (auto& r : cell_rows) text << r << "\n";
  return parse_board(text.str());
}

inline Assignment assignment_from_rows(const BoardSpec& b,
                                       const std::vector<std::string>& rows) {
  Assignment a;
  a.content.assign(b.cells(), Cell::Empty);
  if ((int)rows.size() != b.n) throw std::logic_error("bad row count");
  for (int row = 0; row < b.n; ++row) {
    auto toks = detail::tokens(rows[row]);
    std::string glyphs;
    if ((int)toks.size() == b.n) {
      for (auto& t : toks) glyphs += t[0];
    } else {
      glyphs = rows[row];
    }
    if ((int)glyphs.size() != b.n) throw std::logic_error("bad row width");
    for (int x = 0; x < b.n; ++x) {
      auto c = cell_from_glyph(glyphs[x]);
      if (!c || *c == Cell::Empty) throw std::logic_error("bad glyph");
      a.content[b.idx(x, b.n - 1 - row)] = *c;
    }
  }
  return a;
}

}  // namespace roma
