#pragma once

// The reduction compiler: 3-CNF -> Roma board.
//
// Geometry: variable gadgets sit side by side on the core-line, whose
// leftmost cell is the Roma cell. Clauses become racetrack strips above or
// below the core-line. Every incidence gets its own vertical straight-line
// riser from a conductor chain over (or under) its variable gadget up to
// the clause's level, where a fanout chain hands the signal to the literal
// gadget. A small planner picks sides and levels so that nothing crosses:
// a strip may only span slots whose risers stop below it, with the
// slot-local riser order [west-departing ascending | interior-top |
// east-departing descending] making the remaining passes collision-free.
// Residual cells become prefilled 1-boxes routed to the core-line, or, for
// encapsulated pockets, into a clause racetrack.

#include <numeric>

#include "roma/cnf.hpp"
#include "roma/layout.hpp"
#include "roma/tiles.hpp"

namespace roma {

struct VarMap {
  struct Entry {
    int var = 0;
    Coord cell;
    Cell true_arrow = Cell::Down;
    Cell false_arrow = Cell::Up;
  };
  std::vector<Entry> entries;
};

inline std::string serialize_varmap(const VarMap& vm) {
  std::ostringstream out;
  out << "VARMAP 1\n";
  for (const auto& e : vm.entries)
    out << "var " << e.var << " cell " << e.cell.x << " " << e.cell.y
        << " true " << glyph(e.true_arrow) << " false "
        << glyph(e.false_arrow) << "\n";
  return out.str();
}

inline VarMap parse_varmap(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || detail::strip_comment(line) != "VARMAP 1")
    throw ParseError("expected 'VARMAP 1' header");
  VarMap vm;
  while (std::getline(in, line)) {
    auto toks = detail::tokens(detail::strip_comment(line));
    if (toks.empty()) continue;
    if (toks.size() != 9 || toks[0] != "var" || toks[2] != "cell" ||
        toks[5] != "true" || toks[7] != "false")
      throw ParseError("bad varmap line: " + line);
    VarMap::Entry e;
    e.var = std::stoi(toks[1]);
    e.cell = {std::stoi(toks[3]), std::stoi(toks[4])};
    auto t = cell_from_glyph(toks[6][0]), f = cell_from_glyph(toks[8][0]);
    if (!t || !f || !is_arrow(*t) || !is_arrow(*f))
      throw ParseError("bad varmap arrows: " + line);
    e.true_arrow = *t;
    e.false_arrow = *f;
    vm.entries.push_back(e);
  }
  return vm;
}

namespace detail_compile {

struct Strip {
  std::vector<std::pair<int, bool>> lits;  // (slot, positive), slot-sorted
  bool connection = false;                 // tap chain only, no literals
};

struct Plan {
  std::vector<int> slot_of_var;            // 1-indexed var -> slot
  std::vector<int> var_of_slot;            // slot -> var
  std::vector<Strip> strips;
  std::vector<int8_t> side;                // 0 above, 1 below
  std::vector<int> level;                  // 1-based within its side
  int levels_above = 0, levels_below = 0;
};

// Side and level assignment. An edge T -> S (same side) whenever T has a
// literal strictly inside S's slot span; levels then follow a topological
// order per side, which exists exactly when the drawing is realizable.
inline bool assign_sides(const std::vector<Strip>& strips,
                         std::vector<int8_t>& side,
                         std::vector<int>& level, int& la, int& lb) {
  int m = (int)strips.size();
  auto min_slot = [&](int s) { return strips[s].lits.front().first; };
  auto max_slot = [&](int s) { return strips[s].lits.back().first; };
  auto has_lit = [&](int s, int q) {
    for (auto& [slot, pos] : strips[s].lits)
      if (slot == q) return true;
    return false;
  };
  // (t, s) pairs: t must sit strictly below s when they share a side
  std::vector<std::pair<int, int>> edges;
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t) {
      if (s == t) continue;
      bool inside = false;
      for (auto& [q, pos] : strips[t].lits)
        if (q > min_slot(s) && q < max_slot(s)) inside = true;
      if (inside) edges.push_back({t, s});
    }
  auto acyclic_levels = [&](const std::vector<int8_t>& sd) -> bool {
    level.assign(m, 0);
    for (int which = 0; which < 2; ++which) {
      std::vector<int> indeg(m, 0);
      std::vector<std::vector<int>> out(m);
      std::vector<int> members;
      for (int i = 0; i < m; ++i)
        if (sd[i] == which) members.push_back(i);
      for (auto& [t, s] : edges)
        if (sd[t] == which && sd[s] == which) {
          out[t].push_back(s);
          ++indeg[s];
        }
      // Kahn, smallest index first, for determinism
      std::vector<int> ready;
      for (int i : members)
        if (indeg[i] == 0) ready.push_back(i);
      int next_level = 1, done = 0;
      while (!ready.empty()) {
        std::sort(ready.begin(), ready.end());
        int t = ready.front();
        ready.erase(ready.begin());
        level[t] = next_level++;
        ++done;
        for (int s : out[t])
          if (--indeg[s] == 0) ready.push_back(s);
      }
      if (done != (int)members.size()) return false;
      (which == 0 ? la : lb) = next_level - 1;
    }
    return true;
  };
  // backtracking over side assignments
  side.assign(m, 0);
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == m) return acyclic_levels(side);
    int s = order[i];
    for (int8_t v : {int8_t(0), int8_t(1)}) {
      side[s] = v;
      // early mutual-conflict prune against already assigned strips
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        int t = order[j];
        if (side[t] != v) continue;
        bool ts = false, st = false;
        for (auto& [q, p] : strips[t].lits)
          if (q > min_slot(s) && q < max_slot(s)) ts = true;
        for (auto& [q, p] : strips[s].lits)
          if (q > min_slot(t) && q < max_slot(t)) st = true;
        if (ts && st) ok = false;
      }
      if (ok && self(self, i + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

inline std::optional<Plan> make_plan(
    const Cnf& f, const std::vector<std::pair<int, int>>& connections) {
  // simplified clauses: duplicate literals merged, tautologies dropped
  std::vector<std::vector<Literal>> clauses;
  for (const auto& cl : f.clauses) {
    std::vector<Literal> c;
    bool taut = false;
    for (const Literal& l : cl) {
      bool dup = false;
      for (const Literal& o : c) {
        if (o.var == l.var && o.positive == l.positive) dup = true;
        if (o.var == l.var && o.positive != l.positive) taut = true;
      }
      if (!dup) c.push_back(l);
    }
    if (!taut) clauses.push_back(std::move(c));
  }

  std::vector<int> perm(f.num_vars);
  std::iota(perm.begin(), perm.end(), 1);
  auto build = [&](const std::vector<int>& var_order) -> std::optional<Plan> {
    Plan p;
    p.var_of_slot = var_order;
    p.slot_of_var.assign(f.num_vars + 1, -1);
    for (int s = 0; s < (int)var_order.size(); ++s)
      p.slot_of_var[var_order[s]] = s;
    for (const auto& cl : clauses) {
      Strip st;
      for (const Literal& l : cl)
        st.lits.push_back({p.slot_of_var[l.var], l.positive});
      std::sort(st.lits.begin(), st.lits.end());
      p.strips.push_back(std::move(st));
    }
    for (const auto& [u, v] : connections) {
      Strip st;
      st.connection = true;
      st.lits.push_back({p.slot_of_var[u], true});
      st.lits.push_back({p.slot_of_var[v], true});
      std::sort(st.lits.begin(), st.lits.end());
      p.strips.push_back(std::move(st));
    }
    if (!assign_sides(p.strips, p.side, p.level, p.levels_above,
                      p.levels_below))
      return std::nullopt;
    return p;
  };
  if (auto p = build(perm)) return p;
  if (f.num_vars <= 8) {
    std::vector<int> q = perm;
    while (std::next_permutation(q.begin(), q.end()))
      if (auto p = build(q)) return p;
  }
  return std::nullopt;
}

}  // namespace detail_compile

struct CompileResult {
  BoardSpec board;
  VarMap varmap;
  Cnf source;
};

// Compiles a 3-CNF into a Roma board whose solutions correspond one-to-one
// to the formula's models. `connections` ties pairs of variables together
// (the crossover construction's a/b splits): realized as straight-line
// chain strips when the drawing allows it, as copy clauses otherwise, and
// dropped when the formula already forces the connected pair equal in
// every model (as the crossover clauses do).
inline CompileResult compile(
    const Cnf& f, const std::vector<std::pair<int, int>>& connections = {}) {
  using detail_compile::Plan;
  for (const auto& cl : f.clauses)
    if (cl.empty() || cl.size() > 3)
      throw std::logic_error("compile: clauses must have 1 to 3 literals");
  if (f.num_vars < 1) throw std::logic_error("compile: no variables");
  auto plan = detail_compile::make_plan(f, connections);
  if (!plan && !connections.empty()) {
    // copy clauses instead of chain strips
    Cnf g = f;
    for (auto& [u, v] : connections) {
      g.clauses.push_back({Literal{u, true}, Literal{v, false}});
      g.clauses.push_back({Literal{u, false}, Literal{v, true}});
    }
    if (auto p2 = detail_compile::make_plan(g, {})) {
      CompileResult r = compile(g, {});
      r.source = f;
      return r;
    }
    // connections redundant: every model already satisfies them
    if (f.num_vars <= 24) {
      bool redundant = true;
      for (const auto& m : sat_models(f))
        for (auto& [u, v] : connections)
          if (m[u - 1] != m[v - 1]) redundant = false;
      if (redundant) {
        CompileResult r = compile(f, {});
        r.source = f;
        return r;
      }
    }
  }
  if (!plan)
    throw CapExceeded(
        "compile: formula is not realizable in the crossing-free comb; "
        "apply insert_crossovers-style preprocessing first");
  const Plan& p = *plan;
  int V = f.num_vars;

  // riser bookkeeping: per slot and side, the incidences sorted into the
  // [west-departing ascending | interior top | east-departing descending]
  // column order. role: 0 = west-departing (rightmost member),
  // 1 = interior, 2 = east-departing (leftmost member).
  struct Riser {
    int strip;
    int role;
    int level;
    int col = -1;  // filled once slot positions are known
  };
  std::vector<std::array<std::vector<Riser>, 2>> risers(V);
  for (int s = 0; s < (int)p.strips.size(); ++s) {
    const auto& st = p.strips[s];
    int lo = st.lits.front().first, hi = st.lits.back().first;
    for (auto& [slot, pos] : st.lits) {
      int role = slot == hi ? 0 : slot == lo ? 2 : 1;
      if (lo == hi) role = 0;  // unit clause: literal in the west zone
      risers[slot][p.side[s]].push_back({s, role, p.level[s]});
    }
  }
  for (int slot = 0; slot < V; ++slot)
    for (int side = 0; side < 2; ++side) {
      auto& rs = risers[slot][side];
      std::sort(rs.begin(), rs.end(), [](const Riser& a, const Riser& b) {
        auto key = [](const Riser& r) {
          // west block ascending, interior in the middle, east descending
          return r.role == 0 ? std::pair<int, int>(0, r.level)
                 : r.role == 1 ? std::pair<int, int>(1, 0)
                               : std::pair<int, int>(2, -r.level);
        };
        return key(a) < key(b);
      });
    }

  // slot positions
  std::vector<int> slot_x(V), pitch(V);
  int x = 6;  // west margin: Roma and the core approach
  for (int slot = 0; slot < V; ++slot) {
    int r = (int)std::max(risers[slot][0].size(), risers[slot][1].size());
    slot_x[slot] = x;
    pitch[slot] = 24 + 6 * std::max(1, r);
    x += pitch[slot];
  }
  int width = x + 4;

  const int core_h = 11;
  int below_rows = 3 + 12 * p.levels_below + 3;
  int above_rows = 3 + 12 * p.levels_above + 3;
  int y0 = below_rows + 2;  // bottom of the variable gadgets
  int height = y0 + core_h + above_rows;
  int n = std::max(width, height);

  BoardBuilder bb;
  const Tile& var_t = variable_tile();
  const Tile lit_p = lit_pos_tile(), lit_n = lit_neg_tile();
  const Tile lit_p_m = lit_p.mirrored(), lit_n_m = lit_n.mirrored();

  auto riser_zone = [&](int slot) { return slot_x[slot] + 12; };

  // gadgets and the core-line
  VarMap vm;
  for (int slot = 0; slot < V; ++slot) {
    int gx = riser_zone(slot);
    bb.stamp(var_t, gx, y0);
    for (int cx = gx; cx <= gx + 12; ++cx)
      bb.mark_drain(cx, y0 + 6, BoardBuilder::kCore);
    VarMap::Entry e;
    e.var = p.var_of_slot[slot];
    e.cell = {gx + 3, y0};
    e.true_arrow = Cell::Down;
    e.false_arrow = Cell::Up;
    vm.entries.push_back(e);
  }
  std::sort(vm.entries.begin(), vm.entries.end(),
            [](const VarMap::Entry& a, const VarMap::Entry& b) {
              return a.var < b.var;
            });
  // core cells between and west of the gadgets
  {
    int prev_end = 2;  // Roma at x=1
    for (int slot = 0; slot < V; ++slot) {
      int gx = riser_zone(slot);
      for (int cx = prev_end; cx < gx; ++cx)
        bb.put_1box(cx, y0 + 6, Cell::Left, BoardBuilder::kCore);
      prev_end = gx + 13;
    }
  }

  // tap chains over and under each gadget that carries any riser
  for (int slot = 0; slot < V; ++slot) {
    int rz = riser_zone(slot);
    if (!risers[slot][0].empty()) {
      int r = (int)risers[slot][0].size();
      bb.hchain(rz, rz + 6 * r + 3, y0 + core_h);
    }
    if (!risers[slot][1].empty()) {
      int r = (int)risers[slot][1].size();
      bb.hchain(rz, rz + 6 * r + 3, y0 - 3);
    }
    for (int side = 0; side < 2; ++side)
      for (size_t j = 0; j < risers[slot][side].size(); ++j)
        risers[slot][side][j].col = rz + 6 * (int)j;
  }

  // the vertical wires
  auto wiring_row = [&](int side, int level) {
    return side == 0 ? y0 + core_h + 3 + 12 * (level - 1)
                     : y0 - 3 - 12 * level + 9;
  };
  for (int slot = 0; slot < V; ++slot)
    for (int side = 0; side < 2; ++side)
      for (const auto& r : risers[slot][side]) {
        if (side == 0) {
          int top = wiring_row(0, r.level) - 1;
          int bottom = y0 + core_h + 3;
          if (top >= bottom) bb.vwire(r.col, bottom, top);
        } else {
          int bottom = wiring_row(1, r.level) + 3;
          int top = y0 - 4;
          if (top >= bottom) bb.vwire(r.col, bottom, top);
        }
      }

  // strips: junction chains, literal tiles, racetracks
  auto find_riser = [&](int slot, int side, int strip) -> const Riser& {
    for (const auto& r : risers[slot][side])
      if (r.strip == strip) return r;
    throw std::logic_error("compile: riser lookup failed");
  };
  for (int s = 0; s < (int)p.strips.size(); ++s) {
    const auto& st = p.strips[s];
    int side = p.side[s];
    int wy = wiring_row(side, p.level[s]);
    if (st.connection) {
      int a = find_riser(st.lits.front().first, side, s).col;
      int b = find_riser(st.lits.back().first, side, s).col;
      bb.hchain(a, b + 3, wy);
      continue;
    }
    int strip_y = side == 0 ? wy + 3 : wy - 9;
    int track_lo = -1, track_hi = -1;
    for (auto& [slot, positive] : st.lits) {
      const Riser& r = find_riser(slot, side, s);
      int lit_x;
      if (r.role == 0) {  // west zone
        lit_x = slot_x[slot];
        bb.hchain(lit_x, r.col + 3, wy);
      } else if (r.role == 2) {  // east zone
        lit_x = riser_zone(slot) + 6 * (int)risers[slot][side].size();
        bb.hchain(r.col, lit_x + 9, wy);
      } else {  // interior: west zone
        lit_x = slot_x[slot];
        bb.hchain(lit_x, r.col + 3, wy);
      }
      const Tile& t = side == 0 ? (positive ? lit_p : lit_n)
                                : (positive ? lit_p_m : lit_n_m);
      // mirrored tiles sit one row higher so their fanout meets the chain
      bb.stamp(t, lit_x, strip_y + (side == 0 ? 0 : 1));
      if (track_lo < 0 || lit_x < track_lo) track_lo = lit_x;
      if (lit_x + 9 > track_hi) track_hi = lit_x + 9;
    }
    // racetrack rows threading the literal tiles
    int row_fwd = side == 0 ? strip_y + 7 : strip_y + 1;
    int row_back = side == 0 ? strip_y + 8 : strip_y + 0;
    for (int cx = track_lo; cx <= track_hi; ++cx) {
      if (!bb.occupied(cx, row_fwd)) {
        Cell c = cx == track_hi ? (side == 0 ? Cell::Up : Cell::Down)
                                : Cell::Right;
        bb.put_1box(cx, row_fwd, c, p.level[s]);
      }
      Cell c = cx == track_lo ? (side == 0 ? Cell::Down : Cell::Up)
                              : Cell::Left;
      bb.put_1box(cx, row_back, c, p.level[s]);
    }
  }

  CompileResult out;
  out.board = bb.finish(n, 1, y0 + 6);
  out.varmap = std::move(vm);
  out.source = f;
  return out;
}

// Reads the truth assignment off a solution's decision cells.
inline std::vector<bool> decode(const BoardSpec& spec, const VarMap& vm,
                                const Assignment& a) {
  std::vector<bool> out;
  for (const auto& e : vm.entries) {
    Cell c = a.content[spec.idx(e.cell.x, e.cell.y)];
    if (c == e.true_arrow)
      out.push_back(true);
    else if (c == e.false_arrow)
      out.push_back(false);
    else
      throw std::logic_error(
          "decode: decision cell holds an arrow outside the variable map");
  }
  return out;
}

}  // namespace roma
