#pragma once

// Rectilinear layout of a 3-CNF in the construction's drawing style:
// variables on the horizontal axis, clauses on the vertical axis, each
// incidence drawn as a riser from the variable's slot up to the clause's
// level plus a run left to the clause column. Crossings are the proper
// transversal intersections of risers with runs of lower clauses; each is
// resolved by the crossover construction, which spends five auxiliary
// variables and eighteen clauses per crossing and leaves a crossing-free
// layout behind.

#include <algorithm>

#include "roma/cnf.hpp"

namespace roma {

struct PlanarLayout {
  struct Point {
    int x = 0, y = 0;
    friend bool operator==(const Point&, const Point&) = default;
  };
  struct Polyline {
    int var = 0;      // 1-indexed variable
    int clause = 0;   // 0-indexed clause
    int occurrence = 0;
    std::vector<Point> points;  // riser bottom, riser top, clause end
  };
  struct Crossing {
    Point at;
    int riser_var = 0;  // the signal running vertically
    int run_var = 0;    // the signal running horizontally
    friend bool operator==(const Crossing&, const Crossing&) = default;
  };
  std::vector<int> variable_x;   // per variable, slot position on the axis
  std::vector<int> clause_y;     // per clause, level on the vertical axis
  std::vector<Polyline> wires;
  std::vector<Point> crossings;  // transversal intersections, sorted
  std::vector<Crossing> crossing_details;
  std::vector<Point> core_path;  // the variable-connecting spine
};

// Deterministic drawing: variable i sits at x-slot i; clause j at y-slot
// j+1. A variable's risers stand side by side, ordered by clause level, so
// same-variable wires never cross each other.
inline PlanarLayout layout(const Cnf& f) {
  PlanarLayout out;
  int m = (int)f.clauses.size();
  // riser offsets inside a slot: one lane per incidence
  int lanes = 1;
  std::vector<std::vector<std::pair<int, int>>> per_var(f.num_vars + 1);
  for (int j = 0; j < m; ++j)
    for (int o = 0; o < (int)f.clauses[j].size(); ++o)
      per_var[f.clauses[j][o].var].push_back({j, o});
  for (int v = 1; v <= f.num_vars; ++v) {
    std::sort(per_var[v].begin(), per_var[v].end());
    lanes = std::max(lanes, (int)per_var[v].size() + 1);
  }
  out.variable_x.resize(f.num_vars + 1, 0);
  for (int v = 1; v <= f.num_vars; ++v) out.variable_x[v] = v * lanes;
  out.clause_y.resize(m);
  for (int j = 0; j < m; ++j) out.clause_y[j] = j + 1;

  for (int v = 1; v <= f.num_vars; ++v) {
    for (size_t lane = 0; lane < per_var[v].size(); ++lane) {
      auto [j, o] = per_var[v][lane];
      PlanarLayout::Polyline w;
      w.var = v;
      w.clause = j;
      w.occurrence = o;
      int x = out.variable_x[v] + (int)lane;
      w.points = {{x, 0}, {x, j + 1}, {0, j + 1}};
      out.wires.push_back(std::move(w));
    }
  }
  std::sort(out.wires.begin(), out.wires.end(),
            [](const PlanarLayout::Polyline& a,
               const PlanarLayout::Polyline& b) {
              return std::tie(a.clause, a.occurrence, a.var) <
                     std::tie(b.clause, b.occurrence, b.var);
            });
  // crossings: riser of wire A (vertical at x_A up to y_A) against the run
  // of wire B (horizontal at y_B from 0 to x_B): proper intersection when
  // 0 < x_A < x_B and y_B < y_A
  for (const auto& a : out.wires)
    for (const auto& b : out.wires) {
      int xa = a.points[0].x, ya = a.points[1].y;
      int xb = b.points[0].x, yb = b.points[1].y;
      if (xa < xb && yb < ya)
        out.crossing_details.push_back({{xa, yb}, a.var, b.var});
    }
  std::sort(out.crossing_details.begin(), out.crossing_details.end(),
            [](const PlanarLayout::Crossing& p, const PlanarLayout::Crossing& q) {
              return std::tie(p.at.x, p.at.y, p.run_var) <
                     std::tie(q.at.x, q.at.y, q.run_var);
            });
  for (const auto& c : out.crossing_details) out.crossings.push_back(c.at);
  // the core path connecting the variables, Roma end at the far left
  out.core_path.push_back({0, 0});
  for (int v = 1; v <= f.num_vars; ++v)
    out.core_path.push_back({out.variable_x[v], 0});
  return out;
}

// Counts proper transversal intersections among the emitted polylines;
// used by tests as an independent check of `crossings`.
inline int count_polyline_intersections(const PlanarLayout& l) {
  int count = 0;
  for (const auto& a : l.wires)
    for (const auto& b : l.wires) {
      // vertical segment of a: x = xa, y in (0, ya); horizontal of b:
      // y = yb, x in (0, xb)
      int xa = a.points[0].x, ya = a.points[1].y;
      int xb = b.points[0].x, yb = b.points[1].y;
      if (0 < xa && xa < xb && 0 < yb && yb < ya) ++count;
    }
  return count;
}

// The eighteen clauses of the crossover construction over the two crossing
// signals a, b and five fresh auxiliaries alpha..xi. `a2`/`b2` of the
// original construction are re-wired to a and b (straight-line connections
// take the place of copy clauses).
inline std::vector<std::vector<Literal>> crossover_clauses(int a, int b,
                                                           int alpha,
                                                           int beta,
                                                           int gamma,
                                                           int delta,
                                                           int xi) {
  auto P = [](int v) { return Literal{v, true}; };
  auto N = [](int v) { return Literal{v, false}; };
  // the caption formula with a1 = a2 = a and b1 = b2 = b
  return {
      {N(a), N(gamma)},        {P(a), P(b), P(gamma)}, {P(b), N(delta)},
      {P(b), N(alpha)},        {N(delta), N(alpha)},   {P(alpha), P(beta), P(xi)},
      {N(alpha), N(beta)},     {P(a), N(beta)},        {N(a), P(b), P(beta)},
      {P(a), N(alpha)},        {N(a), N(b), P(alpha)}, {N(b), N(beta)},
      {N(b), N(gamma)},        {N(beta), N(gamma)},    {P(gamma), P(delta), N(xi)},
      {N(gamma), N(delta)},    {N(a), N(delta)},       {P(a), N(b), P(delta)},
  };
}

// Replaces every crossing of the layout by the crossover construction:
// five fresh auxiliary variables and the eighteen caption clauses per
// crossing. The returned layout has an empty crossing list.
inline std::pair<PlanarLayout, Cnf> insert_crossovers(const PlanarLayout& l,
                                                      const Cnf& f) {
  Cnf out = f;
  for (const auto& c : l.crossing_details) {
    int alpha = ++out.num_vars, beta = ++out.num_vars, gamma = ++out.num_vars,
        delta = ++out.num_vars, xi = ++out.num_vars;
    for (auto& cl : crossover_clauses(c.riser_var, c.run_var, alpha, beta,
                                      gamma, delta, xi))
      out.clauses.push_back(std::move(cl));
  }
  PlanarLayout resolved = layout(out);
  resolved.crossings.clear();
  resolved.crossing_details.clear();
  return {std::move(resolved), std::move(out)};
}

}  // namespace roma
