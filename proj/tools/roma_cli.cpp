// Command-line front end for the Roma toolkit: board checking, the three
// solving engines, fewest-clues search, the 3-CNF reduction and its
// decoder, rendering, and a small benchmark harness.
//
// Exit codes: 0 solvable/ok, 1 unsolvable, 2 usage error, 3 input error,
// 4 resource cap exceeded.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "roma/compile.hpp"
#include "roma/dp.hpp"
#include "roma/oracle.hpp"
#include "roma/prop.hpp"

using namespace roma;

BoardSpec make_random_board(int n, std::mt19937& rng, double preset_fraction);

namespace {

uint64_t g_dp_cap = 4'000'000;

constexpr int kExitOk = 0, kExitUnsat = 1, kExitUsage = 2, kExitInput = 3,
              kExitCap = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

BoardSpec load_board(const std::string& path) {
  return parse_board(read_file(path));
}

// Reads a solution in CELLS grid syntax (n rows of glyphs, top row first).
Assignment load_solution(const BoardSpec& b, const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(in, line)) {
    line = detail::strip_comment(line);
    if (!detail::tokens(line).empty()) rows.push_back(line);
  }
  return assignment_from_rows(b, rows);
}

struct EngineResult {
  bool sat = false;
  uint64_t count = 0;
  std::optional<Assignment> witness;
  uint64_t work = 0;  // nodes or stored configurations
};

EngineResult run_engine(const BoardSpec& b, const std::string& method,
                        SearchMode mode, int oracle_cap) {
  EngineResult r;
  if (method == "oracle") {
    OracleOptions opt;
    if (oracle_cap > 0) opt.max_empty = oracle_cap;
    auto s = oracle_enumerate(b, mode == SearchMode::Count ? std::optional<uint64_t>{} : 2, opt);
    r.sat = s.count > 0;
    r.count = s.count;
    if (!s.solutions.empty()) r.witness = s.solutions.front();
    r.work = 0;
  } else if (method == "prop") {
    auto s = search(b, mode);
    r.sat = s.status == SolveResult::Status::Sat;
    r.count = s.count;
    r.witness = s.witness;
    r.work = s.nodes;
  } else if (method == "dp") {
    DpOptions opt;
    opt.max_configs = g_dp_cap;
    auto s = dp_run(b, mode == SearchMode::Count ? DpMode::Count : DpMode::Decide,
                    opt);
    r.sat = s.sat;
    r.count = s.count;
    r.work = s.stats.max_row_configs;
    if (r.sat && mode != SearchMode::Count) {
      // the DP decides; a witness, when asked for, comes from the searcher
      auto w = search(b, SearchMode::First);
      r.witness = w.witness;
    }
  } else {
    throw CLI::ValidationError("--method", "unknown method " + method);
  }
  return r;
}

int cmd_check(const std::string& file) {
  BoardSpec b = load_board(file);  // parse_board rejects invalid specs
  auto v = validate_spec(b);
  if (v.empty()) {
    std::cout << "ok: " << b.n << "x" << b.n << " board, " << b.boxes.size()
              << " boxes, " << b.num_empty() << " empty cells\n";
    return kExitOk;
  }
  for (auto& viol : v)
    std::cout << to_string(viol.kind) << ": " << viol.note << "\n";
  return kExitInput;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// ---- bench families -------------------------------------------------------

BoardSpec twobox_board(int k) {
  // k empty cells arranged in horizontal fully-empty 2-boxes on a board
  // just big enough; the rest preset
  int pairs = k / 2;
  int n = std::max(4, (int)std::ceil(std::sqrt((double)k + 8)));
  while (n * (n / 2) < pairs + 1) ++n;
  BoardBuilder bb;
  int placed = 0;
  for (int y = n - 1; y >= 0 && placed < pairs; --y)
    for (int x = 0; x + 1 < n && placed < pairs; x += 2) {
      if (y == 0 && x == 0) continue;  // keep room for the Roma corner
      int32_t box = bb.next_box();
      bb.put(x, y, Cell::Empty, box);
      bb.put(x + 1, y, Cell::Empty, box);
      ++placed;
    }
  if (placed < pairs) throw std::logic_error("twobox: board too small");
  return bb.finish(n, 0, 0);
}

void bench(const std::string& family, const std::vector<int>& sizes,
           unsigned seed) {
  std::cout << "instance,n,k,method,work,seconds,extra\n";
  std::mt19937 rng(seed);
  int id = 0;
  auto emit = [&](const std::string& inst, int n, int k,
                  const std::string& method, uint64_t work, double secs,
                  const std::string& extra) {
    std::cout << inst << "," << n << "," << k << "," << method << "," << work
              << "," << secs << "," << extra << "\n";
  };
  if (family == "twobox") {
    for (int k : sizes) {
      BoardSpec b = twobox_board(k);
      auto t0 = std::chrono::steady_clock::now();
      auto r = search(b, SearchMode::Count);
      double secs = seconds_since(t0);
      double bound = std::pow(11.0, k / 2.0) * (k + 1);
      std::ostringstream extra;
      extra << "bound_ratio=" << (double)r.nodes / bound;
      emit("twobox" + std::to_string(k), b.n, b.num_empty(), "prop", r.nodes,
           secs, extra.str());
    }
  } else if (family == "reduction") {
    for (int t : sizes) {
      // chain formula (x_i or x_{i+1}) with t clauses
      Cnf f;
      f.num_vars = t + 1;
      for (int i = 1; i <= t; ++i)
        f.clauses.push_back({Literal{i, true}, Literal{i + 1, true}});
      auto t0 = std::chrono::steady_clock::now();
      auto r = compile(f);
      double secs = seconds_since(t0);
      auto l = layout(f);
      std::ostringstream extra;
      extra << "side=" << r.board.n << ";vars=" << f.num_vars
            << ";clauses=" << f.clauses.size()
            << ";crossings=" << l.crossings.size();
      emit("reduction" + std::to_string(t), r.board.n, r.board.num_empty(),
           "compile", 0, secs, extra.str());
    }
  } else if (family == "random") {
    for (int n : sizes) {
      for (int rep = 0; rep < 3; ++rep) {
        std::uniform_real_distribution<double> frac(0.0, 0.5);
        BoardSpec b = make_random_board(n, rng, frac(rng));
        std::string inst = "random" + std::to_string(n) + "_" +
                           std::to_string(rep);
        for (std::string method : {"oracle", "prop", "dp"}) {
          if (method == "oracle" && b.num_empty() > 16) continue;
          auto t0 = std::chrono::steady_clock::now();
          EngineResult r = run_engine(b, method, SearchMode::Count, 16);
          double secs = seconds_since(t0);
          emit(inst, b.n, b.num_empty(), method, r.work, secs,
               "count=" + std::to_string(r.count));
        }
        ++id;
      }
    }
  } else {
    throw CLI::ValidationError("--family", "unknown family " + family);
  }
}

}  // namespace

// random legal instance shared with bench
BoardSpec make_random_board(int n, std::mt19937& rng, double preset_fraction) {
  BoardSpec b;
  b.n = n;
  b.box_of.resize(n * n);
  b.preset.assign(n * n, Cell::Empty);
  int roma_cell = std::uniform_int_distribution<int>(0, n * n - 1)(rng);
  b.roma = roma_cell;
  b.preset[roma_cell] = Cell::Roma;
  std::vector<int> parent(n * n), size(n * n, 1);
  for (int i = 0; i < n * n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::pair<int, int>> edges;
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      if (x + 1 < n) edges.push_back({b.idx(x, y), b.idx(x + 1, y)});
      if (y + 1 < n) edges.push_back({b.idx(x, y), b.idx(x, y + 1)});
    }
  std::shuffle(edges.begin(), edges.end(), rng);
  for (auto [u, v] : edges) {
    if (u == roma_cell || v == roma_cell) continue;
    int ru = find(u), rv = find(v);
    if (ru == rv || size[ru] + size[rv] > 4) continue;
    if (std::uniform_real_distribution<double>(0, 1)(rng) > 0.7) continue;
    parent[ru] = rv;
    size[rv] += size[ru];
  }
  std::map<int, int32_t> ids;
  for (int i = 0; i < n * n; ++i) {
    int r = find(i);
    auto [it, fresh] = ids.emplace(r, (int32_t)ids.size());
    if (fresh) b.boxes.emplace_back();
    b.box_of[i] = it->second;
    b.boxes[it->second].push_back(i);
  }
  for (int i = 0; i < n * n; ++i) {
    if (i == roma_cell) continue;
    if (std::uniform_real_distribution<double>(0, 1)(rng) < preset_fraction)
      b.preset[i] = to_cell(kDirs[std::uniform_int_distribution<int>(0, 3)(rng)]);
  }
  return b;
}

int main(int argc, char** argv) {
  CLI::App app{"Roma puzzle toolkit: model, solve, count, and reduce"};
  app.require_subcommand(1);

  std::string file, method = "prop", out_path, varmap_path, solution_path,
              format = "ascii", family = "random";
  int k = 0, oracle_cap = 16;
  uint64_t dp_cap = 4'000'000;
  unsigned seed = 1;
  std::vector<int> sizes;

  auto* c_check = app.add_subcommand("check", "validate a board file");
  c_check->add_option("file", file)->required();

  auto* c_solve = app.add_subcommand("solve", "print one solution grid");
  c_solve->add_option("file", file)->required();
  c_solve->add_option("--method", method)
      ->check(CLI::IsMember({"oracle", "prop", "dp"}));
  c_solve->add_option("--oracle-cap", oracle_cap);
  c_solve->add_option("--dp-cap", dp_cap);

  auto* c_count = app.add_subcommand("count", "print the exact model count");
  c_count->add_option("file", file)->required();
  c_count->add_option("--method", method)
      ->check(CLI::IsMember({"oracle", "prop", "dp"}));
  c_count->add_option("--oracle-cap", oracle_cap);
  c_count->add_option("--dp-cap", dp_cap);

  auto* c_unique = app.add_subcommand("unique", "is the solution unique?");
  c_unique->add_option("file", file)->required();

  auto* c_fcp = app.add_subcommand("fcp", "fewest-clues search");
  c_fcp->add_option("file", file)->required();
  c_fcp->add_option("--k", k)->required();
  c_fcp->add_option("--oracle-cap", oracle_cap);

  auto* c_reduce = app.add_subcommand("reduce", "compile a DIMACS CNF");
  c_reduce->add_option("cnf", file)->required();
  c_reduce->add_option("-o,--output", out_path)->required();

  auto* c_decode = app.add_subcommand("decode", "decode a solution");
  c_decode->add_option("file", file)->required();
  c_decode->add_option("solution", solution_path)->required();
  c_decode->add_option("--varmap", varmap_path)->required();

  auto* c_render = app.add_subcommand("render", "render a board");
  c_render->add_option("file", file)->required();
  c_render->add_option("--solution", solution_path);
  c_render->add_option("--format", format)
      ->check(CLI::IsMember({"ascii", "svg"}));

  auto* c_bench = app.add_subcommand("bench", "benchmark CSV");
  c_bench->add_option("--family", family)
      ->check(CLI::IsMember({"twobox", "reduction", "random"}));
  c_bench->add_option("--sizes", sizes)->required();
  c_bench->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  g_dp_cap = dp_cap;
  try {
    if (*c_check) return cmd_check(file);
    if (*c_solve) {
      auto r = run_engine(load_board(file), method, SearchMode::First,
                          oracle_cap);
      if (!r.sat) {
        std::cout << "unsolvable\n";
        return kExitUnsat;
      }
      BoardSpec b = load_board(file);
      std::cout << cells_grid(b, *r.witness);
      return kExitOk;
    }
    if (*c_count) {
      auto r = run_engine(load_board(file), method, SearchMode::Count,
                          oracle_cap);
      std::cout << r.count << "\n";
      return r.count > 0 ? kExitOk : kExitUnsat;
    }
    if (*c_unique) {
      auto r = search(load_board(file), SearchMode::AtMostTwo);
      if (r.count == 0) {
        std::cout << "no (unsolvable)\n";
        return kExitUnsat;
      }
      std::cout << (r.count == 1 ? "yes" : "no") << "\n";
      return kExitOk;
    }
    if (*c_fcp) {
      OracleOptions opt;
      opt.max_empty = oracle_cap;
      auto r = fcp_bruteforce(load_board(file), k, opt);
      if (r.status == FcpResult::Status::Unsat) {
        std::cout << "unsatisfiable\n";
        return kExitUnsat;
      }
      if (r.status == FcpResult::Status::NoneExists) {
        std::cout << "none\n";
        return kExitOk;
      }
      for (auto& [at, cell] : r.hints)
        std::cout << "hint " << at.x << " " << at.y << " " << glyph(cell)
                  << "\n";
      if (r.hints.empty()) std::cout << "already unique\n";
      return kExitOk;
    }
    if (*c_reduce) {
      Cnf f = parse_dimacs(read_file(file));
      auto r = compile(f);
      write_file(out_path, serialize_board(r.board));
      write_file(out_path + ".varmap", serialize_varmap(r.varmap));
      std::cout << "board " << r.board.n << "x" << r.board.n << " written to "
                << out_path << "\n";
      return kExitOk;
    }
    if (*c_decode) {
      BoardSpec b = load_board(file);
      Assignment a = load_solution(b, solution_path);
      if (!is_valid(b, a).empty()) {
        std::cout << "solution is not valid\n";
        return kExitInput;
      }
      VarMap vm = parse_varmap(read_file(varmap_path));
      auto truth = decode(b, vm, a);
      for (size_t i = 0; i < truth.size(); ++i)
        std::cout << "x" << vm.entries[i].var << " = "
                  << (truth[i] ? "true" : "false") << "\n";
      return kExitOk;
    }
    if (*c_render) {
      BoardSpec b = load_board(file);
      std::optional<Assignment> a;
      if (!solution_path.empty()) a = load_solution(b, solution_path);
      std::cout << render(b, a ? &*a : nullptr,
                          format == "svg" ? RenderFormat::Svg
                                          : RenderFormat::Ascii);
      return kExitOk;
    }
    if (*c_bench) {
      bench(family, sizes, seed);
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DimacsError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
