#pragma once

// 3-CNF formulas: DIMACS parsing, evaluation, and small-formula model
// counting by exhaustion (the oracle side of the reduction tests).

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace roma {

struct Literal {
  int var = 0;  // 1-indexed
  bool positive = true;
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<Literal>> clauses;  // each 1..3 literals

  bool eval(const std::vector<bool>& assignment) const {
    for (const auto& cl : clauses) {
      bool sat = false;
      for (const Literal& l : cl)
        if (assignment[l.var - 1] == l.positive) {
          sat = true;
          break;
        }
      if (!sat) return false;
    }
    return true;
  }
};

struct DimacsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Cnf parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  Cnf f;
  bool have_header = false;
  int declared_clauses = -1;
  std::vector<Literal> current;
  while (in >> tok) {
    if (tok == "c") {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (tok == "p") {
      std::string kind;
      if (!(in >> kind) || kind != "cnf")
        throw DimacsError("expected 'p cnf <vars> <clauses>'");
      if (!(in >> f.num_vars >> declared_clauses) || f.num_vars < 0)
        throw DimacsError("bad problem line");
      have_header = true;
      continue;
    }
    long v;
    try {
      size_t used = 0;
      v = std::stol(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (...) {
      throw DimacsError("unexpected token '" + tok + "'");
    }
    if (!have_header) throw DimacsError("literal before the problem line");
    if (v == 0) {
      if (current.empty()) throw DimacsError("empty clause");
      if (current.size() > 3)
        throw DimacsError("clause wider than three literals");
      f.clauses.push_back(current);
      current.clear();
    } else {
      int var = (int)std::labs(v);
      if (var > f.num_vars)
        throw DimacsError("literal exceeds declared variable count");
      current.push_back({var, v > 0});
    }
  }
  if (!have_header) throw DimacsError("missing problem line");
  if (!current.empty()) throw DimacsError("clause not terminated by 0");
  if (declared_clauses >= 0 && (int)f.clauses.size() != declared_clauses)
    throw DimacsError("clause count disagrees with the problem line");
  return f;
}

inline std::string to_dimacs(const Cnf& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
  for (const auto& cl : f.clauses) {
    for (const Literal& l : cl) out << (l.positive ? "" : "-") << l.var << " ";
    out << "0\n";
  }
  return out.str();
}

// Exact model count by enumerating all 2^num_vars assignments. Test oracle;
// refuses formulas too wide to exhaust.
inline uint64_t sat_count(const Cnf& f, int max_vars = 24) {
  if (f.num_vars > max_vars)
    throw std::logic_error("sat_count: too many variables to enumerate");
  uint64_t count = 0;
  std::vector<bool> a(f.num_vars);
  for (uint64_t code = 0; code < (uint64_t(1) << f.num_vars); ++code) {
    for (int i = 0; i < f.num_vars; ++i) a[i] = (code >> i) & 1;
    if (f.eval(a)) ++count;
  }
  return count;
}

// All satisfying assignments, in code order.
inline std::vector<std::vector<bool>> sat_models(const Cnf& f,
                                                 int max_vars = 24) {
  if (f.num_vars > max_vars)
    throw std::logic_error("sat_models: too many variables to enumerate");
  std::vector<std::vector<bool>> out;
  std::vector<bool> a(f.num_vars);
  for (uint64_t code = 0; code < (uint64_t(1) << f.num_vars); ++code) {
    for (int i = 0; i < f.num_vars; ++i) a[i] = (code >> i) & 1;
    if (f.eval(a)) out.push_back(a);
  }
  return out;
}

}  // namespace roma
