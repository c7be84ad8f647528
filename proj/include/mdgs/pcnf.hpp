#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mdgs/graph.hpp"

namespace mdgs {

// The three variable parts. Internally variables are renamed to (part, index)
// with index 1..n following ascending original id, so bucket coordinates
// (i, j) with i = (index-1)/sqrt(n)+1, j = (index-1)%sqrt(n)+1 fall out
// row-major.
inline constexpr int kParts = 3;
inline constexpr char kPartNames[kParts] = {'a', 'b', 'c'};

struct Literal {
  int part = 0;       // 0..2
  int var = 0;        // 1..n within the part
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
};

struct Clause {
  std::vector<Literal> lits;
};

struct PartitionedCnf {
  int n_per_part = 0;           // current size of each part (after padding)
  int original_n_per_part = 0;  // size before padding; dummies have var > this
  std::vector<Clause> clauses;

  int m() const { return static_cast<int>(clauses.size()); }
  bool is_dummy(int var) const { return var > original_n_per_part; }
};

// Total truth assignment, value[part][var-1].
struct Assignment {
  std::array<std::vector<char>, kParts> value;

  bool get(int part, int var) const { return value[part][var - 1] != 0; }
  void set(int part, int var, bool b) { value[part][var - 1] = b ? 1 : 0; }

  static Assignment all_false(int n_per_part) {
    Assignment a;
    for (auto& part : a.value) part.assign(n_per_part, 0);
    return a;
  }
};

inline bool clause_satisfied(const Clause& c, const Assignment& a) {
  for (const Literal& lit : c.lits)
    if (a.get(lit.part, lit.var) == lit.positive) return true;
  return false;
}

inline bool satisfies(const PartitionedCnf& f, const Assignment& a) {
  for (const Clause& c : f.clauses)
    if (!clause_satisfied(c, a)) return false;
  return true;
}

// --- extended DIMACS ---------------------------------------------------------
// header `p pcnf <n_per_part> <m>`, part declarations `c part a <ids...>`
// (likewise b, c), then standard DIMACS clause lines terminated by 0.

inline PartitionedCnf parse_pcnf(std::istream& in, const std::string& name = "<stream>") {
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError(name + ":" + std::to_string(lineno) + ": " + msg);
  };
  auto violation = [&](const std::string& msg) -> void {
    throw PartitionViolation(name + ":" + std::to_string(lineno) + ": " + msg);
  };

  bool have_header = false;
  int declared_n = 0, declared_m = 0;
  std::array<std::vector<long long>, kParts> part_ids;
  std::array<bool, kParts> part_seen = {false, false, false};
  std::vector<std::vector<long long>> raw_clauses;
  std::vector<long long> pending;

  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "c") {
      std::string word;
      if (!(ls >> word) || word != "part") continue;  // plain comment
      std::string which;
      if (!(ls >> which) || which.size() != 1 || which[0] < 'a' || which[0] > 'c')
        fail("expected `c part a|b|c <ids...>`");
      int p = which[0] - 'a';
      if (part_seen[p]) fail("duplicate part declaration");
      part_seen[p] = true;
      long long id = 0;
      while (ls >> id) {
        if (id <= 0) fail("part declarations need positive variable ids");
        part_ids[p].push_back(id);
      }
      if (!ls.eof()) fail("malformed part declaration");
    } else if (tag == "p") {
      std::string kind;
      if (!(ls >> kind >> declared_n >> declared_m) || kind != "pcnf")
        fail("expected `p pcnf <n_per_part> <m>`");
      if (have_header) fail("duplicate problem line");
      if (declared_n < 0 || declared_m < 0) fail("negative counts in problem line");
      have_header = true;
    } else {
      if (!have_header) fail("clause line before problem line");
      std::istringstream cs(line);
      long long lit = 0;
      while (cs >> lit) {
        if (lit == 0) {
          raw_clauses.push_back(pending);
          pending.clear();
        } else {
          pending.push_back(lit);
        }
      }
      if (!cs.eof()) fail("malformed clause line");
    }
  }
  ++lineno;
  if (!have_header) fail("missing problem line");
  if (!pending.empty()) fail("clause not terminated by 0");
  for (int p = 0; p < kParts; ++p)
    if (!part_seen[p]) fail(std::string("missing part declaration for `") + kPartNames[p] + "`");
  for (int p = 0; p < kParts; ++p)
    if (static_cast<int>(part_ids[p].size()) != declared_n)
      violation(std::string("part `") + kPartNames[p] + "` has " +
                std::to_string(part_ids[p].size()) + " variables, header says " +
                std::to_string(declared_n));
  if (static_cast<int>(raw_clauses.size()) != declared_m)
    fail("clause count mismatch: header says " + std::to_string(declared_m) + ", found " +
         std::to_string(raw_clauses.size()));

  // rename: ascending original id within each part
  std::map<long long, Literal> rename;
  for (int p = 0; p < kParts; ++p) {
    auto ids = part_ids[p];
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 1; i < ids.size(); ++i)
      if (ids[i] == ids[i - 1]) violation("variable " + std::to_string(ids[i]) + " listed twice");
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (rename.count(ids[i]))
        violation("variable " + std::to_string(ids[i]) + " appears in two parts");
      rename[ids[i]] = Literal{p, static_cast<int>(i) + 1, true};
    }
  }

  PartitionedCnf f;
  f.n_per_part = declared_n;
  f.original_n_per_part = declared_n;
  for (const auto& raw : raw_clauses) {
    Clause c;
    std::array<bool, kParts> used = {false, false, false};
    for (long long lit : raw) {
      auto it = rename.find(std::llabs(lit));
      if (it == rename.end())
        violation("clause uses undeclared variable " + std::to_string(std::llabs(lit)));
      Literal l = it->second;
      l.positive = lit > 0;
      if (used[l.part])
        violation("clause touches part `" + std::string(1, kPartNames[l.part]) + "` twice");
      used[l.part] = true;
      c.lits.push_back(l);
    }
    f.clauses.push_back(std::move(c));
  }
  return f;
}

inline PartitionedCnf parse_pcnf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open pcnf file: " + path);
  return parse_pcnf(in, path);
}

// Writes the renamed form: part a is 1..n, part b is n+1..2n, part c 2n+1..3n.
inline void write_pcnf(const PartitionedCnf& f, std::ostream& out) {
  int n = f.n_per_part;
  out << "p pcnf " << n << ' ' << f.m() << '\n';
  for (int p = 0; p < kParts; ++p) {
    out << "c part " << kPartNames[p];
    for (int i = 1; i <= n; ++i) out << ' ' << p * n + i;
    out << '\n';
  }
  for (const Clause& c : f.clauses) {
    for (const Literal& l : c.lits) out << (l.positive ? "" : "-") << l.part * n + l.var << ' ';
    out << "0\n";
  }
}

inline void write_pcnf(const PartitionedCnf& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  write_pcnf(f, out);
}

inline int integer_sqrt(int n) {
  int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline bool is_square(int n) {
  int r = integer_sqrt(n);
  return r * r == n;
}

// Appends unused dummy variables (fixed to False by lifting) until each part
// has `target` variables. Satisfiability is untouched.
inline PartitionedCnf pad_to(const PartitionedCnf& f, int target) {
  if (target < f.n_per_part) throw Error("pad_to: cannot shrink a formula");
  PartitionedCnf out = f;
  out.n_per_part = target;
  out.original_n_per_part = f.original_n_per_part;
  return out;
}

// Smallest n' >= n with integer sqrt; dummies appear in no clause.
inline PartitionedCnf pad_to_square(const PartitionedCnf& f) {
  int n = f.n_per_part;
  while (!is_square(n)) ++n;
  return pad_to(f, n);
}

// Lexicographically first satisfying assignment (part a most significant,
// False < True), or nothing.
inline std::optional<Assignment> brute_force_sat(const PartitionedCnf& f) {
  int total = kParts * f.n_per_part;
  if (total > 30) throw Error("brute_force_sat: too many variables");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << total); ++mask) {
    Assignment a = Assignment::all_false(f.n_per_part);
    for (int p = 0; p < kParts; ++p)
      for (int i = 1; i <= f.n_per_part; ++i) {
        int bitpos = total - 1 - (p * f.n_per_part + (i - 1));
        a.set(p, i, (mask >> bitpos) & 1);
      }
    if (satisfies(f, a)) return a;
  }
  return std::nullopt;
}

}  // namespace mdgs
