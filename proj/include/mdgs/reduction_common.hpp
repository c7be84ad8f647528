#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "mdgs/graph.hpp"
#include "mdgs/pcnf.hpp"

namespace mdgs {

// Smallest w with 2^w >= x (x >= 1).
inline int ceil_log2(long long x) {
  int w = 0;
  while ((1LL << w) < x) ++w;
  return w;
}

namespace detail {

inline std::string literal_token(const Literal& l) {
  std::string t(1, kPartNames[l.part]);
  t += l.positive ? '+' : '-';
  t += std::to_string(l.var);
  return t;
}

inline Literal parse_literal_token(const std::string& t) {
  if (t.size() < 3 || t[0] < 'a' || t[0] > 'c' || (t[1] != '+' && t[1] != '-'))
    throw ParseError("bad literal token `" + t + "`");
  Literal l;
  l.part = t[0] - 'a';
  l.positive = t[1] == '+';
  l.var = std::stoi(t.substr(2));
  return l;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

// One pendant-pair row of a bit gadget: center y with pendants y^a, y^b.
struct GadgetRow {
  int center = -1;
  int pend_a = -1;
  int pend_b = -1;
};

struct MaskSpace {
  int bits = 0;
  int words() const { return (bits + 63) / 64; }
  std::vector<std::uint64_t> empty_mask() const { return std::vector<std::uint64_t>(words(), 0); }
  std::vector<std::uint64_t> full_mask() const {
    auto m = empty_mask();
    for (int i = 0; i < bits; ++i) m[i >> 6] |= 1ULL << (i & 63);
    return m;
  }
};

inline void or_into(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
}

struct MapHeader {
  std::string problem;
  int k = 0, sqrt_n = 0, npart = 0, orig = 0, m = 0, vertices = 0;
  std::vector<Clause> clauses;
  std::map<std::pair<int, int>, std::vector<int>> buckets;  // (part, i) -> vertex ids
  std::vector<std::string> roles;
};

inline MapHeader read_map_header(std::istream& in, const std::string& name) {
  MapHeader h;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError(name + ":" + std::to_string(lineno) + ": " + msg);
  };
  if (!std::getline(in, line) || line != "mdgs-map v1") throw ParseError(name + ": bad map header");
  lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "problem") {
      ls >> h.problem;
    } else if (tag == "k") {
      ls >> h.k;
    } else if (tag == "sqrtn") {
      ls >> h.sqrt_n;
    } else if (tag == "npart") {
      ls >> h.npart;
    } else if (tag == "orig") {
      ls >> h.orig;
    } else if (tag == "m") {
      ls >> h.m;
    } else if (tag == "vertices") {
      ls >> h.vertices;
      h.roles.assign(h.vertices, "");
    } else if (tag == "clause") {
      Clause c;
      std::string tok;
      while (ls >> tok) c.lits.push_back(parse_literal_token(tok));
      h.clauses.push_back(std::move(c));
    } else if (tag == "bucket") {
      std::string part, colon;
      int i = 0;
      if (!(ls >> part >> i >> colon) || colon != ":") fail("malformed bucket line");
      std::vector<int> ids;
      int v = 0;
      while (ls >> v) ids.push_back(v - 1);
      h.buckets[{part[0] - 'a', i - 1}] = std::move(ids);
    } else if (tag == "role") {
      int v = 0;
      std::string role;
      if (!(ls >> v >> role)) fail("malformed role line");
      if (v < 1 || v > h.vertices) fail("role vertex out of range");
      h.roles[v - 1] = role;
    } else {
      fail("unknown map line `" + tag + "`");
    }
  }
  if (static_cast<int>(h.clauses.size()) != h.m) throw ParseError(name + ": clause count mismatch");
  return h;
}

inline std::map<std::string, std::vector<int>> index_roles(const std::vector<std::string>& roles) {
  std::map<std::string, std::vector<int>> idx;
  for (int v = 0; v < static_cast<int>(roles.size()); ++v) idx[roles[v]].push_back(v);
  return idx;
}

}  // namespace detail

// Set-identifying / critical-pair attachment: `width` binary rows plus the
// star row (adjacent to the whole host set) plus a nullifier adjacent to all
// row centers. Pendant pairs are false twins, so one per row is forced into
// any resolving set.
struct BitGadget {
  std::string family;                   // e.g. "Aa", "Bb", "Pc", "C"
  int width = 0;                        // binary rows, star row excluded
  std::vector<detail::GadgetRow> rows;  // width binary rows, then the star row
  int nullifier = -1;

  int row_count() const { return width + 1; }
  const detail::GadgetRow& star() const { return rows.back(); }

  std::vector<int> centers() const {
    std::vector<int> out;
    for (const auto& r : rows) out.push_back(r.center);
    return out;
  }
  std::vector<int> members() const {  // X^+ = bit-rep + nullifier
    std::vector<int> out;
    for (const auto& r : rows) {
      out.push_back(r.center);
      out.push_back(r.pend_a);
      out.push_back(r.pend_b);
    }
    out.push_back(nullifier);
    return out;
  }
  std::vector<int> bits() const {  // the pendant vertices
    std::vector<int> out;
    for (const auto& r : rows) {
      out.push_back(r.pend_a);
      out.push_back(r.pend_b);
    }
    return out;
  }
};

namespace detail {

// Adds the gadget skeleton for `host`; codes[j] in [1..code_count] selects the
// binary rows adjacent to host[j] (MSB first). Pair mode passes the same code
// for both pair members.
inline BitGadget add_bit_gadget(Graph& g, const std::string& family,
                                const std::vector<int>& host, const std::vector<int>& codes,
                                int code_count) {
  BitGadget gad;
  gad.family = family;
  gad.width = ceil_log2(code_count + 2);
  auto row_name = [&](int r) {
    return r < gad.width ? std::to_string(r + 1) : std::string("*");
  };
  for (int r = 0; r <= gad.width; ++r) {
    GadgetRow row;
    row.center = g.add_vertex("y:" + family + ":" + row_name(r));
    row.pend_a = g.add_vertex("ya:" + family + ":" + row_name(r));
    row.pend_b = g.add_vertex("yb:" + family + ":" + row_name(r));
    g.add_edge(row.center, row.pend_a);
    g.add_edge(row.center, row.pend_b);
    gad.rows.push_back(row);
  }
  gad.nullifier = g.add_vertex("null:" + family);
  for (int r = 0; r <= gad.width; ++r) {
    g.add_edge(gad.nullifier, gad.rows[r].center);
    for (int r2 = r + 1; r2 <= gad.width; ++r2)
      g.add_edge(gad.rows[r].center, gad.rows[r2].center);
  }
  for (std::size_t j = 0; j < host.size(); ++j) {
    g.add_edge(host[j], gad.star().center);
    for (int r = 0; r < gad.width; ++r)
      if ((codes[j] >> (gad.width - 1 - r)) & 1) g.add_edge(host[j], gad.rows[r].center);
  }
  return gad;
}

}  // namespace detail
}  // namespace mdgs
