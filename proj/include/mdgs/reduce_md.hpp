#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mdgs/graph.hpp"
#include "mdgs/metric_dimension.hpp"
#include "mdgs/pcnf.hpp"
#include "mdgs/reduction_common.hpp"

namespace mdgs {

// Compiled Metric Dimension instance: per part, sqrt(n) buckets of 2^sqrt(n)
// assignment vertices hooked to truth/false/validation portal cliques, a
// critical pair per bucket, a critical pair per clause, and a bit gadget per
// family. `assignment_vertices[p][i][l]` encodes assignment l of bucket i
// (bit j of l, MSB first, gives variable x_{i,j}; 1 = True).
struct MdReductionArtifact {
  Graph g;
  int k = 0;
  int sqrt_n = 0;
  PartitionedCnf formula;  // square-padded

  std::vector<std::vector<std::vector<int>>> assignment_vertices;  // [part][i][l]
  std::vector<std::vector<int>> b_circ, b_star;                    // [part][i]
  std::vector<std::vector<int>> t_portal, f_portal, v_portal;      // [part][j]
  std::vector<int> c_circ, c_star;                                 // [q]
  std::vector<BitGadget> gadgets;                                  // Aa..Ac, Ba..Bc, Pa..Pc, C

  int m() const { return static_cast<int>(c_circ.size()); }

  const BitGadget& gadget(const std::string& family) const {
    for (const auto& gad : gadgets)
      if (gad.family == family) return gad;
    throw Error("no gadget with family " + family);
  }

  // One vertex per pendant pair, canonically the ^a member; forced into every
  // resolving set up to twin swaps.
  VertexSet fixed_bits_picks() const {
    VertexSet out;
    for (const auto& gad : gadgets)
      for (const auto& row : gad.rows) out.push_back(row.pend_a);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<std::pair<int, int>> critical_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int p = 0; p < kParts; ++p)
      for (int i = 0; i < sqrt_n; ++i) out.emplace_back(b_circ[p][i], b_star[p][i]);
    for (int q = 0; q < m(); ++q) out.emplace_back(c_circ[q], c_star[q]);
    return out;
  }

  // Candidate choices for bucket (p, i): its assignment vertices, then the
  // critical pair, in enumeration order.
  std::vector<int> selector_options(int p, int i) const {
    std::vector<int> out = assignment_vertices[p][i];
    out.push_back(b_circ[p][i]);
    out.push_back(b_star[p][i]);
    return out;
  }
};

// k = 3*(sqrt(n) + pairs(B) + pairs(A) + pairs(P)) + pairs(C), where a bit
// gadget over N codes carries ceil(log2(N+2)) + 1 pendant pairs.
inline int md_budget_terms(int sqrt_n, int m, int out_terms[4] = nullptr) {
  long long s = sqrt_n;
  int term_b = ceil_log2(s + 2) + 1;
  int term_a = ceil_log2(s * (1LL << s) + 2) + 1;
  int term_p = ceil_log2(3 * s + 2) + 1;
  int term_c = ceil_log2(m + 2) + 1;
  if (out_terms) {
    out_terms[0] = term_b;
    out_terms[1] = term_a;
    out_terms[2] = term_p;
    out_terms[3] = term_c;
  }
  return 3 * (sqrt_n + term_b + term_a + term_p) + term_c;
}

inline int md_budget(const PartitionedCnf& f) {
  if (!is_square(f.n_per_part)) throw NotSquare("md_budget: n per part is not a square");
  return md_budget_terms(integer_sqrt(f.n_per_part), f.m());
}

inline MdReductionArtifact build_md_instance(const PartitionedCnf& f) {
  if (!is_square(f.n_per_part)) throw NotSquare("build_md_instance: n per part is not a square");
  int s = integer_sqrt(f.n_per_part);
  if (s < 1) throw Error("build_md_instance: need at least one variable per part");
  if (s > 10) throw Error("build_md_instance: instance too large for a dense build");
  int m = f.m();

  MdReductionArtifact art;
  art.sqrt_n = s;
  art.formula = f;
  Graph& g = art.g;
  int per_bucket = 1 << s;

  art.assignment_vertices.assign(kParts, {});
  art.b_circ.assign(kParts, {});
  art.b_star.assign(kParts, {});
  art.t_portal.assign(kParts, {});
  art.f_portal.assign(kParts, {});
  art.v_portal.assign(kParts, {});

  for (int p = 0; p < kParts; ++p) {
    std::string pn(1, kPartNames[p]);
    auto& buckets = art.assignment_vertices[p];
    buckets.resize(s);
    for (int i = 0; i < s; ++i)
      for (int l = 0; l < per_bucket; ++l)
        buckets[i].push_back(g.add_vertex("A:" + pn + ":" + std::to_string(i + 1) + ":" +
                                          std::to_string(l + 1)));
    for (int i = 0; i < s; ++i) {
      art.b_circ[p].push_back(g.add_vertex("Bo:" + pn + ":" + std::to_string(i + 1)));
      art.b_star[p].push_back(g.add_vertex("Bs:" + pn + ":" + std::to_string(i + 1)));
    }
    for (int j = 0; j < s; ++j)
      art.t_portal[p].push_back(g.add_vertex("T:" + pn + ":" + std::to_string(j + 1)));
    for (int j = 0; j < s; ++j)
      art.f_portal[p].push_back(g.add_vertex("F:" + pn + ":" + std::to_string(j + 1)));
    for (int i = 0; i < s; ++i)
      art.v_portal[p].push_back(g.add_vertex("V:" + pn + ":" + std::to_string(i + 1)));

    // selector edges and portal wiring
    std::vector<int> b_all;
    for (int i = 0; i < s; ++i) {
      b_all.push_back(art.b_circ[p][i]);
      b_all.push_back(art.b_star[p][i]);
      for (int a : buckets[i]) g.add_edge(art.b_circ[p][i], a);
    }
    for (std::size_t x = 0; x < b_all.size(); ++x)
      for (std::size_t y = x + 1; y < b_all.size(); ++y) g.add_edge(b_all[x], b_all[y]);

    std::vector<int> portal_all;
    for (int j = 0; j < s; ++j) portal_all.push_back(art.t_portal[p][j]);
    for (int j = 0; j < s; ++j) portal_all.push_back(art.f_portal[p][j]);
    for (int i = 0; i < s; ++i) portal_all.push_back(art.v_portal[p][i]);
    for (std::size_t x = 0; x < portal_all.size(); ++x)
      for (std::size_t y = x + 1; y < portal_all.size(); ++y)
        g.add_edge(portal_all[x], portal_all[y]);

    for (int i = 0; i < s; ++i)
      for (int l = 0; l < per_bucket; ++l) {
        int a = buckets[i][l];
        g.add_edge(a, art.v_portal[p][i]);
        for (int j = 1; j <= s; ++j) {
          bool bit = (l >> (s - j)) & 1;
          g.add_edge(a, bit ? art.t_portal[p][j - 1] : art.f_portal[p][j - 1]);
        }
      }

    // gadgets for A (per-vertex codes), B (per-pair codes), P (per-vertex)
    std::vector<int> a_host, a_codes;
    for (int i = 0; i < s; ++i)
      for (int l = 0; l < per_bucket; ++l) {
        a_host.push_back(buckets[i][l]);
        a_codes.push_back(static_cast<int>(a_host.size()));
      }
    art.gadgets.push_back(detail::add_bit_gadget(g, "A" + pn, a_host, a_codes, s * per_bucket));

    std::vector<int> b_host, b_codes;
    for (int i = 0; i < s; ++i) {
      b_host.push_back(art.b_circ[p][i]);
      b_codes.push_back(i + 1);
      b_host.push_back(art.b_star[p][i]);
      b_codes.push_back(i + 1);
    }
    art.gadgets.push_back(detail::add_bit_gadget(g, "B" + pn, b_host, b_codes, s));

    std::vector<int> p_codes;
    for (std::size_t x = 0; x < portal_all.size(); ++x) p_codes.push_back(static_cast<int>(x) + 1);
    art.gadgets.push_back(detail::add_bit_gadget(g, "P" + pn, portal_all, p_codes, 3 * s));

    // the explicit nullifier wiring inside one part
    int null_a = art.gadget("A" + pn).nullifier;
    int null_b = art.gadget("B" + pn).nullifier;
    int null_p = art.gadget("P" + pn).nullifier;
    for (int b : b_all) g.add_edge(null_a, b);
    for (int a : a_host) g.add_edge(null_b, a);
    g.add_edge(null_a, null_b);
    for (int w : portal_all) g.add_edge(null_a, w);
    g.add_edge(null_p, null_a);
    // note: nullifier(P) deliberately has no edges toward A
  }

  // clause pairs and their gadget
  std::vector<int> c_host, c_codes;
  for (int q = 0; q < m; ++q) {
    art.c_circ.push_back(g.add_vertex("Co:" + std::to_string(q + 1)));
    art.c_star.push_back(g.add_vertex("Cs:" + std::to_string(q + 1)));
    c_host.push_back(art.c_circ[q]);
    c_codes.push_back(q + 1);
    c_host.push_back(art.c_star[q]);
    c_codes.push_back(q + 1);
  }
  art.gadgets.push_back(detail::add_bit_gadget(g, "C", c_host, c_codes, m));
  int null_c = art.gadgets.back().nullifier;
  for (int p = 0; p < kParts; ++p) {
    int null_p = art.gadget("P" + std::string(1, kPartNames[p])).nullifier;
    for (int c : c_host) g.add_edge(null_p, c);
    g.add_edge(null_p, null_c);
  }

  // clause wiring: validation stars for absent parts, validation complements
  // plus one signed portal edge for present parts
  for (int q = 0; q < m; ++q) {
    for (int p = 0; p < kParts; ++p) {
      const Literal* lit = nullptr;
      for (const Literal& l : f.clauses[q].lits)
        if (l.part == p) lit = &l;
      if (!lit) {
        for (int i = 0; i < s; ++i) {
          g.add_edge(art.c_circ[q], art.v_portal[p][i]);
          g.add_edge(art.c_star[q], art.v_portal[p][i]);
        }
        continue;
      }
      int bucket = (lit->var - 1) / s;
      int pos = (lit->var - 1) % s;
      for (int i = 0; i < s; ++i) {
        if (i == bucket) continue;
        g.add_edge(art.c_circ[q], art.v_portal[p][i]);
        g.add_edge(art.c_star[q], art.v_portal[p][i]);
      }
      g.add_edge(lit->positive ? art.t_portal[p][pos] : art.f_portal[p][pos], art.c_circ[q]);
    }
  }

  art.k = md_budget_terms(s, m);
  return art;
}

// Bucket index of assignment `a` restricted to bucket (p, i).
inline int bucket_pattern(const MdReductionArtifact& art, const Assignment& a, int p, int i) {
  int s = art.sqrt_n;
  int l = 0;
  for (int j = 1; j <= s; ++j)
    if (a.get(p, i * s + j)) l |= 1 << (s - j);
  return l;
}

// Resolving set of size exactly k for a satisfying assignment: one assignment
// vertex per bucket plus one pendant per gadget pair.
inline VertexSet md_forward_witness(const MdReductionArtifact& art, const Assignment& a) {
  VertexSet out = art.fixed_bits_picks();
  for (int p = 0; p < kParts; ++p)
    for (int i = 0; i < art.sqrt_n; ++i)
      out.push_back(art.assignment_vertices[p][i][bucket_pattern(art, a, p, i)]);
  std::sort(out.begin(), out.end());
  return out;
}

// Reads the assignment off the solution's bucket picks; buckets whose pick is
// a critical-pair vertex stay all-False.
inline Assignment md_lift_assignment(const MdReductionArtifact& art, const VertexSet& s) {
  if (static_cast<int>(s.size()) > art.k)
    throw BudgetExceeded("md_lift_assignment: solution exceeds budget");
  if (!is_resolving(art.g, s))
    throw NotAResolvingSet("md_lift_assignment: solution is not a resolving set");
  Assignment a = Assignment::all_false(art.formula.n_per_part);
  int sn = art.sqrt_n;
  for (int p = 0; p < kParts; ++p)
    for (int i = 0; i < sn; ++i) {
      const auto& bucket = art.assignment_vertices[p][i];
      for (int l = 0; l < static_cast<int>(bucket.size()); ++l)
        if (set_contains(s, bucket[l])) {
          for (int j = 1; j <= sn; ++j) a.set(p, i * sn + j, (l >> (sn - j)) & 1);
          break;
        }
    }
  return a;
}

inline unsigned long long md_candidate_count(const MdReductionArtifact& art) {
  unsigned long long per = (1ULL << art.sqrt_n) + 2;
  unsigned long long total = 1;
  for (int b = 0; b < 3 * art.sqrt_n; ++b) total *= per;
  return total;
}

namespace detail {

// First full-coverage choice tuple in lexicographic order; prunes subtrees
// whose remaining options cannot finish the coverage.
inline bool cover_dfs(const std::vector<std::vector<std::vector<std::uint64_t>>>& option_masks,
                      const std::vector<std::vector<std::uint64_t>>& suffix_union,
                      const std::vector<std::uint64_t>& full, int depth,
                      std::vector<std::uint64_t> acc, std::vector<int>& choice) {
  if (depth == static_cast<int>(option_masks.size())) return acc == full;
  auto reachable = acc;
  or_into(reachable, suffix_union[depth]);
  if (reachable != full) return false;
  for (std::size_t opt = 0; opt < option_masks[depth].size(); ++opt) {
    auto next = acc;
    or_into(next, option_masks[depth][opt]);
    choice[depth] = static_cast<int>(opt);
    if (cover_dfs(option_masks, suffix_union, full, depth + 1, std::move(next), choice))
      return true;
  }
  return false;
}

}  // namespace detail

// Decides the compiled instance by enumerating exactly the sets the backward
// lemma leaves possible: the fixed pendant picks plus one choice per bucket
// from its assignment vertices or critical pair.
inline std::optional<VertexSet> md_reduction_aware_solve(const MdReductionArtifact& art) {
  DistanceMatrix dm = all_pairs_distances(art.g);
  if (!dm.all_reachable()) throw Error("md artifact graph is disconnected");
  VertexSet fixed = art.fixed_bits_picks();

  std::vector<std::pair<int, int>> open_pairs;
  for (int u = 0; u < art.g.n; ++u)
    for (int v = u + 1; v < art.g.n; ++v) {
      bool resolved = false;
      for (int w : fixed)
        if (dm.at(w, u) != dm.at(w, v)) {
          resolved = true;
          break;
        }
      if (!resolved) open_pairs.emplace_back(u, v);
    }

  detail::MaskSpace space{static_cast<int>(open_pairs.size())};
  std::vector<std::vector<int>> options;
  std::vector<std::vector<std::vector<std::uint64_t>>> option_masks;
  for (int p = 0; p < kParts; ++p)
    for (int i = 0; i < art.sqrt_n; ++i) {
      auto opts = art.selector_options(p, i);
      std::vector<std::vector<std::uint64_t>> masks;
      for (int w : opts) {
        auto mask = space.empty_mask();
        for (std::size_t b = 0; b < open_pairs.size(); ++b)
          if (dm.at(w, open_pairs[b].first) != dm.at(w, open_pairs[b].second))
            mask[b >> 6] |= 1ULL << (b & 63);
        masks.push_back(std::move(mask));
      }
      options.push_back(std::move(opts));
      option_masks.push_back(std::move(masks));
    }

  int buckets = static_cast<int>(options.size());
  std::vector<std::vector<std::uint64_t>> suffix_union(buckets + 1, space.empty_mask());
  for (int b = buckets - 1; b >= 0; --b) {
    suffix_union[b] = suffix_union[b + 1];
    for (const auto& mask : option_masks[b]) detail::or_into(suffix_union[b], mask);
  }

  std::vector<int> choice(buckets, -1);
  if (!detail::cover_dfs(option_masks, suffix_union, space.full_mask(), 0, space.empty_mask(),
                         choice))
    return std::nullopt;

  VertexSet result = fixed;
  for (int b = 0; b < buckets; ++b) result.push_back(options[b][choice[b]]);
  std::sort(result.begin(), result.end());
  if (!is_resolving(dm, result)) throw Error("md_reduction_aware_solve: internal mask mismatch");
  return result;
}

// The vertex cover from the hardness proof: every critical-pair vertex of the
// B families, every portal, and all gadget centers and nullifiers.
inline VertexSet md_explicit_vc(const MdReductionArtifact& art) {
  VertexSet out;
  for (int p = 0; p < kParts; ++p) {
    for (int i = 0; i < art.sqrt_n; ++i) {
      out.push_back(art.b_circ[p][i]);
      out.push_back(art.b_star[p][i]);
    }
    for (int j = 0; j < art.sqrt_n; ++j) {
      out.push_back(art.t_portal[p][j]);
      out.push_back(art.f_portal[p][j]);
      out.push_back(art.v_portal[p][j]);
    }
  }
  for (const auto& gad : art.gadgets) {
    for (const auto& row : gad.rows) out.push_back(row.center);
    out.push_back(gad.nullifier);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Closed-form size of md_explicit_vc.
inline int md_explicit_vc_size(int sqrt_n, int m) {
  long long s = sqrt_n;
  int gadget_part = (ceil_log2(s + 2) + 2) + (ceil_log2(s * (1LL << s) + 2) + 2) +
                    (ceil_log2(3 * s + 2) + 2);
  return 3 * (2 * sqrt_n + 3 * sqrt_n) + 3 * gadget_part + (ceil_log2(m + 2) + 2);
}

// --- sidecar map file --------------------------------------------------------

inline void md_map_save(const MdReductionArtifact& art, std::ostream& out) {
  out << "mdgs-map v1\n";
  out << "problem md\n";
  out << "k " << art.k << '\n';
  out << "sqrtn " << art.sqrt_n << '\n';
  out << "npart " << art.formula.n_per_part << '\n';
  out << "orig " << art.formula.original_n_per_part << '\n';
  out << "m " << art.m() << '\n';
  out << "vertices " << art.g.n << '\n';
  for (const Clause& c : art.formula.clauses) {
    out << "clause";
    for (const Literal& l : c.lits) out << ' ' << detail::literal_token(l);
    out << '\n';
  }
  for (int p = 0; p < kParts; ++p)
    for (int i = 0; i < art.sqrt_n; ++i) {
      out << "bucket " << kPartNames[p] << ' ' << i + 1 << " :";
      for (int v : art.assignment_vertices[p][i]) out << ' ' << v + 1;
      out << '\n';
    }
  for (int v = 0; v < art.g.n; ++v) out << "role " << v + 1 << ' ' << art.g.label(v) << '\n';
}

namespace detail {

inline BitGadget rebuild_gadget(const std::string& family,
                                const std::map<std::string, std::vector<int>>& role_index) {
  BitGadget gad;
  gad.family = family;
  auto lookup_one = [&](const std::string& key) {
    auto it = role_index.find(key);
    if (it == role_index.end() || it->second.size() != 1)
      throw ParseError("map misses role " + key);
    return it->second.front();
  };
  int width = 0;
  while (role_index.count("y:" + family + ":" + std::to_string(width + 1))) ++width;
  gad.width = width;
  for (int r = 0; r < width; ++r) {
    std::string suffix = family + ":" + std::to_string(r + 1);
    gad.rows.push_back({lookup_one("y:" + suffix), lookup_one("ya:" + suffix),
                        lookup_one("yb:" + suffix)});
  }
  gad.rows.push_back({lookup_one("y:" + family + ":*"), lookup_one("ya:" + family + ":*"),
                      lookup_one("yb:" + family + ":*")});
  gad.nullifier = lookup_one("null:" + family);
  return gad;
}

}  // namespace detail

inline MdReductionArtifact md_map_load(std::istream& in, Graph graph,
                                       const std::string& name = "<map>") {
  auto h = detail::read_map_header(in, name);
  if (h.problem != "md") throw ParseError(name + ": not an md map");
  if (h.vertices != graph.n) throw ParseError(name + ": vertex count disagrees with graph");

  MdReductionArtifact art;
  art.g = std::move(graph);
  art.k = h.k;
  art.sqrt_n = h.sqrt_n;
  art.formula.n_per_part = h.npart;
  art.formula.original_n_per_part = h.orig;
  art.formula.clauses = h.clauses;
  for (int v = 0; v < art.g.n; ++v) art.g.set_label(v, h.roles[v]);

  art.assignment_vertices.assign(kParts, std::vector<std::vector<int>>(h.sqrt_n));
  for (int p = 0; p < kParts; ++p)
    for (int i = 0; i < h.sqrt_n; ++i) {
      auto it = h.buckets.find({p, i});
      if (it == h.buckets.end()) throw ParseError(name + ": missing bucket table");
      art.assignment_vertices[p][i] = it->second;
    }

  auto idx = detail::index_roles(h.roles);
  auto series = [&](const std::string& prefix, int count) {
    std::vector<int> out;
    for (int i = 1; i <= count; ++i) {
      auto it = idx.find(prefix + std::to_string(i));
      if (it == idx.end() || it->second.size() != 1)
        throw ParseError(name + ": missing role " + prefix + std::to_string(i));
      out.push_back(it->second.front());
    }
    return out;
  };
  art.b_circ.resize(kParts);
  art.b_star.resize(kParts);
  art.t_portal.resize(kParts);
  art.f_portal.resize(kParts);
  art.v_portal.resize(kParts);
  for (int p = 0; p < kParts; ++p) {
    std::string pn(1, kPartNames[p]);
    art.b_circ[p] = series("Bo:" + pn + ":", h.sqrt_n);
    art.b_star[p] = series("Bs:" + pn + ":", h.sqrt_n);
    art.t_portal[p] = series("T:" + pn + ":", h.sqrt_n);
    art.f_portal[p] = series("F:" + pn + ":", h.sqrt_n);
    art.v_portal[p] = series("V:" + pn + ":", h.sqrt_n);
    art.gadgets.push_back(detail::rebuild_gadget("A" + pn, idx));
    art.gadgets.push_back(detail::rebuild_gadget("B" + pn, idx));
    art.gadgets.push_back(detail::rebuild_gadget("P" + pn, idx));
  }
  art.c_circ = series("Co:", h.m);
  art.c_star = series("Cs:", h.m);
  art.gadgets.push_back(detail::rebuild_gadget("C", idx));
  return art;
}

}  // namespace mdgs
