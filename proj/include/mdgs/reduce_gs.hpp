#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mdgs/geodetic_set.hpp"
#include "mdgs/graph.hpp"
#include "mdgs/pcnf.hpp"
#include "mdgs/reduction_common.hpp"

namespace mdgs {

// Compiled Geodetic Set instance: per part and bucket, 2^sqrt(n) assignment
// vertices between two pendant anchors and a validation vertex; truth/false
// portals carry assignments to clause vertices; a clique U with a pendant
// matching stitches the parts together. Budget is always 10*sqrt(n).
struct GsReductionArtifact {
  Graph g;
  int k = 0;
  int sqrt_n = 0;
  PartitionedCnf formula;  // square-padded, at least 4 variables per part

  std::vector<std::vector<std::vector<int>>> assignment_vertices;   // [part][i][l]
  std::vector<std::vector<std::array<int, 2>>> anchor;              // a_{i,1}, a_{i,2}
  std::vector<std::vector<std::array<int, 2>>> pendant;             // b_{i,1}, b_{i,2}
  std::vector<std::vector<int>> t_portal, f_portal, v_portal;       // [part][j]
  std::vector<std::vector<int>> g_vertex;                           // [part][i]
  std::vector<int> u, u_prime;                                      // [i]
  std::vector<int> c_vertex;                                        // [q]

  int m() const { return static_cast<int>(c_vertex.size()); }

  // The 7*sqrt(n) degree-1 vertices, forced into every geodetic set.
  VertexSet forced_vertices() const {
    VertexSet out = u_prime;
    for (int p = 0; p < kParts; ++p)
      for (int i = 0; i < sqrt_n; ++i) {
        out.push_back(pendant[p][i][0]);
        out.push_back(pendant[p][i][1]);
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<int> selector_options(int p, int i) const {
    std::vector<int> out = assignment_vertices[p][i];
    out.push_back(v_portal[p][i]);
    return out;
  }
};

inline int gs_budget(const PartitionedCnf& f) {
  if (!is_square(f.n_per_part)) throw NotSquare("gs_budget: n per part is not a square");
  return 10 * integer_sqrt(f.n_per_part);
}

// Raw construction; callers must arrange sqrt(n) >= 2 themselves for the
// satisfiability correspondence to hold (see build_gs_instance).
inline GsReductionArtifact build_gs_instance_unpadded(const PartitionedCnf& f) {
  if (!is_square(f.n_per_part))
    throw NotSquare("build_gs_instance: n per part is not a square");
  int s = integer_sqrt(f.n_per_part);
  if (s < 1) throw Error("build_gs_instance: need at least one variable per part");
  if (s > 10) throw Error("build_gs_instance: instance too large for a dense build");
  for (const Clause& c : f.clauses)
    if (c.lits.empty())
      throw Error("build_gs_instance: empty clause would leave its vertex isolated");
  int m = f.m();
  int per_bucket = 1 << s;

  GsReductionArtifact art;
  art.sqrt_n = s;
  art.formula = f;
  art.k = 10 * s;
  Graph& g = art.g;

  art.assignment_vertices.assign(kParts, {});
  art.anchor.assign(kParts, {});
  art.pendant.assign(kParts, {});
  art.t_portal.assign(kParts, {});
  art.f_portal.assign(kParts, {});
  art.v_portal.assign(kParts, {});
  art.g_vertex.assign(kParts, {});

  for (int p = 0; p < kParts; ++p) {
    std::string pn(1, kPartNames[p]);
    auto& buckets = art.assignment_vertices[p];
    buckets.resize(s);
    for (int i = 0; i < s; ++i)
      for (int l = 0; l < per_bucket; ++l)
        buckets[i].push_back(g.add_vertex("A:" + pn + ":" + std::to_string(i + 1) + ":" +
                                          std::to_string(l + 1)));
    for (int i = 0; i < s; ++i) {
      std::array<int, 2> a{}, b{};
      for (int j = 0; j < 2; ++j) {
        a[j] = g.add_vertex("Ba:" + pn + ":" + std::to_string(i + 1) + ":" +
                            std::to_string(j + 1));
        b[j] = g.add_vertex("Bb:" + pn + ":" + std::to_string(i + 1) + ":" +
                            std::to_string(j + 1));
        g.add_edge(a[j], b[j]);
      }
      art.anchor[p].push_back(a);
      art.pendant[p].push_back(b);
      for (int w : buckets[i]) {
        g.add_edge(a[0], w);
        g.add_edge(a[1], w);
      }
    }
    for (int j = 0; j < s; ++j)
      art.t_portal[p].push_back(g.add_vertex("T:" + pn + ":" + std::to_string(j + 1)));
    for (int j = 0; j < s; ++j)
      art.f_portal[p].push_back(g.add_vertex("F:" + pn + ":" + std::to_string(j + 1)));
    for (int i = 0; i < s; ++i)
      art.v_portal[p].push_back(g.add_vertex("V:" + pn + ":" + std::to_string(i + 1)));
    for (int i = 0; i < s; ++i)
      for (int l = 0; l < per_bucket; ++l) {
        int w = buckets[i][l];
        g.add_edge(w, art.v_portal[p][i]);
        for (int j = 1; j <= s; ++j) {
          bool bit = (l >> (s - j)) & 1;
          g.add_edge(w, bit ? art.t_portal[p][j - 1] : art.f_portal[p][j - 1]);
        }
      }
    for (int i = 0; i < s; ++i) {
      int gv = g.add_vertex("g:" + pn + ":" + std::to_string(i + 1));
      art.g_vertex[p].push_back(gv);
      for (int j = 0; j < s; ++j) {
        g.add_edge(gv, art.t_portal[p][j]);
        g.add_edge(gv, art.f_portal[p][j]);
      }
      g.add_edge(gv, art.anchor[p][i][0]);
      g.add_edge(gv, art.anchor[p][i][1]);
    }
  }

  for (int i = 0; i < s; ++i) art.u.push_back(g.add_vertex("U:" + std::to_string(i + 1)));
  for (int i = 0; i < s; ++i) {
    art.u_prime.push_back(g.add_vertex("Up:" + std::to_string(i + 1)));
    g.add_edge(art.u[i], art.u_prime[i]);
  }
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) g.add_edge(art.u[i], art.u[j]);
  for (int p = 0; p < kParts; ++p) {
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j)
        if (i != j) g.add_edge(art.u[i], art.v_portal[p][j]);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) g.add_edge(art.g_vertex[p][i], art.u[j]);
  }

  for (int q = 0; q < m; ++q) {
    int c = g.add_vertex("C:" + std::to_string(q + 1));
    art.c_vertex.push_back(c);
    for (const Literal& lit : f.clauses[q].lits) {
      int bucket = (lit.var - 1) / s;
      int pos = (lit.var - 1) % s;
      g.add_edge(c, art.u[bucket]);
      g.add_edge(c, lit.positive ? art.t_portal[lit.part][pos] : art.f_portal[lit.part][pos]);
    }
  }
  return art;
}

// Public builder. With a single bucket per part (sqrt(n) = 1) the U/V
// bipartite layer is empty, validation picks reach clause vertices through
// the portals, and unsatisfiable formulas still get geodetic sets of size
// 10*sqrt(n); padding every part to at least 4 variables restores the
// intended correspondence and never changes satisfiability.
inline GsReductionArtifact build_gs_instance(const PartitionedCnf& f) {
  if (!is_square(f.n_per_part))
    throw NotSquare("build_gs_instance: n per part is not a square");
  if (f.n_per_part < 4) return build_gs_instance_unpadded(pad_to(f, 4));
  return build_gs_instance_unpadded(f);
}

// Geodetic set of size exactly 10*sqrt(n) for a satisfying assignment: the
// forced degree-1 vertices plus the matching assignment vertex per bucket.
inline VertexSet gs_forward_witness(const GsReductionArtifact& art, const Assignment& a) {
  VertexSet out = art.forced_vertices();
  int s = art.sqrt_n;
  for (int p = 0; p < kParts; ++p)
    for (int i = 0; i < s; ++i) {
      int l = 0;
      for (int j = 1; j <= s; ++j)
        if (a.get(p, i * s + j)) l |= 1 << (s - j);
      out.push_back(art.assignment_vertices[p][i][l]);
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline Assignment gs_lift_assignment(const GsReductionArtifact& art, const VertexSet& s) {
  if (static_cast<int>(s.size()) > art.k)
    throw BudgetExceeded("gs_lift_assignment: solution exceeds budget");
  if (!is_geodetic(art.g, s))
    throw NotAGeodeticSet("gs_lift_assignment: solution is not a geodetic set");
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

inline unsigned long long gs_candidate_count(int sqrt_n) {
  unsigned long long per = (1ULL << sqrt_n) + 1;
  unsigned long long total = 1;
  for (int b = 0; b < 3 * sqrt_n; ++b) total *= per;
  return total;
}

inline unsigned long long gs_candidate_count(const GsReductionArtifact& art) {
  return gs_candidate_count(art.sqrt_n);
}

// Decides the compiled instance over the sets the backward lemma leaves
// possible: forced degree-1 vertices plus one choice per bucket from its
// assignment vertices or validation vertex (validation last in order).
inline std::optional<VertexSet> gs_reduction_aware_solve(const GsReductionArtifact& art) {
  DistanceMatrix dm = all_pairs_distances(art.g);
  if (!dm.all_reachable()) throw Error("gs artifact graph is disconnected");
  VertexSet forced = art.forced_vertices();

  detail::MaskSpace space{art.g.n};
  auto covers = [&](int x, int z, int y) { return dm.at(x, z) + dm.at(z, y) == dm.at(x, y); };

  auto base = space.empty_mask();
  for (std::size_t i = 0; i < forced.size(); ++i)
    for (std::size_t j = i; j < forced.size(); ++j)
      for (int z = 0; z < art.g.n; ++z)
        if (covers(forced[i], z, forced[j])) base[z >> 6] |= 1ULL << (z & 63);

  std::vector<std::vector<int>> options;
  for (int p = 0; p < kParts; ++p)
    for (int i = 0; i < art.sqrt_n; ++i) options.push_back(art.selector_options(p, i));
  int buckets = static_cast<int>(options.size());

  // coverage added by one option against the forced set
  std::vector<std::vector<std::vector<std::uint64_t>>> option_masks(buckets);
  for (int b = 0; b < buckets; ++b)
    for (int w : options[b]) {
      auto mask = space.empty_mask();
      for (int f : forced)
        for (int z = 0; z < art.g.n; ++z)
          if (covers(w, z, f)) mask[z >> 6] |= 1ULL << (z & 63);
      option_masks[b].push_back(std::move(mask));
    }

  // coverage added by pairs of options from different buckets
  std::vector<std::vector<std::vector<std::vector<std::vector<std::uint64_t>>>>> pair_masks(
      buckets);
  for (int b1 = 0; b1 < buckets; ++b1) {
    pair_masks[b1].resize(options[b1].size());
    for (std::size_t o1 = 0; o1 < options[b1].size(); ++o1) {
      pair_masks[b1][o1].resize(buckets);
      for (int b2 = b1 + 1; b2 < buckets; ++b2)
        for (int w2 : options[b2]) {
          auto mask = space.empty_mask();
          for (int z = 0; z < art.g.n; ++z)
            if (covers(options[b1][o1], z, w2)) mask[z >> 6] |= 1ULL << (z & 63);
          pair_masks[b1][o1][b2].push_back(std::move(mask));
        }
    }
  }

  auto full = space.full_mask();
  std::vector<std::vector<std::uint64_t>> suffix_union(buckets + 1, space.empty_mask());
  for (int b = buckets - 1; b >= 0; --b) {
    suffix_union[b] = suffix_union[b + 1];
    for (const auto& mask : option_masks[b]) detail::or_into(suffix_union[b], mask);
    for (int b1 = 0; b1 <= b; ++b1)
      for (std::size_t o1 = 0; o1 < options[b1].size(); ++o1)
        for (int b2 = std::max(b, b1 + 1); b2 < buckets; ++b2)
          for (const auto& mask : pair_masks[b1][o1][b2]) detail::or_into(suffix_union[b], mask);
  }

  std::vector<int> choice(buckets, -1);
  std::function<bool(int, std::vector<std::uint64_t>)> dfs =
      [&](int depth, std::vector<std::uint64_t> acc) {
        if (depth == buckets) return acc == full;
        auto reach = acc;
        detail::or_into(reach, suffix_union[depth]);
        if (reach != full) return false;
        for (std::size_t o = 0; o < options[depth].size(); ++o) {
          auto next = acc;
          detail::or_into(next, option_masks[depth][o]);
          for (int b1 = 0; b1 < depth; ++b1)
            detail::or_into(next, pair_masks[b1][choice[b1]][depth][o]);
          choice[depth] = static_cast<int>(o);
          if (dfs(depth + 1, std::move(next))) return true;
        }
        return false;
      };
  if (!dfs(0, base)) return std::nullopt;

  VertexSet result = forced;
  for (int b = 0; b < buckets; ++b) result.push_back(options[b][choice[b]]);
  std::sort(result.begin(), result.end());
  if (!is_geodetic(dm, result)) throw Error("gs_reduction_aware_solve: internal mask mismatch");
  return result;
}

// The vertex cover from the hardness proof: anchors and pendants, all three
// portals, the g-vertices, U, and the clause vertices.
inline VertexSet gs_explicit_vc(const GsReductionArtifact& art) {
  VertexSet out;
  for (int p = 0; p < kParts; ++p)
    for (int i = 0; i < art.sqrt_n; ++i) {
      out.push_back(art.anchor[p][i][0]);
      out.push_back(art.anchor[p][i][1]);
      out.push_back(art.pendant[p][i][0]);
      out.push_back(art.pendant[p][i][1]);
      out.push_back(art.t_portal[p][i]);
      out.push_back(art.f_portal[p][i]);
      out.push_back(art.v_portal[p][i]);
      out.push_back(art.g_vertex[p][i]);
    }
  for (int i = 0; i < art.sqrt_n; ++i) out.push_back(art.u[i]);
  for (int c : art.c_vertex) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

inline int gs_explicit_vc_size(int sqrt_n, int m) { return 25 * sqrt_n + m; }

// --- sidecar map file --------------------------------------------------------

inline void gs_map_save(const GsReductionArtifact& art, std::ostream& out) {
  out << "mdgs-map v1\n";
  out << "problem gs\n";
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

inline GsReductionArtifact gs_map_load(std::istream& in, Graph graph,
                                       const std::string& name = "<map>") {
  auto h = detail::read_map_header(in, name);
  if (h.problem != "gs") throw ParseError(name + ": not a gs map");
  if (h.vertices != graph.n) throw ParseError(name + ": vertex count disagrees with graph");

  GsReductionArtifact art;
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
  auto one = [&](const std::string& key) {
    auto it = idx.find(key);
    if (it == idx.end() || it->second.size() != 1) throw ParseError(name + ": missing role " + key);
    return it->second.front();
  };
  art.anchor.assign(kParts, {});
  art.pendant.assign(kParts, {});
  art.t_portal.resize(kParts);
  art.f_portal.resize(kParts);
  art.v_portal.resize(kParts);
  art.g_vertex.assign(kParts, {});
  for (int p = 0; p < kParts; ++p) {
    std::string pn(1, kPartNames[p]);
    for (int i = 0; i < h.sqrt_n; ++i) {
      std::string base = pn + ":" + std::to_string(i + 1) + ":";
      art.anchor[p].push_back({one("Ba:" + base + "1"), one("Ba:" + base + "2")});
      art.pendant[p].push_back({one("Bb:" + base + "1"), one("Bb:" + base + "2")});
      art.g_vertex[p].push_back(one("g:" + pn + ":" + std::to_string(i + 1)));
    }
    art.t_portal[p].clear();
    art.f_portal[p].clear();
    art.v_portal[p].clear();
    for (int j = 1; j <= h.sqrt_n; ++j) {
      art.t_portal[p].push_back(one("T:" + pn + ":" + std::to_string(j)));
      art.f_portal[p].push_back(one("F:" + pn + ":" + std::to_string(j)));
      art.v_portal[p].push_back(one("V:" + pn + ":" + std::to_string(j)));
    }
  }
  for (int i = 1; i <= h.sqrt_n; ++i) {
    art.u.push_back(one("U:" + std::to_string(i)));
    art.u_prime.push_back(one("Up:" + std::to_string(i)));
  }
  for (int q = 1; q <= h.m; ++q) art.c_vertex.push_back(one("C:" + std::to_string(q)));
  return art;
}

}  // namespace mdgs
