#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mdgs/enumeration.hpp"
#include "mdgs/graph.hpp"

namespace mdgs {

struct MdInstance {
  Graph g;
  int k = 0;  // may go negative through kernelization bookkeeping
};

struct SolutionCertificate {
  std::string problem;  // "md" or "gs"
  int k = 0;
  VertexSet solution;  // original vertex numbering
  bool verified = false;
};

struct TwinRemoval {
  int removed = -1;          // original id of the deleted vertex
  int representative = -1;   // original id of a surviving twin
  bool decremented_budget = true;
};

struct KernelResult {
  Graph reduced_graph;
  int reduced_k = 0;
  std::vector<TwinRemoval> removed;
  std::vector<int> id_map;  // reduced id -> original id (empty for the trivial NO-instance)
  VertexSet cover_used;     // original ids of the vertex cover the rules worked against
  bool trivial_no() const { return reduced_k < 0; }
};

inline DistanceMatrix connected_distances(const Graph& g) {
  DistanceMatrix dm = all_pairs_distances(g);
  if (!dm.all_reachable()) throw Disconnected("graph is not connected");
  return dm;
}

inline bool is_resolving(const DistanceMatrix& dm, const VertexSet& s) {
  int n = dm.n();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      bool resolved = false;
      for (int w : s)
        if (dm.at(w, u) != dm.at(w, v)) {
          resolved = true;
          break;
        }
      if (!resolved) return false;
    }
  return true;
}

// True iff the distance vectors (d(w,.) for w in s) are pairwise distinct.
inline bool is_resolving(const Graph& g, const VertexSet& s) {
  return is_resolving(connected_distances(g), s);
}

// Minimum resolving set; candidates by increasing size, then lexicographic.
inline VertexSet md_bruteforce(const Graph& g) {
  DistanceMatrix dm = connected_distances(g);
  VertexSet result;
  for_each_subset_by_size(g.n, g.n, [&](const std::vector<int>& subset) {
    if (is_resolving(dm, subset)) {
      result = subset;
      return true;
    }
    return false;
  });
  return result;
}

namespace detail {

// Trivial NO-instance: single vertex with budget -1.
inline void make_trivial_no(KernelResult& kr) {
  kr.reduced_graph = Graph::with_vertices(1);
  kr.reduced_k = -1;
  kr.id_map.clear();
}

inline KernelResult finish_kernel(const Graph& g, int reduced_k,
                                  std::vector<TwinRemoval> removed, VertexSet cover_used) {
  KernelResult kr;
  kr.removed = std::move(removed);
  kr.cover_used = std::move(cover_used);
  std::vector<char> deleted(g.n, 0);
  for (const auto& r : kr.removed) deleted[r.removed] = 1;
  VertexSet keep;
  for (int v = 0; v < g.n; ++v)
    if (!deleted[v]) keep.push_back(v);
  kr.reduced_k = reduced_k;
  if (reduced_k < 0) {
    make_trivial_no(kr);
    return kr;
  }
  kr.reduced_graph = g.induced_subgraph(keep);
  kr.id_map = keep;
  return kr;
}

}  // namespace detail

// Twin rule: while three false twins live in the independent set of the
// working cover, delete one of them and pay one unit of budget. Defaults to an
// exact minimum cover when no hint is supplied.
inline KernelResult md_kernelize(const MdInstance& inst,
                                 const std::optional<VertexSet>& vc_hint = std::nullopt) {
  const Graph& g = inst.g;
  VertexSet cover;
  if (vc_hint) {
    if (!is_vertex_cover(g, *vc_hint)) throw Error("md_kernelize: hint is not a vertex cover");
    cover = *vc_hint;
  } else {
    cover = vertex_cover_exact(g);
  }
  std::vector<char> in_cover(g.n, 0);
  for (int v : cover) in_cover[v] = 1;

  // Group the independent set by open neighborhood. Deleting a member never
  // changes a survivor's neighborhood, so one grouping pass suffices.
  std::map<std::vector<int>, VertexSet> groups;
  for (int v = 0; v < g.n; ++v)
    if (!in_cover[v]) groups[g.adj[v]].push_back(v);

  std::vector<TwinRemoval> removed;
  std::vector<VertexSet> classes;
  for (auto& [key, members] : groups) classes.push_back(members);
  std::sort(classes.begin(), classes.end(),
            [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
  for (const auto& cls : classes) {
    if (cls.size() < 3) continue;
    for (std::size_t i = cls.size(); i > 2; --i)
      removed.push_back({cls[i - 1], cls[0], true});
  }
  int reduced_k = inst.k - static_cast<int>(removed.size());
  return detail::finish_kernel(g, reduced_k, std::move(removed), std::move(cover));
}

namespace detail {

struct MdXpSeed {
  VertexSet cover;   // X
  VertexSet forced;  // F: from each false-twin class inside I, all but the smallest member
};

inline MdXpSeed md_xp_seed(const Graph& g) {
  MdXpSeed seed;
  seed.cover = vertex_cover_exact(g);
  std::vector<char> in_cover(g.n, 0);
  for (int v : seed.cover) in_cover[v] = 1;
  std::map<std::vector<int>, VertexSet> groups;
  for (int v = 0; v < g.n; ++v)
    if (!in_cover[v]) groups[g.adj[v]].push_back(v);
  for (auto& [key, members] : groups)
    for (std::size_t i = 1; i < members.size(); ++i) seed.forced.push_back(members[i]);
  std::sort(seed.forced.begin(), seed.forced.end());
  return seed;
}

}  // namespace detail

// n^O(vc) search: force F, then try subsets of X plus the twin-free part of I,
// capped at min(|X|, k - |F|), in increasing size and lexicographic order.
inline std::optional<SolutionCertificate> md_xp_solve(const MdInstance& inst) {
  DistanceMatrix dm = connected_distances(inst.g);
  auto seed = detail::md_xp_seed(inst.g);
  int slack = inst.k - static_cast<int>(seed.forced.size());
  if (slack < 0) return std::nullopt;

  VertexSet pool_set = seed.cover;
  std::vector<char> skip(inst.g.n, 0);
  for (int v : seed.cover) skip[v] = 1;
  for (int v : seed.forced) skip[v] = 1;
  for (int v = 0; v < inst.g.n; ++v)
    if (!skip[v]) pool_set.push_back(v);
  std::sort(pool_set.begin(), pool_set.end());

  int cap = std::min(static_cast<int>(seed.cover.size()), slack);
  std::optional<SolutionCertificate> found;
  VertexSet candidate;
  for_each_subset_by_size(static_cast<int>(pool_set.size()), cap, [&](const std::vector<int>& idx) {
    candidate.clear();
    for (int i : idx) candidate.push_back(pool_set[i]);
    VertexSet full = set_union(candidate, seed.forced);
    if (is_resolving(dm, full)) {
      found = SolutionCertificate{"md", inst.k, full, true};
      return true;
    }
    return false;
  });
  return found;
}

// Kernelize, solve the kernel, then lift: kernel ids map back through id_map
// and every deleted twin rejoins the solution.
inline std::optional<SolutionCertificate> md_fpt_solve(const MdInstance& inst) {
  DistanceMatrix dm = connected_distances(inst.g);
  KernelResult kr = md_kernelize(inst);
  if (kr.trivial_no()) return std::nullopt;
  auto sub = md_xp_solve({kr.reduced_graph, kr.reduced_k});
  if (!sub) return std::nullopt;
  VertexSet lifted;
  lifted.reserve(sub->solution.size() + kr.removed.size());
  for (int v : sub->solution) lifted.push_back(kr.id_map[v]);
  for (const auto& r : kr.removed) lifted.push_back(r.removed);
  std::sort(lifted.begin(), lifted.end());
  if (static_cast<int>(lifted.size()) > inst.k)
    throw Error("md_fpt_solve: lifted certificate exceeds budget");
  if (!is_resolving(dm, lifted)) throw Error("md_fpt_solve: lifted certificate is not resolving");
  return SolutionCertificate{"md", inst.k, lifted, true};
}

}  // namespace mdgs
