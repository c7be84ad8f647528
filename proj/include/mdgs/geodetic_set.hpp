#pragma once

#include <optional>
#include <vector>

#include "mdgs/enumeration.hpp"
#include "mdgs/graph.hpp"
#include "mdgs/metric_dimension.hpp"

namespace mdgs {

struct GsInstance {
  Graph g;
  int k = 0;
};

inline bool is_geodetic(const DistanceMatrix& dm, const VertexSet& s) {
  int n = dm.n();
  for (int u = 0; u < n; ++u) {
    bool covered = false;
    for (std::size_t i = 0; i < s.size() && !covered; ++i)
      for (std::size_t j = i; j < s.size(); ++j)
        if (dm.at(s[i], u) + dm.at(u, s[j]) == dm.at(s[i], s[j])) {
          covered = true;
          break;
        }
    if (!covered) return false;
  }
  return true;
}

// True iff every vertex lies on a shortest path between two members of s.
inline bool is_geodetic(const Graph& g, const VertexSet& s) {
  return is_geodetic(connected_distances(g), s);
}

// Minimum geodetic set; candidates by increasing size, then lexicographic.
inline VertexSet gs_bruteforce(const Graph& g) {
  DistanceMatrix dm = connected_distances(g);
  VertexSet result;
  for_each_subset_by_size(g.n, g.n, [&](const std::vector<int>& subset) {
    if (is_geodetic(dm, subset)) {
      result = subset;
      return true;
    }
    return false;
  });
  return result;
}

namespace detail {

// View of the graph restricted to alive vertices, keeping original ids.
inline std::vector<int> alive_neighbors(const Graph& g, const std::vector<char>& alive, int v) {
  std::vector<int> out;
  for (int w : g.adj[v])
    if (alive[w]) out.push_back(w);
  return out;
}

inline bool alive_simplicial(const Graph& g, const std::vector<char>& alive, int v) {
  auto nb = alive_neighbors(g, alive, v);
  return is_clique(g, nb);
}

// Twin classes among alive vertices under open (false) or closed (true)
// neighborhoods, ordered by smallest member.
inline std::vector<VertexSet> alive_twin_classes(const Graph& g, const std::vector<char>& alive,
                                                 TwinKind kind) {
  std::map<std::vector<int>, VertexSet> groups;
  for (int v = 0; v < g.n; ++v) {
    if (!alive[v]) continue;
    auto key = alive_neighbors(g, alive, v);
    if (kind == TwinKind::True) key.insert(std::lower_bound(key.begin(), key.end(), v), v);
    groups[std::move(key)].push_back(v);
  }
  std::vector<VertexSet> classes;
  for (auto& [key, members] : groups) classes.push_back(std::move(members));
  std::sort(classes.begin(), classes.end(),
            [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
  return classes;
}

// BFS distances inside the alive subgraph, original ids; -1 = unreachable.
inline std::vector<int> alive_bfs(const Graph& g, const std::vector<char>& alive, int src) {
  std::vector<int> dist(g.n, -1);
  std::queue<int> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : g.adj[u])
      if (alive[v] && dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
  }
  return dist;
}

}  // namespace detail

// Rule 2: three simplicial mutual twins (false or true kind) -> delete one and
// pay one unit of budget. Rule 3: six false twins, neither simplicial nor true
// twins -> delete one, budget untouched. Rule 2 is preferred whenever both
// apply; everything is recomputed after each deletion.
inline KernelResult gs_kernelize(const GsInstance& inst) {
  const Graph& g = inst.g;
  std::vector<char> alive(g.n, 1);
  std::vector<TwinRemoval> removed;
  int k = inst.k;

  while (true) {
    bool applied = false;
    for (TwinKind kind : {TwinKind::False, TwinKind::True}) {
      auto classes = detail::alive_twin_classes(g, alive, kind);
      for (const auto& cls : classes) {
        if (cls.size() < 3) continue;
        if (!detail::alive_simplicial(g, alive, cls.front())) continue;
        int victim = cls.back();
        alive[victim] = 0;
        removed.push_back({victim, cls.front(), true});
        --k;
        applied = true;
        break;
      }
      if (applied) break;
    }
    if (applied) continue;
    auto classes = detail::alive_twin_classes(g, alive, TwinKind::False);
    for (const auto& cls : classes) {
      if (cls.size() < 6) continue;
      if (detail::alive_simplicial(g, alive, cls.front())) continue;
      int victim = cls.back();
      alive[victim] = 0;
      removed.push_back({victim, cls.front(), false});
      applied = true;
      break;
    }
    if (!applied) break;
  }
  return detail::finish_kernel(g, k, std::move(removed), {});
}

// n^O(vc) search: simplicial vertices are forced; extend them with subsets of
// the rest, capped at min(|X|, k - |Sp|).
inline std::optional<SolutionCertificate> gs_xp_solve(const GsInstance& inst) {
  DistanceMatrix dm = connected_distances(inst.g);
  VertexSet forced = simplicial_vertices(inst.g);
  if (static_cast<int>(forced.size()) > inst.k) return std::nullopt;
  VertexSet cover = vertex_cover_exact(inst.g);

  VertexSet pool = set_difference([&] {
    VertexSet all(inst.g.n);
    for (int v = 0; v < inst.g.n; ++v) all[v] = v;
    return all;
  }(), forced);

  int cap = std::min(static_cast<int>(cover.size()),
                     inst.k - static_cast<int>(forced.size()));
  std::optional<SolutionCertificate> found;
  VertexSet candidate;
  for_each_subset_by_size(static_cast<int>(pool.size()), cap, [&](const std::vector<int>& idx) {
    candidate.clear();
    for (int i : idx) candidate.push_back(pool[i]);
    VertexSet full = set_union(candidate, forced);
    if (is_geodetic(dm, full)) {
      found = SolutionCertificate{"gs", inst.k, full, true};
      return true;
    }
    return false;
  });
  return found;
}

namespace detail {

// Undo one Rule-3 deletion: with the twin restored, the old set stays
// geodetic unless the restored vertex is uncovered, which only happens when
// every surviving twin was picked; then three of them trade for two
// non-adjacent common neighbors.
inline void gs_lift_rule3(const Graph& g, const std::vector<char>& alive, int restored,
                          VertexSet& s) {
  std::vector<std::vector<int>> dist;
  dist.reserve(s.size());
  for (int v : s) dist.push_back(alive_bfs(g, alive, v));
  auto from_restored = alive_bfs(g, alive, restored);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i; j < s.size(); ++j) {
      int via = dist[i][restored] >= 0 && from_restored[s[j]] >= 0
                    ? dist[i][restored] + from_restored[s[j]]
                    : -1;
      if (via >= 0 && via == dist[i][s[j]]) return;  // covered
    }

  auto nb = alive_neighbors(g, alive, restored);
  VertexSet twins;
  for (int v = 0; v < g.n; ++v)
    if (alive[v] && v != restored && alive_neighbors(g, alive, v) == nb) twins.push_back(v);
  VertexSet picked;
  for (int t : twins)
    if (set_contains(s, t)) picked.push_back(t);
  if (picked.size() < 3) throw Error("gs lifting: uncovered twin without a swap target");

  int x = -1, y = -1;
  for (std::size_t i = 0; i < nb.size() && x < 0; ++i)
    for (std::size_t j = i + 1; j < nb.size(); ++j)
      if (!g.has_edge(nb[i], nb[j])) {
        x = nb[i];
        y = nb[j];
        break;
      }
  if (x < 0) throw Error("gs lifting: twin class is simplicial, swap impossible");

  VertexSet drop(picked.end() - 3, picked.end());
  s = set_union(set_difference(s, drop), VertexSet{x, y});
}

}  // namespace detail

// Kernelize, solve the kernel, lift back: Rule-2 twins rejoin the solution,
// Rule-3 twins only need the occasional swap from gs_lift_rule3.
inline std::optional<SolutionCertificate> gs_fpt_solve(const GsInstance& inst) {
  DistanceMatrix dm = connected_distances(inst.g);
  KernelResult kr = gs_kernelize(inst);
  if (kr.trivial_no()) return std::nullopt;
  auto sub = gs_xp_solve({kr.reduced_graph, kr.reduced_k});
  if (!sub) return std::nullopt;

  VertexSet s;
  for (int v : sub->solution) s.push_back(kr.id_map[v]);
  std::sort(s.begin(), s.end());

  std::vector<char> alive(inst.g.n, 1);
  for (const auto& r : kr.removed) alive[r.removed] = 0;
  for (auto it = kr.removed.rbegin(); it != kr.removed.rend(); ++it) {
    alive[it->removed] = 1;
    if (it->decremented_budget) {
      s = set_union(s, VertexSet{it->removed});
    } else {
      detail::gs_lift_rule3(inst.g, alive, it->removed, s);
    }
  }
  if (static_cast<int>(s.size()) > inst.k)
    throw Error("gs_fpt_solve: lifted certificate exceeds budget");
  if (!is_geodetic(dm, s)) throw Error("gs_fpt_solve: lifted certificate is not geodetic");
  return SolutionCertificate{"gs", inst.k, s, true};
}

}  // namespace mdgs
