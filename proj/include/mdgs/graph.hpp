#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mdgs {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : Error {
  using Error::Error;
};
struct PartitionViolation : Error {
  using Error::Error;
};
struct Disconnected : Error {
  using Error::Error;
};
struct BudgetExceeded : Error {
  using Error::Error;
};
struct NotSquare : Error {
  using Error::Error;
};
struct NotAResolvingSet : Error {
  using Error::Error;
};
struct NotAGeodeticSet : Error {
  using Error::Error;
};

// Sorted, duplicate-free vertex ids.
using VertexSet = std::vector<int>;

inline VertexSet make_vertex_set(std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

inline bool set_contains(const VertexSet& s, int v) {
  return std::binary_search(s.begin(), s.end(), v);
}

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Simple undirected graph, vertex ids 0..n-1, sorted neighbor lists.
struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adj;
  std::vector<std::string> labels;  // empty, or one entry per vertex

  static Graph with_vertices(int count) {
    Graph g;
    g.n = count;
    g.adj.resize(count);
    return g;
  }

  int add_vertex(const std::string& label = {}) {
    adj.emplace_back();
    if (!label.empty() && labels.empty()) labels.resize(n);
    if (!labels.empty()) labels.push_back(label);
    return n++;
  }

  bool has_edge(int u, int v) const {
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
  }

  void add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw Error("add_edge: vertex out of range");
    if (u == v) throw Error("add_edge: self-loop rejected");
    if (has_edge(u, v)) throw Error("add_edge: duplicate edge rejected");
    adj[u].insert(std::lower_bound(adj[u].begin(), adj[u].end(), v), v);
    adj[v].insert(std::lower_bound(adj[v].begin(), adj[v].end(), u), u);
  }

  int degree(int v) const { return static_cast<int>(adj[v].size()); }

  int edge_count() const {
    std::size_t total = 0;
    for (const auto& nb : adj) total += nb.size();
    return static_cast<int>(total / 2);
  }

  // Edges as (u, v) with u < v, lexicographically sorted.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count());
    for (int u = 0; u < n; ++u)
      for (int v : adj[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  bool is_connected() const {
    if (n <= 1) return true;
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          ++reached;
          q.push(v);
        }
    }
    return reached == n;
  }

  // Subgraph induced by `keep` (sorted ids); vertices are renumbered in order.
  Graph induced_subgraph(const VertexSet& keep) const {
    Graph g = with_vertices(static_cast<int>(keep.size()));
    std::vector<int> newid(n, -1);
    for (int i = 0; i < static_cast<int>(keep.size()); ++i) newid[keep[i]] = i;
    if (!labels.empty()) {
      g.labels.resize(keep.size());
      for (std::size_t i = 0; i < keep.size(); ++i) g.labels[i] = labels[keep[i]];
    }
    for (int u : keep)
      for (int v : adj[u])
        if (u < v && newid[v] >= 0) g.add_edge(newid[u], newid[v]);
    return g;
  }

  std::string label(int v) const { return labels.empty() ? std::string{} : labels[v]; }

  void set_label(int v, const std::string& text) {
    if (labels.empty()) labels.resize(n);
    labels[v] = text;
  }
};

// Dense all-pairs hop counts; value n marks unreachable pairs (any finite
// distance is at most n-1).
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, n) {}

  int n() const { return n_; }
  int unreachable() const { return n_; }
  int at(int u, int v) const { return d_[static_cast<std::size_t>(u) * n_ + v]; }
  void set(int u, int v, int value) { d_[static_cast<std::size_t>(u) * n_ + v] = value; }
  bool reachable(int u, int v) const { return at(u, v) < n_; }

  bool all_reachable() const {
    for (int x : d_)
      if (x >= n_) return false;
    return n_ >= 0;
  }

 private:
  int n_ = 0;
  std::vector<int> d_;
};

inline DistanceMatrix all_pairs_distances(const Graph& g) {
  DistanceMatrix dm(g.n);
  std::vector<int> dist(g.n);
  std::queue<int> q;
  for (int s = 0; s < g.n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : g.adj[u])
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
    }
    for (int v = 0; v < g.n; ++v)
      if (dist[v] >= 0) dm.set(s, v, dist[v]);
  }
  return dm;
}

enum class TwinKind { False, True };

// Equivalence classes under N(u) = N(v) (false) or N[u] = N[v] (true).
// Classes are sorted by smallest member; singletons included.
inline std::vector<VertexSet> twin_classes(const Graph& g, TwinKind kind) {
  std::map<std::vector<int>, VertexSet> groups;
  for (int v = 0; v < g.n; ++v) {
    std::vector<int> key = g.adj[v];
    if (kind == TwinKind::True) key.insert(std::lower_bound(key.begin(), key.end(), v), v);
    groups[std::move(key)].push_back(v);
  }
  std::vector<VertexSet> classes;
  classes.reserve(groups.size());
  for (auto& [key, members] : groups) classes.push_back(std::move(members));
  std::sort(classes.begin(), classes.end(),
            [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
  return classes;
}

inline bool is_clique(const Graph& g, const std::vector<int>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!g.has_edge(vs[i], vs[j])) return false;
  return true;
}

// Vertices whose open neighborhood induces a clique (degree <= 1 included).
inline VertexSet simplicial_vertices(const Graph& g) {
  VertexSet out;
  for (int v = 0; v < g.n; ++v)
    if (is_clique(g, g.adj[v])) out.push_back(v);
  return out;
}

inline bool is_vertex_cover(const Graph& g, const VertexSet& cover) {
  std::vector<char> in(g.n, 0);
  for (int v : cover) in[v] = 1;
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u])
      if (u < v && !in[u] && !in[v]) return false;
  return true;
}

namespace detail {

// Bounded branching: take a max-degree vertex or its whole neighborhood,
// with degree-1 folding. Deterministic: lowest id breaks ties, take-v first.
inline bool vc_search(const Graph& g, std::vector<char> alive, int budget,
                      std::vector<int> partial, std::vector<int>& out) {
  while (true) {
    int deg1 = -1;
    int best = -1, best_deg = 0;
    for (int v = 0; v < g.n; ++v) {
      if (!alive[v]) continue;
      int d = 0;
      for (int w : g.adj[v]) d += alive[w];
      if (d == 1 && deg1 < 0) deg1 = v;
      if (d > best_deg) {
        best_deg = d;
        best = v;
      }
    }
    if (best_deg == 0) {
      out = std::move(partial);
      return true;
    }
    if (budget <= 0) return false;
    if (deg1 >= 0) {
      int u = -1;
      for (int w : g.adj[deg1])
        if (alive[w]) {
          u = w;
          break;
        }
      alive[u] = 0;
      partial.push_back(u);
      --budget;
      continue;
    }
    // branch: take `best`
    {
      auto alive2 = alive;
      auto partial2 = partial;
      alive2[best] = 0;
      partial2.push_back(best);
      if (vc_search(g, std::move(alive2), budget - 1, std::move(partial2), out)) return true;
    }
    // or take N(best)
    std::vector<int> nbrs;
    for (int w : g.adj[best])
      if (alive[w]) nbrs.push_back(w);
    if (static_cast<int>(nbrs.size()) > budget) return false;
    alive[best] = 0;
    for (int w : nbrs) {
      alive[w] = 0;
      partial.push_back(w);
    }
    budget -= static_cast<int>(nbrs.size());
  }
}

inline std::optional<VertexSet> vc_with_budget(const Graph& g, int budget) {
  if (budget < 0) return std::nullopt;
  std::vector<int> out;
  if (!vc_search(g, std::vector<char>(g.n, 1), budget, {}, out)) return std::nullopt;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Minimum vertex cover. With a budget, fails (BudgetExceeded) when vc(g)
// exceeds it.
inline VertexSet vertex_cover_exact(const Graph& g, std::optional<int> budget = std::nullopt) {
  int limit = budget.value_or(g.n);
  for (int b = 0; b <= std::min(limit, g.n); ++b)
    if (auto cover = detail::vc_with_budget(g, b)) return *cover;
  throw BudgetExceeded("vertex_cover_exact: no cover within budget " + std::to_string(limit));
}

// Both endpoints of a greedily chosen maximal matching (edges in lex order).
inline VertexSet vertex_cover_2approx(const Graph& g) {
  std::vector<char> matched(g.n, 0);
  VertexSet cover;
  for (int u = 0; u < g.n; ++u) {
    if (matched[u]) continue;
    for (int v : g.adj[u]) {
      if (u < v && !matched[v]) {
        matched[u] = matched[v] = 1;
        cover.push_back(u);
        cover.push_back(v);
        break;
      }
    }
  }
  std::sort(cover.begin(), cover.end());
  return cover;
}

// --- graph file format ------------------------------------------------------
// header `p edge <n> <m>`, edge lines `e <u> <v>` (1-indexed), comments `c`,
// optional label lines `l <v> <text>`. Writer emits edges in lex order.

inline Graph read_graph(std::istream& in, const std::string& name = "<stream>") {
  Graph g;
  bool have_header = false;
  int declared_edges = 0, seen_edges = 0;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError(name + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      int n = 0, m = 0;
      if (!(ls >> kind >> n >> m) || kind != "edge") fail("expected `p edge <n> <m>`");
      if (have_header) fail("duplicate problem line");
      if (n < 0 || m < 0) fail("negative counts in problem line");
      have_header = true;
      g = Graph::with_vertices(n);
      declared_edges = m;
    } else if (tag == "e") {
      if (!have_header) fail("edge line before problem line");
      int u = 0, v = 0;
      if (!(ls >> u >> v)) fail("malformed edge line");
      std::string extra;
      if (ls >> extra) fail("trailing tokens on edge line");
      if (u < 1 || v < 1 || u > g.n || v > g.n) fail("edge endpoint out of range");
      if (u == v) fail("self-loop rejected");
      if (g.has_edge(u - 1, v - 1)) fail("duplicate edge rejected");
      g.add_edge(u - 1, v - 1);
      ++seen_edges;
    } else if (tag == "l") {
      if (!have_header) fail("label line before problem line");
      int v = 0;
      if (!(ls >> v)) fail("malformed label line");
      if (v < 1 || v > g.n) fail("label vertex out of range");
      std::string text;
      std::getline(ls, text);
      std::size_t start = text.find_first_not_of(" \t");
      g.set_label(v - 1, start == std::string::npos ? "" : text.substr(start));
    } else {
      fail("unknown line tag `" + tag + "`");
    }
  }
  ++lineno;
  if (!have_header) fail("missing problem line");
  if (seen_edges != declared_edges)
    fail("edge count mismatch: header says " + std::to_string(declared_edges) + ", found " +
         std::to_string(seen_edges));
  return g;
}

inline Graph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file: " + path);
  return read_graph(in, path);
}

inline void write_graph(const Graph& g, std::ostream& out) {
  out << "p edge " << g.n << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  for (int v = 0; v < g.n; ++v)
    if (!g.label(v).empty()) out << "l " << v + 1 << ' ' << g.label(v) << '\n';
}

inline void write_graph(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  write_graph(g, out);
}

// Seeded G(n,p), resampled until connected.
inline Graph random_connected_graph(int n, double p, std::uint64_t seed, int max_tries = 10000) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    Graph g = Graph::with_vertices(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(rng) < p) g.add_edge(u, v);
    if (g.is_connected()) return g;
  }
  throw Error("random_connected_graph: no connected sample after max_tries");
}

}  // namespace mdgs
